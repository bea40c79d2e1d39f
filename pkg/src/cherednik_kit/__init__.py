"""Numerics for Opdam hypergeometric functions and their product formulas."""

from __future__ import annotations

__version__ = "0.1.0"
