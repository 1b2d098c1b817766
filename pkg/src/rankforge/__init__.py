"""Ordinal-valued ranks: group constructions, linear orders, open games, and
brute-force checks on finite data."""

from .ordinal import (
    ONE, OMEGA, ZERO, Ordinal, Order, OrdinalSyntaxError, add, analyze, compare,
    format_ordinal, mul, nat_add, omega_pow, parse,
)

__all__ = [
    "ONE", "OMEGA", "ZERO", "Ordinal", "Order", "OrdinalSyntaxError", "add", "analyze",
    "compare", "format_ordinal", "mul", "nat_add", "omega_pow", "parse",
]
__version__ = "0.1.0"
