"""Exact-arithmetic verification of the equation's conservation structure."""

from .calculus import (
    CharacteristicResult,
    MAX_CHARACTERISTIC_ORDER,
    characteristic_family,
    divergence,
    equation_lhs,
    euler_op,
    partial,
    standard_currents,
    total_d,
    verify_characteristic,
)
from .parse import ParseError, parse
from .poly import DiffPoly, FuncSym, JetVar, fderiv, jet

__all__ = [
    "CharacteristicResult",
    "MAX_CHARACTERISTIC_ORDER",
    "DiffPoly",
    "FuncSym",
    "JetVar",
    "ParseError",
    "characteristic_family",
    "divergence",
    "equation_lhs",
    "euler_op",
    "fderiv",
    "jet",
    "parse",
    "partial",
    "standard_currents",
    "total_d",
    "verify_characteristic",
]
