"""Exact differential polynomials over jet variables and formal symbols.

A DiffPoly is a sum of monomials; each monomial is an exact rational
coefficient times a product of jet-variable powers times a product of
formal-function powers.  Jet variables are the symbols d_t^a d_x^b u,
treated as independent coordinates.  The formal symbols are f(u) and its
u-derivatives f'(u), f''(u), ..., plus the antiderivatives F(u) and h(u),
which never appear differentiated themselves: their derivatives rewrite
through the defining relations F'(u) = f(u) and h'(u) = u f'(u).

Coefficients are fractions.Fraction throughout -- no floating point --
so "this polynomial is identically zero" is decidable by normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class JetVar:
    """The symbol d_t^a d_x^b u; (0, 0) is u itself."""

    t_order: int
    x_order: int

    def __post_init__(self):
        if self.t_order < 0 or self.x_order < 0:
            raise ValueError("jet orders must be nonnegative")

    @property
    def order(self) -> int:
        return self.t_order + self.x_order

    def token(self) -> str:
        if self.order == 0:
            return "u"
        return "u_" + "t" * self.t_order + "x" * self.x_order


@dataclass(frozen=True, order=True)
class FuncSym:
    """f(u) and derivatives f^(k)(u), or the underived symbols F(u), h(u)."""

    base: str
    deriv_order: int = 0

    def __post_init__(self):
        if self.base not in ("f", "F", "h"):
            raise ValueError(f"unknown function symbol base {self.base!r}")
        if self.base != "f" and self.deriv_order != 0:
            raise ValueError(f"{self.base}(u) only appears underived; its derivative rewrites via f")
        if self.deriv_order < 0:
            raise ValueError("derivative order must be nonnegative")

    def token(self) -> str:
        if self.base == "f":
            return "f" + "'" * self.deriv_order + "(u)"
        return self.base + "(u)"


# a monomial key is (jets, funcs): sorted tuples of (symbol, positive power)
_EMPTY = ((), ())


def _merge_powers(first, second):
    acc = dict(first)
    for sym, p in second:
        acc[sym] = acc.get(sym, 0) + p
    return tuple(sorted(acc.items()))


def _without(powers, sym):
    """Decrement sym's power by one, dropping it at zero."""
    out = []
    for s, p in powers:
        if s == sym:
            if p > 1:
                out.append((s, p - 1))
        else:
            out.append((s, p))
    return tuple(out)


class DiffPoly:
    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms = {}
        if terms:
            for key, coeff in terms.items():
                c = Fraction(coeff)
                if c != 0:
                    self._terms[key] = c

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "DiffPoly":
        return DiffPoly()

    @staticmethod
    def constant(value) -> "DiffPoly":
        return DiffPoly({_EMPTY: Fraction(value)})

    @staticmethod
    def from_jet(var: JetVar) -> "DiffPoly":
        return DiffPoly({(((var, 1),), ()): Fraction(1)})

    @staticmethod
    def from_func(sym: FuncSym) -> "DiffPoly":
        return DiffPoly({((), ((sym, 1),)): Fraction(1)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self):
        """Iterate (jets, funcs, coefficient) in a deterministic order."""
        for key in sorted(self._terms):
            yield key[0], key[1], self._terms[key]

    def __len__(self):
        return len(self._terms)

    def jet_order(self) -> int:
        """Highest total derivative order a+b among the jet variables present."""
        order = 0
        for jets, funcs, _ in self.terms():
            for var, _p in jets:
                order = max(order, var.order)
        return order

    def jet_vars(self):
        seen = set()
        for jets, _funcs, _c in self.terms():
            for var, _p in jets:
                seen.add(var)
        return sorted(seen)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms.get(key, Fraction(0)) + c
        return DiffPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly({key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        terms = {}
        for (jets1, funcs1), c1 in self._terms.items():
            for (jets2, funcs2), c2 in other._terms.items():
                key = (_merge_powers(jets1, jets2), _merge_powers(funcs1, funcs2))
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return DiffPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial exponents must be nonnegative integers")
        out = DiffPoly.constant(1)
        for _ in range(exponent):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, (DiffPoly, int, Fraction)):
            return NotImplemented
        return self._terms == _coerce(other)._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for jets, funcs, coeff in self.terms():
            factors = [var.token() + (f"^{p}" if p > 1 else "") for var, p in jets]
            factors += [sym.token() + (f"^{p}" if p > 1 else "") for sym, p in funcs]
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"DiffPoly({self})"


def _coerce(value) -> DiffPoly:
    if isinstance(value, DiffPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return DiffPoly.constant(value)
    raise TypeError(f"cannot interpret {value!r} as a differential polynomial")


# convenient atoms

def jet(t_order: int, x_order: int) -> DiffPoly:
    return DiffPoly.from_jet(JetVar(t_order, x_order))


def fderiv(order: int = 0) -> DiffPoly:
    return DiffPoly.from_func(FuncSym("f", order))


U = jet(0, 0)
U_T = jet(1, 0)
U_X = jet(0, 1)
U_TX = jet(1, 1)
F_OF_U = fderiv(0)
F_ANTI = DiffPoly.from_func(FuncSym("F"))
H_ANTI = DiffPoly.from_func(FuncSym("h"))
