"""Total derivatives, the Euler-Lagrange operator, and conservation-law
certification for the jet-polynomial engine.

The total derivative D_x sends d_t^a d_x^b u to d_t^a d_x^{b+1} u and acts
on the formal symbols by the chain rule:

    D_x f^(k)(u) = f^(k+1)(u) u_x     D_x F(u) = f(u) u_x
    D_x h(u) = u f'(u) u_x

(and likewise with u_t for D_t).  The Euler-Lagrange operator

    E_u(P) = sum_J (-1)^|J| D_J (dP / du_J)

annihilates exactly the total divergences, so E_u(Q * Delta) == 0
certifies Q as the characteristic of a conservation law of the equation
with residual Delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import (
    DiffPoly,
    FuncSym,
    JetVar,
    _without,
    fderiv,
    jet,
)

MAX_CHARACTERISTIC_ORDER = 2


def _func_u_derivative(sym: FuncSym) -> DiffPoly:
    """d/du of a formal symbol, as a polynomial."""
    if sym.base == "f":
        return fderiv(sym.deriv_order + 1)
    if sym.base == "F":
        return fderiv(0)
    return jet(0, 0) * fderiv(1)  # h'(u) = u f'(u)


def partial(poly: DiffPoly, var: JetVar) -> DiffPoly:
    """Partial derivative with respect to one jet variable.

    For var == u itself this includes the chain rule through the formal
    function symbols, which all depend on u.
    """
    out = DiffPoly.zero()
    is_base = var.order == 0
    for jets, funcs, coeff in poly.terms():
        for v, p in jets:
            if v == var:
                key = (_without(jets, v), funcs)
                out = out + DiffPoly({key: coeff * p})
        if is_base:
            for sym, p in funcs:
                rest = DiffPoly({(jets, _without(funcs, sym)): coeff * p})
                out = out + rest * _func_u_derivative(sym)
    return out


def total_d(poly: DiffPoly, direction: str) -> DiffPoly:
    """Total derivative D_t or D_x, Leibniz over every monomial."""
    if direction == "t":
        shift, chain_var = (1, 0), jet(1, 0)
    elif direction == "x":
        shift, chain_var = (0, 1), jet(0, 1)
    else:
        raise ValueError(f"direction must be 't' or 'x', got {direction!r}")

    out = DiffPoly.zero()
    for jets, funcs, coeff in poly.terms():
        for v, p in jets:
            bumped = JetVar(v.t_order + shift[0], v.x_order + shift[1])
            key = (_without(jets, v), funcs)
            out = out + DiffPoly({key: coeff * p}) * DiffPoly.from_jet(bumped)
        for sym, p in funcs:
            rest = DiffPoly({(jets, _without(funcs, sym)): coeff * p})
            out = out + rest * _func_u_derivative(sym) * chain_var
    return out


def euler_op(poly: DiffPoly) -> DiffPoly:
    """Variational derivative E_u(P); identically zero iff P is a total
    divergence on the polynomial class considered here."""
    out = DiffPoly.zero()
    # u itself must always be included: the formal symbols depend on u even
    # when no bare u factor appears in any monomial
    variables = sorted(set(poly.jet_vars()) | {JetVar(0, 0)})
    for var in variables:
        term = partial(poly, var)
        for _ in range(var.t_order):
            term = total_d(term, "t")
        for _ in range(var.x_order):
            term = total_d(term, "x")
        if (var.t_order + var.x_order) % 2:
            term = -term
        out = out + term
    return out


def divergence(c0: DiffPoly, c1: DiffPoly) -> DiffPoly:
    """Div(C0, C1) = D_t C0 + D_x C1."""
    return total_d(c0, "t") + total_d(c1, "x")


def equation_lhs() -> DiffPoly:
    """The evolution equation's left-hand side in expanded jet form:
    Delta = u_t - u_txx + f'(u) u_x."""
    return jet(1, 0) - jet(1, 2) + fderiv(1) * jet(0, 1)


def characteristic_family(c1, c2, c3) -> DiffPoly:
    """The certified three-parameter family c1 + c2 u + c3 (f(u) - u_tx)."""
    return (
        DiffPoly.constant(Fraction(c1))
        + DiffPoly.constant(Fraction(c2)) * jet(0, 0)
        + DiffPoly.constant(Fraction(c3)) * (fderiv(0) - jet(1, 1))
    )


def standard_currents() -> list[tuple[DiffPoly, DiffPoly, DiffPoly]]:
    """The three (density, flux, characteristic) triples whose divergence
    identities Div(C0, C1) = Q * Delta hold exactly."""
    u, u_t, u_x, u_tx = jet(0, 0), jet(1, 0), jet(0, 1), jet(1, 1)
    f = fderiv(0)
    F = DiffPoly.from_func(FuncSym("F"))
    h = DiffPoly.from_func(FuncSym("h"))
    half = Fraction(1, 2)
    return [
        (u, -u_tx + f, DiffPoly.constant(1)),
        (half * (u * u + u_x * u_x), -u * u_tx + h, u),
        (
            F,
            half * (u_tx * u_tx - u_t * u_t) - f * u_tx + half * (f * f),
            f - u_tx,
        ),
    ]


@dataclass(frozen=True)
class CharacteristicResult:
    query: DiffPoly
    residual: DiffPoly

    @property
    def certified(self) -> bool:
        return self.residual.is_zero()

    def as_report(self) -> dict:
        return {
            "query": str(self.query),
            "result": "exact-zero" if self.certified else "residual",
            "residual_text": str(self.residual),
        }


def verify_characteristic(q: DiffPoly) -> CharacteristicResult:
    """Certify whether Q is a characteristic by computing E_u(Q * Delta).

    Q must have jet order <= 2 (the multiplier ansatz); higher orders are
    rejected rather than silently truncated.
    """
    order = q.jet_order()
    if order > MAX_CHARACTERISTIC_ORDER:
        raise ValueError(
            f"characteristic candidates may use jet order <= {MAX_CHARACTERISTIC_ORDER}, got {order}"
        )
    return CharacteristicResult(query=q, residual=euler_op(q * equation_lhs()))
