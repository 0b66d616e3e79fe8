"""Numeric invariants of the surface attached to a mixed structure.

All arithmetic is exact rational.  For the groups handled here every
invariant is an integer, so a fractional result is treated as evidence
of an order bug and raised, never rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .beauville import BeauvilleTriple
from .errors import DegenerateBracketError
from .groups import element_order

__all__ = ["SurfaceInvariants", "invariants", "invariants_from_orders"]


@dataclass(frozen=True)
class SurfaceInvariants:
    """Curve genus and surface numbers for one structure.

    orders holds (ord t0, ord t1, ord t0*t1); nu is their product.  The
    Euler number is computed both as 4(g-1)^2/|H| and as |H| times the
    squared bracket, and the two must agree exactly.
    """

    orders: tuple[int, int, int]
    nu: int
    genus: int
    euler: int
    chi: int
    k_squared: int


def invariants_from_orders(h_order: int, orders: tuple[int, int, int]) -> SurfaceInvariants:
    if h_order < 1:
        raise ValueError("subgroup order must be positive")
    if any(o < 1 for o in orders):
        raise ValueError("element orders must be positive")
    o0, o1, o01 = orders
    bracket = 1 - Fraction(1, o0) - Fraction(1, o1) - Fraction(1, o01)
    if bracket <= 0:
        raise DegenerateBracketError(
            "orders %r give bracket %s, no surface of general type here"
            % (orders, bracket)
        )
    genus = 1 + Fraction(h_order, 2) * bracket
    euler = 4 * (genus - 1) ** 2 / h_order
    euler_direct = h_order * bracket ** 2
    if euler != euler_direct:
        raise ArithmeticError("the two Euler number forms disagree")
    chi = euler / 4
    k_squared = 2 * euler
    values = (genus, euler, chi, k_squared)
    if any(v.denominator != 1 for v in values):
        raise ArithmeticError(
            "non-integral invariant from orders %r and |H| = %d" % (orders, h_order)
        )
    return SurfaceInvariants(
        orders=orders,
        nu=o0 * o1 * o01,
        genus=int(genus),
        euler=int(euler),
        chi=int(chi),
        k_squared=int(k_squared),
    )


def invariants(u: BeauvilleTriple) -> SurfaceInvariants:
    """Invariants of the structure's surface from the actual element
    orders.

    Assumes the pair generates H (condition A), which holds for the
    standard structures by construction.
    """
    t0, t1 = u.T
    orders = (element_order(t0), element_order(t1), element_order(t0 * t1))
    return invariants_from_orders(u.H.order, orders)
