"""Divided-difference and averaging operators acting on polynomials.

Both operators are defined pointwise on the lattice,

    D f(x(s)) = [f(x(s+1/2)) - f(x(s-1/2))] / [x(s+1/2) - x(s-1/2)]
    S f(x(s)) = [f(x(s+1/2)) + f(x(s-1/2))] / 2

and map polynomials in x to polynomials in x (D lowers the degree by one,
S preserves it).  Rather than rewriting coefficients we evaluate on enough
grid nodes and interpolate, which is exact and works uniformly on both
lattice kinds; one spare node per application guards against grid bugs.
"""

from __future__ import annotations

from fractions import Fraction

from .lattice import Lattice
from .poly import ZERO, Polynomial, interpolate

HALF = Fraction(1, 2)


class OperatorContext:
    """A lattice plus a cached evaluation grid, immutable after construction."""

    __slots__ = ("lat", "nodes")

    def __init__(self, lat: Lattice, capacity: int = 40):
        self.lat = lat
        self.nodes: tuple[Fraction, ...] = tuple(lat.grid(capacity))

    def _take(self, count: int) -> tuple[Fraction, ...]:
        if count > len(self.nodes):
            raise ValueError(
                f"operator context holds {len(self.nodes)} nodes, needs {count}"
            )
        return self.nodes[:count]


def _halves(ctx: OperatorContext, s: Fraction) -> tuple[Fraction, Fraction]:
    return ctx.lat.eval_x(s + HALF), ctx.lat.eval_x(s - HALF)


def apply_D(ctx: OperatorContext, poly: Polynomial) -> Polynomial:
    """The divided-difference operator; constants map to zero."""
    if poly.degree <= 0:
        return ZERO
    nodes = ctx._take(poly.degree + 1)

    def value(s: Fraction) -> Fraction:
        up, down = _halves(ctx, s)
        return (poly(up) - poly(down)) / (up - down)

    pts = [(ctx.lat.eval_x(s), value(s)) for s in nodes]
    out = interpolate(pts[:-1])
    spare_x, spare_y = pts[-1]
    if out(spare_x) != spare_y:
        raise AssertionError("divided difference of a polynomial was not polynomial")
    return out


def apply_S(ctx: OperatorContext, poly: Polynomial) -> Polynomial:
    """The averaging operator; degree-preserving."""
    if poly.is_zero:
        return ZERO
    nodes = ctx._take(poly.degree + 2)

    def value(s: Fraction) -> Fraction:
        up, down = _halves(ctx, s)
        return (poly(up) + poly(down)) / 2

    pts = [(ctx.lat.eval_x(s), value(s)) for s in nodes]
    out = interpolate(pts[:-1])
    spare_x, spare_y = pts[-1]
    if out(spare_x) != spare_y:
        raise AssertionError("average of a polynomial was not polynomial")
    return out


def apply_D_pow(ctx: OperatorContext, poly: Polynomial, k: int) -> Polynomial:
    """k-fold divided difference; degree drops by k, bottoming out at zero."""
    if k < 0:
        raise ValueError("operator power must be nonnegative")
    out = poly
    for _ in range(k):
        out = apply_D(ctx, out)
    return out


def apply_M(ctx: OperatorContext, poly: Polynomial) -> Polynomial:
    """Midpoint average in the grid argument s.

    On polynomials of x this acts identically to ``apply_S``; the alias
    keeps call sites that are phrased in terms of the s-average readable.
    """
    return apply_S(ctx, poly)
