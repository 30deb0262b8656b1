"""Dense univariate polynomials over exact rationals.

Coefficients are ``fractions.Fraction`` values indexed by monomial degree,
with trailing zeros trimmed, so every arithmetic result is exact.  The
module also provides Newton interpolation, expansion of a polynomial in a
graded sequence of basis polynomials, and the two special bases used by
the construction engine: the Newton-type products anchored at a point
eta of the grid, and the symmetric basis for lattices with c3 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import ExpansionError, NormalFormError

if TYPE_CHECKING:
    from .lattice import Lattice


class Polynomial:
    """Immutable dense polynomial; ``coeffs[k]`` multiplies x**k.

    The zero polynomial has an empty coefficient tuple and degree -1
    (standing in for the usual degree minus-infinity convention).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        """Leading coefficient; Fraction(0) for the zero polynomial."""
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] += c
        return Polynomial(cs)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return ZERO
            cs = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    cs[i + j] += a * b
            return Polynomial(cs)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial([a * c for a in self.coeffs])

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise ValueError("the zero polynomial has no monic form")
        return self.scale(1 / self.leading)

    def reflect(self) -> "Polynomial":
        """Return P(-x)."""
        return Polynomial([-c if k % 2 else c for k, c in enumerate(self.coeffs)])

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero:
            return "Polynomial(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{k}")
        return "Polynomial(" + " + ".join(terms) + ")"


ZERO = Polynomial()
ONE = Polynomial([1])
X = Polynomial([0, 1])


def interpolate(points: Sequence[tuple]) -> Polynomial:
    """Exact Newton interpolation through ``points`` of (x, y) pairs.

    Raises ValueError("degenerate interpolation nodes") when two x-values
    coincide.  The result has degree < len(points); redundant nodes simply
    collapse the degree.
    """
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("degenerate interpolation nodes")
    coef = ys[:]
    for j in range(1, len(xs)):
        for i in range(len(xs) - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = Polynomial([coef[-1]])
    for i in range(len(xs) - 2, -1, -1):
        p = p * Polynomial([-xs[i], 1]) + Polynomial([coef[i]])
    return p


def expand_with_residual(
    target: Polynomial, basis: Sequence[Polynomial]
) -> tuple[list[Fraction], Polynomial]:
    """Back-substitute ``target`` against basis polynomials of strictly
    increasing degrees; return the coefficients and whatever residual the
    basis could not absorb."""
    if not basis:
        return [], target
    degs = [b.degree for b in basis]
    if any(b.is_zero for b in basis):
        raise ValueError("zero polynomial in expansion basis")
    if any(d0 >= d1 for d0, d1 in zip(degs, degs[1:])):
        raise ValueError("basis degrees must be strictly increasing")
    if target.degree > degs[-1]:
        raise ValueError("target degree exceeds the basis")
    coeffs = [Fraction(0)] * len(basis)
    residual = target
    for i in reversed(range(len(basis))):
        if residual.degree == degs[i]:
            c = residual.leading / basis[i].leading
            coeffs[i] = c
            residual = residual - basis[i] * c
    return coeffs, residual


def expand_in_sequence(target: Polynomial, basis: Sequence[Polynomial]) -> list[Fraction]:
    """Unique coefficients c_i with target = sum(c_i * basis_i), exact.

    Raises ExpansionError (with the residual attached) when gaps in the
    basis degrees leave part of the target unexpressed.
    """
    coeffs, residual = expand_with_residual(target, basis)
    if not residual.is_zero:
        raise ExpansionError("expansion left a nonzero residual", residual)
    return coeffs


@dataclass(frozen=True)
class NewtonBasisSpec:
    """Anchor data for the Newton-type basis w_k(x) = prod_j (x - x(eta+j)).

    ``eta`` is the anchor itself on quadratic lattices and the exact value
    of q**eta on q-quadratic ones (where eta itself is a logarithm and
    generally irrational).
    """

    lat: "Lattice"
    eta: Fraction


def newton_basis_poly(spec: NewtonBasisSpec, k: int) -> Polynomial:
    """Monic degree-k product prod_{j<k} (x - x(eta+j)); k = 0 gives 1."""
    if k < 0:
        raise ValueError("basis index must be nonnegative")
    p = ONE
    for j in range(k):
        p = p * Polynomial([-spec.lat.x_at_eta(spec.eta, j), 1])
    return p


def q_pochhammer(a, q, k: int) -> Fraction:
    """(a; q)_k = prod_{j<k} (1 - a q**j); the empty product is 1."""
    if k < 0:
        raise ValueError("q-Pochhammer length must be nonnegative")
    a, q = Fraction(a), Fraction(q)
    out = Fraction(1)
    power = Fraction(1)
    for _ in range(k):
        out *= 1 - a * power
        power *= q
    return out


def pochhammer(a, k: int) -> Fraction:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1)."""
    if k < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    a = Fraction(a)
    out = Fraction(1)
    for j in range(k):
        out *= a + j
    return out


def k_basis_poly(lat: "Lattice", j: int) -> Polynomial:
    """Symmetric-case basis member K_j as a degree-j polynomial in x.

    Only defined on q-quadratic lattices with c3 = 0, where K_j(x(s)) is a
    Laurent-symmetric function of q**s that collapses to a polynomial of
    degree j in x.  The conversion evaluates K_j on j+2 grid nodes,
    interpolates through the first j+1 and uses the spare node as an
    exactness check.
    """
    if j < 0:
        raise ValueError("basis index must be nonnegative")
    if lat.kind != "q-quadratic" or lat.c3 != 0:
        raise NormalFormError("symmetric basis requires c3 = 0")
    if j == 0:
        return ONE
    q = lat.p**2
    ratio = lat.c2 / lat.c1
    nodes = lat.grid(j + 2)

    def value(s: Fraction) -> Fraction:
        q_s = lat.p ** int(2 * s)
        q_2s = q_s * q_s
        head = (lat.c1 / q_s) ** j * (1 + ratio * q_2s)
        return head * q_pochhammer(-ratio * q ** (2 - j) * q_2s, q * q, j - 1)

    pts = [(lat.eval_x(s), value(s)) for s in nodes]
    p = interpolate(pts[: j + 1])
    spare_x, spare_y = pts[j + 1]
    if p(spare_x) != spare_y:
        raise NormalFormError("symmetric basis did not collapse to a polynomial")
    return p
