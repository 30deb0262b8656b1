"""Quadratic and q-quadratic lattices and their derived data.

A lattice is the evaluation grid x(s) underneath every divided-difference
operator in this package:

    x(s) = c4*s**2 + c5*s + c6                (quadratic)
    x(s) = c1*q**(-s) + c2*q**s + c3          (q-quadratic, q = p**2)

q-quadratic lattices are parameterized by p, the square root of q, so that
q**s = p**(2s) stays rational on the half-integer grid and no square root
is ever taken at runtime.  All derived constants (alpha, beta, C_x) and
sequences (alpha_n, beta_n, gamma_n) are exact Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidLatticeError
from .poly import Polynomial

QUADRATIC = "quadratic"
Q_QUADRATIC = "q-quadratic"


def as_half_integer(s) -> Fraction:
    """Coerce to Fraction and require 2s to be an integer."""
    s = Fraction(s)
    if (2 * s).denominator != 1:
        raise ValueError(f"grid points live on half-integers, got {s}")
    return s


@dataclass(frozen=True)
class LatticeConstants:
    alpha: Fraction
    beta: Fraction
    c_x: Fraction


@dataclass(frozen=True)
class Lattice:
    kind: str
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)
    c3: Fraction = Fraction(0)
    c4: Fraction = Fraction(0)
    c5: Fraction = Fraction(0)
    c6: Fraction = Fraction(0)
    p: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind == QUADRATIC:
            if self.c4 == 0:
                raise InvalidLatticeError("quadratic lattice needs c4 != 0")
        elif self.kind == Q_QUADRATIC:
            if self.c1 == 0:
                raise InvalidLatticeError("q-quadratic lattice needs c1 != 0")
            if self.p in (0, 1, -1):
                raise InvalidLatticeError("q-quadratic lattice needs p outside {0, 1, -1}")
        else:
            raise InvalidLatticeError(f"unknown lattice kind {self.kind!r}")

    @classmethod
    def quadratic(cls, c4, c5=0, c6=0) -> "Lattice":
        return cls(QUADRATIC, c4=Fraction(c4), c5=Fraction(c5), c6=Fraction(c6))

    @classmethod
    def q_quadratic(cls, c1, c2, c3, p) -> "Lattice":
        return cls(
            Q_QUADRATIC,
            c1=Fraction(c1),
            c2=Fraction(c2),
            c3=Fraction(c3),
            p=Fraction(p),
        )

    # -- evaluation --------------------------------------------------

    def eval_x(self, s) -> Fraction:
        """x(s) for half-integer s, exactly."""
        s = as_half_integer(s)
        if self.kind == QUADRATIC:
            return self.c4 * s * s + self.c5 * s + self.c6
        two_s = int(2 * s)
        return self.c1 * self.p ** (-two_s) + self.c2 * self.p**two_s + self.c3

    def x_at_eta(self, eta, offset) -> Fraction:
        """x(eta + offset) for a basis anchor eta and half-integer offset.

        On quadratic lattices ``eta`` is the anchor itself (any rational);
        on q-quadratic lattices it is the exact value of q**eta, so that
        x(eta + j) = c1/(eta_enc * q**j) + c2 * eta_enc * q**j + c3.
        """
        offset = as_half_integer(offset)
        if self.kind == QUADRATIC:
            t = Fraction(eta) + offset
            return self.c4 * t * t + self.c5 * t + self.c6
        q_point = Fraction(eta) * self.p ** int(2 * offset)
        if q_point == 0:
            raise ValueError("anchor encoding q**eta must be nonzero")
        return self.c1 / q_point + self.c2 * q_point + self.c3

    def step(self, s) -> Fraction:
        """The centered step x(s + 1/2) - x(s - 1/2)."""
        s = as_half_integer(s)
        return self.eval_x(s + Fraction(1, 2)) - self.eval_x(s - Fraction(1, 2))

    def step_at_eta(self, eta) -> Fraction:
        """x(eta + 1/2) - x(eta - 1/2) through the anchor encoding."""
        half = Fraction(1, 2)
        return self.x_at_eta(eta, half) - self.x_at_eta(eta, -half)

    # -- derived constants and sequences -----------------------------

    def constants(self) -> LatticeConstants:
        if self.kind == QUADRATIC:
            return LatticeConstants(
                alpha=Fraction(1),
                beta=self.c4 / 4,
                c_x=self.c5**2 / 4 - self.c4 * self.c6,
            )
        p = self.p
        q = p * p
        return LatticeConstants(
            alpha=(p + 1 / p) / 2,
            beta=-self.c3 * (p - 1) ** 2 / (2 * p),
            c_x=(q - 1) ** 2 * (self.c3**2 - 4 * self.c1 * self.c2) / (4 * q),
        )

    @property
    def alpha(self) -> Fraction:
        return self.constants().alpha

    @property
    def beta(self) -> Fraction:
        return self.constants().beta

    def gamma_n(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("sequence index must be nonnegative")
        if self.kind == QUADRATIC:
            return Fraction(n)
        p = self.p
        return (p**n - p**-n) / (p - 1 / p)

    def alpha_n(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("sequence index must be nonnegative")
        if self.kind == QUADRATIC:
            return Fraction(1)
        p = self.p
        return (p**n + p**-n) / 2

    def beta_n(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("sequence index must be nonnegative")
        cs = self.constants()
        if self.kind == QUADRATIC:
            return cs.beta * n * n
        return cs.beta * (1 - self.alpha_n(n)) / (1 - cs.alpha)

    def u1_poly(self) -> Polynomial:
        """U1(x) = (alpha**2 - 1) x + beta (alpha + 1)."""
        cs = self.constants()
        return Polynomial([cs.beta * (cs.alpha + 1), cs.alpha**2 - 1])

    def u2_poly(self) -> Polynomial:
        """U2(x) = (alpha**2 - 1) x**2 + 2 beta (alpha + 1) x + C_x.

        Evaluated at x(s) this equals the squared half-step
        ((x(s+1/2) - x(s-1/2)) / 2)**2.
        """
        cs = self.constants()
        return Polynomial([cs.c_x, 2 * cs.beta * (cs.alpha + 1), cs.alpha**2 - 1])

    # -- grids --------------------------------------------------------

    def grid(self, count: int, exclude_degenerate: bool = True) -> list[Fraction]:
        """Half-integer nodes s = 1/2, 1, 3/2, ... usable by the operators.

        Nodes where the centered step vanishes, or whose x-value repeats an
        earlier node, are skipped (they would break divided differences).
        """
        if count < 1:
            raise ValueError("grid needs at least one node")
        nodes: list[Fraction] = []
        seen: set[Fraction] = set()
        k = 0
        limit = 16 * count + 64
        while len(nodes) < count:
            k += 1
            if k > limit:
                raise InvalidLatticeError("lattice cannot supply enough distinct nodes")
            s = Fraction(k, 2)
            if exclude_degenerate:
                if self.step(s) == 0:
                    continue
                x = self.eval_x(s)
                if x in seen:
                    continue
                seen.add(x)
            nodes.append(s)
        return nodes
