"""Independent oracles the tests check the library against.

Everything here is deliberately built from a different route than the
code under test: hypergeometric-style terminating sums, raw three-term
recurrences, and pointwise operator definitions on the grid.
"""

from __future__ import annotations

import random
from fractions import Fraction

from qlattice.lattice import Lattice
from qlattice.poly import ONE, Polynomial


def aw_sum_poly(a, b, c, d, p, n: int) -> Polynomial:
    """Terminating basic-hypergeometric sum for the q-side families.

    sum_k (q^-n;q)_k (abcd q^(n-1);q)_k q^k / ((ab;q)_k (ac;q)_k (ad;q)_k (q;q)_k)
          * prod_{j<k} (1 - 2 a q^j x + a^2 q^(2j))

    Zero-padded parameters turn this into the sums for the subfamilies
    with fewer parameters.  Returned monic.
    """
    a, b, c, d, p = (Fraction(v) for v in (a, b, c, d, p))
    q = p * p
    total = Polynomial()
    term = ONE
    coeff = Fraction(1)
    for k in range(n + 1):
        total = total + coeff * term
        # ratio of consecutive hypergeometric coefficients
        num = (1 - q ** (-n) * q**k) * (1 - a * b * c * d * q ** (n - 1) * q**k) * q
        den = (
            (1 - a * b * q**k)
            * (1 - a * c * q**k)
            * (1 - a * d * q**k)
            * (1 - q ** (k + 1))
        )
        if k < n:
            coeff = coeff * num / den
            term = term * Polynomial([1 + a * a * q ** (2 * k), -2 * a * q**k])
    return total.monic()


def wilson_sum_poly(a, b, c, d, n: int) -> Polynomial:
    """Terminating hypergeometric sum for Wilson data, in the classical
    squared-argument variable; returned monic."""
    a, b, c, d = (Fraction(v) for v in (a, b, c, d))
    total = Polynomial()
    term = ONE
    coeff = Fraction(1)
    sigma = a + b + c + d
    for k in range(n + 1):
        total = total + coeff * term
        if k < n:
            num = (-n + k) * (n + sigma - 1 + k)
            den = (a + b + k) * (a + c + k) * (a + d + k) * (k + 1)
            coeff = coeff * num / den
            term = term * Polynomial([(a + k) ** 2, 1])
    return total.monic()


def cdh_sum_poly(a, b, c, n: int) -> Polynomial:
    """Terminating sum for continuous dual Hahn data, classical variable."""
    a, b, c = (Fraction(v) for v in (a, b, c))
    total = Polynomial()
    term = ONE
    coeff = Fraction(1)
    for k in range(n + 1):
        total = total + coeff * term
        if k < n:
            coeff = coeff * (-n + k) / ((a + b + k) * (a + c + k) * (k + 1))
            term = term * Polynomial([(a + k) ** 2, 1])
    return total.monic()


def q_hermite_poly(p, n: int) -> Polynomial:
    """Monic continuous q-Hermite member from the raw recurrence
    H_{n+1} = 2 x H_n - (1 - q^n) H_{n-1}."""
    q = Fraction(p) ** 2
    h_prev, h = ONE, Polynomial([0, 2])
    if n == 0:
        return ONE
    for m in range(1, n):
        h_prev, h = h, Polynomial([0, 2]) * h - (1 - q**m) * h_prev
    return h.monic()


def pointwise_D(lat: Lattice, poly: Polynomial, s) -> Fraction:
    """The operator definition evaluated raw at one grid point."""
    half = Fraction(1, 2)
    up, down = lat.eval_x(Fraction(s) + half), lat.eval_x(Fraction(s) - half)
    return (poly(up) - poly(down)) / (up - down)


def pointwise_S(lat: Lattice, poly: Polynomial, s) -> Fraction:
    half = Fraction(1, 2)
    up, down = lat.eval_x(Fraction(s) + half), lat.eval_x(Fraction(s) - half)
    return (poly(up) + poly(down)) / 2


def random_fraction(rng: random.Random, lo: int = -4, hi: int = 4, den: int = 3) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_poly(rng: random.Random, max_degree: int) -> Polynomial:
    degree = rng.randint(0, max_degree)
    coeffs = [random_fraction(rng) for _ in range(degree)]
    lead = Fraction(0)
    while lead == 0:
        lead = random_fraction(rng)
    return Polynomial(coeffs + [lead])


def random_positive_fraction(rng: random.Random, hi: int = 4, den: int = 3) -> Fraction:
    return Fraction(rng.randint(1, hi), rng.randint(1, den))


def random_unit_fraction(rng: random.Random) -> Fraction:
    """A rational strictly between 0 and 1 (q-side positivity domain)."""
    den = rng.randint(2, 9)
    num = rng.randint(1, den - 1)
    return Fraction(num, den)
