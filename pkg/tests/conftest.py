from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qlattice.lattice import Lattice


@pytest.fixture
def square_lattice() -> Lattice:
    """x(s) = s**2, the Wilson-side grid."""
    return Lattice.quadratic(1)


@pytest.fixture
def aw_lattice() -> Lattice:
    """x(s) = (q**-s + q**s)/2 with p = 1/2."""
    return Lattice.q_quadratic(Fraction(1, 2), Fraction(1, 2), 0, Fraction(1, 2))


@pytest.fixture(params=["quadratic", "q-quadratic"])
def any_lattice(request) -> Lattice:
    if request.param == "quadratic":
        return Lattice.quadratic(1, Fraction(1, 2), Fraction(1, 3))
    return Lattice.q_quadratic(Fraction(1, 2), Fraction(1, 3), Fraction(1, 5), Fraction(2, 3))
