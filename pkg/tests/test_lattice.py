from __future__ import annotations

from fractions import Fraction

import pytest

from qlattice.errors import InvalidLatticeError
from qlattice.lattice import Lattice

F = Fraction


def test_eval_quadratic_at_half_integer():
    lat = Lattice.quadratic(1)
    assert lat.eval_x(F(3, 2)) == F(9, 4)


def test_eval_q_quadratic():
    lat = Lattice.q_quadratic(F(1, 2), F(1, 2), 0, F(1, 2))
    assert lat.eval_x(0) == 1
    assert lat.eval_x(1) == F(17, 8)  # q = 1/4, (4 + 1/4)/2


def test_eval_rejects_non_half_integers():
    lat = Lattice.quadratic(1)
    with pytest.raises(ValueError):
        lat.eval_x(F(1, 3))


def test_constructor_validation():
    with pytest.raises(InvalidLatticeError):
        Lattice.quadratic(0)
    with pytest.raises(InvalidLatticeError):
        Lattice.q_quadratic(0, 1, 0, F(1, 2))
    with pytest.raises(InvalidLatticeError):
        Lattice.q_quadratic(1, 1, 0, 1)


def test_gamma_sequence():
    quad = Lattice.quadratic(1)
    assert quad.gamma_n(5) == 5
    assert quad.gamma_n(0) == 0
    qlat = Lattice.q_quadratic(1, 1, 0, 2)
    assert qlat.gamma_n(0) == 0
    assert qlat.gamma_n(1) == 1
    assert qlat.gamma_n(2) == F(5, 2)  # (4 - 1/4)/(2 - 1/2)


def test_alpha_beta_sequences():
    quad = Lattice.quadratic(1)
    assert quad.alpha_n(3) == 1
    assert quad.beta_n(3) == F(9, 4)  # beta = c4/4 = 1/4 times 9
    assert quad.alpha_n(0) == 1 and quad.beta_n(0) == 0
    qlat = Lattice.q_quadratic(1, 1, 0, 2)
    assert qlat.alpha_n(2) == F(17, 8)
    assert qlat.alpha_n(0) == 1 and qlat.beta_n(0) == 0


def test_u_polys_on_square_lattice():
    lat = Lattice.quadratic(1)
    u1, u2 = lat.u1_poly(), lat.u2_poly()
    assert u1.coeffs == (F(1, 2),)
    assert u2.coeffs == (F(0), F(1))  # U2(x) = x


def test_u2_on_aw_lattice():
    lat = Lattice.q_quadratic(F(1, 2), F(1, 2), 0, F(1, 2))
    q = F(1, 4)
    scale = (q - 1) ** 2 / (4 * q)
    assert lat.u2_poly().coeffs == (-scale, F(0), scale)  # scale * (x**2 - 1)


def test_u2_matches_squared_half_step(any_lattice):
    u2 = any_lattice.u2_poly()
    for s in any_lattice.grid(10):
        assert u2(any_lattice.eval_x(s)) == (any_lattice.step(s) / 2) ** 2


def test_grid_skips_degenerate_nodes():
    qlat = Lattice.q_quadratic(F(1, 2), F(1, 2), 0, F(1, 2))
    assert qlat.grid(3) == [F(1, 2), 1, F(3, 2)]
    quad = Lattice.quadratic(1, 0)
    assert quad.grid(2) == [F(1, 2), 1]
    shifted = Lattice.quadratic(1, 1)
    assert shifted.grid(1) == [F(1, 2)]


def test_grid_raw_mode_keeps_degenerate_nodes():
    qlat = Lattice.q_quadratic(F(1, 2), F(1, 2), 0, F(1, 2))
    assert qlat.grid(3, exclude_degenerate=False) == [F(1, 2), 1, F(3, 2)]
    shifted = Lattice.quadratic(1, -1)  # step vanishes at s = 1/2
    assert shifted.grid(2) != shifted.grid(2, exclude_degenerate=False)


def test_grid_skips_repeated_x_values():
    # x(s) = (s - 4)**2 repeats x around the vertex
    lat = Lattice.quadratic(1, -8, 16)
    nodes = lat.grid(8)
    values = [lat.eval_x(s) for s in nodes]
    assert len(set(values)) == len(values)
    assert all(lat.step(s) != 0 for s in nodes)


def test_gamma_three_term_identity(any_lattice):
    alpha = any_lattice.alpha
    for n in range(1, 9):
        assert (
            any_lattice.gamma_n(n + 1)
            - 2 * alpha * any_lattice.gamma_n(n)
            + any_lattice.gamma_n(n - 1)
            == 0
        )


def test_node_shift_identities(any_lattice):
    lat = any_lattice
    half = F(1, 2)
    for n in range(7):
        for s in lat.grid(4):
            left = lat.eval_x(s + n) - lat.eval_x(s)
            right = lat.gamma_n(n) * (
                lat.eval_x(s + F(n + 1, 2)) - lat.eval_x(s + F(n - 1, 2))
            )
            assert left == right
            mid = (lat.eval_x(s + n) + lat.eval_x(s)) / 2
            assert mid == lat.alpha_n(n) * lat.eval_x(s + F(n, 2)) + lat.beta_n(n)


def test_x_at_eta_matches_eval_on_grid():
    qlat = Lattice.q_quadratic(F(1, 2), F(1, 3), F(1, 5), F(2, 3))
    # anchor encoding for eta = 2 is q**2
    q = qlat.p ** 2
    for j in (F(-1), F(-1, 2), F(0), F(1, 2), F(3)):
        assert qlat.x_at_eta(q**2, j) == qlat.eval_x(2 + j)
    quad = Lattice.quadratic(2, 1, F(1, 7))
    for j in (F(-1), F(1, 2), F(5, 2)):
        assert quad.x_at_eta(F(3, 2), j) == quad.eval_x(F(3, 2) + j)
