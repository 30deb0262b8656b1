from __future__ import annotations

from fractions import Fraction

import pytest

from qlattice.bochner import (
    FamilyTag,
    SLData,
    build_solution,
    classify,
    lambda_for,
    sigma_aux,
    solve_dk,
    solve_symmetric,
    verify_sl,
)
from qlattice.errors import ClassificationScopeError, NormalFormError
from qlattice.families import (
    askey_wilson,
    continuous_q_hermite,
    monic_family,
    sl_data_for,
    wilson,
)
from qlattice.lattice import Lattice
from qlattice.poly import ONE, Polynomial, q_pochhammer

F = Fraction

AW_LATTICE = Lattice.q_quadratic(F(1, 2), F(1, 2), 0, F(1, 2))
SQUARE = Lattice.quadratic(1)


def q_hermite_data(p) -> SLData:
    lat = Lattice.q_quadratic(F(1, 2), F(1, 2), 0, F(p))
    span = 2 * lat.p / (lat.p ** 2 - 1)
    return SLData(F(2), F(0), F(-1), -2 * span, F(0), lat)


def test_lambda_examples():
    w = sl_data_for(wilson(1, 1, 1, 1))
    assert lambda_for(w, 0) == 0
    assert [lambda_for(w, n) for n in (1, 2, 3)] == [-4, -10, -18]  # -n(n+3)
    from qlattice.families import continuous_dual_hahn, sl_data_for as data_for

    cdh = data_for(continuous_dual_hahn(1, F(3, 2), 2))
    assert all(lambda_for(cdh, n) == -n for n in range(6))


def test_sigma_aux_is_sigma_pointwise():
    # q side: q**(2s) sigma(x(s)) == P(q**s); quadratic side: sigma == P(s)
    sl = sl_data_for(askey_wilson(F(1, 2), F(1, 3), F(1, 5), F(1, 7), F(1, 2)))
    aux = sigma_aux(sl)
    for s in sl.lat.grid(8):
        q_s = sl.lat.p ** int(2 * s)
        assert q_s * q_s * sl.sigma_at(s) == aux.poly(q_s)
    slw = sl_data_for(wilson(1, 2, 3, F(5, 2)))
    auxw = sigma_aux(slw)
    for s in slw.lat.grid(8):
        assert slw.sigma_at(s) == auxw.poly(s)


def test_sigma_aux_root_patterns():
    hermite = q_hermite_data(F(1, 2))
    assert sigma_aux(hermite).poly == Polynomial([0, 0, 0, 0, 1])  # C X**4
    slw = sl_data_for(wilson(1, 2, 3, F(5, 2)))
    poly = sigma_aux(slw).poly
    for root in (1, 2, 3, F(5, 2)):
        assert poly(root) == 0


def test_sigma_aux_degree_drop_threshold():
    # deg P < 4 exactly when psi1 = 2 phi2 p / (p**2 - 1)
    p = F(1, 2)
    lat = Lattice.q_quadratic(F(1, 2), F(1, 2), 0, p)
    phi2 = F(3)
    critical = 2 * phi2 * p / (p * p - 1)
    degenerate = SLData(phi2, F(1), F(1), critical, F(1), lat)
    assert sigma_aux(degenerate).poly.degree < 4
    generic = SLData(phi2, F(1), F(1), critical + 1, F(1), lat)
    assert sigma_aux(generic).poly.degree == 4


def test_sigma_aux_rejects_other_lattices():
    sl = SLData(F(1), F(0), F(0), F(1), F(0), Lattice.quadratic(1, 0, F(1, 3)))
    with pytest.raises(NormalFormError):
        sigma_aux(sl)
    sl = SLData(F(1), F(0), F(0), F(1), F(0), Lattice.q_quadratic(1, 1, 0, F(1, 2)))
    with pytest.raises(NormalFormError):
        sigma_aux(sl)


def test_solve_dk_degree_zero():
    sl = sl_data_for(wilson(1, 1, 1, 1))
    assert solve_dk(sl, 1, 0) == [1]


def test_solve_dk_requires_sigma_root():
    sl = sl_data_for(wilson(1, 1, 1, 1))
    with pytest.raises(ValueError, match="root of sigma"):
        solve_dk(sl, F(7, 3), 2)


def test_big_q_hermite_coefficients_match_closed_form():
    # d_k = (q^-n;q)_k (-2qa)^k q^(k(k-1)/2) / (q;q)_k * d_0
    p, a, n = F(1, 2), F(3, 2), 6
    lat = Lattice.q_quadratic(F(1, 2), F(1, 2), 0, p)
    q = p * p
    span = 2 * p / (p * p - 1)
    sl = SLData(F(2), -a, F(-1), -2 * span, a * span, lat)
    d = solve_dk(sl, a, n)
    for k in range(n + 1):
        closed = (
            q_pochhammer(q**-n, q, k)
            * (-2 * q * a) ** k
            * q ** (k * (k - 1) // 2)
            / q_pochhammer(q, q, k)
        )
        assert d[k] == closed * d[0]


def test_askey_wilson_coefficient_ratios():
    a, b, c, d = F(2), F(3), F(1, 3), F(1, 5)
    spec = askey_wilson(a, b, c, d, F(1, 2))
    sl = sl_data_for(spec)
    q = F(1, 4)
    n = 5
    dk = solve_dk(sl, a, n)
    for k in range(n):
        expected = (
            -2
            * q ** (k + 1)
            * a
            * (1 - q ** (k - n))
            * (1 - a * b * c * d * q ** (n - 1 + k))
            / (
                (1 - q ** (k + 1))
                * (1 - a * d * q**k)
                * (1 - a * c * q**k)
                * (1 - a * b * q**k)
            )
        )
        assert dk[k + 1] / dk[k] == expected


def test_build_solution_small_cases():
    sl = sl_data_for(wilson(1, 1, 1, 1))
    assert build_solution(sl, 1, 0) == ONE
    p1 = build_solution(sl, 1, 1)
    assert p1 == monic_family(wilson(1, 1, 1, 1), 1)


def test_build_solution_satisfies_equation():
    spec = askey_wilson(F(1, 2), F(1, 3), F(1, 5), F(1, 7), F(1, 2))
    sl = sl_data_for(spec)
    poly = build_solution(sl, F(1, 2), 5)
    assert verify_sl(sl, 5, poly).is_zero


def test_solve_symmetric_small_cases():
    lat = AW_LATTICE
    q = F(1, 4)
    span = 2 * lat.p / (lat.p ** 2 - 1)
    psi1 = -2 * span
    assert solve_symmetric(lat, 2, -1, psi1, 0) == ONE
    assert solve_symmetric(lat, 2, -1, psi1, 1) == Polynomial([0, 1])
    assert solve_symmetric(lat, 2, -1, psi1, 2) == Polynomial([-(1 - q) / 4, 0, 1])


def test_symmetric_limit_branch_solves_equation():
    # phi = 2x**2 - 1 with the opposite-sign psi is the other parity
    # branch (a parameter limit); it must still solve its equation.
    lat = AW_LATTICE
    span = 2 * lat.p / (lat.p ** 2 - 1)
    sl = SLData(F(2), F(0), F(-1), 2 * span, F(0), lat)
    for n in range(7):
        poly = solve_symmetric(lat, 2, -1, 2 * span, n)
        assert verify_sl(sl, n, poly).is_zero


def test_limit_branches_of_lower_degree_solve_equation():
    # auxiliary polynomial of degree 3, 2, 1: the tabulated limit data
    # (phi, psi) still admit Newton-basis solutions anchored at a root
    p = F(1, 2)
    q = p * p
    lat = Lattice.q_quadratic(F(1, 2), F(1, 2), 0, p)
    span = 2 * p / (q - 1)
    a, b, c = F(2), F(3), F(1, 3)
    cases = [
        # degree 3: C(X-a)(X-b)(X-c)
        SLData(
            -2 * a * b * c,
            a * b + a * c + b * c + 1,
            a * b * c - a - b - c,
            -2 * a * b * c * span,
            span * (a * b + a * c + b * c - 1),
            lat,
        ),
        # degree 2: C(X-a)(X-b)
        SLData(
            2 * a * b,
            -(a + b),
            1 - a * b,
            2 * a * b * span,
            -span * (a + b),
            lat,
        ),
        # degree 1: C(X-a)
        SLData(-2 * a, F(1), a, -2 * a * span, span, lat),
    ]
    for idx, sl in enumerate(cases):
        assert sigma_aux(sl).poly.degree == 3 - idx
        for n in range(6):
            poly = build_solution(sl, a, n)
            assert verify_sl(sl, n, poly).is_zero, (idx, n)


def test_verify_sl_detects_perturbations():
    sl = sl_data_for(wilson(1, 1, 1, 1))
    assert verify_sl(sl, 0, ONE).is_zero
    member = Polynomial([1, 1])  # the true degree-1 member in x
    assert verify_sl(sl, 1, member).is_zero
    # wrong eigenvalue: off-by-one lambda leaves the member residual
    assert not (verify_sl(sl, 1, member) + member).is_zero
    # wrong polynomial against the right eigenvalue
    assert not verify_sl(sl, 1, Polynomial([2, 1])).is_zero


def test_classify_named_families():
    hermite = q_hermite_data(F(1, 2))
    result = classify(hermite)
    assert result.tag is FamilyTag.CONTINUOUS_Q_HERMITE
    assert result.params == ()

    p = F(1, 2)
    span = 2 * p / (p * p - 1)
    a, b = F(2), F(3)
    asc = SLData(F(2), -(a + b), a * b - 1, -2 * span, span * (a + b), AW_LATTICE)
    result = classify(asc)
    assert result.tag is FamilyTag.AL_SALAM_CHIHARA
    assert sorted(result.params) == [2, 3]

    result = classify(sl_data_for(wilson(1, 1, 1, 1)))
    assert result.tag is FamilyTag.WILSON
    assert result.params == (1, 1, 1, 1)


def test_classify_quadratic_with_grid_shift():
    # on x(s) = s**2 + 3s the recovered parameters carry the u/2 shift
    lat = Lattice.quadratic(1, 3, 0)
    roots = (F(1, 2), 1, 2, 3)
    e1 = sum(roots)
    e2 = sum(roots[i] * roots[j] for i in range(4) for j in range(i + 1, 4))
    e3 = sum(
        roots[i] * roots[j] * roots[k]
        for i in range(4)
        for j in range(i + 1, 4)
        for k in range(j + 1, 4)
    )
    e4 = roots[0] * roots[1] * roots[2] * roots[3]
    u = F(3)
    # build sigma = prod (X - root) through phi, psi on this lattice:
    # e50 with c4 = 1: X^4 phi2 + (2u phi2 - psi1) X^3 + ...
    phi2 = F(1)
    psi1 = 2 * u * phi2 + e1  # matches -e1 coefficient on X^3
    # solve the remaining coefficient identifications
    phi1 = e2 + F(3, 2) * u * psi1 - u * u * phi2
    psi0 = u * phi1 - u * u * psi1 / 2 + e3
    phi0 = e4 + u * psi0 / 2
    sl = SLData(phi2, phi1, phi0, psi1, psi0, lat)
    aux = sigma_aux(sl)
    assert [aux.poly(r) for r in roots] == [0, 0, 0, 0]
    result = classify(sl)
    assert result.tag is FamilyTag.WILSON
    assert result.u == 3
    assert sorted(result.params) == sorted(r + u / 2 for r in roots)


def test_classify_normalizes_constant_lattice_shift():
    # the same equation posed on x(z) = z**2 + 5: phi'(x) = phi(x - 5)
    base = sl_data_for(wilson(F(1, 2), 1, 2, 3))
    c6 = F(5)
    shifted_lat = Lattice.quadratic(1, 0, c6)
    shifted = SLData(
        phi2=base.phi2,
        phi1=base.phi1 - 2 * base.phi2 * c6,
        phi0=base.phi0 - base.phi1 * c6 + base.phi2 * c6 * c6,
        psi1=base.psi1,
        psi0=base.psi0 - base.psi1 * c6,
        lat=shifted_lat,
    )
    result = classify(shifted)
    assert result.tag is FamilyTag.WILSON
    assert sorted(result.params) == [F(1, 2), 1, 2, 3]


def test_classify_rejects_irrational_roots():
    # sigma with roots {1, 2, sqrt(2), -sqrt(2)} on x(z) = z**2
    sl = SLData(F(1), F(0), F(-4), F(3), F(-6), SQUARE)
    with pytest.raises(ClassificationScopeError, match="rational-root"):
        classify(sl)


def test_classify_rejects_psi_degenerate_quadratic():
    sl = SLData(F(0), F(1), F(1), F(0), F(1), SQUARE)
    with pytest.raises(ClassificationScopeError, match="psi1 = 0"):
        classify(sl)


def test_classify_rejects_q_parameter_limits():
    p = F(1, 2)
    lat = AW_LATTICE
    phi2 = F(3)
    critical = 2 * phi2 * p / (p * p - 1)
    sl = SLData(phi2, F(1), F(1), critical, F(1), lat)
    with pytest.raises(ClassificationScopeError, match="parameter limit"):
        classify(sl)
