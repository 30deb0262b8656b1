"""The seven named polynomial families and their exact data.

Wilson and continuous dual Hahn polynomials live on the quadratic lattice
x(z) = z**2; the five q-families (Askey-Wilson down to continuous
q-Hermite) live on x(s) = (q**-s + q**s)/2 with q = p**2.  Family members
are produced monic in the lattice variable x.  For Wilson and continuous
dual Hahn the classical presentation uses t = -x (the squared-argument
variable); ``classical_monic_family`` applies that sign flip.

Contiguous-relation coefficients (the parameter-raising A_n and the
parameter-lowering C_n) are implemented from their closed forms and
verified elsewhere against expansions of the polynomials themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import prod

from .bochner import (
    FamilyTag,
    PARAM_COUNT,
    SLData,
    build_solution,
    solve_symmetric,
)
from .divdiff import OperatorContext, apply_D_pow
from .errors import DegenerateParameterError
from .lattice import Lattice
from .poly import X, Polynomial, expand_in_sequence

Q_TAGS = frozenset(
    {
        FamilyTag.ASKEY_WILSON,
        FamilyTag.CONTINUOUS_DUAL_Q_HAHN,
        FamilyTag.AL_SALAM_CHIHARA,
        FamilyTag.CONTINUOUS_BIG_Q_HERMITE,
        FamilyTag.CONTINUOUS_Q_HERMITE,
    }
)

CLASSICAL_VARIABLE_TAGS = frozenset({FamilyTag.WILSON, FamilyTag.CONTINUOUS_DUAL_HAHN})


@dataclass(frozen=True)
class FamilySpec:
    tag: FamilyTag
    params: tuple[Fraction, ...]
    p: Fraction | None = None

    def __post_init__(self):
        expected = PARAM_COUNT[self.tag]
        if len(self.params) != expected:
            raise ValueError(f"{self.tag.value} takes {expected} parameters")
        if self.tag in Q_TAGS:
            if self.p is None or self.p in (0, 1, -1):
                raise ValueError(f"{self.tag.value} needs p outside {{0, 1, -1}}")
            if any(v == 0 for v in self.params):
                raise DegenerateParameterError(
                    f"{self.tag.value} needs nonzero parameters"
                )
        elif self.p is not None:
            raise ValueError(f"{self.tag.value} does not take p")


def _fracs(*vals) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in vals)


def wilson(a, b, c, d) -> FamilySpec:
    return FamilySpec(FamilyTag.WILSON, _fracs(a, b, c, d))


def continuous_dual_hahn(a, b, c) -> FamilySpec:
    return FamilySpec(FamilyTag.CONTINUOUS_DUAL_HAHN, _fracs(a, b, c))


def askey_wilson(a, b, c, d, p) -> FamilySpec:
    return FamilySpec(FamilyTag.ASKEY_WILSON, _fracs(a, b, c, d), Fraction(p))


def continuous_dual_q_hahn(a, b, c, p) -> FamilySpec:
    return FamilySpec(FamilyTag.CONTINUOUS_DUAL_Q_HAHN, _fracs(a, b, c), Fraction(p))


def al_salam_chihara(a, b, p) -> FamilySpec:
    return FamilySpec(FamilyTag.AL_SALAM_CHIHARA, _fracs(a, b), Fraction(p))


def continuous_big_q_hermite(a, p) -> FamilySpec:
    return FamilySpec(FamilyTag.CONTINUOUS_BIG_Q_HERMITE, _fracs(a), Fraction(p))


def continuous_q_hermite(p) -> FamilySpec:
    return FamilySpec(FamilyTag.CONTINUOUS_Q_HERMITE, (), Fraction(p))


def lattice_for(spec: FamilySpec) -> Lattice:
    if spec.tag in Q_TAGS:
        return Lattice.q_quadratic(Fraction(1, 2), Fraction(1, 2), 0, spec.p)
    return Lattice.quadratic(1, 0, 0)


def _esym(vals, k: int) -> Fraction:
    if k > len(vals):
        return Fraction(0)
    return sum((prod(t) for t in combinations(vals, k)), start=Fraction(0))


def sl_data_for(spec: FamilySpec) -> SLData:
    """The (phi, psi) pair whose degree-n eigenvalue rule produces the family."""
    lat = lattice_for(spec)
    if spec.tag is FamilyTag.WILSON:
        a, b, c, d = spec.params
        return SLData(
            phi2=Fraction(1),
            phi1=_esym(spec.params, 2),
            phi0=a * b * c * d,
            psi1=_esym(spec.params, 1),
            psi0=_esym(spec.params, 3),
            lat=lat,
        )
    if spec.tag is FamilyTag.CONTINUOUS_DUAL_HAHN:
        a, b, c = spec.params
        return SLData(
            phi2=Fraction(0),
            phi1=a + b + c,
            phi0=a * b * c,
            psi1=Fraction(1),
            psi0=_esym(spec.params, 2),
            lat=lat,
        )
    # every q-family is the four-parameter q-data with absent parameters
    # set to zero
    padded = list(spec.params) + [Fraction(0)] * (4 - len(spec.params))
    e1, e2, e3, e4 = (_esym(padded, k) for k in (1, 2, 3, 4))
    p = spec.p
    span = 2 * p / (p * p - 1)  # 2 sqrt(q) / (q - 1), rational in p
    return SLData(
        phi2=2 * (e4 + 1),
        phi1=-(e3 + e1),
        phi0=e2 - e4 - 1,
        psi1=2 * span * (e4 - 1),
        psi0=-span * (e3 - e1),
        lat=lat,
    )


def anchor_for(spec: FamilySpec) -> Fraction | None:
    """Newton-basis anchor: eta = a for Wilson/dual Hahn, q**eta = a for
    the q-families; None for the symmetric continuous q-Hermite case."""
    if spec.tag is FamilyTag.CONTINUOUS_Q_HERMITE:
        return None
    return spec.params[0]


@lru_cache(maxsize=None)
def monic_family(spec: FamilySpec, n: int) -> Polynomial:
    """Monic degree-n member in the lattice variable x."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    sl = sl_data_for(spec)
    if spec.tag is FamilyTag.CONTINUOUS_Q_HERMITE:
        return solve_symmetric(sl.lat, sl.phi2, sl.phi0, sl.psi1, n)
    return build_solution(sl, anchor_for(spec), n)


def classical_monic_family(spec: FamilySpec, n: int) -> Polynomial:
    """Monic degree-n member in the family's classical variable.

    For Wilson and continuous dual Hahn this is the squared-argument
    variable t = -x; the q-families already live in their classical
    variable x = cos(theta).
    """
    poly = monic_family(spec, n)
    if spec.tag in CLASSICAL_VARIABLE_TAGS:
        return poly.reflect().monic()
    return poly


def shifted(spec: FamilySpec, amount) -> FamilySpec:
    """All parameters raised together: a -> a + amount (quadratic side)
    or a -> a * amount (q side, where amount is a power of p)."""
    if spec.tag in Q_TAGS:
        params = tuple(v * Fraction(amount) for v in spec.params)
        return FamilySpec(spec.tag, params, spec.p)
    params = tuple(v + Fraction(amount) for v in spec.params)
    return FamilySpec(spec.tag, params)


def with_param(spec: FamilySpec, index: int, value) -> FamilySpec:
    params = list(spec.params)
    params[index] = Fraction(value)
    return FamilySpec(spec.tag, tuple(params), spec.p)


# -- contiguous-relation coefficients ----------------------------------


def wilson_A(n: int, a, b, c, d) -> Fraction:
    """Raising coefficient for the first Wilson parameter; symmetric in
    the remaining three."""
    a, b, c, d = (Fraction(v) for v in (a, b, c, d))
    total = a + b + c + d
    for shift in (2 * n - 1, 2 * n):
        if total + shift == 0:
            raise DegenerateParameterError(
                f"degenerate parameter sum: a+b+c+d+{shift} vanishes"
            )
    return (
        (total + n - 1)
        * (a + b + n)
        * (a + c + n)
        * (a + d + n)
        / ((total + 2 * n - 1) * (total + 2 * n))
    )


def wilson_C(n: int, a, b, c, d) -> Fraction:
    """Lowering coefficient complementary to ``wilson_A``; C_0 = 0."""
    a, b, c, d = (Fraction(v) for v in (a, b, c, d))
    total = a + b + c + d
    for shift in (2 * n - 2, 2 * n - 1):
        if total + shift == 0:
            raise DegenerateParameterError(
                f"degenerate parameter sum: a+b+c+d+{shift} vanishes"
            )
    return (
        n
        * (b + c + n - 1)
        * (b + d + n - 1)
        * (c + d + n - 1)
        / ((total + 2 * n - 2) * (total + 2 * n - 1))
    )


def aw_C(n: int, a, b, c, d, p) -> Fraction:
    """q-side lowering coefficient; C_0 = 0 and the formula is symmetric
    in its last three arguments."""
    a, b, c, d, p = (Fraction(v) for v in (a, b, c, d, p))
    q = p * p
    prod_all = a * b * c * d
    for shift in (2 * n - 2, 2 * n - 1):
        if prod_all * q**shift == 1:
            raise DegenerateParameterError(
                f"degenerate parameter product: 1 - abcd*q^{shift} vanishes"
            )
    den = (1 - prod_all * q ** (2 * n - 2)) * (1 - prod_all * q ** (2 * n - 1))
    return (
        a
        * (1 - q**n)
        * (1 - b * c * q ** (n - 1))
        * (1 - b * d * q ** (n - 1))
        * (1 - d * c * q ** (n - 1))
        / den
    )


# -- recurrence extraction ----------------------------------------------


def ttrr_coeffs(
    spec: FamilySpec, n_max: int, variable: str = "classical"
) -> list[tuple[Fraction, Fraction]]:
    """Three-term recurrence coefficients (a_n, b_n) with
    x P_n = P_{n+1} + a_n P_n + b_n P_{n-1}, for n = 0..n_max.

    Extracted by expanding x P_n in the family basis and checking that
    nothing falls outside the three-term window.  ``variable`` selects the
    classical presentation (default) or the lattice variable x.
    """
    if variable not in ("classical", "lattice"):
        raise ValueError("variable must be 'classical' or 'lattice'")
    member = classical_monic_family if variable == "classical" else monic_family
    seq = [member(spec, m) for m in range(n_max + 2)]
    out: list[tuple[Fraction, Fraction]] = []
    for n in range(n_max + 1):
        coeffs = expand_in_sequence(X * seq[n], seq[: n + 2])
        if any(coeffs[m] != 0 for m in range(n - 1)):
            raise AssertionError("sequence is not orthogonal-style")
        if coeffs[n + 1] != 1:
            raise AssertionError("sequence is not monic")
        b_n = coeffs[n - 1] if n >= 1 else Fraction(0)
        out.append((coeffs[n], b_n))
    return out


# -- contiguous-relation verification ------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    identity: str
    n: int
    ok: bool
    residual: Polynomial


@dataclass(frozen=True)
class ContiguousReport:
    spec: FamilySpec
    checks: tuple[IdentityCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.ok]


def _check(identity: str, n: int, residual: Polynomial) -> IdentityCheck:
    return IdentityCheck(identity, n, residual.is_zero, residual)


def _wilson_checks(spec: FamilySpec, n_max: int) -> list[IdentityCheck]:
    checks = []
    params = spec.params
    ctx = OperatorContext(lattice_for(spec), capacity=n_max + 8)

    def member(sp: FamilySpec, m: int) -> Polynomial:
        return classical_monic_family(sp, m)

    for n in range(n_max + 1):
        for i in range(4):
            raised = with_param(spec, i, params[i] + 1)
            first = params[i]
            others = [params[j] for j in range(4) if j != i]
            lhs = Polynomial([first * first, 1]) * member(raised, n)
            rhs = member(spec, n + 1) + wilson_A(n, first, *others) * member(spec, n)
            checks.append(_check(f"raise-{'abcd'[i]}", n, lhs - rhs))
        if n >= 1:
            a, b, c, d = params
            up_a = with_param(spec, 0, a + 1)
            res = member(spec, n) - (
                member(up_a, n) + wilson_C(n, a, b, c, d) * member(up_a, n - 1)
            )
            checks.append(_check("lower-after-raise-a", n, res))
            up_ab = with_param(up_a, 1, b + 1)
            res = member(up_a, n) - (
                member(up_ab, n) + wilson_C(n, b, a + 1, c, d) * member(up_ab, n - 1)
            )
            checks.append(_check("lower-after-raise-ab", n, res))
        for k in (1, 2):
            if n < k:
                continue
            lhs = apply_D_pow(ctx, member(spec, n).reflect(), k).reflect()
            factor = prod(Fraction(-n + j) for j in range(k))
            rhs = factor * member(shifted(spec, Fraction(k, 2)), n - k)
            checks.append(_check(f"derivative-shift-k{k}", n, lhs - rhs))
    return checks


def _aw_checks(spec: FamilySpec, n_max: int) -> list[IdentityCheck]:
    checks = []
    a, b, c, d = spec.params
    p = spec.p
    lat = lattice_for(spec)
    ctx = OperatorContext(lat, capacity=n_max + 8)
    q = p * p
    for n in range(n_max + 1):
        if n >= 1:
            up_a = with_param(spec, 0, a * q)
            res = monic_family(spec, n) - (
                monic_family(up_a, n)
                - aw_C(n, a, b, c, d, p) / 2 * monic_family(up_a, n - 1)
            )
            checks.append(_check("q-lower-after-raise-a", n, res))
            up_ab = with_param(up_a, 1, b * q)
            res = monic_family(up_a, n) - (
                monic_family(up_ab, n)
                - aw_C(n, b, a * q, c, d, p) / 2 * monic_family(up_ab, n - 1)
            )
            checks.append(_check("q-lower-after-raise-ab", n, res))
        for k in (1, 2):
            if n < k:
                continue
            lhs = apply_D_pow(ctx, monic_family(spec, n), k)
            factor = prod(lat.gamma_n(n - j) for j in range(k))
            rhs = factor * monic_family(shifted(spec, p**k), n - k)
            checks.append(_check(f"q-derivative-shift-k{k}", n, lhs - rhs))
    return checks


def verify_contiguous(spec: FamilySpec, n_max: int) -> ContiguousReport:
    """Exact check of the parameter-shift identities up to degree n_max.

    Wilson: the four raising relations, the two lowering relations and the
    k-fold derivative shift (k = 1, 2) in the classical variable;
    Askey-Wilson: the two q-lowering relations and the q-derivative shift.
    """
    if spec.tag is FamilyTag.WILSON:
        checks = _wilson_checks(spec, n_max)
    elif spec.tag is FamilyTag.ASKEY_WILSON:
        checks = _aw_checks(spec, n_max)
    else:
        raise ValueError("contiguous relations are tabulated for wilson and askey-wilson")
    return ContiguousReport(spec, tuple(checks))
