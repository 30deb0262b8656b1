"""First and second structure relations and their coefficient windows.

The first structure relation writes pi(x) D^2 P_n as a five-term
combination of P_{n-2}..P_{n+2} with pi = phi**2 - U2 psi**2; the second
writes P_n as a five-term combination of D^2 P_{n-2}..D^2 P_{n+2}.  Both
are extracted here by exact expansion in the family basis, in the
family's classical variable (t = -x for Wilson and continuous dual Hahn,
x itself for the q-families), and compared against the closed-form
windows built out of the contiguous-relation coefficients.

The module also verifies the averaging-operator connection between S**2
and the second-derivative window, and runs the recurrence surrogate that
stands in for orthogonality of the second-derivative sequence: the
three-term support of x * D^2 P_n / gamma_n with the predicted leading
coefficient gamma_{n-1} / (gamma_{n+1} gamma_n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .bochner import FamilyTag, SLData
from .divdiff import OperatorContext, apply_D_pow, apply_S
from .families import (
    CLASSICAL_VARIABLE_TAGS,
    FamilySpec,
    aw_C,
    classical_monic_family,
    lattice_for,
    monic_family,
    sl_data_for,
    ttrr_coeffs,
    wilson_C,
    wilson_A,
)
from .lattice import Lattice
from .poly import X, Polynomial, ZERO, expand_in_sequence, expand_with_residual

Window = dict[int, Fraction]


def pi_poly(sl: SLData) -> Polynomial:
    """pi = phi**2 - U2 psi**2, the degree <= 4 multiplier of the first
    structure relation, in the lattice variable."""
    psi = sl.psi()
    return sl.phi() * sl.phi() - sl.lat.u2_poly() * psi * psi


@dataclass(frozen=True)
class CoefficientReport:
    relation: str
    n: int
    window: Window
    residual: Polynomial
    out_of_band: Window
    closed_form_window: Window | None = None
    as_printed: dict[int, bool] | None = None

    @property
    def residual_zero(self) -> bool:
        return self.residual.is_zero

    @property
    def closed_form_match(self) -> bool | None:
        if self.closed_form_window is None:
            return None
        return self.closed_form_window == self.window

    @property
    def key_offset(self) -> int:
        return -2 if self.relation == "first-structure" else 2

    @property
    def ok(self) -> bool:
        good = self.residual_zero and not self.out_of_band
        good = good and self.window.get(self.key_offset, Fraction(0)) != 0
        if self.closed_form_window is not None:
            good = good and bool(self.closed_form_match)
        return good


def _uses_classical_variable(spec: FamilySpec) -> bool:
    return spec.tag in CLASSICAL_VARIABLE_TAGS


def _classical_d2(spec: FamilySpec, ctx: OperatorContext, poly: Polynomial) -> Polynomial:
    """Second divided difference transported to the classical variable."""
    if _uses_classical_variable(spec):
        return apply_D_pow(ctx, poly.reflect(), 2).reflect()
    return apply_D_pow(ctx, poly, 2)


def _context(spec: FamilySpec, n: int) -> OperatorContext:
    return OperatorContext(lattice_for(spec), capacity=n + 12)


def first_structure(spec: FamilySpec, n: int) -> CoefficientReport:
    """Expand pi * D^2 P_n in {P_{n-2}, ..., P_{n+2}}; n >= 2.

    Coefficients outside the five-term window are reported in
    ``out_of_band`` (any nonzero entry there falsifies the relation).
    """
    if n < 2:
        raise ValueError("first structure relation needs n >= 2")
    ctx = _context(spec, n)
    seq = [classical_monic_family(spec, m) for m in range(n + 3)]
    pi = pi_poly(sl_data_for(spec))
    if _uses_classical_variable(spec):
        pi = pi.reflect()
    target = pi * _classical_d2(spec, ctx, seq[n])
    coeffs = expand_in_sequence(target, seq)
    window = {j: coeffs[n + j] for j in range(-2, 3)}
    out_of_band = {
        m - n: c for m, c in enumerate(coeffs) if c != 0 and not (n - 2 <= m <= n + 2)
    }
    closed = None
    if spec.tag is FamilyTag.WILSON:
        closed = wilson_first_closed_form(n, *spec.params)
    return CoefficientReport(
        "first-structure", n, window, ZERO, out_of_band, closed_form_window=closed
    )


def wilson_first_closed_form(n: int, a, b, c, d) -> Window:
    """The first-structure window for Wilson data from the raising
    coefficients alone: four raising stages applied to the shifted
    member of degree n - 2, scaled by n(n-1).

    For n < 2 the n(n-1) factor kills every entry and the zero window
    comes back directly.
    """
    if n < 2:
        return {j: Fraction(0) for j in range(-2, 3)}
    a, b, c, d = (Fraction(v) for v in (a, b, c, d))
    stages: list[Callable[[int], Fraction]] = [
        lambda m: wilson_A(m, a, b + 1, c + 1, d + 1),
        lambda m: wilson_A(m, b, a, c + 1, d + 1),
        lambda m: wilson_A(m, c, b, a, d + 1),
        lambda m: wilson_A(m, d, b, c, a),
    ]
    window: dict[int, Fraction] = {n - 2: Fraction(1)}
    for stage in stages:
        new: dict[int, Fraction] = {}
        for m, w in window.items():
            if w == 0:
                continue
            new[m + 1] = new.get(m + 1, Fraction(0)) + w
            new[m] = new.get(m, Fraction(0)) + stage(m) * w
        window = new
    scale = Fraction(n * (n - 1))
    return {j: scale * window.get(n + j, Fraction(0)) for j in range(-2, 3)}


def _two_stage_lowering(
    n: int,
    first: tuple[Fraction, Fraction],
    second: Callable[[int], tuple[Fraction, Fraction]],
) -> dict[int, Fraction]:
    """Compose two three-term lowering maps; returns level -> coefficient.

    ``first`` is the (down-1, down-2) coefficient pair applied at level n;
    ``second(m)`` the pair for level m of the intermediate expansion.
    """
    u1, u2 = first
    w1: dict[int, Fraction] = {n: Fraction(1)}
    if n >= 1:
        w1[n - 1] = u1
    if n >= 2:
        w1[n - 2] = u2
    final: dict[int, Fraction] = {}
    for m, w in w1.items():
        if w == 0:
            continue
        v1, v2 = second(m)
        final[m] = final.get(m, Fraction(0)) + w
        if m >= 1:
            final[m - 1] = final.get(m - 1, Fraction(0)) + w * v1
        if m >= 2:
            final[m - 2] = final.get(m - 2, Fraction(0)) + w * v2
    return final


def wilson_second_closed_form(n: int, a, b, c, d) -> Window:
    """Second-structure window for Wilson data from the lowering
    coefficients: raise (a, b) then (c, d) by one, three terms each."""
    a, b, c, d = (Fraction(v) for v in (a, b, c, d))

    def pair_ab() -> tuple[Fraction, Fraction]:
        u1 = wilson_C(n, b, a + 1, c, d) + wilson_C(n, a, b, c, d)
        u2 = wilson_C(n, a, b, c, d) * (
            wilson_C(n - 1, b, a + 1, c, d) if n >= 1 else Fraction(0)
        )
        return u1, u2

    def pair_cd(m: int) -> tuple[Fraction, Fraction]:
        v1 = wilson_C(m, d, c + 1, a + 1, b + 1) + wilson_C(m, c, d, a + 1, b + 1)
        v2 = wilson_C(m, c, d, a + 1, b + 1) * (
            wilson_C(m - 1, d, c + 1, a + 1, b + 1) if m >= 1 else Fraction(0)
        )
        return v1, v2

    final = _two_stage_lowering(n, pair_ab(), pair_cd)
    out: Window = {}
    for j in range(-2, 3):
        m = n + j
        if m >= 2:
            out[j] = final.get(m - 2, Fraction(0)) / (m * (m - 1))
        else:
            out[j] = Fraction(0)
    return out


def aw_second_closed_form(n: int, a, b, c, d, p) -> Window:
    """Second-structure window for Askey-Wilson data; the lowering maps
    carry weight -1/2 per stage."""
    a, b, c, d, p = (Fraction(v) for v in (a, b, c, d, p))
    q = p * p
    lat = Lattice.q_quadratic(Fraction(1, 2), Fraction(1, 2), 0, p)

    def pair_ab() -> tuple[Fraction, Fraction]:
        u1 = -(aw_C(n, b, a * q, c, d, p) + aw_C(n, a, b, c, d, p)) / 2
        u2 = (
            aw_C(n, a, b, c, d, p)
            * (aw_C(n - 1, b, a * q, c, d, p) if n >= 1 else Fraction(0))
            / 4
        )
        return u1, u2

    def pair_cd(m: int) -> tuple[Fraction, Fraction]:
        v1 = -(aw_C(m, d, c * q, a * q, b * q, p) + aw_C(m, c, d, a * q, b * q, p)) / 2
        v2 = (
            aw_C(m, c, d, a * q, b * q, p)
            * (aw_C(m - 1, d, c * q, a * q, b * q, p) if m >= 1 else Fraction(0))
            / 4
        )
        return v1, v2

    final = _two_stage_lowering(n, pair_ab(), pair_cd)
    out: Window = {}
    for j in range(-2, 3):
        m = n + j
        if m >= 2:
            out[j] = final.get(m - 2, Fraction(0)) / (lat.gamma_n(m) * lat.gamma_n(m - 1))
        else:
            out[j] = Fraction(0)
    return out


def _aw_as_printed(spec: FamilySpec, n: int, window: Window) -> dict[int, bool]:
    """Which rows of the tabulated q-side window hold with their printed
    left-hand gamma factors.  The printed factors disagree with the
    expansion on some rows (the derivation here uses
    gamma_{n+j} gamma_{n+j-1} throughout); this records row by row what
    survives as printed."""
    a, b, c, d = spec.params
    p = spec.p
    q = p * p
    lat = lattice_for(spec)

    def pure_pair_ab() -> tuple[Fraction, Fraction]:
        return (
            aw_C(n, b, a * q, c, d, p) + aw_C(n, a, b, c, d, p),
            aw_C(n, a, b, c, d, p)
            * (aw_C(n - 1, b, a * q, c, d, p) if n >= 1 else Fraction(0)),
        )

    def pure_pair_cd(m: int) -> tuple[Fraction, Fraction]:
        return (
            aw_C(m, d, c * q, a * q, b * q, p) + aw_C(m, c, d, a * q, b * q, p),
            aw_C(m, c, d, a * q, b * q, p)
            * (aw_C(m - 1, d, c * q, a * q, b * q, p) if m >= 1 else Fraction(0)),
        )

    pure = _two_stage_lowering(n, pure_pair_ab(), pure_pair_cd)
    g = lat.gamma_n
    printed_factors: dict[int, Callable[[], Fraction]] = {
        2: lambda: g(n + 2) * g(n + 1),
        1: lambda: -2 * g(n) * (g(n - 1) if n >= 1 else Fraction(0)),
        0: lambda: 4 * g(n + 1) * g(n),
        -1: lambda: -8 * g(n) * (g(n - 1) if n >= 1 else Fraction(0)),
        -2: lambda: 16 * (g(n - 1) if n >= 1 else Fraction(0)) * (g(n - 2) if n >= 2 else Fraction(0)),
    }
    out: dict[int, bool] = {}
    for j in range(-2, 3):
        m = n + j
        rhs = pure.get(m - 2, Fraction(0)) if m >= 2 else Fraction(0)
        if j == 2:
            rhs = Fraction(1)
        out[j] = printed_factors[j]() * window[j] == rhs
    return out


def second_structure(spec: FamilySpec, n: int) -> CoefficientReport:
    """Expand P_n in {D^2 P_{n-2}, ..., D^2 P_{n+2}}; n >= 2.

    Offsets whose second derivative is the zero polynomial (n + j < 2)
    cannot contribute and get coefficient 0.  The residual left by the
    remaining basis members must vanish for the relation to hold.
    """
    if n < 2:
        raise ValueError("second structure relation needs n >= 2")
    ctx = _context(spec, n)
    seq = [classical_monic_family(spec, m) for m in range(n + 3)]
    basis: list[Polynomial] = []
    offsets: list[int] = []
    for j in range(-2, 3):
        d2 = _classical_d2(spec, ctx, seq[n + j])
        if not d2.is_zero:
            basis.append(d2)
            offsets.append(j)
    coeffs, residual = expand_with_residual(seq[n], basis)
    window: Window = {j: Fraction(0) for j in range(-2, 3)}
    for j, coeff in zip(offsets, coeffs):
        window[j] = coeff
    closed = None
    as_printed = None
    if spec.tag is FamilyTag.WILSON:
        closed = wilson_second_closed_form(n, *spec.params)
    elif spec.tag is FamilyTag.ASKEY_WILSON:
        closed = aw_second_closed_form(n, *spec.params, spec.p)
        as_printed = _aw_as_printed(spec, n, window)
    return CoefficientReport(
        "second-structure",
        n,
        window,
        residual,
        {},
        closed_form_window=closed,
        as_printed=as_printed,
    )


def verify_m_operator(spec: FamilySpec, n: int) -> Polynomial:
    """Residual of the averaging-operator connection, exactly.

    With (a_n, b_n) the recurrence coefficients in the lattice variable,

        S(S P_n) = P_n + U1/(2 alpha) * [D^2 P_{n+1} + b_n D^2 P_{n-1}
                   + (a_n - alpha**2 x - beta (alpha+1) - U1) D^2 P_n]
                   + alpha U2 D^2 P_n.

    The U1/(2 alpha) weight on the recurrence block is forced by the
    operator composition rules; a constant 1/alpha there does not verify.
    For n = 0 every derivative term vanishes and the check is S(S 1) = 1.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    lat = lattice_for(spec)
    ctx = OperatorContext(lat, capacity=n + 12)
    cs = lat.constants()
    alpha, beta = cs.alpha, cs.beta
    u1, u2 = lat.u1_poly(), lat.u2_poly()
    a_n, b_n = ttrr_coeffs(spec, n, variable="lattice")[n]
    members = {m: monic_family(spec, m) for m in (n, n + 1)}
    members[n - 1] = monic_family(spec, n - 1) if n >= 1 else ZERO
    d2 = {m: apply_D_pow(ctx, poly, 2) for m, poly in members.items()}
    lhs = apply_S(ctx, apply_S(ctx, members[n]))
    bracket = Polynomial([a_n - beta * (alpha + 1)]) - alpha * alpha * X - u1
    rhs = (
        members[n]
        + (u1 * Fraction(1, 2) * (1 / alpha))
        * (d2[n + 1] + b_n * d2[n - 1] + bracket * d2[n])
        + alpha * u2 * d2[n]
    )
    return lhs - rhs


@dataclass(frozen=True)
class SurrogateReport:
    n: int
    window: Window  # offsets -1, 0, 1 against D^2 P_{n+j}
    residual: Polynomial
    leading_expected: Fraction

    @property
    def leading_ok(self) -> bool:
        return self.window.get(1, Fraction(0)) == self.leading_expected

    @property
    def down_nonzero(self) -> bool:
        return self.window.get(-1, Fraction(0)) != 0

    @property
    def ok(self) -> bool:
        return self.residual.is_zero and self.leading_ok and self.down_nonzero


def derivative_window(
    lat: Lattice, seq: Sequence[Polynomial], n: int, d2=None
) -> tuple[Window, Polynomial]:
    """Expand x * D^2 seq[n] / gamma_n against D^2 seq[n-1..n+1].

    Returns the three-term window and whatever residual falls outside it;
    a nonzero residual means the sequence's second derivatives do not
    close into a three-term recurrence.
    """
    ctx = OperatorContext(lat, capacity=seq[n + 1].degree + 10)
    if d2 is None:
        d2 = lambda poly: apply_D_pow(ctx, poly, 2)
    basis = [d2(seq[n - 1]), d2(seq[n]), d2(seq[n + 1])]
    offsets = [-1, 0, 1]
    keep = [(off, b) for off, b in zip(offsets, basis) if not b.is_zero]
    target = X * d2(seq[n]) * (1 / lat.gamma_n(n))
    coeffs, residual = expand_with_residual(target, [b for _, b in keep])
    window: Window = {off: Fraction(0) for off in offsets}
    for (off, _), coeff in zip(keep, coeffs):
        window[off] = coeff
    return window, residual


def derivative_ttrr_surrogate(spec: FamilySpec, n: int) -> SurrogateReport:
    """Recurrence surrogate for orthogonality of {D^2 P_n}; n >= 3.

    Checks that x * D^2 P_n / gamma_n has exactly three-term support with
    the leading coefficient gamma_{n-1} / (gamma_{n+1} gamma_n) and a
    nonzero down-coefficient.
    """
    if n < 3:
        raise ValueError("the derivative recurrence surrogate needs n >= 3")
    lat = lattice_for(spec)
    ctx = _context(spec, n)
    seq = [classical_monic_family(spec, m) for m in range(n + 2)]
    window, residual = derivative_window(
        lat, seq, n, d2=lambda poly: _classical_d2(spec, ctx, poly)
    )
    expected = lat.gamma_n(n - 1) / (lat.gamma_n(n + 1) * lat.gamma_n(n))
    return SurrogateReport(n, window, residual, expected)
