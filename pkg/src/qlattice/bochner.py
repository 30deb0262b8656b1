"""Constructive engine for divided-difference Sturm-Liouville equations.

The central object is the equation

    phi(x) D^2 y + psi(x) S D y + lambda_n y = 0

with deg phi <= 2 and deg psi = 1, posed on a quadratic or q-quadratic
lattice.  Its degree-n polynomial solutions expand in the Newton basis
anchored at a root eta of

    sigma(x(s)) = phi(x(s)) - (x(s+1/2) - x(s-1/2))/2 * psi(x(s)),

with expansion coefficients obeying a two-term recurrence.  This module
builds those solutions, solves the symmetric special case phi = phi2 x**2
+ phi0, psi = psi1 x (where sigma has no usable root and a parity basis is
needed instead), and classifies equation data into the named families by
factoring the auxiliary polynomial that represents sigma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .divdiff import OperatorContext, apply_D, apply_S
from .errors import (
    ClassificationScopeError,
    DegenerateParameterError,
    NormalFormError,
)
from .lattice import QUADRATIC, Q_QUADRATIC, Lattice
from .poly import NewtonBasisSpec, Polynomial, k_basis_poly, newton_basis_poly


@dataclass(frozen=True)
class SLData:
    """Coefficient data (phi, psi) of one equation on one lattice."""

    phi2: Fraction
    phi1: Fraction
    phi0: Fraction
    psi1: Fraction
    psi0: Fraction
    lat: Lattice

    @classmethod
    def from_polys(cls, phi: Polynomial, psi: Polynomial, lat: Lattice) -> "SLData":
        if phi.degree > 2 or psi.degree > 1:
            raise ValueError("phi must have degree <= 2 and psi degree <= 1")
        return cls(
            phi2=phi.coefficient(2),
            phi1=phi.coefficient(1),
            phi0=phi.coefficient(0),
            psi1=psi.coefficient(1),
            psi0=psi.coefficient(0),
            lat=lat,
        )

    def phi(self) -> Polynomial:
        return Polynomial([self.phi0, self.phi1, self.phi2])

    def psi(self) -> Polynomial:
        return Polynomial([self.psi0, self.psi1])

    def sigma_at(self, s) -> Fraction:
        """sigma(x(s)) = phi(x(s)) - step/2 * psi(x(s)) at a grid point."""
        x = self.lat.eval_x(s)
        return self.phi()(x) - self.lat.step(s) / 2 * self.psi()(x)

    def sigma_at_eta(self, eta) -> Fraction:
        """Same as ``sigma_at`` but through the anchor encoding."""
        x = self.lat.x_at_eta(eta, 0)
        return self.phi()(x) - self.lat.step_at_eta(eta) / 2 * self.psi()(x)


class FamilyTag(str, Enum):
    ASKEY_WILSON = "askey-wilson"
    CONTINUOUS_DUAL_Q_HAHN = "continuous-dual-q-hahn"
    AL_SALAM_CHIHARA = "al-salam-chihara"
    CONTINUOUS_BIG_Q_HERMITE = "continuous-big-q-hermite"
    CONTINUOUS_Q_HERMITE = "continuous-q-hermite"
    WILSON = "wilson"
    CONTINUOUS_DUAL_HAHN = "continuous-dual-hahn"


PARAM_COUNT = {
    FamilyTag.ASKEY_WILSON: 4,
    FamilyTag.CONTINUOUS_DUAL_Q_HAHN: 3,
    FamilyTag.AL_SALAM_CHIHARA: 2,
    FamilyTag.CONTINUOUS_BIG_Q_HERMITE: 1,
    FamilyTag.CONTINUOUS_Q_HERMITE: 0,
    FamilyTag.WILSON: 4,
    FamilyTag.CONTINUOUS_DUAL_HAHN: 3,
}


@dataclass(frozen=True)
class AuxPolynomial:
    """sigma in disguise: a polynomial of degree <= 4 in X.

    On the q-quadratic normal form (c1 = c2 = 1/2, c3 = 0) X stands for
    q**s and sigma(x(s)) = P(X)/X**2; on quadratic lattices with c6 = 0,
    X stands for s and sigma(x(s)) = P(X) directly.
    """

    poly: Polynomial
    variable: str  # "q^s" or "s"


@dataclass(frozen=True)
class ClassifiedFamily:
    tag: FamilyTag
    params: tuple[Fraction, ...]
    u: Fraction


def lambda_for(sl: SLData, n: int) -> Fraction:
    """Eigenvalue making a degree-n polynomial solution possible."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return Fraction(0)
    lat = sl.lat
    return -lat.gamma_n(n) * (
        lat.gamma_n(n - 1) * sl.phi2 + lat.alpha_n(n - 1) * sl.psi1
    )


def _is_aw_normal_form(lat: Lattice) -> bool:
    return (
        lat.kind == Q_QUADRATIC
        and lat.c1 == Fraction(1, 2)
        and lat.c2 == Fraction(1, 2)
        and lat.c3 == 0
    )


def sigma_aux(sl: SLData) -> AuxPolynomial:
    """The auxiliary polynomial whose roots anchor the Newton basis.

    Requires one of the two normal forms: x(s) = (q**-s + q**s)/2 or
    x(s) = c4 s**2 + c5 s.  Other lattices must be re-normalized by the
    caller first.
    """
    lat = sl.lat
    if _is_aw_normal_form(lat):
        p = lat.p
        half_span = (p - 1 / p) / 2  # (q^(1/2) - q^(-1/2)) / 2 with q = p**2
        coeffs = [
            sl.phi2 / 4 + sl.psi1 * half_span / 4,
            sl.phi1 / 2 + sl.psi0 * half_span / 2,
            sl.phi2 / 2 + sl.phi0,
            sl.phi1 / 2 - sl.psi0 * half_span / 2,
            sl.phi2 / 4 - sl.psi1 * half_span / 4,
        ]
        return AuxPolynomial(Polynomial(coeffs), "q^s")
    if lat.kind == QUADRATIC and lat.c6 == 0:
        x_of_s = Polynomial([0, lat.c5, lat.c4])
        half_step = Polynomial([lat.c5 / 2, lat.c4])
        phi_comp = sl.phi2 * x_of_s * x_of_s + sl.phi1 * x_of_s + Polynomial([sl.phi0])
        psi_comp = sl.psi1 * x_of_s + Polynomial([sl.psi0])
        return AuxPolynomial(phi_comp - half_step * psi_comp, "s")
    raise NormalFormError(
        "sigma factorization needs x(s) = (q**-s + q**s)/2 or a quadratic "
        "lattice with c6 = 0; re-normalize the lattice first"
    )


def recurrence_coeffs(sl: SLData, eta, lam: Fraction, k: int) -> tuple[Fraction, Fraction]:
    """(A_k, B_k) of the two-term relation A_k d_k + B_k d_{k+1} = 0.

    A_k collects the w_k coefficient produced by d_k itself; B_k the one
    produced by d_{k+1}, whose quadratic part therefore carries the index
    pair gamma_{k+1} gamma_k (both factors come from the degree drop of
    w_{k+1}).
    """
    lat = sl.lat
    g_k = lat.gamma_n(k)
    a_k = lam
    if k >= 1:
        a_k += g_k * (lat.gamma_n(k - 1) * sl.phi2 + lat.alpha_n(k - 1) * sl.psi1)
    x_eta = lat.x_at_eta(eta, 0)
    x_k = lat.x_at_eta(eta, k)
    b_k = lat.gamma_n(k + 1) * g_k * (
        sl.phi2 * (x_k + x_eta) + sl.phi1 - sl.psi1 * lat.step_at_eta(eta) / 2
    ) + lat.alpha_n(k) * lat.gamma_n(k + 1) * sl.psi()(x_k)
    return a_k, b_k


def solve_dk(sl: SLData, eta, n: int) -> list[Fraction]:
    """Newton-basis coefficients d_0..d_n of the degree-n solution.

    ``eta`` encodes the anchor (a root of sigma): the anchor itself on
    quadratic lattices, q**eta on q-quadratic ones.  Normalized so the top
    coefficient d_n is 1, then iterated downward; the recurrence uses the
    eigenvalue of ``lambda_for`` and self-checks that its top coefficient
    A_n vanishes identically (the termination condition).
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    eta = Fraction(eta)
    if sl.sigma_at_eta(eta) != 0:
        raise ValueError("anchor must encode a root of sigma")
    lam = lambda_for(sl, n)
    a_n, _ = recurrence_coeffs(sl, eta, lam, n)
    if a_n != 0:
        raise AssertionError("recurrence did not terminate: A_n != 0")
    d = [Fraction(0)] * (n + 1)
    d[n] = Fraction(1)
    for k in range(n - 1, -1, -1):
        a_k, b_k = recurrence_coeffs(sl, eta, lam, k)
        if a_k == 0:
            raise DegenerateParameterError(
                f"non-generic parameters: d_k recurrence breaks down at k={k}"
            )
        # b_k = 0 only truncates the tail of the expansion; that is a
        # valid solution under the d_n = 1 normalization.
        d[k] = -b_k * d[k + 1] / a_k
    return d


def build_solution(sl: SLData, eta, n: int) -> Polynomial:
    """Degree-n monic solution sum_k d_k w_k(x, eta) of the equation."""
    d = solve_dk(sl, eta, n)
    spec = NewtonBasisSpec(sl.lat, Fraction(eta))
    out = Polynomial()
    for k, coeff in enumerate(d):
        if coeff != 0:
            out = out + coeff * newton_basis_poly(spec, k)
    if out.degree != n or out.leading != 1:
        raise AssertionError("assembled solution is not monic of the requested degree")
    return out


def solve_symmetric(lat: Lattice, phi2, phi0, psi1, n: int) -> Polynomial:
    """Monic degree-n solution for phi = phi2 x**2 + phi0, psi = psi1 x.

    Works on q-quadratic lattices with c3 = 0, where sigma has no usable
    root and the solution instead expands in the parity basis K_j with a
    two-term recurrence stepping j by 2.  Every square root the recurrence
    formally contains enters squared, so the arithmetic stays rational.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if lat.kind != Q_QUADRATIC or lat.c3 != 0:
        raise NormalFormError("symmetric solver requires a q-quadratic lattice with c3 = 0")
    phi2, phi0, psi1 = Fraction(phi2), Fraction(phi0), Fraction(psi1)
    p = lat.p
    alpha = lat.alpha
    c1c2 = lat.c1 * lat.c2
    lam = -lat.gamma_n(n) * (lat.gamma_n(n - 1) * phi2 + lat.alpha_n(n - 1) * psi1) if n else Fraction(0)

    def z_sq(m: int) -> Fraction:
        # (i sqrt(c1 c2) (q^(m/2) - q^(-m/2)))**2, rational by the square
        return -c1c2 * (p**m - p**-m) ** 2

    def a_coeff(j: int) -> Fraction:
        if j == 0:
            return lam
        g_j = lat.gamma_n(j)
        return g_j * (phi2 * lat.gamma_n(j - 1) + (g_j - alpha * lat.gamma_n(j - 1)) * psi1) + lam

    def b_coeff(j: int) -> Fraction:
        g_j2, g_j1, g_j = lat.gamma_n(j + 2), lat.gamma_n(j + 1), lat.gamma_n(j)
        phi_at = phi2 * z_sq(j) + phi0
        return g_j2 * g_j1 * phi_at + psi1 * g_j2 * (g_j * z_sq(j + 1) - alpha * g_j1 * z_sq(j))

    if n >= 1 and a_coeff(n) != 0:
        raise AssertionError("symmetric recurrence did not terminate: A_n != 0")
    d: dict[int, Fraction] = {n: Fraction(1)}
    j = n - 2
    while j >= 0:
        a_j = a_coeff(j)
        if a_j == 0:
            raise DegenerateParameterError("non-generic symmetric parameters")
        d[j] = -b_coeff(j) * d[j + 2] / a_j
        j -= 2
    out = Polynomial()
    for j, coeff in d.items():
        if coeff != 0:
            out = out + coeff * k_basis_poly(lat, j)
    if out.degree != n:
        raise AssertionError("symmetric solution has the wrong degree")
    return out.monic()


def verify_sl(sl: SLData, n: int, poly: Polynomial, ctx: OperatorContext | None = None) -> Polynomial:
    """Residual phi * D^2 P + psi * S D P + lambda_n * P, exactly.

    The zero polynomial comes back exactly when ``poly`` solves the
    degree-n equation.
    """
    if ctx is None:
        ctx = OperatorContext(sl.lat, capacity=max(8, poly.degree + 6))
    first = apply_D(ctx, poly)
    return (
        sl.phi() * apply_D(ctx, first)
        + sl.psi() * apply_S(ctx, first)
        + lambda_for(sl, n) * poly
    )


# -- classification ----------------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _deflate(poly: Polynomial, root: Fraction) -> Polynomial:
    """Divide by (X - root); the caller guarantees root is exact."""
    cs = poly.coeffs
    quot = [Fraction(0)] * (len(cs) - 1)
    carry = cs[-1]
    quot[-1] = carry
    for i in range(len(cs) - 2, 0, -1):
        carry = cs[i] + carry * root
        quot[i - 1] = carry
    return Polynomial(quot)


def _rational_roots(poly: Polynomial) -> tuple[list[Fraction], Polynomial]:
    """All rational roots with multiplicity, plus the rootless remainder."""
    roots: list[Fraction] = []
    rest = poly
    while rest.degree >= 1 and rest.coefficient(0) == 0:
        roots.append(Fraction(0))
        rest = Polynomial(rest.coeffs[1:])
    while rest.degree >= 1:
        scale = 1
        for c in rest.coeffs:
            scale = scale * c.denominator // math.gcd(scale, c.denominator)
        ints = [int(c * scale) for c in rest.coeffs]
        found = None
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for sign in (1, -1):
                    cand = Fraction(sign * num, den)
                    if rest(cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        rest = _deflate(rest, found)
    return roots, rest


def _shift_out_c6(sl: SLData) -> SLData:
    """Relocate quadratic-lattice data onto the c6 = 0 normal form.

    Substituting x -> x - c6 changes the coefficient data but leaves
    sigma unchanged as a function of the grid argument, so the
    classification result is that of the original equation.
    """
    c6 = sl.lat.c6
    lat0 = Lattice.quadratic(sl.lat.c4, sl.lat.c5, 0)
    return SLData(
        phi2=sl.phi2,
        phi1=sl.phi1 + 2 * sl.phi2 * c6,
        phi0=sl.phi0 + sl.phi1 * c6 + sl.phi2 * c6 * c6,
        psi1=sl.psi1,
        psi0=sl.psi0 + sl.psi1 * c6,
        lat=lat0,
    )


def classify(sl: SLData) -> ClassifiedFamily:
    """Name the family an equation's polynomial solutions belong to.

    Factors the auxiliary polynomial over the rationals and reads the
    family and its parameters off the root pattern.  Quadratic lattices
    with c6 != 0 are normalized by the constant shift first.  Equation
    data whose roots are irrational is constructible (the forward
    direction only needs the anchor) but deliberately outside
    classification scope.
    """
    if sl.lat.kind == QUADRATIC and sl.lat.c6 != 0:
        sl = _shift_out_c6(sl)
    aux = sigma_aux(sl)
    poly = aux.poly
    if poly.is_zero:
        raise NormalFormError("sigma vanishes identically; phi and psi are both zero")
    lat = sl.lat
    if aux.variable == "q^s" and poly.degree < 4:
        raise ClassificationScopeError(
            "auxiliary polynomial has degree < 4: the solutions are a "
            "parameter limit outside the tagged families"
        )
    if aux.variable == "s" and poly.degree < 3:
        raise ClassificationScopeError("inconsistent psi1 = 0 branch: degree < 3")
    roots, rest = _rational_roots(poly)
    if not rest.is_zero and rest.degree >= 1:
        raise ClassificationScopeError("parameters outside rational-root scope")
    if aux.variable == "q^s":
        nonzero = sorted(r for r in roots if r != 0)
        by_count = {
            4: FamilyTag.ASKEY_WILSON,
            3: FamilyTag.CONTINUOUS_DUAL_Q_HAHN,
            2: FamilyTag.AL_SALAM_CHIHARA,
            1: FamilyTag.CONTINUOUS_BIG_Q_HERMITE,
            0: FamilyTag.CONTINUOUS_Q_HERMITE,
        }
        return ClassifiedFamily(by_count[len(nonzero)], tuple(nonzero), lat.c2 / lat.c1)
    u = lat.c5 / lat.c4
    tag = FamilyTag.WILSON if poly.degree == 4 else FamilyTag.CONTINUOUS_DUAL_HAHN
    params = tuple(sorted(r + u / 2 for r in roots))
    return ClassifiedFamily(tag, params, u)
