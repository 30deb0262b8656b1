"""JSON encoding of the exact-arithmetic domain objects.

Rationals travel as strings, "num/den" or a bare integer string, so JSON
round-trips never lose exactness.  Polynomials are lists of such strings,
constant term first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping

from .bochner import ClassifiedFamily, FamilyTag, PARAM_COUNT
from .families import FamilySpec, Q_TAGS
from .lattice import QUADRATIC, Q_QUADRATIC, Lattice
from .poly import Polynomial
from .structure import CoefficientReport, SurrogateReport

PARAM_LETTERS = "abcd"


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text) -> Fraction:
    """Parse "num/den" or an integer string; rejects non-rationals."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def poly_to_json(poly: Polynomial) -> list[str]:
    return [format_fraction(c) for c in poly.coeffs]


def poly_from_json(data) -> Polynomial:
    if not isinstance(data, (list, tuple)):
        raise ValueError("polynomial must be a list of rational strings")
    return Polynomial([parse_fraction(c) for c in data])


def lattice_to_json(lat: Lattice) -> dict[str, str]:
    if lat.kind == QUADRATIC:
        return {
            "kind": "quadratic",
            "c4": format_fraction(lat.c4),
            "c5": format_fraction(lat.c5),
            "c6": format_fraction(lat.c6),
        }
    return {
        "kind": "q",
        "c1": format_fraction(lat.c1),
        "c2": format_fraction(lat.c2),
        "c3": format_fraction(lat.c3),
        "p": format_fraction(lat.p),
    }


def lattice_from_json(data: Mapping[str, Any]) -> Lattice:
    kind = data.get("kind")
    if kind in ("q", "q-quadratic", Q_QUADRATIC):
        return Lattice.q_quadratic(
            parse_fraction(data.get("c1", "0")),
            parse_fraction(data.get("c2", "0")),
            parse_fraction(data.get("c3", "0")),
            parse_fraction(data.get("p", "0")),
        )
    if kind == "quadratic":
        return Lattice.quadratic(
            parse_fraction(data.get("c4", "0")),
            parse_fraction(data.get("c5", "0")),
            parse_fraction(data.get("c6", "0")),
        )
    raise ValueError(f"unknown lattice kind {kind!r}")


def family_to_json(spec: FamilySpec) -> dict[str, str]:
    out = {"family": spec.tag.value}
    for letter, value in zip(PARAM_LETTERS, spec.params):
        out[letter] = format_fraction(value)
    if spec.p is not None:
        out["p"] = format_fraction(spec.p)
    return out


def family_from_json(data: Mapping[str, Any]) -> FamilySpec:
    name = data.get("family")
    try:
        tag = FamilyTag(name)
    except ValueError:
        raise ValueError(f"unknown family {name!r}") from None
    count = PARAM_COUNT[tag]
    params = []
    for letter in PARAM_LETTERS[:count]:
        if letter not in data:
            raise ValueError(f"{tag.value} needs parameter {letter!r}")
        params.append(parse_fraction(data[letter]))
    p = None
    if tag in Q_TAGS:
        if "p" not in data:
            raise ValueError(f"{tag.value} needs the lattice parameter p")
        p = parse_fraction(data["p"])
    return FamilySpec(tag, tuple(params), p)


def window_to_json(window: Mapping[int, Fraction]) -> dict[str, str]:
    return {str(k): format_fraction(v) for k, v in sorted(window.items())}


def classified_to_json(result: ClassifiedFamily) -> dict[str, Any]:
    out: dict[str, Any] = {
        "family": result.tag.value,
        "params": [format_fraction(v) for v in result.params],
    }
    # u marks the grid shift on quadratic lattices (the parameters were
    # read off as root + u/2); the q normal form fixes u = 1, not worth
    # repeating in every payload.
    if result.tag in (FamilyTag.WILSON, FamilyTag.CONTINUOUS_DUAL_HAHN) and result.u != 0:
        out["u"] = format_fraction(result.u)
    return out


def coefficient_report_to_json(report: CoefficientReport) -> dict[str, Any]:
    out: dict[str, Any] = {
        "relation": report.relation,
        "n": report.n,
        "window": window_to_json(report.window),
        "residual_zero": report.residual_zero,
    }
    if report.out_of_band:
        out["out_of_band"] = window_to_json(report.out_of_band)
    if report.closed_form_window is not None:
        out["closed_form"] = window_to_json(report.closed_form_window)
        out["closed_form_match"] = report.closed_form_match
    if report.as_printed is not None:
        out["as_printed"] = {str(k): v for k, v in sorted(report.as_printed.items())}
    return out


def surrogate_report_to_json(report: SurrogateReport) -> dict[str, Any]:
    return {
        "n": report.n,
        "window": window_to_json(report.window),
        "residual_zero": report.residual.is_zero,
        "leading_expected": format_fraction(report.leading_expected),
        "leading_ok": report.leading_ok,
        "down_nonzero": report.down_nonzero,
    }
