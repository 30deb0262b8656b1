"""Request/response models and the operation layer.

The four operations (construct, verify, coeffs, classify) are plain
functions over pydantic models; the HTTP app and the command-line client
both call them, so outputs are identical regardless of transport.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Literal

from pydantic import BaseModel, Field, model_validator

from . import serialize
from .bochner import FamilyTag, SLData, classify, verify_sl
from .families import (
    FamilySpec,
    classical_monic_family,
    monic_family,
    sl_data_for,
    verify_contiguous,
)
from .structure import (
    derivative_ttrr_surrogate,
    first_structure,
    second_structure,
    verify_m_operator,
)

DEFAULT_N_CAP = 12

ALL_CHECKS = (
    "sturm-liouville",
    "first-structure",
    "second-structure",
    "m-operator",
    "derivative-surrogate",
    "contiguous",
)

CONTIGUOUS_TAGS = (FamilyTag.WILSON, FamilyTag.ASKEY_WILSON)


class FamilyModel(BaseModel):
    family: str
    a: str | None = None
    b: str | None = None
    c: str | None = None
    d: str | None = None
    p: str | None = None

    def to_spec(self) -> FamilySpec:
        data = {k: v for k, v in self.model_dump().items() if v is not None}
        return serialize.family_from_json(data)


class LatticeModel(BaseModel):
    kind: str
    c1: str | None = None
    c2: str | None = None
    c3: str | None = None
    c4: str | None = None
    c5: str | None = None
    c6: str | None = None
    p: str | None = None

    def to_lattice(self):
        data = {k: v for k, v in self.model_dump().items() if v is not None}
        return serialize.lattice_from_json(data)


class _CappedRequest(BaseModel):
    n_cap: int = Field(default=DEFAULT_N_CAP, ge=0)

    def check_degree(self, n: int) -> int:
        if n < 0:
            raise ValueError("degree must be nonnegative")
        if n > self.n_cap:
            raise ValueError(f"degree {n} exceeds the configured cap {self.n_cap}")
        return n


class ConstructRequest(_CappedRequest):
    family: FamilyModel
    n_max: int = 0


class ConstructResponse(BaseModel):
    family: dict[str, str]
    variable: str
    rows: list[list[str]]


class VerifyRequest(_CappedRequest):
    family: FamilyModel
    n_max: int = 6
    checks: list[str] | None = None
    lambda_offset: str | None = None

    @model_validator(mode="after")
    def _known_checks(self):
        if self.checks is not None:
            unknown = [c for c in self.checks if c not in ALL_CHECKS]
            if unknown:
                raise ValueError(f"unknown checks: {unknown}")
        return self


class VerifyResult(BaseModel):
    identity: str
    n: int
    ok: bool
    detail: str | None = None


class VerifyResponse(BaseModel):
    ok: bool
    family: dict[str, str]
    n_max: int
    results: list[VerifyResult]


class CoeffsRequest(_CappedRequest):
    family: FamilyModel
    relation: Literal["first", "second", "both"] = "both"
    n: int | None = None
    n_max: int | None = None

    @model_validator(mode="after")
    def _one_range(self):
        if self.n is None and self.n_max is None:
            raise ValueError("coeffs needs n or n_max")
        return self


class CoeffsResponse(BaseModel):
    family: dict[str, str]
    reports: list[dict[str, Any]]


class ClassifyRequest(BaseModel):
    lattice: LatticeModel
    phi: list[str]
    psi: list[str]


class ClassifyResponse(BaseModel):
    family: str
    params: list[str]
    u: str | None = None


def run_construct(req: ConstructRequest) -> ConstructResponse:
    spec = req.family.to_spec()
    n_max = req.check_degree(req.n_max)
    rows = [
        serialize.poly_to_json(classical_monic_family(spec, m))
        for m in range(n_max + 1)
    ]
    variable = "s^2" if spec.tag in (FamilyTag.WILSON, FamilyTag.CONTINUOUS_DUAL_HAHN) else "x"
    return ConstructResponse(
        family=serialize.family_to_json(spec), variable=variable, rows=rows
    )


def _verify_rows(spec: FamilySpec, n_max: int, checks, lambda_offset: Fraction):
    rows: list[VerifyResult] = []

    def want(name: str) -> bool:
        return checks is None or name in checks

    if want("sturm-liouville"):
        sl = sl_data_for(spec)
        for n in range(n_max + 1):
            poly = monic_family(spec, n)
            residual = verify_sl(sl, n, poly) + lambda_offset * poly
            detail = None if residual.is_zero else f"residual degree {residual.degree}"
            rows.append(
                VerifyResult(
                    identity="sturm-liouville", n=n, ok=residual.is_zero, detail=detail
                )
            )
    if want("first-structure"):
        for n in range(2, n_max + 1):
            report = first_structure(spec, n)
            detail = None
            if not report.ok:
                detail = "window defect" if report.residual_zero else "nonzero residual"
            rows.append(
                VerifyResult(identity="first-structure", n=n, ok=report.ok, detail=detail)
            )
    if want("second-structure"):
        for n in range(2, n_max + 1):
            report = second_structure(spec, n)
            detail = None if report.ok else "expansion defect"
            rows.append(
                VerifyResult(identity="second-structure", n=n, ok=report.ok, detail=detail)
            )
    if want("m-operator"):
        for n in range(1, n_max + 1):
            residual = verify_m_operator(spec, n)
            rows.append(
                VerifyResult(
                    identity="m-operator",
                    n=n,
                    ok=residual.is_zero,
                    detail=None if residual.is_zero else "nonzero residual",
                )
            )
    if want("derivative-surrogate"):
        for n in range(3, n_max + 1):
            report = derivative_ttrr_surrogate(spec, n)
            rows.append(
                VerifyResult(
                    identity="derivative-surrogate",
                    n=n,
                    ok=report.ok,
                    detail=None if report.ok else "three-term support fails",
                )
            )
    if want("contiguous") and spec.tag in CONTIGUOUS_TAGS:
        report = verify_contiguous(spec, n_max)
        for check in report.checks:
            rows.append(
                VerifyResult(
                    identity=f"contiguous:{check.identity}",
                    n=check.n,
                    ok=check.ok,
                    detail=None if check.ok else "nonzero residual",
                )
            )
    rows.sort(key=lambda r: (r.identity, r.n))
    return rows


def run_verify(req: VerifyRequest) -> VerifyResponse:
    spec = req.family.to_spec()
    n_max = req.check_degree(req.n_max)
    offset = (
        serialize.parse_fraction(req.lambda_offset)
        if req.lambda_offset is not None
        else Fraction(0)
    )
    rows = _verify_rows(spec, n_max, req.checks, offset)
    return VerifyResponse(
        ok=all(r.ok for r in rows),
        family=serialize.family_to_json(spec),
        n_max=n_max,
        results=rows,
    )


def run_coeffs(req: CoeffsRequest) -> CoeffsResponse:
    spec = req.family.to_spec()
    if req.n is not None:
        degrees = [req.check_degree(req.n)]
    else:
        degrees = list(range(2, req.check_degree(req.n_max) + 1))
    reports = []
    for n in degrees:
        if n < 2:
            raise ValueError("structure windows need n >= 2")
        if req.relation in ("first", "both"):
            reports.append(serialize.coefficient_report_to_json(first_structure(spec, n)))
        if req.relation in ("second", "both"):
            reports.append(serialize.coefficient_report_to_json(second_structure(spec, n)))
    return CoeffsResponse(family=serialize.family_to_json(spec), reports=reports)


def run_classify(req: ClassifyRequest) -> ClassifyResponse:
    lat = req.lattice.to_lattice()
    phi = serialize.poly_from_json(req.phi)
    psi = serialize.poly_from_json(req.psi)
    if psi.degree != 1:
        raise ValueError("classification requires deg psi = 1")
    sl = SLData.from_polys(phi, psi, lat)
    result = classify(sl)
    payload = serialize.classified_to_json(result)
    return ClassifyResponse(
        family=payload["family"], params=payload["params"], u=payload.get("u")
    )
