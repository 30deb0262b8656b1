"""HTTP front end exposing the operation layer.

Run with ``uvicorn qlattice.app:app``.  Every endpoint is stateless and
deterministic; errors carry a ``kind`` so clients can distinguish bad
input from degenerate parameters and classification-scope refusals.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import api
from .errors import (
    ClassificationScopeError,
    DegenerateParameterError,
    NormalFormError,
    QLatticeError,
)

app = FastAPI(
    title="qlattice",
    description=(
        "Exact construction and verification of classical orthogonal "
        "polynomials of the quadratic and q-quadratic variable"
    ),
)

_ERROR_KINDS = [
    (DegenerateParameterError, "degenerate-parameters", 422),
    (ClassificationScopeError, "classification-scope", 422),
    (NormalFormError, "invalid-input", 400),
    (QLatticeError, "invalid-input", 400),
    (ValueError, "invalid-input", 400),
]


def _error_response(exc: Exception) -> JSONResponse:
    for klass, kind, status in _ERROR_KINDS:
        if isinstance(exc, klass):
            return JSONResponse(
                status_code=status, content={"detail": {"kind": kind, "message": str(exc)}}
            )
    raise exc


@app.exception_handler(QLatticeError)
async def _qlattice_error(request: Request, exc: QLatticeError):
    return _error_response(exc)


@app.exception_handler(ValueError)
async def _value_error(request: Request, exc: ValueError):
    return _error_response(exc)


@app.get("/health")
def health() -> dict[str, str]:
    return {"status": "ok"}


@app.post("/construct", response_model=api.ConstructResponse)
def construct(req: api.ConstructRequest) -> api.ConstructResponse:
    return api.run_construct(req)


@app.post("/verify", response_model=api.VerifyResponse)
def verify(req: api.VerifyRequest) -> api.VerifyResponse:
    return api.run_verify(req)


@app.post("/coeffs", response_model=api.CoeffsResponse)
def coeffs(req: api.CoeffsRequest) -> api.CoeffsResponse:
    return api.run_coeffs(req)


@app.post("/classify", response_model=api.ClassifyResponse)
def classify(req: api.ClassifyRequest) -> api.ClassifyResponse:
    return api.run_classify(req)
