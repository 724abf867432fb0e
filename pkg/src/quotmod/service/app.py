"""FastAPI application exposing the decision pipeline.

All computations are pure functions of the request body, so the service is
stateless apart from an in-process pipeline cache keyed on canonical specs.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import INPUT_ERRORS, NUMERICAL_ERRORS
from . import handlers, schemas as sc


def create_app() -> FastAPI:
    app = FastAPI(
        title="quotmod",
        version="0.1.0",
        description=(
            "Decides unitary equivalence of quotient Hilbert modules from "
            "truncated reproducing-kernel data: curvature invariants along a "
            "hypersurface, jet-frame angle pairing, and an independent "
            "finite-truncation model check."
        ),
    )

    @app.exception_handler(Exception)
    async def _domain_errors(request: Request, exc: Exception):
        if isinstance(exc, INPUT_ERRORS):
            return JSONResponse(status_code=400, content={"error": str(exc)})
        if isinstance(exc, NUMERICAL_ERRORS):
            return JSONResponse(status_code=422, content={"error": str(exc)})
        raise exc

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/validate", response_model=sc.ValidateResponse)
    def validate(request: sc.ValidateRequest) -> sc.ValidateResponse:
        return handlers.run_validate(request)

    @app.post("/invariants", response_model=sc.InvariantsResponse)
    def invariants(request: sc.InvariantsRequest) -> sc.InvariantsResponse:
        return handlers.run_invariants(request)

    @app.post("/compare", response_model=sc.VerdictResponse)
    def compare(request: sc.CompareRequest) -> sc.VerdictResponse:
        return handlers.run_compare(request)

    @app.post("/model-check", response_model=sc.ModelCheckResponse)
    def model_check(request: sc.ModelCheckRequest) -> sc.ModelCheckResponse:
        return handlers.run_model_check(request)

    return app


app = create_app()
