"""FastAPI application wrapping the core package.

Run with ``uvicorn splitrel.service.app:app``.  Every endpoint is a POST
taking and returning the models in :mod:`splitrel.service.schemas`; the
CLI drives the same handlers in-process by default or over HTTP with
``--server``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import SplitRelError
from . import handlers
from . import schemas as api


def create_app() -> FastAPI:
    app = FastAPI(
        title="splitrel",
        description=(
            "Exact split-reliability computations: polynomials, state counts, "
            "dominance comparisons, graph enumeration, and optimal-graph search."
        ),
    )

    @app.exception_handler(SplitRelError)
    async def domain_error(request: Request, exc: SplitRelError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/compute", response_model=api.ComputeResponse)
    def compute(req: api.ComputeRequest) -> api.ComputeResponse:
        return handlers.handle_compute(req)

    @app.post("/compare", response_model=api.CompareResponse)
    def compare(req: api.CompareRequest) -> api.CompareResponse:
        return handlers.handle_compare(req)

    @app.post("/family", response_model=api.FamilyResponse)
    def family(req: api.FamilyRequest) -> api.FamilyResponse:
        return handlers.handle_family(req)

    @app.post("/enumerate", response_model=api.EnumerateResponse)
    def enumerate_(req: api.EnumerateRequest) -> api.EnumerateResponse:
        return handlers.handle_enumerate(req)

    @app.post("/optimal", response_model=api.OptimalResponse)
    def optimal(req: api.OptimalRequest) -> api.OptimalResponse:
        return handlers.handle_optimal(req)

    @app.post("/verify", response_model=api.VerifyResponse)
    def verify(req: api.VerifyRequest) -> api.VerifyResponse:
        return handlers.handle_verify(req)

    @app.post("/plot", response_model=api.PlotResponse)
    def plot(req: api.PlotRequest) -> api.PlotResponse:
        return handlers.handle_plot(req)

    return app


app = create_app()
