"""FastAPI application exposing the analysis pipeline.

Run locally with: ``uvicorn gridconvex.service:app``
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import EpsilonSearchError, GridTooLargeError, ParameterError
from ..version import __version__
from . import handlers
from .schemas import (AnalyzeRequest, AnalyzeResponse, GenerateRequest,
                      GenerateResponse, HealthResponse, SelectEpsRequest,
                      SelectEpsResponse)

app = FastAPI(title="gridconvex", version=__version__)


@app.exception_handler(ParameterError)
async def _parameter_error(request: Request, exc: ParameterError):
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(EpsilonSearchError)
async def _eps_search_error(request: Request, exc: EpsilonSearchError):
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(GridTooLargeError)
async def _grid_too_large(request: Request, exc: GridTooLargeError):
    return JSONResponse(status_code=413, content={"detail": str(exc)})


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/analyze", response_model=AnalyzeResponse)
def analyze_endpoint(request: AnalyzeRequest) -> AnalyzeResponse:
    return handlers.run_analysis(request)


@app.post("/generate", response_model=GenerateResponse)
def generate_endpoint(request: GenerateRequest) -> GenerateResponse:
    return handlers.run_generate(request)


@app.post("/select-eps", response_model=SelectEpsResponse)
def select_eps_endpoint(request: SelectEpsRequest) -> SelectEpsResponse:
    return handlers.run_select_eps(request)
