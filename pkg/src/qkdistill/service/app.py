"""FastAPI application wrapping the analysis library.

All computation lives in the library modules; handlers only translate
between HTTP and dataclasses.  Domain errors surface as 400 responses.
"""

from __future__ import annotations

import dataclasses

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..distill import ad_table
from ..errors import ParameterError
from ..infotheory import curve_data, threshold_report
from ..model import bob_channel, eve_from_bob
from ..simulator import ProtocolConfig, run_ad_simulation
from ..verification import run_checks
from . import schemas


def create_app() -> FastAPI:
    app = FastAPI(title="qkdistill", version=__version__)

    @app.exception_handler(ParameterError)
    async def parameter_error_handler(request: Request, exc: ParameterError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.get("/threshold-report", response_model=schemas.ThresholdReportResponse)
    def get_threshold_report(n: int) -> schemas.ThresholdReportResponse:
        report = threshold_report(n)
        return schemas.ThresholdReportResponse(
            n=report.n,
            ed_beta0=report.ed_beta0,
            triple_point=schemas.PointModel(
                beta0=report.triple_point[0], eta0=report.triple_point[1]
            ),
            ck_intersection=schemas.PointModel(
                beta0=report.ck_intersection[0], eta0=report.ck_intersection[1]
            ),
        )

    @app.get("/curves", response_model=schemas.CurvesResponse)
    def get_curves(n: int, grid: int = 200) -> schemas.CurvesResponse:
        points = curve_data(n, grid)
        return schemas.CurvesResponse(
            n=n,
            grid=grid,
            points=[
                schemas.CurvePointModel(curve=p.curve, beta0=p.beta0, eta0=p.eta0)
                for p in points
            ],
        )

    @app.get("/ad-table", response_model=schemas.ADTableResponse)
    def get_ad_table(n: int, beta0: float, l_max: int) -> schemas.ADTableResponse:
        b = bob_channel(n, beta0)
        rows = ad_table(b, eve_from_bob(b), l_max)
        return schemas.ADTableResponse(
            n=n,
            beta0=beta0,
            rows=[schemas.ADTableRowModel(**dataclasses.asdict(row)) for row in rows],
        )

    @app.post("/simulate", response_model=schemas.SimulateResponse)
    def post_simulate(request: schemas.SimulateRequest) -> schemas.SimulateResponse:
        cfg = ProtocolConfig(
            n=request.n,
            beta0=request.beta0,
            block_length=request.block_length,
            num_blocks=request.num_blocks,
            seed=request.seed,
        )
        report = run_ad_simulation(cfg, workers=request.workers)
        return schemas.SimulateResponse(**report.to_dict())

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def post_verify(request: schemas.VerifyRequest) -> schemas.VerifyResponse:
        checks = run_checks(request.level)
        return schemas.VerifyResponse(
            level=request.level,
            passed=all(c.passed for c in checks),
            checks=[schemas.CheckModel(**dataclasses.asdict(c)) for c in checks],
        )

    return app


app = create_app()
