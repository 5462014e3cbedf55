"""HTTP service over preloaded scenarios.

Stateless by construction: scenarios are read-only after startup and every
request plans against immutable data, so concurrent queries need no
locking. Responses mirror the CLI json documents exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict

from . import __version__
from .documents import (
    compare_document,
    error_document,
    route_document,
    scenario_meta_document,
    scenario_summary_document,
)
from .errors import AirpathError, InvalidParams, UnknownNode
from .planner import Algorithm, NoRoute, RouteRequest, compare_variants, plan_route
from .risk import (
    AsthmaType,
    Gender,
    HeuristicVariant,
    ObesityLevel,
    PatientProfile,
    SmokeExposure,
    StressLevel,
)
from .scenario import Scenario

DEFAULT_BODY_LIMIT = 1 << 20  # 1 MiB


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    scenario_paths: tuple[str, ...] = ()
    default_alpha: float = 1.0
    max_body_bytes: int = DEFAULT_BODY_LIMIT
    cors_origins: tuple[str, ...] = ()
    log_level: str = "info"

    def __post_init__(self) -> None:
        problems = []
        if not (1 <= self.port <= 65535):
            problems.append(f"port must be in [1, 65535], got {self.port}")
        if self.max_body_bytes <= 0:
            problems.append(f"max_body_bytes must be > 0, got {self.max_body_bytes}")
        if not (self.default_alpha >= 0):
            problems.append(f"default_alpha must be >= 0, got {self.default_alpha}")
        if problems:
            raise InvalidParams("; ".join(problems))


class ProfileBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    asthma_type: AsthmaType
    stress_level: StressLevel
    smoke_exposure: SmokeExposure
    obesity_level: ObesityLevel
    gender: Gender
    family_history: bool
    plays_sports: bool

    def to_profile(self) -> PatientProfile:
        return PatientProfile(
            asthma_type=self.asthma_type,
            stress_level=self.stress_level,
            smoke_exposure=self.smoke_exposure,
            obesity_level=self.obesity_level,
            gender=self.gender,
            family_history=self.family_history,
            plays_sports=self.plays_sports,
        )


class CompareBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: str
    origin: str
    dest: str
    profile: ProfileBody
    depart_t: float = 0.0
    alpha: float | None = None  # None -> service default


class RouteBody(CompareBody):
    variant: HeuristicVariant = HeuristicVariant.combined
    algorithm: Algorithm = Algorithm.astar


class _UnknownScenario(Exception):
    def __init__(self, name: str):
        super().__init__(f"unknown scenario: {name!r}")
        self.name = name


def _error(status: int, code: str, message: str, detail: object = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "detail": detail},
    )


def build_app(
    scenarios: Mapping[str, Scenario],
    config: ServiceConfig = ServiceConfig(),
) -> FastAPI:
    """Assemble the application around an immutable scenario mapping.

    Endpoints run in the thread pool; planning is pure over shared
    immutable data, so concurrency is free."""
    app = FastAPI(title="airpath", version=__version__, docs_url=None, redoc_url=None)

    if config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(config.cors_origins),
            allow_methods=["GET", "POST"],
            allow_headers=["content-type"],
        )

    @app.middleware("http")
    async def limit_body(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and length.isdigit() and int(length) > config.max_body_bytes:
            return _error(
                413, "body_too_large",
                f"request body exceeds {config.max_body_bytes} bytes",
            )
        return await call_next(request)

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        detail = [
            {
                "field": ".".join(str(part) for part in err.get("loc", ())),
                "error": err.get("msg", "invalid"),
            }
            for err in exc.errors()
        ]
        return _error(400, "validation_error", "invalid request", detail)

    @app.exception_handler(_UnknownScenario)
    async def on_unknown_scenario(request: Request, exc: _UnknownScenario):
        return _error(404, "unknown_scenario", str(exc), {"scenario": exc.name})

    @app.exception_handler(AirpathError)
    async def on_airpath_error(request: Request, exc: AirpathError):
        doc = error_document(exc)
        status = 404 if isinstance(exc, UnknownNode) else 400
        return _error(status, doc["code"], doc["message"], doc["detail"])

    def get_scenario(name: str) -> Scenario:
        sc = scenarios.get(name)
        if sc is None:
            raise _UnknownScenario(name)
        return sc

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "service": "airpath", "version": __version__,
                "scenarios": len(scenarios)}

    @app.get("/api/scenarios")
    def list_scenarios():
        # listed name == addressing key, so list-then-fetch always works even
        # if a caller registered a scenario under a different key
        out = []
        for key, sc in scenarios.items():
            doc = scenario_meta_document(sc)
            doc["name"] = key
            out.append(doc)
        return {"scenarios": out}

    @app.get("/api/scenarios/{name}")
    def scenario_summary(name: str):
        return scenario_summary_document(get_scenario(name))

    @app.post("/api/route")
    def api_route(body: RouteBody):
        sc = get_scenario(body.scenario)
        request = RouteRequest(
            origin=body.origin,
            dest=body.dest,
            profile=body.profile.to_profile(),
            depart_t=body.depart_t,
            alpha=config.default_alpha if body.alpha is None else body.alpha,
            variant=body.variant,
            algorithm=body.algorithm,
        )
        result = plan_route(request, sc)
        if isinstance(result, NoRoute):
            return _error(
                422, "no_route",
                f"no route from {result.origin!r} to {result.dest!r}",
                route_document(result),
            )
        return route_document(result)

    @app.post("/api/compare")
    def api_compare(body: CompareBody):
        sc = get_scenario(body.scenario)
        request = RouteRequest(
            origin=body.origin,
            dest=body.dest,
            profile=body.profile.to_profile(),
            depart_t=body.depart_t,
            alpha=config.default_alpha if body.alpha is None else body.alpha,
        )
        return compare_document(compare_variants(request, sc))

    return app
