"""HTTP facade over the scenario laboratory.

Stateless JSON API: every response is a pure function of the request
body, the shipped presets, and the engine version.  Long Monte Carlo
batches run synchronously within the request (bounded n); there is no
server-side session or job store.

Validation errors are split into two classes: malformed requests
(unknown fields, unknown parameter names, a grid whose span is not
divisible by dt) return 400 with field-level messages, while physically
invalid values (non-positive times, out-of-range fractions) return 422.
"""

import json
import os
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .engine import ValidationError
from .scenario import ScenarioSpec, Trajectory, preset_catalog, run_scenario
from .sensitivity import MC_DEFAULT_RANGES, monte_carlo, sweep

MAX_POINTS = 2000


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GridBody(StrictModel):
    start_h: float = 0.0
    end_h: float = 168.0
    dt_h: float = 1.0 / 6.0


class SignalBody(StrictModel):
    kind: str = "none"
    height: float = 0.0
    start_h: float = 0.0
    width_h: float = 1.0
    period_h: float = 24.0
    baseline: float = 0.0


class ScenarioBody(StrictModel):
    preset: str | None = None
    label: str | None = None
    seed: int | None = None
    grid: GridBody | None = None
    exogenous: SignalBody | None = None
    surge_admit_fraction: float | None = None
    surge_admit_delay_h: float | None = None
    params: dict | None = None


class SweepBody(ScenarioBody):
    parameter: str
    minimum: float
    maximum: float


class MonteCarloBody(ScenarioBody):
    n: int = Field(default=200, ge=1)
    mc_seed: int = 0
    ranges: dict | None = None


def _resolve_spec(body: ScenarioBody) -> ScenarioSpec:
    base = (ScenarioSpec.from_dict(json.loads(_preset_json(body.preset)))
            if body.preset else ScenarioSpec(label="baseline"))
    d = base.to_dict()
    if body.label is not None:
        d["label"] = body.label
    if body.seed is not None:
        d["seed"] = body.seed
    if body.grid is not None:
        d["grid"] = body.grid.model_dump()
    if body.exogenous is not None:
        d["exogenous"] = body.exogenous.model_dump()
    if body.surge_admit_fraction is not None:
        d["surge_admit_fraction"] = body.surge_admit_fraction
    if body.surge_admit_delay_h is not None:
        d["surge_admit_delay_h"] = body.surge_admit_delay_h
    if body.params:
        d["params"] = {**d["params"], **body.params}
    return ScenarioSpec.from_dict(d)


def _preset_json(name: str) -> str:
    from .scenario import _preset_text
    return _preset_text(name)


def _error_status(exc: ValidationError) -> int:
    msg = str(exc)
    if "divisible" in msg or "unknown" in msg:
        return 400
    return 422


def decimate_indices(traj: Trajectory, max_points: int = MAX_POINTS) -> np.ndarray:
    """Pick <= max_points step indices keeping endpoints and windowed extrema."""
    n = traj.n_steps
    if n <= max_points:
        return np.arange(n)
    n_windows = max(1, max_points // 7)
    edges = np.linspace(0, n, n_windows + 1, dtype=int)
    keep = {0, n - 1}
    key_series = [traj["census"], traj["boarders"], traj["occupancy"]]
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi <= lo:
            continue
        keep.add(int(lo))
        for s in key_series:
            keep.add(int(lo + np.argmin(s[lo:hi])))
            keep.add(int(lo + np.argmax(s[lo:hi])))
    active = traj["protocol_active"].astype(int)
    for i in np.nonzero(np.diff(active))[0]:
        keep.update((int(i), int(i + 1)))
    idx = np.array(sorted(keep))
    if idx.size > max_points:
        sub = np.linspace(0, idx.size - 1, max_points, dtype=int)
        idx = idx[np.unique(sub)]
    return idx


def _trajectory_payload(traj: Trajectory) -> dict:
    idx = decimate_indices(traj)
    return {
        "times": traj.times[idx].tolist(),
        "series": {k: np.asarray(v)[idx].tolist()
                   for k, v in traj.series.items()},
        "activation_intervals": [list(map(float, iv))
                                 for iv in traj.activation_intervals],
        "balance_error": traj.balance_error,
        "decimated": bool(idx.size < traj.n_steps),
        "n_steps_full": traj.n_steps,
    }


def create_app() -> FastAPI:
    app = FastAPI(title="edflow sim-service", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[os.environ.get("EDFLOW_UI_ORIGIN", "*")],
        allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(RequestValidationError)
    async def on_schema_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={
            "detail": [{"field": ".".join(str(p) for p in e["loc"]),
                        "message": e["msg"]} for e in exc.errors()]})

    @app.exception_handler(ValidationError)
    async def on_validation_error(request: Request, exc: ValidationError):
        return JSONResponse(status_code=_error_status(exc),
                            content={"detail": str(exc)})

    @app.get("/api/health")
    def health():
        return {"status": "ok", "engine_version": __version__}

    @app.get("/api/presets")
    def presets():
        return {"presets": preset_catalog(), "engine_version": __version__}

    @app.post("/api/simulate")
    def simulate(body: ScenarioBody):
        spec = _resolve_spec(body)
        traj = run_scenario(spec)
        return {"engine_version": __version__, "spec": spec.to_dict(),
                "trajectory": _trajectory_payload(traj)}

    @app.post("/api/sweep")
    def do_sweep(body: SweepBody):
        spec = _resolve_spec(body)
        report = sweep(spec, body.parameter, body.minimum, body.maximum)
        return {"engine_version": __version__, "spec": spec.to_dict(),
                "report": report.to_dict()}

    @app.post("/api/montecarlo")
    def do_mc(body: MonteCarloBody):
        spec = _resolve_spec(body)
        ranges = ({k: tuple(v) for k, v in body.ranges.items()}
                  if body.ranges else dict(MC_DEFAULT_RANGES))
        result = monte_carlo(spec, ranges, body.n, body.mc_seed)
        return {"engine_version": __version__, "spec": spec.to_dict(),
                "result": result.to_dict()}

    bundle = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if bundle.is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=bundle, html=True), name="ui")
    return app


app = create_app()


def main() -> None:
    import uvicorn
    uvicorn.run("edflow.service:app",
                host=os.environ.get("EDFLOW_BIND", "127.0.0.1"),
                port=int(os.environ.get("EDFLOW_PORT", "8777")))


if __name__ == "__main__":
    main()
