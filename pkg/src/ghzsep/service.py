"""HTTP service wrapping the decision pipeline.

The handler functions (`do_*`) are plain functions over the pydantic
models, so the CLI calls them in-process; the FastAPI routes are thin
wrappers that translate domain errors to HTTP statuses (422 for invalid
values, 409 for witness refusals).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__
from .decide import decide, necessary_check
from .oracles import angle_form_grid_max
from .schemas import (
    ClassifyRequest,
    ClassifyResponse,
    CvalueRequest,
    CvalueResponse,
    HealthResponse,
    SelftestRequest,
    SelftestResponse,
    SuitePayload,
    SweepRequest,
    SweepResponse,
    WitnessPayload,
    WitnessRequest,
    WitnessResponse,
)
from .selftest import run_selftest
from .states import GhzDiagonalState, XState, is_positive, is_ppt, partial_transpose
from .sweep import records_to_csv, sweep_grid, sweep_svg
from .witness import classify_region, make_x_witness, max_angle_form

__all__ = [
    "app",
    "WitnessUnavailableError",
    "do_classify",
    "do_cvalue",
    "do_witness",
    "do_sweep",
    "do_selftest",
]

SEPARABLE_REFUSAL = "state is separable; no witness exists"
INCONCLUSIVE_REFUSAL = (
    "no entanglement certified for this general X-shaped state; witness unavailable"
)


class WitnessUnavailableError(Exception):
    """Witness was requested but none exists or none was found."""


def _as_ghz_diagonal(state: GhzDiagonalState | XState) -> GhzDiagonalState | None:
    if isinstance(state, GhzDiagonalState):
        return state
    if state.a == state.b and all(ci.imag == 0.0 for ci in state.c):
        return GhzDiagonalState(state.a, tuple(ci.real for ci in state.c))
    return None


def do_classify(req: ClassifyRequest) -> ClassifyResponse:
    state = req.state.to_state()
    g = _as_ghz_diagonal(state)
    if g is not None:
        v = decide(g, include_witness=req.include_witness)
        return ClassifyResponse.from_verdict(req.state.kind, v)

    assert isinstance(state, XState)
    positive = is_positive(state)
    ppt = is_ppt(state)
    npt = None
    if positive and not ppt:
        npt = next(
            sub for sub in ("A", "B", "C") if not is_positive(partial_transpose(state, sub))
        )
    detection = None
    margin = None
    witness = None
    if positive:
        res = necessary_check(state, samples=req.samples, seed=req.seed)
        detection = res.verdict.value
        margin = res.margin
        if res.certified and req.include_witness:
            witness = WitnessPayload.from_certificate(make_x_witness(state, res.z))
    return ClassifyResponse(
        input_kind=req.state.kind,
        ghz_diagonal=False,
        trace=state.trace,
        positive=positive,
        ppt=ppt,
        npt_subsystem=npt,
        detection=detection,
        margin=margin,
        witness=witness,
    )


def do_cvalue(req: CvalueRequest) -> CvalueResponse:
    z = tuple(req.z)
    closed = max_angle_form(z)
    oracle = angle_form_grid_max(z)
    return CvalueResponse(
        z=list(req.z),
        region=classify_region(z).value,
        closed_form=closed,
        grid_oracle=oracle,
        difference=abs(closed - oracle),
    )


def do_witness(req: WitnessRequest) -> WitnessResponse:
    state = req.state.to_state()
    g = _as_ghz_diagonal(state)
    if g is not None:
        v = decide(g, include_witness=True)
        if not v.positive:
            raise ValueError("state is not positive semidefinite; nothing to witness")
        if v.separable:
            raise WitnessUnavailableError(SEPARABLE_REFUSAL)
        assert v.witness is not None
        return WitnessResponse(
            witness=WitnessPayload.from_certificate(v.witness),
            ghz_diagonal=True,
            margin=v.f_max - v.min_diag,
        )

    assert isinstance(state, XState)
    if not is_positive(state):
        raise ValueError("state is not positive semidefinite; nothing to witness")
    res = necessary_check(state, samples=req.samples, seed=req.seed)
    if not res.certified:
        raise WitnessUnavailableError(INCONCLUSIVE_REFUSAL)
    cert = make_x_witness(state, res.z)
    return WitnessResponse(
        witness=WitnessPayload.from_certificate(cert),
        ghz_diagonal=False,
        margin=res.margin,
    )


def do_sweep(req: SweepRequest) -> SweepResponse:
    records = sweep_grid(req.grid_n)
    svg = sweep_svg(records, req.grid_n) if req.include_svg else None
    return SweepResponse(grid_n=req.grid_n, csv=records_to_csv(records), svg=svg)


def do_selftest(req: SelftestRequest) -> SelftestResponse:
    report = run_selftest(seed=req.seed, level=req.level, tolerance_scale=req.tolerance_scale)
    return SelftestResponse(
        passed=report.passed,
        level=report.level,
        seed=report.seed,
        suites=[
            SuitePayload(
                name=s.name,
                passed=s.passed,
                checks=s.checks,
                failures=s.failures,
                seconds=s.seconds,
            )
            for s in report.suites
        ],
    )


app = FastAPI(title="ghzsep", version=__version__)


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/classify", response_model=ClassifyResponse)
def classify_route(req: ClassifyRequest) -> ClassifyResponse:
    try:
        return do_classify(req)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.post("/cvalue", response_model=CvalueResponse)
def cvalue_route(req: CvalueRequest) -> CvalueResponse:
    try:
        return do_cvalue(req)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.post("/witness", response_model=WitnessResponse)
def witness_route(req: WitnessRequest) -> WitnessResponse:
    try:
        return do_witness(req)
    except WitnessUnavailableError as exc:
        raise HTTPException(status_code=409, detail=str(exc)) from exc
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.post("/sweep", response_model=SweepResponse)
def sweep_route(req: SweepRequest) -> SweepResponse:
    try:
        return do_sweep(req)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.post("/selftest", response_model=SelftestResponse)
def selftest_route(req: SelftestRequest) -> SelftestResponse:
    try:
        return do_selftest(req)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
