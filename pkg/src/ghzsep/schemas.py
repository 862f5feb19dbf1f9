"""Request/response models for the service and the on-disk state format.

A state file carries exactly one of ghz_weights, ghz_diagonal or x_state;
the same payload shape is used inline in requests.  All numbers must be
finite; serialization keeps full float precision (shortest round-trip
representation).
"""

from __future__ import annotations

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, model_validator

from .decide import Verdict
from .states import GhzDiagonalState, XState
from .witness import WitnessCertificate

__all__ = [
    "GhzDiagonalPayload",
    "XStatePayload",
    "StatePayload",
    "PauliPayload",
    "WitnessPayload",
    "ClassifyRequest",
    "ClassifyResponse",
    "CvalueRequest",
    "CvalueResponse",
    "WitnessRequest",
    "WitnessResponse",
    "SweepRequest",
    "SweepResponse",
    "SelftestRequest",
    "SuitePayload",
    "SelftestResponse",
    "HealthResponse",
]


def _check_vec(name: str, v: list[float], length: int) -> list[float]:
    if len(v) != length:
        raise ValueError(f"{name} must have exactly {length} entries, got {len(v)}")
    if not all(math.isfinite(x) for x in v):
        raise ValueError(f"{name} entries must be finite")
    return v


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GhzDiagonalPayload(_Strict):
    a: list[float]
    c: list[float]

    @model_validator(mode="after")
    def _validate(self) -> "GhzDiagonalPayload":
        _check_vec("a", self.a, 4)
        _check_vec("c", self.c, 4)
        return self

    def to_state(self) -> GhzDiagonalState:
        return GhzDiagonalState(tuple(self.a), tuple(self.c))


class XStatePayload(_Strict):
    a: list[float]
    b: list[float]
    c_re: list[float]
    c_im: list[float]

    @model_validator(mode="after")
    def _validate(self) -> "XStatePayload":
        for name in ("a", "b", "c_re", "c_im"):
            _check_vec(name, getattr(self, name), 4)
        return self

    def to_state(self) -> XState:
        c = tuple(complex(re, im) for re, im in zip(self.c_re, self.c_im))
        return XState(tuple(self.a), tuple(self.b), c)

    @classmethod
    def from_state(cls, x: XState) -> "XStatePayload":
        return cls(
            a=[float(v) for v in x.a],
            b=[float(v) for v in x.b],
            c_re=[v.real for v in x.c],
            c_im=[v.imag for v in x.c],
        )


class StatePayload(BaseModel):
    # extra keys are ignored (not rejected) so witness output files, which
    # carry an x_state plus its pairing, re-ingest directly as states
    model_config = ConfigDict(extra="ignore")

    ghz_weights: list[float] | None = None
    ghz_diagonal: GhzDiagonalPayload | None = None
    x_state: XStatePayload | None = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "StatePayload":
        given = [
            name
            for name in ("ghz_weights", "ghz_diagonal", "x_state")
            if getattr(self, name) is not None
        ]
        if len(given) != 1:
            raise ValueError(
                f"exactly one of ghz_weights, ghz_diagonal, x_state is required, got {given or 'none'}"
            )
        if self.ghz_weights is not None:
            _check_vec("ghz_weights", self.ghz_weights, 8)
            if any(x < 0 for x in self.ghz_weights):
                raise ValueError("ghz_weights entries must be nonnegative")
        return self

    @property
    def kind(self) -> str:
        for name in ("ghz_weights", "ghz_diagonal", "x_state"):
            if getattr(self, name) is not None:
                return name
        raise AssertionError("unvalidated payload")

    def to_state(self) -> GhzDiagonalState | XState:
        from .states import from_ghz_weights

        if self.ghz_weights is not None:
            return from_ghz_weights(self.ghz_weights)
        if self.ghz_diagonal is not None:
            return self.ghz_diagonal.to_state()
        assert self.x_state is not None
        return self.x_state.to_state()


class PauliPayload(_Strict):
    zzi: float
    ziz: float
    izz: float
    xxx: float
    yyx: float
    yxy: float
    xyy: float


class WitnessPayload(_Strict):
    x_state: XStatePayload
    pairing: float
    diag_value: float
    antidiag_value: float

    @classmethod
    def from_certificate(cls, cert: WitnessCertificate) -> "WitnessPayload":
        return cls(
            x_state=XStatePayload.from_state(cert.witness),
            pairing=cert.pairing,
            diag_value=cert.diag_value,
            antidiag_value=cert.antidiag_value,
        )


class ClassifyRequest(_Strict):
    state: StatePayload
    include_witness: bool = True
    samples: int = 512
    seed: int = 0


class ClassifyResponse(_Strict):
    input_kind: str
    ghz_diagonal: bool
    trace: float
    positive: bool
    ppt: bool
    npt_subsystem: str | None = None
    # the following are present only for GHZ-diagonal states
    case: str | None = None
    pauli: PauliPayload | None = None
    cubics: list[float] | None = None
    min_diag: float | None = None
    f_max: float | None = None
    separable: bool | None = None
    # necessary-criterion search result for general X-shaped states
    detection: str | None = None
    margin: float | None = None
    witness: WitnessPayload | None = None

    @classmethod
    def from_verdict(cls, kind: str, v: Verdict) -> "ClassifyResponse":
        return cls(
            input_kind=kind,
            ghz_diagonal=True,
            trace=v.trace,
            positive=v.positive,
            ppt=v.ppt,
            npt_subsystem=v.npt_subsystem,
            case=v.case.value,
            pauli=PauliPayload(**{k: getattr(v.pauli, k) for k in PauliPayload.model_fields}),
            cubics=list(v.cubics),
            min_diag=v.min_diag,
            f_max=v.f_max,
            separable=v.separable,
            witness=WitnessPayload.from_certificate(v.witness) if v.witness else None,
        )


class CvalueRequest(_Strict):
    z: list[float]

    @model_validator(mode="after")
    def _validate(self) -> "CvalueRequest":
        _check_vec("z", self.z, 4)
        if all(x == 0 for x in self.z):
            raise ValueError("z must be nonzero")
        return self


class CvalueResponse(_Strict):
    z: list[float]
    region: str
    closed_form: float
    grid_oracle: float
    difference: float


class WitnessRequest(_Strict):
    state: StatePayload
    samples: int = 512
    seed: int = 0


class WitnessResponse(_Strict):
    witness: WitnessPayload
    ghz_diagonal: bool
    margin: float | None = None


class SweepRequest(_Strict):
    grid_n: int = 201
    include_svg: bool = False

    @model_validator(mode="after")
    def _validate(self) -> "SweepRequest":
        if not 2 <= self.grid_n <= 2001:
            raise ValueError("grid_n must be between 2 and 2001")
        return self


class SweepResponse(_Strict):
    grid_n: int
    csv: str
    svg: str | None = None


class SelftestRequest(_Strict):
    seed: int = 0
    level: Literal["quick", "full"] = "full"
    tolerance_scale: float = 1.0


class SuitePayload(_Strict):
    name: str
    passed: bool
    checks: int
    failures: list[str]
    seconds: float


class SelftestResponse(_Strict):
    passed: bool
    level: str
    seed: int
    suites: list[SuitePayload]


class HealthResponse(_Strict):
    status: str
    version: str
