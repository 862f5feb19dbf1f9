"""State files, request/response models and the HTTP layer."""

import json
import math

import pytest
from fastapi.testclient import TestClient
from pydantic import ValidationError

from ghzsep.schemas import (
    ClassifyRequest,
    ClassifyResponse,
    CvalueResponse,
    StatePayload,
    SweepResponse,
    WitnessRequest,
    XStatePayload,
)
from ghzsep.service import app, do_classify, do_witness
from ghzsep.states import XState


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_state_payload_exactly_one_kind():
    StatePayload(ghz_weights=[0.125] * 8)
    StatePayload(ghz_diagonal={"a": [1, 1, 1, 1], "c": [0, 0, 0, 0]})
    StatePayload(x_state={"a": [1] * 4, "b": [1] * 4, "c_re": [0] * 4, "c_im": [0] * 4})
    with pytest.raises(ValidationError):
        StatePayload()
    with pytest.raises(ValidationError):
        StatePayload(ghz_weights=[0.125] * 8, ghz_diagonal={"a": [1] * 4, "c": [0] * 4})


def test_state_payload_rejects_bad_vectors():
    with pytest.raises(ValidationError):
        StatePayload(ghz_weights=[0.125] * 7)
    with pytest.raises(ValidationError):
        StatePayload(ghz_weights=[-0.1] + [0.125] * 7)
    with pytest.raises(ValidationError):
        StatePayload(ghz_weights=[math.nan] + [0.125] * 7)
    with pytest.raises(ValidationError):
        StatePayload(ghz_diagonal={"a": [1, 1, 1], "c": [0, 0, 0, 0]})


def test_state_payload_ignores_extra_keys():
    # witness files carry extra fields; they must still load as states
    p = StatePayload.model_validate(
        {"x_state": {"a": [1] * 4, "b": [1] * 4, "c_re": [0] * 4, "c_im": [0] * 4},
         "pairing": -0.5, "diag_value": 1.0}
    )
    assert p.kind == "x_state"


def test_x_state_payload_round_trip():
    x = XState(a=(1, 2, 3, 4), b=(4, 3, 2, 1), c=(1j, 0.5, -0.25, 1 - 1j))
    back = XStatePayload.from_state(x).to_state()
    assert back == x


def test_witness_payload_reingests_as_state(aniso_state):
    resp = do_witness(WitnessRequest(state=StatePayload(
        ghz_diagonal={"a": list(aniso_state.a), "c": list(aniso_state.c)}
    )))
    text = resp.witness.model_dump_json()
    st = StatePayload.model_validate(json.loads(text))
    assert st.kind == "x_state"
    assert st.to_state() == resp.witness.x_state.to_state()


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_classify_endpoint_ghz(client, aniso_state):
    r = client.post("/classify", json={
        "state": {"ghz_diagonal": {"a": list(aniso_state.a), "c": list(aniso_state.c)}}
    })
    assert r.status_code == 200
    d = r.json()
    assert d["input_kind"] == "ghz_diagonal"
    assert d["case"] == "iii"
    assert d["ppt"] is True
    assert d["separable"] is False
    assert d["witness"]["pairing"] < 0


def test_classify_endpoint_x_reducing_to_ghz(client):
    # a == b with real c is GHZ-diagonal no matter how it was entered
    r = client.post("/classify", json={
        "state": {"x_state": {"a": [0.5, 0, 0, 0], "b": [0.5, 0, 0, 0],
                              "c_re": [0.5, 0, 0, 0], "c_im": [0, 0, 0, 0]}},
    })
    assert r.status_code == 200
    d = r.json()
    assert d["input_kind"] == "x_state"
    assert d["ghz_diagonal"] is True
    assert d["case"] == "i"
    assert d["separable"] is False


def test_classify_endpoint_general_x(client):
    # complex anti-diagonal: outside the closed-form theory
    r = client.post("/classify", json={
        "state": {"x_state": {"a": [0.5, 0.01, 0.01, 0.01], "b": [0.5, 0.01, 0.01, 0.01],
                              "c_re": [0.4, 0, 0, 0], "c_im": [0.2, 0, 0, 0]}},
        "samples": 256,
    })
    assert r.status_code == 200
    d = r.json()
    assert d["input_kind"] == "x_state"
    assert d["ghz_diagonal"] is False
    assert d["case"] is None  # closed-form case labels are GHZ-diagonal only
    assert d["detection"] == "ENTANGLED_CERTIFIED"
    assert d["witness"]["pairing"] < 0


def test_classify_response_idempotent(client, aniso_state):
    body = {"state": {"ghz_diagonal": {"a": list(aniso_state.a), "c": list(aniso_state.c)}}}
    first = client.post("/classify", json=body).json()
    second = ClassifyResponse.model_validate(first).model_dump()
    assert ClassifyResponse.model_validate(second).model_dump() == second
    assert second == ClassifyResponse.model_validate(first).model_dump()
    again = client.post("/classify", json=body).json()
    assert again == first


def test_classify_rejects_malformed(client):
    r = client.post("/classify", json={"state": {}})
    assert r.status_code == 422
    r = client.post("/classify", json={"state": {"ghz_weights": [1] * 9}})
    assert r.status_code == 422


def test_witness_endpoint_refuses_separable(client):
    r = client.post("/witness", json={"state": {"ghz_weights": [0.125] * 8}})
    assert r.status_code == 409
    assert "separable" in r.json()["detail"]


def test_witness_endpoint_rejects_nonstate(client):
    r = client.post("/witness", json={
        "state": {"ghz_diagonal": {"a": [1, 1, 1, 1], "c": [2, 0, 0, 0]}}
    })
    assert r.status_code == 422


def test_witness_endpoint_on_entangled(client, aniso_state):
    r = client.post("/witness", json={
        "state": {"ghz_diagonal": {"a": list(aniso_state.a), "c": list(aniso_state.c)}}
    })
    assert r.status_code == 200
    d = r.json()
    assert d["witness"]["pairing"] < 0
    assert d["margin"] > 0


def test_cvalue_endpoint(client):
    r = client.post("/cvalue", json={"z": [-1, 2, 2, 2]})
    assert r.status_code == 200
    d = CvalueResponse.model_validate(r.json())
    assert d.closed_form == pytest.approx(3 * math.sqrt(3), rel=1e-12)
    assert abs(d.difference) < 1e-8
    assert d.region == "quadrangle"
    assert client.post("/cvalue", json={"z": [0, 0, 0, 0]}).status_code == 422


def test_sweep_endpoint(client):
    r = client.post("/sweep", json={"grid_n": 9, "include_svg": True})
    assert r.status_code == 200
    d = SweepResponse.model_validate(r.json())
    assert d.csv.count("\n") >= 82
    assert d.svg.startswith("<svg")
    r2 = client.post("/sweep", json={"grid_n": 9})
    assert r2.json()["svg"] is None


def test_selftest_endpoint(client):
    r = client.post("/selftest", json={"level": "quick", "seed": 0})
    assert r.status_code == 200
    d = r.json()
    assert d["passed"] is True
    assert len(d["suites"]) >= 8
    r = client.post("/selftest", json={"level": "bogus"})
    assert r.status_code == 422


def test_do_classify_matches_endpoint(client, aniso_state):
    req = ClassifyRequest(
        state=StatePayload(ghz_diagonal={"a": list(aniso_state.a), "c": list(aniso_state.c)})
    )
    local = do_classify(req)
    remote = client.post("/classify", json={
        "state": {"ghz_diagonal": {"a": list(aniso_state.a), "c": list(aniso_state.c)}}
    }).json()
    assert local.model_dump() == ClassifyResponse.model_validate(remote).model_dump()
