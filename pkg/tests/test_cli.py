"""CLI contract: subcommands, output shapes and exit codes."""

import json
import subprocess
import sys
import time
import urllib.request

import pytest

from ghzsep.cli import EXIT_OK, EXIT_PARSE, EXIT_SELFTEST, EXIT_USAGE, main

from conftest import write_state_file


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_separable(capsys, uniform_file):
    code, out, _ = run(capsys, "classify", "--state", uniform_file)
    assert code == EXIT_OK
    assert "separable" in out
    assert "case:        i" in out


def test_classify_ppt_entangled(capsys, aniso_file):
    code, out, _ = run(capsys, "classify", "--state", aniso_file)
    assert code == EXIT_OK
    assert "PPT entangled" in out
    assert "pairing=" in out


def test_classify_npt(capsys, tmp_path):
    f = write_state_file(
        tmp_path / "npt.json",
        {"ghz_diagonal": {"a": [0.25, 0.05, 0.05, 0.05], "c": [0.2, 0, 0, 0]}},
    )
    code, out, _ = run(capsys, "classify", "--state", f)
    assert code == EXIT_OK
    assert "NPT" in out


def test_classify_nonstate(capsys, tmp_path):
    f = write_state_file(
        tmp_path / "bad.json", {"ghz_diagonal": {"a": [1, 1, 1, 1], "c": [2, 0, 0, 0]}}
    )
    code, out, _ = run(capsys, "classify", "--state", f)
    assert code == EXIT_OK
    assert "not a state" in out


def test_classify_json_round_trip(capsys, aniso_file):
    code, out, _ = run(capsys, "classify", "--state", aniso_file, "--json")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["case"] == "iii"
    assert d["separable"] is False
    # verdict JSON is stable under a second run
    _, out2, _ = run(capsys, "classify", "--state", aniso_file, "--json")
    assert out2 == out


def test_classify_no_witness_flag(capsys, aniso_file):
    code, out, _ = run(capsys, "classify", "--state", aniso_file, "--json", "--no-witness")
    assert code == EXIT_OK
    assert json.loads(out)["witness"] is None


def test_witness_writes_file(capsys, aniso_file, tmp_path):
    out_path = tmp_path / "w.json"
    code, out, _ = run(capsys, "witness", "--state", aniso_file, "--out", str(out_path))
    assert code == EXIT_OK
    d = json.loads(out_path.read_text())
    assert d["pairing"] < 0
    assert set(d["x_state"]) == {"a", "b", "c_re", "c_im"}
    # the witness file is itself a valid state file
    code2, out2, _ = run(capsys, "classify", "--state", str(out_path))
    assert code2 == EXIT_OK
    assert "not a state" in out2  # witnesses are never PSD


def test_witness_refuses_separable(capsys, uniform_file, tmp_path):
    code, _, err = run(
        capsys, "witness", "--state", uniform_file, "--out", str(tmp_path / "w.json")
    )
    assert code == EXIT_USAGE
    assert "separable" in err


def test_cvalue_text_and_json(capsys):
    code, out, _ = run(capsys, "cvalue", "--z", "1,1,1,1")
    assert code == EXIT_OK
    assert "4" in out
    code, out, _ = run(capsys, "cvalue", "--z=-1,2,2,2", "--json")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["region"] == "quadrangle"
    assert d["difference"] < 1e-8


def test_cvalue_negative_first_entry(capsys):
    # a leading negative number must not be eaten by the flag parser
    code, out, _ = run(capsys, "cvalue", "--z", "-1,3,3,3")
    assert code == EXIT_OK
    assert "8" in out


def test_cvalue_bad_z(capsys):
    code, _, err = run(capsys, "cvalue", "--z", "1,2,3")
    assert code == EXIT_PARSE
    code, _, err = run(capsys, "cvalue", "--z", "a,b,c,d")
    assert code == EXIT_PARSE


def test_sweep_writes_csv_and_svg(capsys, tmp_path):
    csv_path = tmp_path / "sweep.csv"
    svg_path = tmp_path / "sweep.svg"
    code, out, _ = run(
        capsys, "sweep-pq", "--grid", "9", "--out", str(csv_path), "--svg", str(svg_path)
    )
    assert code == EXIT_OK
    lines = csv_path.read_text().strip().split("\n")
    assert lines[0] == "p,q,case,positive,ppt,separable,f_max"
    assert len(lines) == 1 + 81
    assert svg_path.read_text().startswith("<svg")


def test_selftest_quick(capsys):
    code, out, _ = run(capsys, "selftest", "--level", "quick")
    assert code == EXIT_OK
    assert "[PASS]" in out
    assert "[FAIL]" not in out


def test_selftest_forced_failure(capsys):
    code, out, _ = run(capsys, "selftest", "--level", "quick", "--tolerance-scale", "0")
    assert code == EXIT_SELFTEST
    assert "[FAIL]" in out


def test_usage_errors(capsys):
    code, _, err = run(capsys, "classify")
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "frobnicate")
    assert code == EXIT_USAGE
    code, _, err = run(capsys)
    assert code == EXIT_USAGE


def test_parse_errors(capsys, tmp_path):
    code, _, err = run(capsys, "classify", "--state", str(tmp_path / "missing.json"))
    assert code == EXIT_PARSE
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "classify", "--state", str(bad))
    assert code == EXIT_PARSE
    short = write_state_file(tmp_path / "short.json", {"ghz_weights": [0.2] * 5})
    code, _, err = run(capsys, "classify", "--state", short)
    assert code == EXIT_PARSE
    assert "ghz_weights" in err


def test_server_round_trip(capsys, aniso_file, tmp_path):
    port = 8741
    proc = subprocess.Popen(
        [sys.executable, "-m", "ghzsep.cli", "serve", "--host", "127.0.0.1", "--port", str(port)],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    try:
        deadline = time.time() + 20
        url = f"http://127.0.0.1:{port}"
        while True:
            try:
                with urllib.request.urlopen(url + "/health", timeout=1) as r:
                    if json.loads(r.read())["status"] == "ok":
                        break
            except Exception:
                if time.time() > deadline:
                    raise
                time.sleep(0.2)
        code, remote_out, _ = run(capsys, "classify", "--state", aniso_file, "--json",
                                  "--server", url)
        assert code == EXIT_OK
        code, local_out, _ = run(capsys, "classify", "--state", aniso_file, "--json")
        assert code == EXIT_OK
        assert json.loads(remote_out) == json.loads(local_out)
        # refusals map back to the refusal exit code over HTTP too
        uniform = write_state_file(tmp_path / "u.json", {"ghz_weights": [0.125] * 8})
        code, _, err = run(capsys, "witness", "--state", uniform,
                           "--out", str(tmp_path / "w.json"), "--server", url)
        assert code == EXIT_USAGE
        assert "separable" in err
    finally:
        proc.terminate()
        proc.wait(timeout=10)
