"""Command-line front end.

Subcommands call the service handler functions in-process by default; with
--server URL they post the same request models to a running instance.
Exit codes: 0 success, 1 usage error or refusal, 2 parse error,
3 selftest failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from . import __version__
from .schemas import (
    ClassifyRequest,
    ClassifyResponse,
    CvalueRequest,
    CvalueResponse,
    SelftestRequest,
    SelftestResponse,
    StatePayload,
    SweepRequest,
    SweepResponse,
    WitnessRequest,
    WitnessResponse,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_SELFTEST = 3


class _UsageError(Exception):
    pass


class _ParseError(Exception):
    pass


class _RefusalError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


class _LocalClient:
    def __init__(self) -> None:
        from . import service

        self._service = service

    def _call(self, fn, req):
        from .service import WitnessUnavailableError

        try:
            return fn(req)
        except WitnessUnavailableError as exc:
            raise _RefusalError(str(exc)) from exc
        except ValueError as exc:
            raise _ParseError(str(exc)) from exc

    def classify(self, req: ClassifyRequest) -> ClassifyResponse:
        return self._call(self._service.do_classify, req)

    def cvalue(self, req: CvalueRequest) -> CvalueResponse:
        return self._call(self._service.do_cvalue, req)

    def witness(self, req: WitnessRequest) -> WitnessResponse:
        return self._call(self._service.do_witness, req)

    def sweep(self, req: SweepRequest) -> SweepResponse:
        return self._call(self._service.do_sweep, req)

    def selftest(self, req: SelftestRequest) -> SelftestResponse:
        return self._call(self._service.do_selftest, req)


class _HttpClient:
    def __init__(self, base_url: str) -> None:
        import httpx

        self._httpx = httpx
        self._base = base_url.rstrip("/")

    def _post(self, path: str, req, response_cls):
        try:
            r = self._httpx.post(
                f"{self._base}{path}", json=req.model_dump(), timeout=600.0
            )
        except self._httpx.HTTPError as exc:
            raise _RefusalError(f"server request failed: {exc}") from exc
        if r.status_code == 409:
            raise _RefusalError(_detail(r))
        if r.status_code == 422:
            raise _ParseError(_detail(r))
        if r.status_code != 200:
            raise _RefusalError(f"server returned {r.status_code}: {r.text[:200]}")
        return response_cls.model_validate_json(r.text)

    def classify(self, req: ClassifyRequest) -> ClassifyResponse:
        return self._post("/classify", req, ClassifyResponse)

    def cvalue(self, req: CvalueRequest) -> CvalueResponse:
        return self._post("/cvalue", req, CvalueResponse)

    def witness(self, req: WitnessRequest) -> WitnessResponse:
        return self._post("/witness", req, WitnessResponse)

    def sweep(self, req: SweepRequest) -> SweepResponse:
        return self._post("/sweep", req, SweepResponse)

    def selftest(self, req: SelftestRequest) -> SelftestResponse:
        return self._post("/selftest", req, SelftestResponse)


def _detail(r) -> str:
    try:
        return str(r.json().get("detail", r.text))
    except ValueError:
        return r.text


def _client(args: argparse.Namespace):
    if getattr(args, "server", None):
        return _HttpClient(args.server)
    return _LocalClient()


def _load_state(path: str) -> StatePayload:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _ParseError(f"cannot read state file: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _ParseError(f"{path}: invalid JSON ({exc})") from exc
    try:
        return StatePayload.model_validate(data)
    except ValidationError as exc:
        issues = "; ".join(
            f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}" if e["loc"] else e["msg"]
            for e in exc.errors()
        )
        raise _ParseError(f"{path}: {issues}") from exc


def _parse_z(text: str) -> CvalueRequest:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise _ParseError(f"--z expects 4 comma-separated numbers, got {len(parts)}")
    try:
        z = [float(p) for p in parts]
    except ValueError as exc:
        raise _ParseError(f"--z: {exc}") from exc
    try:
        return CvalueRequest(z=z)
    except ValidationError as exc:
        raise _ParseError(f"--z: {exc.errors()[0]['msg']}") from exc


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _verdict_line(resp: ClassifyResponse) -> str:
    if not resp.positive:
        return "not a state (not positive semidefinite)"
    if resp.ghz_diagonal:
        if resp.separable:
            return "separable"
        if resp.ppt:
            return "PPT entangled (bound entanglement)"
        return f"NPT entangled (partial transpose {resp.npt_subsystem} fails)"
    if not resp.ppt:
        return f"NPT entangled (partial transpose {resp.npt_subsystem} fails)"
    if resp.detection == "ENTANGLED_CERTIFIED":
        return "entangled (certified by the necessary criterion)"
    return "inconclusive (PPT; no violation found)"


def _print_classify(resp: ClassifyResponse) -> None:
    print(f"input kind:  {resp.input_kind}")
    print(f"trace:       {resp.trace!r}")
    print(f"positive:    {_yesno(resp.positive)}")
    print(f"ppt:         {_yesno(resp.ppt)}")
    if resp.ghz_diagonal:
        assert resp.pauli is not None and resp.cubics is not None
        print(f"case:        {resp.case}")
        p = resp.pauli
        print(
            "pauli:       "
            f"zzi={p.zzi!r} ziz={p.ziz!r} izz={p.izz!r} "
            f"xxx={p.xxx!r} yyx={p.yyx!r} yxy={p.yxy!r} xyy={p.xyy!r}"
        )
        print(f"cubics t:    ({', '.join(repr(t) for t in resp.cubics)})")
        print(f"min diag:    {resp.min_diag!r}")
        print(f"f_max:       {resp.f_max!r}")
        print(f"separable:   {_yesno(bool(resp.separable))}")
    else:
        print("ghz-diagonal: no (general X-shaped input)")
        if resp.detection is not None:
            print(f"detection:   {resp.detection}")
            print(f"margin:      {resp.margin!r}")
    if resp.witness is not None:
        w = resp.witness
        print(
            f"witness:     pairing={w.pairing!r} "
            f"(diag {w.diag_value!r}, antidiag {w.antidiag_value!r})"
        )
    print(f"verdict:     {_verdict_line(resp)}")


def _cmd_classify(args: argparse.Namespace) -> int:
    req = ClassifyRequest(
        state=_load_state(args.state),
        include_witness=not args.no_witness,
        samples=args.samples,
        seed=args.seed,
    )
    resp = _client(args).classify(req)
    if args.json:
        print(resp.model_dump_json(indent=2))
    else:
        _print_classify(resp)
    return EXIT_OK


def _cmd_cvalue(args: argparse.Namespace) -> int:
    req = _parse_z(args.z)
    resp = _client(args).cvalue(req)
    if args.json:
        print(resp.model_dump_json(indent=2))
    else:
        print(f"z:           ({', '.join(repr(v) for v in resp.z)})")
        print(f"region:      {resp.region}")
        print(f"closed form: {resp.closed_form!r}")
        print(f"grid oracle: {resp.grid_oracle!r}")
        print(f"difference:  {resp.difference:.3e}")
    return EXIT_OK


def _cmd_witness(args: argparse.Namespace) -> int:
    req = WitnessRequest(state=_load_state(args.state), samples=args.samples, seed=args.seed)
    resp = _client(args).witness(req)
    payload = resp.witness.model_dump_json(indent=2)
    try:
        Path(args.out).write_text(payload + "\n")
    except OSError as exc:
        raise _RefusalError(f"cannot write witness file: {exc}") from exc
    w = resp.witness
    print(
        f"witness written to {args.out}: pairing={w.pairing!r} "
        f"(diag {w.diag_value!r}, antidiag {w.antidiag_value!r})"
    )
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    req = SweepRequest(grid_n=args.grid, include_svg=args.svg is not None)
    resp = _client(args).sweep(req)
    try:
        Path(args.out).write_text(resp.csv)
        if args.svg is not None:
            assert resp.svg is not None
            Path(args.svg).write_text(resp.svg)
    except OSError as exc:
        raise _RefusalError(f"cannot write sweep output: {exc}") from exc
    n = resp.csv.count("\n") - 1
    print(f"wrote {n} records to {args.out}" + (f" and region map to {args.svg}" if args.svg else ""))
    return EXIT_OK


def _cmd_selftest(args: argparse.Namespace) -> int:
    req = SelftestRequest(seed=args.seed, level=args.level, tolerance_scale=args.tolerance_scale)
    resp = _client(args).selftest(req)
    if args.json:
        print(resp.model_dump_json(indent=2))
    else:
        for s in resp.suites:
            mark = "PASS" if s.passed else "FAIL"
            print(f"[{mark}] {s.name}: {s.checks} checks in {s.seconds:.2f}s")
            for f in s.failures:
                print(f"       {f}")
        print(f"selftest {'passed' if resp.passed else 'FAILED'} (level={resp.level}, seed={resp.seed})")
    return EXIT_OK if resp.passed else EXIT_SELFTEST


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="ghzsep", description=__doc__)
    parser.add_argument("--version", action="version", version=f"ghzsep {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add_server(p: _Parser) -> None:
        p.add_argument("--server", metavar="URL", help="use a running service instead of in-process calls")

    p = sub.add_parser("classify", help="decide separability of a state file")
    p.add_argument("--state", required=True, metavar="PATH", help="JSON state file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--no-witness", action="store_true", help="skip witness construction")
    p.add_argument("--samples", type=int, default=512, help="search samples for general X states")
    p.add_argument("--seed", type=int, default=0)
    add_server(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("sweep-pq", help="sweep the two-parameter family over [-1,1]^2")
    p.add_argument("--grid", type=int, default=201, metavar="N", help="grid points per axis (default 201)")
    p.add_argument("--out", required=True, metavar="PATH", help="CSV output path")
    p.add_argument("--svg", metavar="PATH", help="also write an SVG region map")
    add_server(p)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("cvalue", help="closed-form angle maximum of a real 4-vector")
    p.add_argument("--z", required=True, metavar="a,b,c,d", help="four comma-separated reals")
    p.add_argument("--json", action="store_true")
    add_server(p)
    p.set_defaults(fn=_cmd_cvalue)

    p = sub.add_parser("witness", help="emit a witness certificate for an entangled state")
    p.add_argument("--state", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH", help="witness JSON output path")
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--seed", type=int, default=0)
    add_server(p)
    p.set_defaults(fn=_cmd_witness)

    p = sub.add_parser("selftest", help="run the built-in invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--level", choices=("quick", "full"), default="full")
    p.add_argument("--tolerance-scale", type=float, default=1.0, help="multiply every tolerance (diagnostic)")
    p.add_argument("--json", action="store_true")
    add_server(p)
    p.set_defaults(fn=_cmd_selftest)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=_cmd_serve)

    return parser


def _join_option_values(argv: list[str]) -> list[str]:
    """Glue negative-number values onto their flag (--z -1,2,2,2) so
    argparse does not mistake them for options."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        if argv[i] == "--z" and i + 1 < len(argv):
            out.append(f"--z={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    args_in = _join_option_values(list(sys.argv[1:] if argv is None else argv))
    parser = _build_parser()
    try:
        args = parser.parse_args(args_in)
        if getattr(args, "command", None) is None:
            raise _UsageError("a command is required (classify, sweep-pq, cvalue, witness, selftest, serve)")
        return args.fn(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _RefusalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
