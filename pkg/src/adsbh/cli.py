"""Command line client for the service API.

The CLI is a thin client: every command builds a request against the
FastAPI app, by default served in-process, or remotely with ``--server``.
Outputs are machine-readable (JSON or CSV) and byte-deterministic for a
fixed configuration and seed.

Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 no bracket found.

A config file (``--config``) holds ``key=value`` lines with the same keys
as the long flags (dashes or underscores); explicit flags override it.
"""

from __future__ import annotations

import argparse
import json
import sys

__all__ = ["main"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_NO_BRACKET = 3


class _Client:
    """Minimal transport wrapper: in-process ASGI by default, HTTP with
    --server."""

    def __init__(self, server: str | None):
        if server:
            import httpx
            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            import warnings
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient
            from .service import create_app
            self._client = TestClient(create_app())

    def get(self, path: str):
        return self._client.get(path)

    def post(self, path: str, payload: dict):
        return self._client.post(path, json=payload)


def _read_config(path: str | None) -> dict:
    if not path:
        return {}
    conf = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise SystemExit(f"bad config line: {line!r}")
            key, value = line.split("=", 1)
            conf[key.strip().replace("-", "_")] = value.strip()
    return conf


def _setting(args, conf: dict, key: str, cast, default):
    val = getattr(args, key, None)
    if val is not None:
        return val
    if key in conf:
        return cast(conf[key])
    return default


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": ")) + "\n"


def _http_error_exit(resp) -> int:
    try:
        detail = resp.json().get("detail", {})
    except Exception:
        detail = {}
    message = detail.get("message", resp.text) if isinstance(detail, dict) else str(detail)
    code = detail.get("exit_code", EXIT_BAD_INPUT) if isinstance(detail, dict) else EXIT_BAD_INPUT
    sys.stderr.write(f"error: {message}\n")
    return int(code)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="adsbh",
        description="Causal structure of AdS black holes from closed Iwasawa orbits.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_point=False):
        p.add_argument("--server", help="base URL of a running service; default runs in-process")
        p.add_argument("--config", help="key=value config file; flags override it")
        p.add_argument("--dim", type=int, help="hyperboloid dimension l")
        if with_point:
            p.add_argument("--point", help="comma-separated embedding coordinates")
        p.add_argument("--samples", type=int, help="direction samples (default 512)")
        p.add_argument("--seed", type=int, help="sampling seed (default 0)")
        p.add_argument("--tol-rank", dest="tol_rank", type=float,
                       help="singular-value cutoff for orbit rank (default 1e-9)")
        p.add_argument("--tol-sing", dest="tol_sing", type=float,
                       help="branch-distance tolerance (default 1e-9)")
        p.add_argument("--bisect-steps", dest="bisect_steps", type=int,
                       help="bisection halvings (default 30)")
        p.add_argument("--format", choices=("json", "csv"), help="output format")
        p.add_argument("--out", help="write the output to a file")

    common(sub.add_parser("classify", help="causal class of a point"), with_point=True)

    ph = sub.add_parser("horizon", help="bisect horizon points, emit CSV/JSON")
    common(ph)
    ph.add_argument("--mode", choices=("k-circle", "planar", "seeds"))
    ph.add_argument("--count", type=int, help="number of scan rows (default 1)")
    ph.add_argument("--point-in", dest="point_in", help="interior seed point")
    ph.add_argument("--point-out", dest="point_out", help="exterior seed point")

    pv = sub.add_parser("verify", help="run invariant suites")
    pv.add_argument("suite", nargs="?", default="all",
                    choices=("algebra", "orbits", "causal", "btz", "ads2", "all"))
    common(pv)

    pa = sub.add_parser("ads2", help="2D no-black-hole report")
    common(pa)

    pb = sub.add_parser("btz", help="closed-form 3D horizon table")
    common(pb)
    pb.add_argument("--count", type=int, help="rho grid size (default 10)")
    pb.add_argument("--rho-max", dest="rho_max", type=float, help="rho range (default 1.5)")
    pb.add_argument("--theta", type=float, help="chart angle (default 0)")
    pb.add_argument("--branch", choices=("+", "-", "both"))

    pd = sub.add_parser("dump-algebra", help="generator matrices as JSON")
    common(pd)

    ps = sub.add_parser("serve", help="run the HTTP service")
    ps.add_argument("--host", default="127.0.0.1")
    ps.add_argument("--port", type=int, default=8000)
    return ap


def _horizon_csv(body: dict) -> str:
    dim = body["dim"]
    header = (["dim"] + [f"c{i}" for i in range(dim + 1)]
              + ["class", "residual_u2_x2", "residual_theta"])
    lines = [",".join(header)]
    for row in body["rows"]:
        res = "" if row["residual_u2_x2"] is None else repr(row["residual_u2_x2"])
        cells = ([str(dim)] + [repr(v) for v in row["point"]]
                 + [row["cls"], res, repr(row["residual_theta"])])
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _btz_csv(body: dict) -> str:
    header = ["rho", "branch", "tau", "u", "t", "x", "y", "residual_u2_x2"]
    lines = [",".join(header)]
    for row in body["rows"]:
        cells = [repr(row["rho"]), str(row["branch"]), repr(row["tau"])]
        cells += [repr(v) for v in row["point"]]
        cells.append(repr(row["residual_u2_x2"]))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    conf = _read_config(getattr(args, "config", None))

    if args.command == "serve":
        import uvicorn
        from .service import create_app
        uvicorn.run(create_app(), host=args.host, port=args.port)
        return EXIT_OK

    client = _Client(args.server or conf.get("server"))
    fmt = _setting(args, conf, "format", str, "json")
    out = _setting(args, conf, "out", str, None)

    if args.command == "classify":
        point = _setting(args, conf, "point", str, None)
        if point is None:
            sys.stderr.write("error: classify needs --point\n")
            return EXIT_BAD_INPUT
        try:
            coords = [float(v) for v in str(point).split(",")]
        except ValueError:
            sys.stderr.write(f"error: cannot parse point {point!r}\n")
            return EXIT_BAD_INPUT
        payload = {
            "dim": _setting(args, conf, "dim", int, len(coords) - 1),
            "point": coords,
            "samples": _setting(args, conf, "samples", int, 512),
            "seed": _setting(args, conf, "seed", int, 0),
            "tol_sing": _setting(args, conf, "tol_sing", float, 1e-9),
            "tol_rank": _setting(args, conf, "tol_rank", float, 1e-9),
        }
        resp = client.post("/classify", payload)
        if resp.status_code != 200:
            return _http_error_exit(resp)
        body = resp.json()
        if body.get("adjustment", 0.0) > 0.0:
            sys.stderr.write(f"note: point renormalized onto the hyperboloid "
                             f"(max coordinate shift {body['adjustment']:.3e})\n")
        _emit(_json_dumps(body), out)
        return EXIT_OK

    if args.command == "horizon":
        payload = {
            "dim": _setting(args, conf, "dim", int, 3),
            "mode": _setting(args, conf, "mode", str, "k-circle"),
            "count": _setting(args, conf, "count", int, 1),
            "steps": _setting(args, conf, "bisect_steps", int, 30),
            "samples": _setting(args, conf, "samples", int, 512),
            "seed": _setting(args, conf, "seed", int, 0),
        }
        for key in ("point_in", "point_out"):
            val = _setting(args, conf, key, str, None)
            if val is not None:
                try:
                    payload[key] = [float(v) for v in str(val).split(",")]
                except ValueError:
                    sys.stderr.write(f"error: cannot parse {key} {val!r}\n")
                    return EXIT_BAD_INPUT
        resp = client.post("/horizon", payload)
        if resp.status_code != 200:
            return _http_error_exit(resp)
        body = resp.json()
        _emit(_horizon_csv(body) if fmt == "csv" else _json_dumps(body), out)
        return EXIT_OK

    if args.command == "verify":
        resp = client.post("/verify", {"suite": args.suite})
        if resp.status_code != 200:
            return _http_error_exit(resp)
        body = resp.json()
        for name in sorted(body["suites"]):
            for check in body["suites"][name]:
                mark = "PASS" if check["passed"] else "FAIL"
                sys.stdout.write(f"{mark} {name}.{check['name']}"
                                 + (f": {check['detail']}" if check["detail"] else "") + "\n")
        sys.stdout.write(f"passed {body['passed']}, failed {body['failed']}\n")
        if not body["ok"]:
            sys.stdout.write(f"first counterexample: {body['first_counterexample']}\n")
            return EXIT_VERIFY_FAILED
        return EXIT_OK

    if args.command == "ads2":
        payload = {"samples": _setting(args, conf, "samples", int, 1000),
                   "seed": _setting(args, conf, "seed", int, 0)}
        resp = client.post("/ads2", payload)
        if resp.status_code != 200:
            return _http_error_exit(resp)
        body = resp.json()
        _emit(_json_dumps(body), out)
        return EXIT_OK if body["status"] == "ok" else EXIT_VERIFY_FAILED

    if args.command == "btz":
        payload = {"count": _setting(args, conf, "count", int, 10),
                   "rho_max": _setting(args, conf, "rho_max", float, 1.5),
                   "theta": _setting(args, conf, "theta", float, 0.0),
                   "branch": _setting(args, conf, "branch", str, "both")}
        resp = client.post("/btz", payload)
        if resp.status_code != 200:
            return _http_error_exit(resp)
        body = resp.json()
        _emit(_btz_csv(body) if fmt == "csv" else _json_dumps(body), out)
        return EXIT_OK

    if args.command == "dump-algebra":
        dim = _setting(args, conf, "dim", int, 3)
        resp = client.get(f"/algebra/{dim}")
        if resp.status_code != 200:
            return _http_error_exit(resp)
        _emit(_json_dumps(resp.json()), out)
        return EXIT_OK

    sys.stderr.write(f"unknown command {args.command!r}\n")
    return EXIT_BAD_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
