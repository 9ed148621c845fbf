"""Command-line client for the zetalab service.

Every subcommand builds a request, sends it through the service layer (an
in-process ASGI transport by default, or a remote server via --server), and
renders the JSON response as json, csv, or an aligned table.

Exit codes: 0 all checks passed, 1 a check failed, 2 input error, 3 budget
error.

Configuration: a ``key = value`` file (--config) provides defaults for
zero_table_path, quadrature_target, truncation_T, output_format, and seed;
flags override the file, and the ABSZETA_ZEROS environment variable
overrides the default zero-table path.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import httpx

from .errors import ZetalabError

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET_ERROR = 3


@dataclass
class RunConfig:
    zero_table_path: str | None = None
    quadrature_target: float = 1e-10
    truncation_T: float = 100.0
    output_format: str = "json"
    seed: int = 0

    def validate(self):
        if not 1e-14 <= self.quadrature_target <= 1e-4:
            raise ZetalabError("quadrature_target must lie in [1e-14, 1e-4]")
        if self.truncation_T <= 0:
            raise ZetalabError("truncation_T must be positive")
        if self.output_format not in ("json", "csv", "table"):
            raise ZetalabError(f"unknown output format {self.output_format!r}")


def load_config_file(path: str) -> dict:
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ZetalabError(f"config line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def build_config(args) -> RunConfig:
    cfg = RunConfig()
    config_path = getattr(args, "config", None)
    if config_path:
        raw = load_config_file(config_path)
        if "zero_table_path" in raw:
            cfg.zero_table_path = raw["zero_table_path"]
        if "quadrature_target" in raw:
            cfg.quadrature_target = float(raw["quadrature_target"])
        if "truncation_T" in raw:
            cfg.truncation_T = float(raw["truncation_T"])
        if "output_format" in raw:
            cfg.output_format = raw["output_format"]
        if "seed" in raw:
            cfg.seed = int(raw["seed"])
    env_zeros = os.environ.get("ABSZETA_ZEROS")
    if env_zeros:
        cfg.zero_table_path = env_zeros
    if getattr(args, "zeros", None):
        cfg.zero_table_path = args.zeros
    if getattr(args, "T", None) is not None:
        cfg.truncation_T = args.T
    if getattr(args, "format", None):
        cfg.output_format = args.format
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    cfg.validate()
    return cfg


class ServiceClient:
    """HTTP client; in-process ASGI when no server URL is given."""

    def __init__(self, server: str | None):
        self.server = server
        if server is None:
            from .service import create_app

            self._transport = httpx.ASGITransport(app=create_app())
        else:
            self._transport = None

    def request(self, method: str, path: str, payload: dict | None = None):
        if self.server is None:
            async def go():
                async with httpx.AsyncClient(
                    transport=self._transport, base_url="http://zetalab.local", timeout=600.0
                ) as client:
                    return await client.request(method, path, json=payload)

            response = asyncio.run(go())
        else:
            with httpx.Client(base_url=self.server, timeout=600.0) as client:
                response = client.request(method, path, json=payload)
        return response.status_code, response.json()


def flatten(prefix: str, obj, into: list):
    if isinstance(obj, dict):
        for k, v in obj.items():
            flatten(f"{prefix}.{k}" if prefix else str(k), v, into)
    elif isinstance(obj, list):
        into.append((prefix, json.dumps(obj)))
    else:
        into.append((prefix, obj))


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, allow_nan=True)
    if "rows" in payload and "columns" in payload:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(payload["columns"])
        writer.writerows(payload["rows"])
        return buf.getvalue()
    pairs: list = []
    flatten("", payload, pairs)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(["key", "value"])
        writer.writerows(pairs)
        return buf.getvalue()
    width = max((len(k) for k, _ in pairs), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in pairs)


def exit_code_for(status: int, payload: dict) -> int:
    if status == 200:
        verdicts = [v for k, v in payload.items() if k in ("passed", "bracket_contains")]
        if verdicts and not all(verdicts):
            return EXIT_CHECK_FAILED
        return EXIT_PASS
    kind = payload.get("error_kind", "internal")
    if kind == "budget":
        return EXIT_BUDGET_ERROR
    if kind == "input":
        return EXIT_INPUT_ERROR
    return EXIT_CHECK_FAILED


def _zeros_content(cfg: RunConfig) -> str | None:
    if cfg.zero_table_path is None:
        return None
    return Path(cfg.zero_table_path).read_text(encoding="utf-8")


def _parse_counting_function(text: str):
    text = text.strip()
    if text.startswith("["):
        return json.loads(text)
    return text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", default=argparse.SUPPRESS, help="service URL; in-process when omitted")
    common.add_argument("--zeros", default=argparse.SUPPRESS, help="path to a zero-table file")
    common.add_argument("--T", type=float, default=argparse.SUPPRESS, help="zero-sum truncation height")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="primary tolerance of the command")
    common.add_argument("--format", choices=["json", "csv", "table"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized suites")
    common.add_argument("--config", default=argparse.SUPPRESS, help="key = value config file")

    parser = argparse.ArgumentParser(
        prog="zetalab",
        description="Zeta-function verification toolkit (thin client over the zetalab service).",
        parents=[common],
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve-zeta", parents=[common], allow_abbrev=False,
                       help="count points, rebuild the zeta function, run all checks")
    p.add_argument("curve", help='e.g. "y^2*z - x^3 - x*z^2 mod 3"')
    p.add_argument("--genus", type=int, default=None)
    p.add_argument("--max-m", type=int, default=3)

    p = sub.add_parser("explicit-formula", parents=[common], allow_abbrev=False, help="explicit-formula identities (function field or characteristic 0)")
    p.add_argument("--curve", help="function-field mode: curve string")
    p.add_argument("--genus", type=int, default=None)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--f", help='finite-support function as JSON, e.g. \'{"1": "1"}\'')
    mode.add_argument("--random", type=int, default=None, metavar="COUNT",
                      help="run a random suite of finite-support functions")
    p.add_argument("--support", type=int, default=3)
    p.add_argument("--test-function", help='characteristic-0 mode: catalog spec, e.g. "log-gaussian width=0.3"')

    p = sub.add_parser("abszeta", parents=[common], allow_abbrev=False, help="absolute zeta functions of counting functions")
    p.add_argument("action", choices=["closed", "integral", "limit", "cc-constant", "cc-check", "plot-data"])
    p.add_argument("--N", default="SL2", help='catalog name or JSON terms [{"alpha":3,"m":1},...]')
    p.add_argument("--w", type=float, default=1.0)
    p.add_argument("--s", type=float, default=5.0)
    p.add_argument("--x-values", default="1.1,1.01,1.001")
    p.add_argument("--K", type=int, default=100)
    p.add_argument("--smoothing", type=float, default=0.01)
    p.add_argument("--U", type=float, default=1000.0)
    p.add_argument("--what", choices=["zeta", "counting"], default="zeta")
    p.add_argument("--start", type=float, default=None)
    p.add_argument("--stop", type=float, default=None)
    p.add_argument("--points", type=int, default=101)

    p = sub.add_parser("zeros", parents=[common], allow_abbrev=False, help="verify or describe a zero table")
    p.add_argument("action", choices=["verify", "info"])
    p.add_argument("path", nargs="?", help="table file; bundled table when omitted")

    p = sub.add_parser("category-zeta", parents=[common], allow_abbrev=False, help="truncated Euler product over simple-object norms")
    p.add_argument("--bound", type=int, default=100)
    p.add_argument("--s", type=float, default=2.0)
    p.add_argument("--csv", help="custom norm,count file")

    p = sub.add_parser("serve", parents=[common], allow_abbrev=False, help="run the service under uvicorn")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    sub.add_parser("schema", parents=[common], allow_abbrev=False, help="print the JSON Schemas of the response models")

    return parser


def dispatch(args, cfg: RunConfig, client: ServiceClient):
    tol = getattr(args, "tol", None)
    if args.command == "curve-zeta":
        payload = {"curve": args.curve, "genus": args.genus, "max_m": args.max_m}
        if tol is not None:
            payload["fe_tol"] = tol
        return client.request("POST", "/curve/zeta", payload)

    if args.command == "explicit-formula":
        if args.test_function and (args.curve or args.f or args.random is not None):
            raise ZetalabError("--test-function (characteristic 0) excludes --curve/--f/--random")
        if args.test_function:
            payload = {
                "test_function": args.test_function,
                "T": cfg.truncation_T,
                "target": cfg.quadrature_target,
            }
            if tol is not None:
                payload["tol"] = tol
            payload["zeros_content"] = _zeros_content(cfg)
            return client.request("POST", "/explicit-formula/char0", payload)
        if not args.curve:
            raise ZetalabError("explicit-formula needs --curve or --test-function")
        payload = {"curve": args.curve, "genus": args.genus}
        if args.f is not None:
            payload["f"] = json.loads(args.f)
        elif args.random is not None:
            payload["random_suite"] = {
                "count": args.random,
                "support": args.support,
                "seed": cfg.seed,
            }
        if tol is not None:
            payload["tol"] = tol
        return client.request("POST", "/explicit-formula/function-field", payload)

    if args.command == "abszeta":
        N = _parse_counting_function(args.N)
        zeros_content = _zeros_content(cfg)
        if args.action == "closed":
            return client.request("POST", "/abszeta/closed", {"counting_function": N, "w": args.w, "s": args.s})
        if args.action == "integral":
            return client.request(
                "POST", "/abszeta/integral",
                {"counting_function": N, "w": args.w, "s": args.s,
                 "target": max(cfg.quadrature_target, 1e-12)},
            )
        if args.action == "limit":
            xs = [float(x) for x in args.x_values.split(",") if x]
            return client.request("POST", "/abszeta/limit", {"counting_function": N, "s": args.s, "x_values": xs})
        if args.action == "cc-constant":
            return client.request("POST", "/abszeta/cc-constant", {"K": args.K, "zeros_content": zeros_content})
        if args.action == "cc-check":
            payload = {"s": args.s, "U": args.U, "K": args.K, "smoothing": args.smoothing,
                       "zeros_content": zeros_content}
            if tol is not None:
                payload["tol"] = tol
            return client.request("POST", "/abszeta/cc-check", payload)
        if args.action == "plot-data":
            if args.what == "zeta":
                start = args.start if args.start is not None else args.s
                stop = args.stop if args.stop is not None else args.s + 10.0
                payload = {"what": "zeta", "counting_function": N, "start": start,
                           "stop": stop, "points": args.points}
            else:
                start = args.start if args.start is not None else 1.01
                stop = args.stop if args.stop is not None else 10.0
                payload = {"what": "counting", "start": start, "stop": stop,
                           "points": args.points, "K": args.K, "smoothing": args.smoothing}
            return client.request("POST", "/abszeta/plot-data", payload)

    if args.command == "zeros":
        content = None
        if args.path:
            content = Path(args.path).read_text(encoding="utf-8")
        elif cfg.zero_table_path:
            content = _zeros_content(cfg)
        if args.action == "verify":
            return client.request("POST", "/zeros/verify", {"zeros_content": content})
        return client.request("POST", "/zeros/info", {"zeros_content": content})

    if args.command == "category-zeta":
        payload = {"s": args.s, "norm_bound": args.bound}
        if args.csv:
            payload["csv"] = Path(args.csv).read_text(encoding="utf-8")
        return client.request("POST", "/category/zeta", payload)

    raise ZetalabError(f"unhandled command {args.command}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "schema":
        from .service import schemas as sch

        models = {
            name: getattr(sch, name).model_json_schema()
            for name in dir(sch)
            if name.endswith(("Request", "Response", "Result", "Payload", "Summary", "Spec"))
            and hasattr(getattr(sch, name), "model_json_schema")
        }
        print(json.dumps(models, indent=2, sort_keys=True))
        return EXIT_PASS

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return EXIT_PASS

    try:
        cfg = build_config(args)
        client = ServiceClient(getattr(args, "server", None))
        status, payload = dispatch(args, cfg, client)
    except ZetalabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    output = render(payload, cfg.output_format)
    sys.stdout.write(output if output.endswith("\n") else output + "\n")
    return exit_code_for(status, payload)


if __name__ == "__main__":
    sys.exit(main())
