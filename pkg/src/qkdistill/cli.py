"""Thin command-line client for the analysis service.

Every subcommand is an HTTP call: against a running server when --server
is given, otherwise against the FastAPI application mounted in-process
(no sockets involved, so output is fully deterministic).

Exit codes: 0 on success, 1 on usage/parameter errors, 2 when a
verification suite reports a failing check.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2

_TIMEOUT = 600.0


class UsageError(Exception):
    """Bad command line or rejected request parameters."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); keep our code map
        raise UsageError(message)


async def _request_async(server, method, path, params=None, body=None) -> dict:
    if server:
        client = httpx.AsyncClient(base_url=server, timeout=_TIMEOUT)
    else:
        from .service.app import app

        client = httpx.AsyncClient(
            transport=httpx.ASGITransport(app=app),
            base_url="http://qkdistill.internal",
            timeout=_TIMEOUT,
        )
    async with client:
        response = await client.request(method, path, params=params, json=body)
    if response.status_code in (400, 422):
        detail = response.json().get("detail")
        raise UsageError(detail if isinstance(detail, str) else json.dumps(detail))
    response.raise_for_status()
    return response.json()


def _request(args, method, path, params=None, body=None) -> dict:
    return asyncio.run(_request_async(args.server, method, path, params, body))


def _fmt(value, precision: int) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{precision}g}"
    return str(value)


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload: dict) -> None:
    _emit(args, json.dumps(payload, indent=2) + "\n")


def _emit_csv(args, command: str, params: dict, header: list[str], rows: list[list]) -> None:
    lines = [f"# command: {command}"]
    lines.append("# " + " ".join(f"{k}={v}" for k, v in params.items()))
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v, args.precision) for v in row))
    _emit(args, "\n".join(lines) + "\n")


def cmd_triple_point(args) -> int:
    data = _request(args, "GET", "/threshold-report", params={"n": args.n})
    if args.format == "json":
        _emit_json(args, data)
    else:
        _emit_csv(
            args,
            "triple-point",
            {"n": args.n, "schema_version": data["schema_version"]},
            ["n", "ed_beta0", "triple_beta0", "triple_eta0", "ck_beta0", "ck_eta0"],
            [[
                data["n"],
                data["ed_beta0"],
                data["triple_point"]["beta0"],
                data["triple_point"]["eta0"],
                data["ck_intersection"]["beta0"],
                data["ck_intersection"]["eta0"],
            ]],
        )
    return EXIT_OK


def cmd_curves(args) -> int:
    data = _request(args, "GET", "/curves", params={"n": args.n, "grid": args.grid})
    if args.format == "json":
        _emit_json(args, data)
    else:
        _emit_csv(
            args,
            "curves",
            {"n": args.n, "grid": args.grid, "schema_version": data["schema_version"]},
            ["curve", "beta0", "eta0"],
            [[p["curve"], p["beta0"], p["eta0"]] for p in data["points"]],
        )
    return EXIT_OK


def cmd_ad_table(args) -> int:
    data = _request(
        args,
        "GET",
        "/ad-table",
        params={"n": args.n, "beta0": args.beta0, "l_max": args.l_max},
    )
    if args.format == "json":
        _emit_json(args, data)
    else:
        header = [
            "block_length", "bob_error", "eve_error", "accept_rate",
            "bob_error_ratio", "eve_error_ratio", "bob_ratio_limit", "eve_ratio_limit",
        ]
        _emit_csv(
            args,
            "ad-table",
            {
                "n": args.n,
                "beta0": args.beta0,
                "l_max": args.l_max,
                "schema_version": data["schema_version"],
            },
            header,
            [[row[k] for k in header] for row in data["rows"]],
        )
    return EXIT_OK


def cmd_simulate(args) -> int:
    body = {
        "n": args.n,
        "beta0": args.beta0,
        "block_length": args.block_length,
        "num_blocks": args.blocks,
        "seed": args.seed,
        "workers": args.workers,
    }
    data = _request(args, "POST", "/simulate", body=body)
    if args.format == "json":
        _emit_json(args, data)
        return EXIT_OK
    totals = {
        "accept_rate": data["num_blocks"],
        "bob_wrong_rate": data["accepted_blocks"],
        "eve_wrong_rate": data["bob_correct_blocks"],
    }
    counts = {
        "accept_rate": data["accepted_blocks"],
        "bob_wrong_rate": data["bob_wrong_blocks"],
        "eve_wrong_rate": data["eve_wrong_given_bob_correct"],
    }
    rows = []
    for key in ("acceptance", "bob_error", "eve_error"):
        comparison = data[key]
        rows.append([
            comparison["name"],
            counts[comparison["name"]],
            totals[comparison["name"]],
            comparison["empirical"],
            comparison["exact"],
            comparison["std_error"],
            comparison["z_score"],
            comparison["within_band"],
        ])
    _emit_csv(
        args,
        "simulate",
        {
            "n": data["n"],
            "beta0": data["beta0"],
            "block_length": data["block_length"],
            "num_blocks": data["num_blocks"],
            "seed": data["seed"],
            "schema_version": data["schema_version"],
        },
        ["metric", "count", "out_of", "empirical", "exact", "std_error", "z_score", "within_band"],
        rows,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    data = _request(args, "POST", "/verify", body={"level": args.level})
    if args.format == "json":
        _emit_json(args, data)
    else:
        _emit_csv(
            args,
            "verify",
            {"level": args.level, "schema_version": data["schema_version"]},
            ["check", "max_residual", "tolerance", "cases", "passed"],
            [
                [c["name"], c["max_residual"], c["tolerance"], c["cases"], c["passed"]]
                for c in data["checks"]
            ],
        )
    return EXIT_OK if data["passed"] else EXIT_VERIFY_FAILED


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="qkdistill", description=__doc__)
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", default=None, help="write to file instead of stdout")
    common.add_argument("--precision", type=int, default=12,
                        help="significant digits for csv output")
    common.add_argument("--server", default=None,
                        help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triple-point", parents=[common],
                       help="threshold summary for one alphabet size")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_triple_point)

    p = sub.add_parser("curves", parents=[common],
                       help="sampled threshold curves a/b/c/d")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=int, default=200)
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("ad-table", parents=[common],
                       help="exact distillation table over block lengths")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta0", type=float, required=True)
    p.add_argument("--L-max", dest="l_max", type=int, required=True)
    p.set_defaults(func=cmd_ad_table)

    p = sub.add_parser("simulate", parents=[common],
                       help="seeded Monte Carlo protocol run")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta0", type=float, required=True)
    p.add_argument("--L", dest="block_length", type=int, required=True)
    p.add_argument("--blocks", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", parents=[common],
                       help="run the dual-route cross-check suites")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except httpx.HTTPError as exc:
        print(f"error: request failed: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
