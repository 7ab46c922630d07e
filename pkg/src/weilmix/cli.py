"""Command-line client for the bounds service.

The CLI is a thin client: every command builds a request, sends it to the
FastAPI app (in-process by default, or to a running server via --server),
and renders the JSON response as a table, CSV, JSON, or SVG.  Exit codes:
0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import json
import os
import sys
from typing import Optional

import httpx

from . import SCHEMA_VERSION, __version__
from .svgplot import render_profile_svg


class UsageError(Exception):
    pass


def _default_threads() -> int:
    return max(1, os.cpu_count() or 1)


def _resolve_threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("WEILMIX_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"WEILMIX_THREADS={env!r} is not an integer")
    return _default_threads()


def _post(server: Optional[str], path: str, payload: dict) -> dict:
    if server:
        with httpx.Client(base_url=server, timeout=3600.0) as client:
            resp = client.post(path, json=payload)
    else:
        from .service import create_app

        async def go():
            transport = httpx.ASGITransport(app=create_app())
            async with httpx.AsyncClient(
                transport=transport, base_url="http://weilmix.internal", timeout=None
            ) as client:
                return await client.post(path, json=payload)

        resp = asyncio.run(go())
    if resp.status_code == 422:
        detail = resp.json().get("detail", "invalid request")
        raise UsageError(f"invalid request: {detail}")
    resp.raise_for_status()
    return resp.json()


def _fmt_float(x: Optional[float]) -> str:
    if x is None:
        return ""
    return f"{x:.12g}"


def _meta_lines(record: dict) -> list[str]:
    lines = [
        f"# weilmix {record.get('library_version', __version__)}"
        f" schema_version={record.get('schema_version', SCHEMA_VERSION)}",
        f"# command: {record.get('command', '')}",
    ]
    if record.get("spec"):
        spec = record["spec"]
        variant = f" variant={spec['variant']}" if spec.get("variant") else ""
        lines.append(f"# spec: {spec['family']} n={spec['n']} q={spec['q']}{variant}")
    for key in ("seed", "samples", "steps", "threads", "level", "rounding", "what", "mode"):
        if record.get(key) is not None:
            lines.append(f"# {key}: {record[key]}")
    return lines


def _emit_csv(record: dict, header: list[str], rows: list[list[str]], out) -> None:
    for line in _meta_lines(record):
        print(line, file=out)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _emit(record: dict, header: list[str], rows: list[list[str]], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(record, out, indent=2, sort_keys=False)
        out.write("\n")
    else:
        _emit_csv(record, header, rows, out)


# ---------------------------------------------------------------------------
# subcommands


def cmd_bounds(args) -> int:
    payload = {
        "family": args.family,
        "n": args.n,
        "q": args.q,
        "variant": args.variant,
        "r_min": args.r_min,
        "r_max": args.r_max,
        "exact_sum": args.exact_sum,
    }
    record = _post(args.server, "/bounds", payload)
    header = [
        "r",
        "upper_closed[round=up]",
        "upper_from_sum[round=up]",
        "upper_tv[round=up]",
        "lower_closed[round=down]",
        "lower_chebyshev[round=down]",
        "lower_tv[round=down]",
        "exact_char_sum",
    ]
    rows = [
        [
            str(row["r"]),
            _fmt_float(row["upper_closed"]),
            _fmt_float(row["upper_from_sum"]),
            _fmt_float(row["upper_tv"]),
            _fmt_float(row["lower_closed"]),
            _fmt_float(row["lower_chebyshev"]),
            _fmt_float(row["lower_tv"]),
            row["exact_char_sum"] or "",
        ]
        for row in record["rows"]
    ]
    _emit(record, header, rows, args.format, sys.stdout)
    if args.svg:
        spec = record["spec"]
        title = (
            f"{spec['family']} n={spec['n']} q={spec['q']}: TV bounds per step count"
        )
        svg = render_profile_svg(record["rows"], title)
        with open(args.svg, "w") as fh:
            fh.write(svg)
    return 0


def cmd_dist(args) -> int:
    payload = {
        "family": args.family,
        "n": args.n,
        "q": args.q,
        "what": args.what,
        "mode": args.mode,
    }
    record = _post(args.server, "/dist", payload)
    header = ["key", "probability", "value[12sig]", "provenance"]
    rows = [
        [
            row["key"],
            f"{row['numerator']}/{row['denominator']}",
            _fmt_float(row["value"]),
            row["provenance"],
        ]
        for row in record["rows"]
    ]
    _emit(record, header, rows, args.format, sys.stdout)
    return 0


def cmd_simulate(args) -> int:
    payload = {
        "family": args.family,
        "n": args.n,
        "q": args.q,
        "what": args.what,
        "steps": args.steps,
        "samples": args.samples,
        "seed": args.seed,
        "threads": _resolve_threads(args),
        "transv_class": args.transv_class,
    }
    record = _post(args.server, "/simulate", payload)
    header = ["key", "count", "frequency[12sig]", "stderr[12sig]", "provenance"]
    rows = [
        [
            row["key"],
            str(row["count"]),
            _fmt_float(row["frequency"]),
            _fmt_float(row["stderr"]),
            f"monte-carlo(seed={record['seed']}, samples={record['samples']})",
        ]
        for row in record["rows"]
    ]
    _emit(record, header, rows, args.format, sys.stdout)
    return 0


def cmd_verify(args) -> int:
    record = _post(args.server, "/verify", {"level": args.level})
    if args.format == "json":
        json.dump(record, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for line in _meta_lines(record):
            print(line)
        for check in record["checks"]:
            print(f"{check['status']:16s} {check['name']}: {check['details']}")
        print(
            f"{record['n_checks']} checks, {record['n_fail']} failures "
            f"({'PASS' if record['ok'] else 'FAIL'})"
        )
    return 0 if record["ok"] else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weilmix",
        description="Mixing bounds and verification for Weil-character tensor chains",
    )
    parser.add_argument("--version", action="version", version=f"weilmix {__version__}")
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running weilmix service (default: run in-process)",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_spec_args(p):
        p.add_argument("--family", required=True, choices=["gl", "gu", "sp-odd", "sp-even"])
        p.add_argument("--n", required=True, type=int)
        p.add_argument("--q", required=True, type=int)

    p = sub.add_parser("bounds", help="upper/lower TV bound table over a range of steps")
    add_spec_args(p)
    p.add_argument("--variant", choices=["linear", "unitary"], default=None,
                   help="Weil character variant (sp-even only; default linear)")
    p.add_argument("--r-min", required=True, type=int)
    p.add_argument("--r-max", required=True, type=int)
    p.add_argument("--exact-sum", action="store_true",
                   help="also compute the exact character sum per row")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--svg", default=None, metavar="PATH",
                   help="write a static SVG chart of the profile")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("dist", help="exact distribution tables")
    add_spec_args(p)
    p.add_argument("--what", required=True,
                   choices=["fixed-space", "pair-codim", "sp-classes"])
    p.add_argument("--mode", choices=["c-pairs", "all"], default="c-pairs",
                   help="pair source for sp-classes (default c-pairs)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("simulate", help="seeded Monte Carlo histograms")
    add_spec_args(p)
    p.add_argument("--what", required=True, choices=["fixed-space", "transv-product"])
    p.add_argument("--steps", type=int, default=2, help="walk length (transv-product)")
    p.add_argument("--samples", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: WEILMIX_THREADS or machine parallelism)")
    p.add_argument("--transv-class", choices=["c", "c-star", "all"], default=None,
                   help="transvection class for sp-odd products (default c)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8041)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except httpx.HTTPError as exc:
        print(f"error: service request failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
