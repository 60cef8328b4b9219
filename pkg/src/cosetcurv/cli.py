"""Command line entry point: ``cosetcurv <subcommand> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
from fractions import Fraction

from . import bounds, local
from .codes import construct, read_code, serialize_code
from .cosetgraph import MAX_GRAPH_DIM
from .curvature import bonnet_myers_check, curvature_graph
from .errors import ParseError, PreconditionError

log = logging.getLogger("cosetcurv")


def _add_common(p: argparse.ArgumentParser, *, code_required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=code_required)
    src.add_argument("--code", metavar="PATH", help="generator matrix file ('0'/'1' rows)")
    src.add_argument("--construct", metavar="NAME:PARAMS", help="e.g. hadamard:3, product:2, cube:4, ltc:4:5")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim-cap", type=int, default=MAX_GRAPH_DIM)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cosetcurv", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="measure a code and evaluate every bound")
    _add_common(p)
    p.add_argument("--q", type=int, choices=(2, 3), help="locality for the LCC bound entries")
    p.add_argument("--timing", action="store_true", help="record wall-clock per stage (breaks byte stability)")

    p = sub.add_parser("curvature", help="per-direction coarse Ricci curvature")
    _add_common(p)

    p = sub.add_parser("verify", help="analyze plus perfect-LCC, sphere growth and contraction checks")
    _add_common(p)
    p.add_argument("--q", type=int, choices=(2, 3))

    p = sub.add_parser("montecarlo", help="repeated draws of the random contraction set B")
    _add_common(p)
    p.add_argument("--q", type=int, choices=(3,), default=3)
    p.add_argument("--a", type=Fraction, default=Fraction(1))
    p.add_argument("--trials", type=int, default=100)

    p = sub.add_parser("gen", help="write a constructed generator matrix")
    _add_common(p)
    return parser


def _load(args):
    if args.code:
        return read_code(args.code), {"source": args.code, "name": args.code}
    code = construct(args.construct)
    return code, {"construct": args.construct, "name": str(code)}


def _flatten(prefix, obj, rows):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, rows)
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for k, v in enumerate(obj):
            _flatten(f"{prefix}.{k}", v, rows)
    else:
        rows.append((prefix, obj))


def render(record: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, indent=2) + "\n"
    if fmt == "csv" and "bounds" in record:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "anchor", "certifying", "value", "compares_to", "measured", "status"])
        for b in record["bounds"]:
            w.writerow([b["id"], b["anchor"], b["certifying"], _cell(b["value"]),
                        b["compares_to"], _cell(b["measured"]), b["status"]])
        return buf.getvalue()
    if fmt == "text" and "bounds" in record:
        head = {k: v for k, v in record.items() if k != "bounds"}
        lines = [render(head, "text")]
        for b in record["bounds"]:
            lines.append(
                f"{b['status']:<10} {b['id']:<22} {_cell(b['value']):>14}  vs {b['compares_to']}"
                f" = {_cell(b['measured'])}\n"
            )
        return "".join(lines)
    rows: list = []
    _flatten("", record, rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows((k, _cell(v)) for k, v in rows)
        return buf.getvalue()
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k:<{width}}  {_cell(v)}\n" for k, v in rows)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.9f}"
    if isinstance(v, list):
        return " ".join(_cell(x) if x is not None else "-" for x in v)
    return str(v)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    code, source = _load(args)
    report = bounds.analyze(code, source, dim_cap=args.dim_cap, q=args.q, timing=args.timing)
    _emit(render(report.to_record(), args.format), args.out)
    return 0 if report.passed else 1


def cmd_curvature(args) -> int:
    code, source = _load(args)
    rep = curvature_graph(code)
    bm = bonnet_myers_check(code, args.dim_cap, report=rep)
    record = {"code": source, "curvature": rep.to_record(),
              "bonnet_myers": {"bound": bounds.rational(bm.bound), "diameter": bm.diameter,
                               "status": bm.status}}
    _emit(render(record, args.format), args.out)
    return 1 if bm.status == "fail" else 0


def _extra_checks(code, seed: int, dim_cap: int) -> dict:
    checks: dict = {}
    if code.n <= local.MAX_EXACT_PACKING_N:
        res = local.is_perfect_3lcc(code)
        checks["perfect_3lcc"] = {
            "status": "pass" if res.is_perfect else "na",
            "reason": res.reason,
            "families": [res.families[i].to_record() for i in sorted(res.families)] if res else [],
        }
        if res and code.dim <= dim_cap:
            rows = local.sphere_growth_check(code)
            checks["sphere_growth"] = {
                "status": "pass" if all(r.passed for r in rows) else "fail",
                "rows": [{"r": r.r, "lhs": r.lhs, "rhs": r.rhs, "min_down_edges": r.min_down_edges,
                          "pass": r.passed} for r in rows],
            }
    rng = random.Random(seed)
    B = sorted(j for j in range(code.n) if rng.random() < 0.5)
    con = local.contract_code(code, B, dim_cap=min(dim_cap, 12))
    ok = con.identity_holds and con.diameter_holds is not False
    checks["contraction"] = {
        "status": "pass" if ok else "fail",
        "B": list(con.B),
        "dims": [con.dim_C, con.dim_C_B, con.dim_U],
        "diameters": [con.diam_T, con.diam_T_B],
    }
    return checks


def cmd_verify(args) -> int:
    code, source = _load(args)
    report = bounds.analyze(code, source, dim_cap=args.dim_cap, q=args.q)
    checks = _extra_checks(code, args.seed, args.dim_cap)
    report.extras["checks"] = checks
    _emit(render(report.to_record(), args.format), args.out)
    ok = report.passed and all(c["status"] != "fail" for c in checks.values())
    return 0 if ok else 1


def cmd_montecarlo(args) -> int:
    code, source = _load(args)
    a = float(args.a)
    summary = local.monte_carlo_subsets(code, args.q, a, args.trials, args.seed)
    record = {"code": source, "q": args.q, "a": bounds.rational(args.a), "seed": args.seed,
              "montecarlo": summary.to_record()}
    _emit(render(record, args.format), args.out)
    return 0 if summary.bullet2_all else 1


def cmd_gen(args) -> int:
    code, _ = _load(args)
    _emit(serialize_code(code), args.out)
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "curvature": cmd_curvature,
    "verify": cmd_verify,
    "montecarlo": cmd_montecarlo,
    "gen": cmd_gen,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ParseError, PreconditionError, OSError) as exc:
        print(f"cosetcurv: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
