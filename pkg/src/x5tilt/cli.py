"""Command-line front end.

Rationals cross the boundary as exact ``p/q`` strings.  Output is
deterministic: JSON is emitted with sorted keys and a fixed indent.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import bounds, del_pezzo, destab, replay
from .chern import (
    ChernVec2,
    ChernVector,
    discriminant,
    euler_char,
    heart_decomposition,
    slope,
    to_chern_classes,
    twist,
)
from .numerics import DomainError, fmt_rational, parse_rational
from .plotting import Viewport, plot_figure1, plot_walls
from .tilt import beta_pm
from .walls import numerical_wall, q_zero_wall, wall_crosses_ray

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2

_NEG_VALUE = re.compile(r"^-\d+(/\d+)?(,[+-]?\d+(/\d+)?)*$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _quad_json(q) -> dict:
    return {"a": fmt_rational(q.a), "b": fmt_rational(q.b), "m": fmt_rational(q.m), "text": str(q)}


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _dump_csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _rat(text: str) -> Fraction:
    return parse_rational(text)


def _add_class_args(p, need_e: bool = False):
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--d", type=_rat, required=True)
    p.add_argument("--e", type=_rat, required=need_e, default=None)


def _format_arg(p, choices, default="json"):
    p.add_argument("--format", choices=choices, default=default)
    p.add_argument("--out", type=Path, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="x5tilt", description="Exact tilt-stability computations on the quintic threefold.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("chern", help="invariants of a Chern character")
    _add_class_args(p)
    p.add_argument("--twist", type=int, default=0)
    _format_arg(p, ["json", "text"])

    p = sub.add_parser("chi", help="Euler characteristic (affine in e when --e is omitted)")
    _add_class_args(p)
    _format_arg(p, ["json", "text"])

    p = sub.add_parser("wall", help="numerical wall W(v, w) or the Q=0 wall")
    _add_class_args(p)
    p.add_argument("--wr", type=int)
    p.add_argument("--wc", type=int)
    p.add_argument("--wd", type=_rat)
    p.add_argument("--q-zero", action="store_true", help="the Q=0 wall of (r, c, d, e)")
    p.add_argument("--beta", type=_rat, default=None, help="test crossing of the ray beta = BETA")
    _format_arg(p, ["json", "text"])

    p = sub.add_parser("destab", help="enumerate candidate destabilizers")
    _add_class_args(p)
    p.add_argument("--exclusions", type=Path, default=None, help="JSON list of ChernVec2 objects")
    p.add_argument("--no-rank-bound", action="store_true")
    p.add_argument("--no-delta-additivity", action="store_true")
    p.add_argument("--non-strict-window", action="store_true")
    p.add_argument("--s-max", type=int, default=None)
    _format_arg(p, ["json", "csv", "text"])

    p = sub.add_parser("bounds", help="e-bounds and the rank 2 table")
    p.add_argument("kind", choices=["table", "chi", "q", "our-bound", "schmidt", "rank-one", "torsion"])
    p.add_argument("--r", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--d", type=_rat)
    p.add_argument("--chi-max", type=_rat, default=Fraction(0))
    p.add_argument("--beta", type=_rat, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--k-min", type=int, default=None)
    _format_arg(p, ["json", "csv", "text"])

    p = sub.add_parser("delpezzo", help="maximal ch3 of O_S(D) for fixed C")
    p.add_argument("--C", type=int, default=None)
    p.add_argument("--C-min", type=int, default=None)
    p.add_argument("--C-max", type=int, default=None)
    p.add_argument("--brute-radius", type=int, default=None, help="also run the exhaustive oracle")
    _format_arg(p, ["json", "csv", "text"])

    p = sub.add_parser("figure1", help="collinearity curves of the exceptional collection")
    p.add_argument("--s", type=_rat, default=Fraction(1, 6))
    p.add_argument("--viewport", type=str, default="-2,0,0,6/5")
    _format_arg(p, ["svg"], default="svg")

    p = sub.add_parser("plot-walls", help="SVG of numerical walls for a class")
    _add_class_args(p)
    p.add_argument("--with", dest="others", action="append", default=[], metavar="R,C,D",
                   help="another class; repeat for several walls")
    p.add_argument("--no-q", action="store_true")
    p.add_argument("--viewport", type=str, default="-3,0,0,3/2")
    _format_arg(p, ["svg"], default="svg")

    p = sub.add_parser("verify-paper", help="run every replay and the rank 2 table")
    _format_arg(p, ["json", "text"], default="text")
    return parser


def _normalize_argv(argv: Sequence[str]) -> list[str]:
    """Glue negative values to their flag so ``--d -1/10`` and ``--viewport -2,0,0,1`` parse."""
    out: list[str] = []
    for tok in argv:
        if out and _NEG_VALUE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def _class4(args) -> ChernVector:
    e = args.e if args.e is not None else Fraction(0)
    v = ChernVector.unchecked(args.r, args.c, args.d, e)
    if args.e is not None and not v.is_lattice():
        raise DomainError(f"{v} violates Chern integrality")
    return v


def _cmd_chern(args):
    v = twist(_class4(args), args.twist) if args.twist else _class4(args)
    ch = v.to_json() if args.e is not None else ChernVec2(v.r, v.c, v.d).to_json()
    out = {"ch": ch, "slope": None, "discriminant": fmt_rational(discriminant(v))}
    mu = slope(v)
    out["slope"] = "inf" if mu == float("inf") else fmt_rational(mu)
    if args.e is not None:
        out["chern_classes"] = list(to_chern_classes(v))
        out["chi"] = fmt_rational(euler_char(v))
        out["heart_decomposition"] = heart_decomposition(v).to_json()
    if v.r != 0 and discriminant(v) >= 0:
        bm, bp = beta_pm(v)
        out["beta_minus"], out["beta_plus"] = _quad_json(bm), _quad_json(bp)
    if args.format == "text":
        return "\n".join(f"{k}: {json.dumps(out[k], sort_keys=True)}" for k in sorted(out)) + "\n"
    return _dump_json(out)


def _cmd_chi(args):
    v0 = ChernVector.unchecked(args.r, args.c, args.d, 0)
    const = euler_char(v0)
    if args.e is None:
        out = {"e_coefficient": "5", "constant": fmt_rational(const)}
        text = f"chi = 5e + {const}\n"
    else:
        value = euler_char(_class4(args))
        out = {"chi": fmt_rational(value)}
        text = f"chi = {value}\n"
    return text if args.format == "text" else _dump_json(out)


def _cmd_wall(args):
    if args.q_zero:
        if args.e is None:
            raise DomainError("--q-zero needs --e")
        wall = q_zero_wall(_class4(args))
    else:
        if None in (args.wr, args.wc, args.wd):
            raise DomainError("need --wr, --wc and --wd (or --q-zero)")
        wall = numerical_wall((args.r, args.c, args.d), (args.wr, args.wc, args.wd))
    out = {"wall": wall.to_json()}
    if args.beta is not None:
        out["crosses"] = {"beta": fmt_rational(args.beta), "value": wall_crosses_ray(wall, args.beta)}
    if args.format == "text":
        return f"{wall}\n" + (f"crosses beta={args.beta}: {out['crosses']['value']}\n" if args.beta is not None else "")
    return _dump_json(out)


def _cmd_destab(args):
    exclusions = ()
    if args.exclusions is not None:
        exclusions = destab.parse_classes(json.loads(args.exclusions.read_text()))
    cfg = destab.SearchConfig(
        use_rank_bound=not args.no_rank_bound,
        use_delta_additivity=not args.no_delta_additivity,
        exclusions=exclusions,
        s_max_override=args.s_max,
        strict_window=not args.non_strict_window,
    )
    report = destab.enumerate_destabilizers((args.r, args.c, args.d), cfg)
    if args.format == "csv":
        rows = []
        for cand in report.candidates:
            if cand.reasons:
                rows.append([cand.s, cand.x, "", "rejected", ";".join(cand.reasons)])
            for entry in cand.entries:
                status = "survivor" if entry.survives else "rejected"
                rows.append([cand.s, cand.x, fmt_rational(entry.y), status, ";".join(entry.reasons)])
        return _dump_csv(["s", "x", "y", "status", "reasons"], rows)
    if args.format == "text":
        surv = ", ".join(str(f) for f in report.survivors) or "none"
        return f"target {report.target}, beta_- = {report.beta_minus}, s_max = {report.s_max}\nsurvivors: {surv}\n"
    return _dump_json(report.to_json())


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise DomainError("missing " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _cmd_bounds(args):
    kind = args.kind
    if kind == "table":
        rows = replay.theorem_main_table()
        if args.format == "csv":
            return _dump_csv(
                ["c1", "c2", "c3_max", "route", "witness", "assumptions"],
                [[r.c1, r.c2, r.c3_max, r.route, r.witness, " | ".join(r.assumptions)] for r in rows],
            )
        if args.format == "text":
            return "".join(f"(c1, c2) = ({r.c1}, {r.c2}): c3 <= {r.c3_max}  [{r.route}]\n" for r in rows)
        return _dump_json([r.to_json() for r in rows])
    if kind in ("chi", "q"):
        _need(args, "r", "c", "d")
        v2 = (args.r, args.c, args.d)
        if kind == "chi":
            result = bounds.chi_bound_e(v2, args.chi_max)
        else:
            _need(args, "beta")
            result = bounds.q_bound_e(v2, args.beta)
        return f"e <= {result.e_max} [{result.route}]\n" if args.format == "text" else _dump_json(result.to_json())
    if kind in ("our-bound", "schmidt"):
        _need(args, "k")
        ks = range(args.k_min, args.k + 1) if args.k_min is not None else [args.k]
        fn = bounds.our_bound_check if kind == "our-bound" else bounds.schmidt_constant_check
        reports = [fn(k).to_json() for k in ks]
        if args.format == "csv":
            header = sorted(reports[0])
            return _dump_csv(header, [[r[h] for h in header] for r in reports])
        return _dump_json(reports if len(reports) > 1 else reports[0])
    _need(args, "d")
    value = bounds.rank_one_neg_bound(args.d) if kind == "rank-one" else bounds.torsion_rank0_bound(args.d)
    return f"e <= {value}\n" if args.format == "text" else _dump_json({"e_max": fmt_rational(value)})


def _cmd_delpezzo(args):
    if args.C is not None:
        cs = [args.C]
    elif args.C_min is not None and args.C_max is not None:
        cs = list(range(args.C_min, args.C_max + 1))
    else:
        raise DomainError("need --C or both --C-min and --C-max")
    results = []
    for big_c in cs:
        res = del_pezzo.optimize_divisor(big_c)
        item = res.to_json()
        if args.brute_radius is not None:
            oracle = del_pezzo.brute_force_divisor(big_c, args.brute_radius)
            item["oracle_agrees"] = (oracle.max_ch3, oracle.argmax) == (res.max_ch3, res.argmax)
        results.append(item)
    if args.format == "csv":
        rows = [[r["C"], r["max_ch3"], " ".join(f"{a['a']}:{'/'.join(map(str, a['b']))}" for a in r["argmax"])] for r in results]
        return _dump_csv(["C", "max_ch3", "argmax"], rows)
    if args.format == "text":
        return "".join(f"C={r['C']}: max ch3 = {r['max_ch3']}\n" for r in results)
    return _dump_json(results[0] if len(results) == 1 else results)


def _cmd_figure1(args):
    return plot_figure1(args.s, Viewport.parse(args.viewport))


def _parse_triple(text: str) -> ChernVec2:
    parts = text.split(",")
    if len(parts) != 3:
        raise DomainError(f"expected R,C,D, got {text!r}")
    return ChernVec2(int(parts[0]), int(parts[1]), parse_rational(parts[2]))


def _cmd_plot_walls(args):
    v = _class4(args) if args.e is not None else ChernVec2(args.r, args.c, args.d)
    others = [_parse_triple(t) for t in args.others]
    return plot_walls(v, others, Viewport.parse(args.viewport), include_q=not args.no_q)


def verify_paper() -> tuple[bool, dict]:
    """All replays, the rank 2 table and the core identities."""
    start = time.perf_counter()
    reports = replay.replay_all()
    cases = {r.case_id: r.to_json() for r in reports}
    ok = all(r.passed for r in reports)
    expected = {(-1, 2): 0, (-1, 3): 1, (0, 0): 0, (0, 1): -2, (0, 2): 0}
    table = replay.theorem_main_table()
    table_ok = {(r.c1, r.c2): r.c3_max for r in table} == expected
    ok = ok and table_ok
    summary = {
        "cases": cases,
        "table": [r.to_json() for r in table],
        "table_matches": table_ok,
        "passed": ok,
    }
    if time.perf_counter() - start > 60:
        ok = summary["passed"] = False
    return ok, summary


def _cmd_verify(args):
    ok, summary = verify_paper()
    if args.format == "json":
        text = _dump_json(summary)
    else:
        lines = []
        for cid, rep in summary["cases"].items():
            counts = {}
            for a in rep["assertions"]:
                counts[a["status"]] = counts.get(a["status"], 0) + 1
            tally = ", ".join(f"{k}={counts[k]}" for k in sorted(counts))
            outcome = f"e <= {rep['e_max']}" if rep["e_max"] is not None else "class excluded"
            lines.append(f"{'PASS' if rep['passed'] else 'FAIL'}  {cid:<12} {outcome}  ({tally})")
        lines.append(f"{'PASS' if summary['table_matches'] else 'FAIL'}  rank 2 table")
        text = "\n".join(lines) + "\n"
    return text, ok


_COMMANDS = {
    "chern": _cmd_chern,
    "chi": _cmd_chi,
    "wall": _cmd_wall,
    "destab": _cmd_destab,
    "bounds": _cmd_bounds,
    "delpezzo": _cmd_delpezzo,
    "figure1": _cmd_figure1,
    "plot-walls": _cmd_plot_walls,
}


def _emit(text: str, out: Optional[Path]):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _fail(kind: str, message: str) -> int:
    sys.stderr.write(_dump_json({"error": kind, "message": message}))
    return EXIT_DOMAIN


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_normalize_argv(argv))
        if args.command == "verify-paper":
            text, ok = _cmd_verify(args)
            _emit(text, args.out)
            return EXIT_OK if ok else EXIT_VERIFY
        _emit(_COMMANDS[args.command](args), args.out)
        return EXIT_OK
    except UsageError as exc:
        return _fail("usage", str(exc))
    except (DomainError, ZeroDivisionError) as exc:
        return _fail("domain", str(exc))


def main() -> None:
    sys.exit(run())
