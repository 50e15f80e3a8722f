"""Command-line front end.

    htcmap bound problem.json        bounds for the queries in a problem file
    htcmap ring RP3 --degree 2       a cohomology ring, degree by degree
    htcmap nil p1 --r 3 --s 1        nil of the diagonal-evaluation kernel
    htcmap reproduce                 the reference tables, checked

Exit status: 0 success, 1 usage or parse error, 2 contradiction or golden mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .catalog import Catalog, CatalogError
from .engine import ContradictionError, Engine, EngineError, Interval
from .golden import compute_tables, diff_tables, load_golden
from .hom import diagonal_evaluation_map
from .nilpotence import nil_report
from .problem import ProblemError, parse_problem
from .quantities import MAP_KINDS

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--trace", action=argparse.BooleanOptionalAction, default=True,
                   help="include derivation traces (default: on)")
    p.add_argument("--r-max", type=int, default=None, help="override the problem's r_max")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = _Parser(prog="htcmap", description="Exact bounds on higher topological complexity of maps.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bound", parents=[common], help="solve a problem file ('-' for stdin)")
    b.add_argument("file")

    r = sub.add_parser("ring", parents=[common], help="show a space's mod-2 cohomology ring")
    r.add_argument("space")
    r.add_argument("--degree", type=int, default=None)

    n = sub.add_parser("nil", parents=[common], help="nil of Ker (Δ_{r-s}, f^s)*")
    n.add_argument("map")
    n.add_argument("--r", type=int, required=True)
    n.add_argument("--s", type=int, required=True)
    n.add_argument("--problem", default=None, help="problem file declaring the map")

    sub.add_parser("reproduce", parents=[common], help="recompute and check the reference tables")
    return p


# -- bound -------------------------------------------------------------------


def _interval_json(name: str, iv: Interval, trace: bool) -> dict:
    out = {"quantity": name, "lo": iv.lo, "hi": iv.hi}
    if trace:
        out["trace"] = [t.to_json() for t in iv.trace]
    return out


def _fmt_hi(hi) -> str:
    return "inf" if hi is None else str(hi)


def cmd_bound(args, out) -> int:
    try:
        text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text(encoding="utf-8")
    except OSError as e:
        print(f"htcmap: cannot read {args.file}: {e.strerror}", file=sys.stderr)
        return EXIT_USAGE
    try:
        problem = parse_problem(text)
        engine = Engine(problem, args.r_max)
    except ProblemError as e:
        print(f"htcmap: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CatalogError, EngineError) as e:
        print(f"htcmap: invalid error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        engine.propagate()
    except ContradictionError as e:
        if args.json:
            out.write(dumps({"status": "contradiction", "contradiction": e.report()}))
        else:
            out.write(f"CONTRADICTION: {e}\n")
            for label, tr in (("lower", e.lo_trace), ("upper", e.hi_trace)):
                for t in tr:
                    out.write(f"  {label}: {t.rule} -> {t.value}  [{t.anchor}] {t.note}\n")
        return EXIT_FAIL

    results = [_interval_json(str(q), engine.query(q), args.trace) for q in problem.queries]
    maps = sorted({q.subject for q in problem.queries if q.kind in MAP_KINDS})
    aliases = [engine.alias_report(m) for m in maps]
    if args.json:
        out.write(dumps({"status": "ok", "r_max": engine.r_max, "results": results, "aliases": aliases}))
        return EXIT_OK
    width = max((len(x["quantity"]) for x in results), default=0)
    for x in results:
        out.write(f"{x['quantity']:<{width}}  [{x['lo']}, {_fmt_hi(x['hi'])}]\n")
        for t in x.get("trace", []):
            prem = ", ".join(f"{p['quantity']}=[{p['lo']}, {_fmt_hi(p['hi'])}]" for p in t["premises"])
            line = f"    {t['produced']['side']} -> {t['produced']['value']}  by {t['rule']}"
            if prem:
                line += f" from {prem}"
            if t.get("note"):
                line += f"  ({t['note']})"
            out.write(line + f"\n      {t['anchor']}\n")
    for a in aliases:
        if a["kind"] == "chain":
            continue
        out.write(f"aliases of {a['map']} ({a['kind']}):\n")
        for row in a["rows"]:
            out.write(f"  r={row['r']}: {' = '.join(row['names'])} = [{row['lo']}, {_fmt_hi(row['hi'])}]\n")
    return EXIT_OK


# -- ring --------------------------------------------------------------------


def cmd_ring(args, out) -> int:
    try:
        spec = Catalog().space(args.space)
    except CatalogError as e:
        print(f"htcmap: unknown_name error: {e}", file=sys.stderr)
        return EXIT_USAGE
    ring = spec.ring
    if ring is None:
        print(f"htcmap: space {args.space} has no cohomology data", file=sys.stderr)
        return EXIT_USAGE
    degrees = [args.degree] if args.degree is not None else ring.occupied_degrees()
    bases = {d: [ring.monomial_str(i) for i in ring.degree_indices(d)] for d in degrees}
    if args.json:
        out.write(dumps({
            "space": spec.name,
            "generators": [{"name": g.name, "degree": g.degree, "truncation": g.truncation}
                           for g in ring.generators],
            "total_dim": ring.total_dim,
            "top_degree": ring.top_degree,
            "bases": {str(d): b for d, b in bases.items()},
        }))
        return EXIT_OK
    gens = ", ".join(f"{g.name} (deg {g.degree}, {g.name}^{g.truncation}=0)" for g in ring.generators)
    out.write(f"{spec.name}: generators {gens or 'none'}\n")
    out.write(f"total_dim {ring.total_dim}, top_degree {ring.top_degree}\n")
    for d, b in bases.items():
        out.write(f"  degree {d} (dim {len(b)}): {', '.join(b) if b else '-'}\n")
    return EXIT_OK


# -- nil ---------------------------------------------------------------------


def cmd_nil(args, out) -> int:
    try:
        if args.problem:
            cat = parse_problem(Path(args.problem).read_text(encoding="utf-8")).catalog
        else:
            cat = Catalog()
        m = cat.map(args.map)
    except (ProblemError, CatalogError, OSError) as e:
        print(f"htcmap: {e}", file=sys.stderr)
        return EXIT_USAGE
    if m.pullback is None:
        print(f"htcmap: map {m.name} has no cohomology data", file=sys.stderr)
        return EXIT_USAGE
    if not (args.r >= 2 and 1 <= args.s <= args.r):
        print(f"htcmap: need r >= 2 and 1 <= s <= r, got r={args.r}, s={args.s}", file=sys.stderr)
        return EXIT_USAGE
    res = nil_report(diagonal_evaluation_map(m.pullback, args.r, args.s))
    witness = None if res.witness is None else str(res.witness)
    wdeg = None if res.witness is None else res.witness.degree
    if args.json:
        out.write(dumps({"map": m.name, "r": args.r, "s": args.s, "nil": res.nil,
                         "witness_length": res.witness_length, "witness": witness,
                         "witness_degree": wdeg}))
        return EXIT_OK
    out.write(f"nil(Ker (Δ_{args.r - args.s}, {m.name}^{args.s})*) = {res.nil}\n")
    if witness is None:
        out.write("kernel is zero\n")
    else:
        out.write(f"nonzero product of {res.witness_length} kernel elements, degree {wdeg}: {witness}\n")
    return EXIT_OK


# -- reproduce ---------------------------------------------------------------

_TITLES = {
    "A": "TC_{r,s}(p_n), double cover S^n -> RP^n",
    "B": "TC_{r,s}(q), quotient S^(2n+1) -> CP^n",
    "C": "TC_{r,s}(f), fibration f: X -> S^n (flags only)",
}


def cmd_reproduce(args, out) -> int:
    got = compute_tables()
    want = load_golden()
    diffs = diff_tables(got, want)
    if args.json:
        out.write(dumps({"tables": got, "mismatches": diffs}))
    else:
        for key in sorted(got):
            out.write(f"table {key}: {_TITLES[key]}\n")
            w = {(x["n"], x["r"], x["s"]): (x["lo"], x["hi"]) for x in want.get(key, [])}
            for x in got[key]:
                k = (x["n"], x["r"], x["s"])
                mark = "ok" if w.get(k) == (x["lo"], x["hi"]) else f"MISMATCH expected {w.get(k)}"
                out.write(f"  n={x['n']} r={x['r']} s={x['s']}  [{x['lo']}, {_fmt_hi(x['hi'])}]  {mark}\n")
        out.write(f"{len(diffs)} mismatches\n")
    return EXIT_FAIL if diffs else EXIT_OK


COMMANDS = {"bound": cmd_bound, "ring": cmd_ring, "nil": cmd_nil, "reproduce": cmd_reproduce}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    return COMMANDS[args.command](args, out)


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
