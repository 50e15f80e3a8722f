"""Reference tables for the double covers, the complex quotients and
fibrations over spheres.

``expected_*`` give the reference intervals in closed form.  The stored
``data/golden.json`` is generated from them and checked in; ``reproduce``
compares engine output against the stored file.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Dict, List, Tuple

from .catalog import Catalog, MapSpec, custom_space, sphere
from .engine import Problem, solve
from .quantities import TCrs

H_SPACE_N = (1, 3, 7)
TABLE_A = {"n": range(1, 8), "r": range(2, 6)}
TABLE_B = {"n": range(1, 4), "r": range(2, 5)}
TABLE_C = {"n": range(1, 5), "r": range(2, 6)}

Row = Dict[str, int]


def expected_double_cover(n: int, r: int, s: int) -> Tuple[int, int]:
    if s == r:
        return r * n + 1, r * n + 1
    if s == r - 1 and n in H_SPACE_N:
        return (r - 1) * n + 1, (r - 1) * n + 1
    return s * n + r - s, s * n + r - s + 1


def expected_complex_quotient(n: int, r: int, s: int) -> Tuple[int, int]:
    # at s = r the lower end rises to rn+1 and meets cat((CP^n)^r)
    if s == r:
        return r * n + 1, r * n + 1
    return s * n + r - s, s * n + r - s + 1


def expected_sphere_fibration(n: int, r: int, s: int) -> Tuple[int, int]:
    if s == r - 1:
        return (r, r) if n % 2 else (r, r + 1)
    if s == r:
        return (r, r + 1) if n % 2 else (r + 1, r + 1)
    raise ValueError("table C only covers s = r-1 and s = r")


def expected_tables() -> Dict[str, List[Row]]:
    out: Dict[str, List[Row]] = {"A": [], "B": [], "C": []}
    for key, spec, fn, s_of in (
        ("A", TABLE_A, expected_double_cover, lambda r: range(1, r + 1)),
        ("B", TABLE_B, expected_complex_quotient, lambda r: range(1, r + 1)),
        ("C", TABLE_C, expected_sphere_fibration, lambda r: (r - 1, r)),
    ):
        for n in spec["n"]:
            for r in spec["r"]:
                for s in s_of(r):
                    lo, hi = fn(n, r, s)
                    out[key].append({"n": n, "r": r, "s": s, "lo": lo, "hi": hi})
    return out


def load_golden() -> Dict[str, List[Row]]:
    text = resources.files("htcmap").joinpath("data/golden.json").read_text()
    return json.loads(text)


def _rows(engine, prefix: str, spec, s_of) -> List[Row]:
    rows = []
    for n in spec["n"]:
        for r in spec["r"]:
            for s in s_of(r):
                lo, hi = engine.q[TCrs(f"{prefix}{n}", r, s)].pair()
                rows.append({"n": n, "r": r, "s": s, "lo": lo, "hi": hi})
    return rows


def compute_tables() -> Dict[str, List[Row]]:
    cat = Catalog()
    names = [cat.map(f"p{n}").name for n in TABLE_A["n"]]
    a = solve(Problem(cat, names, r_max=max(TABLE_A["r"])))

    cat = Catalog()
    names = [cat.map(f"q{n}").name for n in TABLE_B["n"]]
    b = solve(Problem(cat, names, r_max=max(TABLE_B["r"])))

    # abstract fibrations: no cohomology on the total space, flags only
    cat = Catalog()
    x = cat.add_space("X", custom_space("X"))
    for n in TABLE_C["n"]:
        cat.add_map(MapSpec(f"f{n}", x, sphere(n), fibration=True))
    c = solve(Problem(cat, [f"f{n}" for n in TABLE_C["n"]], r_max=max(TABLE_C["r"])))

    return {
        "A": _rows(a, "p", TABLE_A, lambda r: range(1, r + 1)),
        "B": _rows(b, "q", TABLE_B, lambda r: range(1, r + 1)),
        "C": _rows(c, "f", TABLE_C, lambda r: (r - 1, r)),
    }


def diff_tables(got: Dict[str, List[Row]], want: Dict[str, List[Row]]) -> List[str]:
    diffs = []
    for table in sorted(set(got) | set(want)):
        g = {(x["n"], x["r"], x["s"]): (x["lo"], x["hi"]) for x in got.get(table, [])}
        w = {(x["n"], x["r"], x["s"]): (x["lo"], x["hi"]) for x in want.get(table, [])}
        for k in sorted(set(g) | set(w)):
            if g.get(k) != w.get(k):
                diffs.append(f"table {table} n={k[0]} r={k[1]} s={k[2]}: got {g.get(k)}, expected {w.get(k)}")
    return diffs
