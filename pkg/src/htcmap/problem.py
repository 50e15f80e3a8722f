"""JSON problem files.

Example::

    {"spaces": [{"name": "X", "flags": {"contractible": false}}],
     "maps": [{"name": "p", "kind": "double_cover", "params": {"n": 2}},
              {"name": "f", "domain": "X", "codomain": "S3", "flags": {"fibration": true}}],
     "facts": [{"quantity": "tcrs(p, r=2, s=2)", "lo": 5, "hi": 5, "note": "..."}],
     "queries": ["tcrs(p, r=3, s=3)"],
     "r_max": 3}
"""

from __future__ import annotations

import json
from dataclasses import replace
from typing import Any, Dict, List

from .catalog import (
    Catalog,
    CatalogError,
    Fact,
    MapSpec,
    builtin_map,
    builtin_space,
    composite_map,
    custom_space,
    product_map,
)
from .engine import Problem
from .hom import RingMapError, make_map
from .quantities import QuantityError, parse_quantity
from .ring import RingError

SPACE_FLAGS = ("contractible", "h_space", "normal", "path_connected")
MAP_FLAGS = ("fibration", "section", "homotopy_section", "null_homotopic")
TOP_KEYS = ("spaces", "maps", "facts", "queries", "r_max")


class ProblemError(ValueError):
    """Problem text rejected.  ``kind`` is one of parse, unknown_name,
    grammar, invalid."""

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(f"{kind} error: {message}")


def _obj(x: Any, what: str) -> Dict[str, Any]:
    if not isinstance(x, dict):
        raise ProblemError("invalid", f"{what} must be an object")
    return x


def _flags(entry: Dict[str, Any], allowed, what: str) -> Dict[str, bool]:
    flags = _obj(entry.get("flags", {}), f"flags of {what}")
    for k, v in flags.items():
        if k not in allowed:
            raise ProblemError("invalid", f"unknown flag {k!r} on {what}")
        if not isinstance(v, bool):
            raise ProblemError("invalid", f"flag {k!r} on {what} must be true or false")
    return flags


def _space(cat: Catalog, entry: Dict[str, Any]):
    name = entry.get("name")
    if not isinstance(name, str) or not name:
        raise ProblemError("invalid", "every space needs a name")
    flags = _flags(entry, SPACE_FLAGS, f"space {name}")
    kind = entry.get("kind")
    if kind == "product":
        factors = [cat.space(f) for f in entry.get("factors", [])]
        spec = builtin_space("product", factors=factors)
        spec = replace(spec, name=name)
    elif kind is not None:
        spec = builtin_space(kind, **_obj(entry.get("params", {}), f"params of {name}"))
    else:
        gens = entry.get("generators")
        if gens is not None:
            gens = [(g["name"], int(g["degree"]), int(g["truncation"])) for g in gens]
        spec = custom_space(name, gens, **flags)
    extra = {k: v for k, v in flags.items() if k in ("normal", "path_connected")}
    if extra and kind is not None:
        spec = replace(spec, **extra)
    cat.add_space(name, spec)


def _map(cat: Catalog, entry: Dict[str, Any]) -> MapSpec:
    name = entry.get("name")
    if not isinstance(name, str) or not name:
        raise ProblemError("invalid", "every map needs a name")
    flags = _flags(entry, MAP_FLAGS, f"map {name}")
    params = _obj(entry.get("params", {}), f"params of {name}")
    if entry.get("composite") is not None:
        inner, outer = (cat.map(x) for x in entry["composite"])
        spec = composite_map(inner, outer, name)
    elif entry.get("product") is not None:
        left, right = (cat.map(x) for x in entry["product"])
        spec = product_map(left, right, name)
    elif entry.get("kind") is not None:
        kind = entry["kind"]
        args: Dict[str, Any] = {"name": name}
        if kind in ("double_cover", "complex_quotient"):
            args["n"] = params["n"]
        elif kind == "identity":
            args["x"] = cat.space(params["space"])
        elif kind == "projection":
            args["x"], args["f"] = cat.space(params["x"]), cat.space(params["f"])
        elif kind == "constant":
            args["x"], args["y"] = cat.space(params["x"]), cat.space(params["y"])
        spec = builtin_map(kind, **args)
    else:
        dom, cod = cat.space(entry["domain"]), cat.space(entry["codomain"])
        pb = None
        images = entry.get("images")
        if images is not None:
            if dom.ring is None or cod.ring is None:
                raise ProblemError("invalid", f"map {name}: images need rings on both spaces")
            if isinstance(images, dict):
                images = [images[g.name] for g in cod.ring.generators]
            pb = make_map(cod.ring, dom.ring, images)
        spec = MapSpec(name, dom, cod, pb)
    if flags:
        spec = replace(spec, **flags)
    return cat.add_map(spec)


def parse_problem(text: str) -> Problem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemError("parse", f"{e.msg} at line {e.lineno}, column {e.colno}") from None
    doc = _obj(doc, "problem")
    for k in doc:
        if k not in TOP_KEYS:
            raise ProblemError("invalid", f"unknown top-level key {k!r}")
    cat = Catalog()
    try:
        for entry in doc.get("spaces", []):
            _space(cat, _obj(entry, "space entry"))
        names: List[str] = []
        for entry in doc.get("maps", []):
            names.append(_map(cat, _obj(entry, "map entry")).name)
        resolve_space, resolve_map = cat.space_key, cat.map_name
        facts = []
        for entry in doc.get("facts", []):
            entry = _obj(entry, "fact")
            q = parse_quantity(str(entry.get("quantity", "")), resolve_space, resolve_map)
            lo, hi = entry.get("lo", 1), entry.get("hi")
            if not isinstance(lo, int) or (hi is not None and not isinstance(hi, int)):
                raise ProblemError("invalid", f"fact on {q}: lo/hi must be integers")
            if lo < 1 or (hi is not None and hi < lo):
                raise ProblemError("invalid", f"fact on {q}: need 1 <= lo <= hi, got [{lo}, {hi}]")
            facts.append(Fact(q, lo, hi, str(entry.get("note", "")) or "user fact", "user"))
        queries = [parse_quantity(str(x), resolve_space, resolve_map) for x in doc.get("queries", [])]
    except QuantityError as e:
        raise ProblemError("grammar", str(e)) from None
    except CatalogError as e:
        kind = "unknown_name" if "unknown" in str(e) else "invalid"
        raise ProblemError(kind, str(e)) from None
    except (RingError, RingMapError, KeyError, TypeError, ValueError) as e:
        if isinstance(e, ProblemError):
            raise
        raise ProblemError("invalid", f"{type(e).__name__}: {e}") from None
    r_max = doc.get("r_max", 3)
    if not isinstance(r_max, int) or r_max < 2:
        raise ProblemError("invalid", f"r_max must be an integer >= 2, got {r_max!r}")
    spaces = [spec.key for spec in cat.spaces.values()]
    return Problem(cat, names, spaces, facts, queries, r_max)
