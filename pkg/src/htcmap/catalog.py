"""Built-in spaces and maps with their mod-2 cohomology, flags and seeded facts.

Atomic spaces are spheres ``S<n>``, real and complex projective spaces
``RP<n>``/``CP<n>``, tori ``T<k>`` (stored as ``S1^k``) and the point ``pt``.
Products are written ``A x B`` (``×`` and ``*`` also work) and powers ``A^k``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .hom import RingMap, identity_map, make_map, tensor_map, zero_map
from .quantities import Cat, QuantityId, SpaceKey, TCr, key_power, key_product, make_key
from .ring import POINT_RING, GeneratorSpec, RingPresentation, embed, make_presentation, tensor

H_SPACE_SPHERES = (1, 3, 7)

ANCHOR_SPHERE_TC = "TC_r(S^n) = r if n is odd, r+1 if n is even"
ANCHOR_SPHERE_CAT = "cat(S^n)=2"
ANCHOR_RP_CAT = "cat(RP^n)=n+1"
ANCHOR_CP_CAT = "cat(CP^n)=n+1"
ANCHOR_POINT = "cat(point)=1"


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class Fact:
    quantity: QuantityId
    lo: int
    hi: Optional[int]
    anchor: str
    rule: str = "catalog"

    def __post_init__(self):
        if self.lo < 1 or (self.hi is not None and self.hi < self.lo):
            raise CatalogError(f"bad interval [{self.lo}, {self.hi}] for {self.quantity}")


@dataclass(frozen=True)
class SpaceSpec:
    name: str
    ring: Optional[RingPresentation]
    key: SpaceKey
    contractible: bool = False
    h_space: bool = False
    sphere_dim: Optional[int] = None
    normal: bool = True
    path_connected: bool = True
    cat_fact: Optional[Tuple[int, int, str]] = None  # atomic spaces only

    def __post_init__(self):
        if self.contractible and self.ring is not None and self.ring.total_dim != 1:
            raise CatalogError(f"contractible space {self.name} must have the trivial ring")

    @property
    def is_point(self) -> bool:
        return not self.key


def sphere(n: int) -> SpaceSpec:
    if n < 1:
        raise CatalogError(f"sphere dimension must be >= 1, got {n}")
    name = f"S{n}"
    return SpaceSpec(
        name,
        make_presentation([("iota", n, 2)]),
        ((name, 1),),
        h_space=n in H_SPACE_SPHERES,
        sphere_dim=n,
        cat_fact=(2, 2, ANCHOR_SPHERE_CAT),
    )


def real_projective(n: int) -> SpaceSpec:
    if n < 1:
        raise CatalogError(f"RP^n needs n >= 1, got {n}")
    name = f"RP{n}"
    return SpaceSpec(
        name,
        make_presentation([("alpha", 1, n + 1)]),
        ((name, 1),),
        h_space=n in H_SPACE_SPHERES,
        cat_fact=(n + 1, n + 1, ANCHOR_RP_CAT),
    )


def complex_projective(n: int) -> SpaceSpec:
    if n < 1:
        raise CatalogError(f"CP^n needs n >= 1, got {n}")
    name = f"CP{n}"
    return SpaceSpec(
        name,
        make_presentation([("beta", 2, n + 1)]),
        ((name, 1),),
        cat_fact=(n + 1, n + 1, ANCHOR_CP_CAT),
    )


def point() -> SpaceSpec:
    return SpaceSpec("pt", POINT_RING, (), contractible=True, h_space=True)


def product_space(a: SpaceSpec, b: SpaceSpec, name: Optional[str] = None) -> SpaceSpec:
    """Cartesian product; the ring is the tensor product in the given order."""
    if a.ring is None or b.ring is None:
        ring = None
    elif a.is_point:
        ring = b.ring
    elif b.is_point:
        ring = a.ring
    else:
        ring = tensor([a.ring, b.ring])
    return SpaceSpec(
        name or f"{a.name} x {b.name}",
        ring,
        key_product(a.key, b.key),
        contractible=a.contractible and b.contractible,
        h_space=a.h_space and b.h_space,
        normal=a.normal and b.normal,
        path_connected=a.path_connected and b.path_connected,
    )


def power_space(a: SpaceSpec, k: int) -> SpaceSpec:
    if k < 1:
        raise CatalogError(f"power must be >= 1, got {k}")
    if k == 1:
        return a
    ring = None if a.ring is None else (a.ring if a.is_point else tensor([a.ring] * k))
    return SpaceSpec(
        f"{a.name}^{k}",
        ring,
        key_power(a.key, k),
        contractible=a.contractible,
        h_space=a.h_space,
        normal=a.normal,
        path_connected=a.path_connected,
    )


def torus(k: int) -> SpaceSpec:
    if k < 1:
        raise CatalogError(f"torus rank must be >= 1, got {k}")
    return replace(power_space(sphere(1), k), name=f"T{k}")


def builtin_space(kind: str, **params) -> SpaceSpec:
    if kind == "sphere":
        return sphere(int(params["n"]))
    if kind in ("real_projective", "rp"):
        return real_projective(int(params["n"]))
    if kind in ("complex_projective", "cp"):
        return complex_projective(int(params["n"]))
    if kind == "torus":
        return torus(int(params.get("k", params.get("n", 0))))
    if kind == "point":
        return point()
    if kind == "product":
        factors: Sequence[SpaceSpec] = params["factors"]
        if not factors:
            raise CatalogError("product of no spaces")
        out = factors[0]
        for f in factors[1:]:
            out = product_space(out, f)
        return out
    raise CatalogError(f"unknown space kind {kind!r}")


# -- maps ----------------------------------------------------------------


@dataclass(frozen=True)
class MapSpec:
    name: str
    domain: SpaceSpec
    codomain: SpaceSpec
    pullback: Optional[RingMap] = None  # f*: H*(codomain) -> H*(domain)
    fibration: bool = False
    section: bool = False
    homotopy_section: bool = False
    identity: bool = False
    null_homotopic: bool = False
    composite: Optional[Tuple[str, str]] = None  # (inner, outer): outer o inner
    product: Optional[Tuple[str, str]] = None

    def __post_init__(self):
        if self.section and not self.homotopy_section:
            object.__setattr__(self, "homotopy_section", True)
        if self.identity:
            if self.domain.key != self.codomain.key:
                raise CatalogError(f"identity map {self.name} needs domain = codomain")
            if self.pullback is not None and list(self.pullback.images) != self.pullback.source.gens():
                raise CatalogError(f"identity map {self.name} needs the identity pullback")
        if self.pullback is not None:
            if self.pullback.source != self.codomain.ring or self.pullback.target != self.domain.ring:
                raise CatalogError(f"pullback of {self.name} does not match its spaces' rings")


def double_cover(n: int, name: Optional[str] = None) -> MapSpec:
    """``p_n: S^n -> RP^n``; a covering, so a fibration, trivial in positive degrees."""
    x, y = sphere(n), real_projective(n)
    return MapSpec(name or f"p{n}", x, y, make_map(y.ring, x.ring, ["0"]), fibration=True)


def complex_quotient(n: int, name: Optional[str] = None) -> MapSpec:
    """``q: S^(2n+1) -> CP^n``."""
    x, y = sphere(2 * n + 1), complex_projective(n)
    return MapSpec(name or f"q{n}", x, y, make_map(y.ring, x.ring, ["0"]), fibration=True)


def projection(x: SpaceSpec, f: SpaceSpec, name: Optional[str] = None) -> MapSpec:
    """``X x F -> X``."""
    dom = product_space(x, f)
    pb = None
    if dom.ring is not None and x.ring is not None:
        if f.is_point:
            pb = identity_map(x.ring)
        elif x.is_point:
            pb = zero_map(x.ring, dom.ring)
        else:
            pb = RingMap(x.ring, dom.ring, tuple(embed(dom.ring, 0, g) for g in x.ring.gens()))
    return MapSpec(
        name or f"proj({x.name},{f.name})", dom, x, pb, fibration=True, section=True
    )


def identity(x: SpaceSpec, name: Optional[str] = None) -> MapSpec:
    pb = identity_map(x.ring) if x.ring is not None else None
    return MapSpec(
        name or f"id({x.name})", x, x, pb, fibration=True, section=True, identity=True
    )


def constant(x: SpaceSpec, y: SpaceSpec, name: Optional[str] = None) -> MapSpec:
    pb = zero_map(y.ring, x.ring) if x.ring is not None and y.ring is not None else None
    return MapSpec(name or f"const({x.name},{y.name})", x, y, pb, null_homotopic=True)


def composite_map(inner: MapSpec, outer: MapSpec, name: Optional[str] = None) -> MapSpec:
    """``outer o inner``.  Structure flags hold when both pieces carry them."""
    if inner.codomain.key != outer.domain.key:
        raise CatalogError(f"cannot compose {outer.name} after {inner.name}: spaces differ")
    pb = None
    if inner.pullback is not None and outer.pullback is not None:
        pb = inner.pullback.compose(outer.pullback)
    return MapSpec(
        name or f"{outer.name}.{inner.name}",
        inner.domain,
        outer.codomain,
        pb,
        fibration=inner.fibration and outer.fibration,
        section=inner.section and outer.section,
        homotopy_section=inner.homotopy_section and outer.homotopy_section,
        identity=inner.identity and outer.identity,
        composite=(inner.name, outer.name),
    )


def product_map(left: MapSpec, right: MapSpec, name: Optional[str] = None) -> MapSpec:
    pb = None
    if left.pullback is not None and right.pullback is not None:
        if left.domain.is_point or left.codomain.is_point or right.domain.is_point or right.codomain.is_point:
            pb = None  # tensor factors must be genuine rings
        else:
            pb = tensor_map([left.pullback, right.pullback])
    return MapSpec(
        name or f"{left.name} x {right.name}",
        product_space(left.domain, right.domain),
        product_space(left.codomain, right.codomain),
        pb,
        fibration=left.fibration and right.fibration,
        section=left.section and right.section,
        homotopy_section=left.homotopy_section and right.homotopy_section,
        identity=left.identity and right.identity,
        null_homotopic=left.null_homotopic and right.null_homotopic,
        product=(left.name, right.name),
    )


def builtin_map(kind: str, **params) -> MapSpec:
    name = params.get("name")
    if kind == "double_cover":
        return double_cover(int(params["n"]), name)
    if kind == "complex_quotient":
        return complex_quotient(int(params["n"]), name)
    if kind == "projection":
        return projection(params["x"], params["f"], name)
    if kind == "identity":
        return identity(params["x"], name)
    if kind == "constant":
        return constant(params["x"], params["y"], name)
    raise CatalogError(f"unknown map kind {kind!r}")


# -- facts ---------------------------------------------------------------


def known_facts(spec: SpaceSpec, r_values: Iterable[int] = range(2, 6), bases=None) -> List[Fact]:
    """Seeded intervals for the atomic factors of ``spec``.

    ``bases`` maps base names to their atomic specs (defaults to the
    built-in patterns).
    """
    out: List[Fact] = []
    if not spec.key:
        return [Fact(Cat(()), 1, 1, ANCHOR_POINT)]
    for base, _ in spec.key:
        b = bases[base] if bases is not None and base in bases else atomic(base)
        if b.cat_fact is not None:
            lo, hi, anchor = b.cat_fact
            out.append(Fact(Cat(b.key), lo, hi, anchor))
        if b.sphere_dim is not None:
            for r in r_values:
                v = r if b.sphere_dim % 2 else r + 1
                out.append(Fact(TCr(b.key, r), v, v, ANCHOR_SPHERE_TC))
    return out


# -- names ---------------------------------------------------------------

_ATOM = re.compile(r"^(S|RP|CP|T)\^?(\d+)$")
_MAP_CALL = re.compile(r"^(id|const|proj)\((.*)\)$")
_MAP_ATOM = re.compile(r"^(p|q)(\d+)$")


def atomic(name: str) -> SpaceSpec:
    m = _ATOM.match(name.strip())
    if not m:
        if name.strip() in ("pt", "point"):
            return point()
        raise CatalogError(f"unknown space {name!r}")
    kind, n = m.group(1), int(m.group(2))
    return {"S": sphere, "RP": real_projective, "CP": complex_projective, "T": torus}[kind](n)


def _split_args(text: str) -> List[str]:
    return [p.strip() for p in text.split(",")]


@dataclass
class Catalog:
    """Name registry: user spaces/maps on top of the built-in patterns."""

    spaces: Dict[str, SpaceSpec] = field(default_factory=dict)
    maps: Dict[str, MapSpec] = field(default_factory=dict)
    bases: Dict[str, SpaceSpec] = field(default_factory=dict)

    def add_space(self, name: str, spec: SpaceSpec) -> SpaceSpec:
        if name in self.spaces:
            raise CatalogError(f"duplicate space name {name!r}")
        self.spaces[name] = spec
        if spec.key == ((name, 1),):
            self.bases[name] = spec
        self._note(spec)
        return spec

    def add_map(self, spec: MapSpec) -> MapSpec:
        if spec.name in self.maps:
            raise CatalogError(f"duplicate map name {spec.name!r}")
        self.maps[spec.name] = spec
        self._note(spec.domain)
        self._note(spec.codomain)
        return spec

    def _note(self, spec: SpaceSpec):
        for base, _ in spec.key:
            if base not in self.bases:
                self.bases[base] = atomic(base)

    def base(self, name: str) -> SpaceSpec:
        if name not in self.bases:
            self.bases[name] = atomic(name)
        return self.bases[name]

    def space(self, expr: str) -> SpaceSpec:
        expr = expr.strip()
        if expr in self.spaces:
            return self.spaces[expr]
        try:
            spec = atomic(expr)
            self._note(spec)
            return spec
        except CatalogError:
            pass
        for sep in ("×", " x ", "*"):
            if sep in expr:
                parts = [self.space(p) for p in expr.split(sep)]
                return builtin_space("product", factors=parts)
        if "^" in expr:
            head, _, tail = expr.rpartition("^")
            if tail.strip().isdigit():
                return power_space(self.space(head), int(tail))
        if "x" in expr:
            pieces = expr.split("x")
            try:
                parts = [self.space(p) for p in pieces]
            except CatalogError:
                pass
            else:
                return builtin_space("product", factors=parts)
        raise CatalogError(f"unknown space {expr!r}")

    def space_key(self, expr: str) -> SpaceKey:
        return self.space(expr).key

    def map(self, expr: str) -> MapSpec:
        expr = expr.strip()
        if expr in self.maps:
            return self.maps[expr]
        m = _MAP_ATOM.match(expr)
        if m:
            n = int(m.group(2))
            spec = double_cover(n) if m.group(1) == "p" else complex_quotient(n)
            return self.add_map(spec)
        m = _MAP_CALL.match(expr)
        if m:
            args = _split_args(m.group(2))
            kind = m.group(1)
            try:
                if kind == "id" and len(args) == 1:
                    spec = identity(self.space(args[0]), expr)
                elif kind == "const" and len(args) == 2:
                    spec = constant(self.space(args[0]), self.space(args[1]), expr)
                elif kind == "proj" and len(args) == 2:
                    spec = projection(self.space(args[0]), self.space(args[1]), expr)
                else:
                    raise CatalogError(f"bad arguments in {expr!r}")
            except CatalogError as e:
                raise CatalogError(f"cannot build map {expr!r}: {e}") from None
            return self.add_map(spec)
        raise CatalogError(f"unknown map {expr!r}")

    def map_name(self, expr: str) -> str:
        return self.map(expr).name


def custom_space(
    name: str,
    generators: Optional[Sequence[GeneratorSpec | Tuple[str, int, int]]] = None,
    *,
    contractible: bool = False,
    h_space: bool = False,
    normal: bool = True,
    path_connected: bool = True,
) -> SpaceSpec:
    """A user-declared atomic space; ``generators=None`` leaves it abstract."""
    if _ATOM.match(name) or name in ("pt", "point"):
        raise CatalogError(f"space name {name!r} clashes with a built-in pattern")
    ring = make_presentation(generators) if generators is not None else None
    if contractible:
        if ring is not None and ring.total_dim != 1:
            raise CatalogError(f"contractible space {name} must have no generators")
        return SpaceSpec(name, POINT_RING, (), contractible=True, h_space=True,
                         normal=normal, path_connected=path_connected)
    return SpaceSpec(name, ring, make_key([(name, 1)]), h_space=h_space,
                     normal=normal, path_connected=path_connected)
