"""Finite graded-commutative rings over GF(2) given by truncated generators.

A ring is ``GF(2)[x_1, ..., x_k] / (x_1^t_1, ..., x_k^t_k)`` with each ``x_i``
in a positive degree.  Over GF(2) graded commutativity is plain commutativity,
so no signs appear anywhere.

Monomials are indexed in mixed radix with the first generator as the most
significant digit, so comparing indices is comparing exponent vectors
lexicographically.  Bases of a degree are listed largest first
(``a1^2, a1*a2, a2^2``).  An :class:`Element` is a bit mask over those indices (a set of
monomials), which makes multiplication by a monomial a mask-and-shift.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

Exponents = Tuple[int, ...]


class RingError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int
    truncation: int

    def __post_init__(self):
        if self.degree < 1:
            raise RingError(f"generator {self.name!r}: degree must be >= 1, got {self.degree}")
        if self.truncation < 2:
            raise RingError(
                f"generator {self.name!r}: truncation must be >= 2, got {self.truncation}"
            )


def iter_bits(v: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def _repeat(pattern: int, width: int, times: int) -> int:
    if times <= 1:
        return pattern
    return pattern * (((1 << (width * times)) - 1) // ((1 << width) - 1))


@dataclass(frozen=True)
class RingPresentation:
    generators: Tuple[GeneratorSpec, ...]
    factors: Tuple["RingPresentation", ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise RingError(f"duplicate generator names: {dup}")

    # -- sizes -----------------------------------------------------------

    @cached_property
    def total_dim(self) -> int:
        return prod(g.truncation for g in self.generators)

    @cached_property
    def top_degree(self) -> int:
        return sum(g.degree * (g.truncation - 1) for g in self.generators)

    @cached_property
    def strides(self) -> Tuple[int, ...]:
        out = []
        acc = 1
        for g in reversed(self.generators):
            out.append(acc)
            acc *= g.truncation
        return tuple(reversed(out))

    @cached_property
    def _name_index(self) -> Dict[str, int]:
        return {g.name: i for i, g in enumerate(self.generators)}

    def generator_index(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise RingError(f"unknown generator {name!r}") from None

    # -- monomials -------------------------------------------------------

    def index(self, exps: Sequence[int]) -> int:
        if len(exps) != len(self.generators):
            raise RingError("exponent vector has the wrong length")
        idx = 0
        for e, g, st in zip(exps, self.generators, self.strides):
            if not 0 <= e < g.truncation:
                raise RingError(f"exponent {e} out of range for {g.name}")
            idx += e * st
        return idx

    def exponents(self, idx: int) -> Exponents:
        out = []
        for g, st in zip(self.generators, self.strides):
            out.append((idx // st) % g.truncation)
        return tuple(out)

    def monomial_degree(self, idx: int) -> int:
        return sum(e * g.degree for e, g in zip(self.exponents(idx), self.generators))

    @cached_property
    def _degree_indices(self) -> Dict[int, Tuple[int, ...]]:
        buckets: Dict[int, List[int]] = {}

        def walk(i: int, idx: int, deg: int):
            if i == len(self.generators):
                buckets.setdefault(deg, []).append(idx)
                return
            g = self.generators[i]
            st = self.strides[i]
            for e in range(g.truncation):
                walk(i + 1, idx + e * st, deg + e * g.degree)

        walk(0, 0, 0)
        return {d: tuple(reversed(v)) for d, v in buckets.items()}

    def degree_indices(self, d: int) -> Tuple[int, ...]:
        """Monomial indices of total degree ``d``, in descending lexicographic order."""
        return self._degree_indices.get(d, ())

    def degree_basis(self, d: int) -> List[Exponents]:
        return [self.exponents(i) for i in self.degree_indices(d)]

    def occupied_degrees(self) -> List[int]:
        return sorted(self._degree_indices)

    @cached_property
    def _masks(self) -> Dict[tuple, int]:
        return {}

    def degree_mask(self, d: int) -> int:
        key = ("deg", d)
        m = self._masks.get(key)
        if m is None:
            m = 0
            for i in self.degree_indices(d):
                m |= 1 << i
            self._masks[key] = m
        return m

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.total_dim) - 1

    def _digit_mask(self, k: int, c: int) -> int:
        # indices whose k-th exponent is < truncation_k - c
        key = ("digit", k, c)
        if key in self._masks:
            return self._masks[key]
        g = self.generators[k]
        st = self.strides[k]
        keep = g.truncation - c
        if keep <= 0:
            return 0
        width = st * g.truncation
        block = (1 << (st * keep)) - 1
        m = _repeat(block, width, self.total_dim // width)
        self._masks[key] = m
        return m

    def valid_mask(self, idx: int) -> int:
        """Indices ``j`` with monomial(j) * monomial(idx) nonzero."""
        key = ("valid", idx)
        m = self._masks.get(key)
        if m is None:
            m = self.full_mask
            for k, e in enumerate(self.exponents(idx)):
                if e:
                    m &= self._digit_mask(k, e)
            if len(self._masks) < 20000:
                self._masks[key] = m
        return m

    # -- elements --------------------------------------------------------

    def zero(self) -> "Element":
        return Element(self, 0)

    def one(self) -> "Element":
        return Element(self, 1)

    def monomial(self, exps: Sequence[int]) -> "Element":
        return Element(self, 1 << self.index(exps))

    def gen(self, name_or_index: str | int) -> "Element":
        k = name_or_index if isinstance(name_or_index, int) else self.generator_index(name_or_index)
        exps = [0] * len(self.generators)
        exps[k] = 1
        return self.monomial(exps)

    def gens(self) -> List["Element"]:
        return [self.gen(k) for k in range(len(self.generators))]

    def element(self, text: str) -> "Element":
        return parse_element(self, text)

    def monomial_str(self, idx: int) -> str:
        parts = []
        for e, g in zip(self.exponents(idx), self.generators):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class Element:
    ring: RingPresentation
    bits: int

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            return NotImplemented
        if other.ring != self.ring:
            raise RingError("elements belong to different rings")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.ring, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.ring, mul_bits(self.ring, self.bits, other.bits))

    def __pow__(self, k: int) -> "Element":
        out = self.ring.one()
        for _ in range(k):
            out = out * self
            if not out:
                break
        return out

    def __bool__(self) -> bool:
        return self.bits != 0

    @property
    def indices(self) -> List[int]:
        return list(iter_bits(self.bits))

    @property
    def terms(self) -> List[Exponents]:
        return [self.ring.exponents(i) for i in iter_bits(self.bits)]

    def homogeneous_part(self, d: int) -> "Element":
        return Element(self.ring, self.bits & self.ring.degree_mask(d))

    def degrees(self) -> List[int]:
        return sorted({self.ring.monomial_degree(i) for i in iter_bits(self.bits)})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a nonzero homogeneous element; ``None`` otherwise."""
        ds = self.degrees()
        return ds[0] if len(ds) == 1 else None

    def __str__(self) -> str:
        if not self.bits:
            return "0"
        return " + ".join(self.ring.monomial_str(i) for i in iter_bits(self.bits))

    def __repr__(self) -> str:
        return f"Element({self})"


def mul_bits(ring: RingPresentation, a: int, b: int) -> int:
    if not a or not b:
        return 0
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    for i in iter_bits(a):
        out ^= (b & ring.valid_mask(i)) << i
    return out


_TERM = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*(\d+))?\s*$")


def parse_element(ring: RingPresentation, text: str) -> Element:
    """Parse ``"a^2*b + c + 1"``-style text; ``"0"`` is zero."""
    text = text.strip()
    if not text:
        raise RingError("empty element text")
    total = ring.zero()
    for term in text.split("+"):
        term = term.strip()
        if term == "0":
            continue
        if term == "1":
            total = total + ring.one()
            continue
        exps = [0] * len(ring.generators)
        for factor in term.split("*"):
            m = _TERM.match(factor)
            if not m:
                raise RingError(f"cannot parse factor {factor!r} in {text!r}")
            k = ring.generator_index(m.group(1))
            exps[k] += int(m.group(2) or 1)
        if any(e >= g.truncation for e, g in zip(exps, ring.generators)):
            continue
        total = total + ring.monomial(exps)
    return total


def make_presentation(gens: Iterable[GeneratorSpec | Tuple[str, int, int]]) -> RingPresentation:
    specs = tuple(g if isinstance(g, GeneratorSpec) else GeneratorSpec(*g) for g in gens)
    return RingPresentation(specs)


def degree_basis(ring: RingPresentation, d: int) -> List[Exponents]:
    """Exponent vectors of total degree ``d`` in lexicographic order."""
    if d < 0:
        raise RingError(f"degree must be >= 0, got {d}")
    return ring.degree_basis(d)


def ring_metrics(ring: RingPresentation) -> Tuple[int, int]:
    return ring.total_dim, ring.top_degree


POINT_RING = RingPresentation(())


def tensor(rings: Sequence[RingPresentation]) -> RingPresentation:
    """Künneth tensor product; generators of factor ``i`` get suffix ``_i`` (1-based)."""
    if not rings:
        raise RingError("tensor of an empty list")
    gens = []
    for i, r in enumerate(rings, start=1):
        gens.extend(GeneratorSpec(f"{g.name}_{i}", g.degree, g.truncation) for g in r.generators)
    return RingPresentation(tuple(gens), factors=tuple(rings))


def tensor_power(ring: RingPresentation, k: int) -> RingPresentation:
    return tensor([ring] * k) if k else POINT_RING


def embed(target: RingPresentation, factor: int, e: Element) -> Element:
    """Image of ``e`` under the inclusion of factor ``factor`` (0-based) into ``target``."""
    if not target.factors:
        raise RingError("target is not a tensor product")
    if e.ring != target.factors[factor]:
        raise RingError("element does not belong to that factor")
    block = prod(r.total_dim for r in target.factors[factor + 1:])
    out = 0
    for i in iter_bits(e.bits):
        out |= 1 << (i * block)
    return Element(target, out)
