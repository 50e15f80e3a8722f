"""Index of nilpotence of kernel ideals, and cup-length.

``nil(I)`` is the least ``n`` with ``I^n = 0`` (so ``nil(0) = 1``).  Powers are
computed as exact GF(2) spans, degree by degree, so the result is the true
value for mod-2 cohomology rather than a bound from hand-picked products.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .f2 import Echelon
from .hom import RingMap
from .ring import Element, RingPresentation, mul_bits


@dataclass(frozen=True)
class GradedSubspace:
    """Positive-degree subspace; each degree holds a fully reduced echelon basis."""

    ring: RingPresentation
    per_degree: Dict[int, Tuple[int, ...]] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return any(self.per_degree.values())

    def basis(self, d: int | None = None) -> List[Element]:
        if d is not None:
            return [Element(self.ring, v) for v in self.per_degree.get(d, ())]
        return [Element(self.ring, v) for k in sorted(self.per_degree) for v in self.per_degree[k]]

    def vectors(self) -> List[int]:
        return [v for k in sorted(self.per_degree) for v in self.per_degree[k]]

    def dims(self) -> Dict[int, int]:
        return {d: len(b) for d, b in sorted(self.per_degree.items()) if b}

    def dim(self) -> int:
        return sum(len(b) for b in self.per_degree.values())

    def is_monomial(self) -> bool:
        return all(v & (v - 1) == 0 for v in self.vectors())

    def contains(self, e: Element) -> bool:
        if e.ring != self.ring:
            raise ValueError("element is in a different ring")
        for d in e.degrees():
            part = e.homogeneous_part(d).bits
            if Echelon(self.per_degree.get(d, ())).reduce(part):
                return False
        return True


def _graded(ring: RingPresentation, vectors: Sequence[int]) -> GradedSubspace:
    buckets: Dict[int, Echelon] = {}
    for v in vectors:
        if not v:
            continue
        d = ring.monomial_degree((v & -v).bit_length() - 1)
        buckets.setdefault(d, Echelon()).add(v)
    return GradedSubspace(ring, {d: tuple(e.reduced()) for d, e in sorted(buckets.items()) if len(e)})


def kernel_ideal(m: RingMap) -> GradedSubspace:
    vecs = []
    for d in range(1, m.source.top_degree + 1):
        vecs.extend(e.bits for e in m.kernel_basis(d))
    return _graded(m.source, vecs)


def positive_ideal(ring: RingPresentation) -> GradedSubspace:
    return GradedSubspace(
        ring,
        {d: tuple(1 << i for i in ring.degree_indices(d)) for d in ring.occupied_degrees() if d > 0},
    )


def ideal_power_step(I: GradedSubspace, P: GradedSubspace) -> GradedSubspace:
    """Span of all products ``a*b`` with ``a`` in ``I`` and ``b`` in ``P``."""
    if I.ring != P.ring:
        raise ValueError("subspaces live in different rings")
    ring = I.ring
    prods = [mul_bits(ring, a, b) for a in I.vectors() for b in P.vectors()]
    return _graded(ring, prods)


def ideal_generators(I: GradedSubspace) -> List[int]:
    """Homogeneous elements generating ``I`` as an ideal: a complement of
    ``R+ . I`` inside ``I``."""
    ring = I.ring
    gens = ring.gens()
    decomposable = Echelon()
    for v in I.vectors():
        for g in gens:
            decomposable.add(mul_bits(ring, g.bits, v))
    out = []
    for d in sorted(I.per_degree):
        for v in I.per_degree[d]:
            if decomposable.add(v):
                out.append(v)
    return out


def _times_generators(ring: RingPresentation, gens: Sequence[int], P: GradedSubspace) -> GradedSubspace:
    return _graded(ring, [mul_bits(ring, g, b) for g in gens for b in P.vectors()])


@dataclass(frozen=True)
class NilResult:
    nil: int
    witness: Optional[Element]  # nonzero element of I^(nil-1); None when I = 0
    method: str  # "monomial" or "span"
    power_dims: Tuple[Dict[int, int], ...] = ()

    @property
    def witness_length(self) -> int:
        return self.nil - 1


def _monomial_nil(ring: RingPresentation, I: GradedSubspace) -> Tuple[int, Element]:
    # A monomial ideal: the longest nonzero product uses minimal monomials only.
    # I is an ideal, so a monomial is non-minimal iff dividing it by a single
    # generator stays inside I.
    present = set()
    for v in I.vectors():
        present.add(v.bit_length() - 1)
    strides = ring.strides
    minimal = []
    for idx in sorted(present):
        e = ring.exponents(idx)
        if not any(x and (idx - strides[j]) in present for j, x in enumerate(e)):
            minimal.append(e)
    cap = tuple(g.truncation - 1 for g in ring.generators)
    memo: Dict[Tuple[int, ...], Tuple[int, Tuple[int, ...]]] = {}

    def best(room: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
        # (max count, exponent vector used) packable into ``room``
        hit = memo.get(room)
        if hit is not None:
            return hit
        out = (0, tuple(0 for _ in room))
        for g in minimal:
            if all(a <= b for a, b in zip(g, room)):
                k, used = best(tuple(b - a for a, b in zip(g, room)))
                if k + 1 > out[0]:
                    out = (k + 1, tuple(u + a for u, a in zip(used, g)))
        memo[room] = out
        return out

    if all(sum(1 for x in g if x) == 1 for g in minimal):
        # pure powers: each variable packs independently
        count = 0
        used = [0] * len(cap)
        for g in minimal:
            j = next(i for i, x in enumerate(g) if x)
            count += cap[j] // g[j]
            used[j] = (cap[j] // g[j]) * g[j]
        return count + 1, ring.monomial(tuple(used))
    k, used = best(cap)
    return k + 1, ring.monomial(used)


def nil_of_ideal(I: GradedSubspace, *, record_powers: bool = False, fast: bool = True) -> NilResult:
    ring = I.ring
    if not I:
        return NilResult(1, None, "span", ())
    if fast and not record_powers and I.is_monomial():
        n, w = _monomial_nil(ring, I)
        return NilResult(n, w, "monomial")
    gens = ideal_generators(I)
    n = 1
    P = I
    dims = []
    last = P
    while P:
        if record_powers:
            dims.append(P.dims())
        last = P
        P = _times_generators(ring, gens, P)
        n += 1
    top = max(d for d, b in last.per_degree.items() if b)
    return NilResult(n, Element(ring, last.per_degree[top][0]), "span", tuple(dims))


def nil_report(m: RingMap, **kw) -> NilResult:
    return nil_of_ideal(kernel_ideal(m), **kw)


def nil_index(m: RingMap) -> int:
    return nil_report(m).nil


def cup_length(ring: RingPresentation) -> int:
    """Longest nonzero product of positive-degree classes.

    For truncated generators the positive ideal is generated by the
    generators, and the top monomial is a product of sum(t_i - 1) of them.
    """
    return sum(g.truncation - 1 for g in ring.generators)


# ---------------------------------------------------------------------------
# brute-force oracle: shares no code with the span computation above
# ---------------------------------------------------------------------------

ORACLE_GUARD = 64


class OracleGuardError(ValueError):
    pass


def _poly_mul(a: frozenset, b: frozenset, caps: Tuple[int, ...]) -> frozenset:
    out: set = set()
    for x in a:
        for y in b:
            z = tuple(p + q for p, q in zip(x, y))
            if all(e <= c for e, c in zip(z, caps)):
                out ^= {z}
    return frozenset(out)


def _oracle_kernel(m: RingMap) -> List[frozenset]:
    src = m.source
    caps = tuple(g.truncation - 1 for g in src.generators)
    degs = [g.degree for g in src.generators]
    img_gens = [frozenset(t.terms) for t in m.images]
    tcaps = tuple(g.truncation - 1 for g in m.target.generators)

    def image(e: Tuple[int, ...]) -> frozenset:
        out = frozenset({tuple(0 for _ in tcaps)})
        for k, p in enumerate(e):
            for _ in range(p):
                out = _poly_mul(out, img_gens[k], tcaps)
        return out

    by_deg: Dict[int, List[Tuple[int, ...]]] = {}
    for e in itertools.product(*(range(c + 1) for c in caps)):
        d = sum(a * b for a, b in zip(e, degs))
        if d > 0:
            by_deg.setdefault(d, []).append(e)

    basis = []
    for d, monos in sorted(by_deg.items()):
        # rows: [image set, combination set]; plain elimination on python sets
        rows: List[Tuple[set, set]] = [(set(image(e)), {e}) for e in monos]
        pivots: List[Tuple[tuple, set, set]] = []
        for img, comb in rows:
            for key, pimg, pcomb in pivots:
                if key in img:
                    img ^= pimg
                    comb ^= pcomb
            if img:
                pivots.append((min(img), img, comb))
            else:
                basis.append(frozenset(comb))
    return basis


def brute_force_nil_oracle(m: RingMap, max_len: int) -> int:
    """Longest nonzero product of kernel-basis elements, plus one (capped at
    ``max_len + 1``).  Exhaustive over multisets of basis elements."""
    if m.source.total_dim > ORACLE_GUARD:
        raise OracleGuardError(
            f"source dimension {m.source.total_dim} exceeds oracle guard {ORACLE_GUARD}"
        )
    basis = _oracle_kernel(m)
    caps = tuple(g.truncation - 1 for g in m.source.generators)
    memo: Dict[Tuple[int, frozenset, int], int] = {}

    def longest(start: int, prod_: frozenset, budget: int) -> int:
        if budget == 0:
            return 0
        key = (start, prod_, budget)
        if key in memo:
            return memo[key]
        best = 0
        for i in range(start, len(basis)):
            p = _poly_mul(prod_, basis[i], caps)
            if p:
                best = max(best, 1 + longest(i, p, budget - 1))
        memo[key] = best
        return best

    unit = frozenset({tuple(0 for _ in caps)})
    return longest(0, unit, max_len) + 1
