"""Linear algebra over GF(2) with rows packed into Python ints.

Bit ``j`` of a row is the entry in column ``j``.  Pivots are always chosen at
the lowest available column index, so echelon forms and kernel bases are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple


class DimensionError(ValueError):
    """Vectors or matrices of incompatible sizes were combined."""


def _lowbit(v: int) -> int:
    return (v & -v).bit_length() - 1


@dataclass(frozen=True)
class BitMatrix:
    rows: Tuple[int, ...]
    ncols: int

    def __post_init__(self):
        limit = 1 << self.ncols
        for row in self.rows:
            if row < 0 or row >= limit:
                raise DimensionError(f"row {row:#x} does not fit in {self.ncols} columns")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> "BitMatrix":
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for entry in entries:
            if len(entry) != ncols:
                raise DimensionError("ragged matrix")
            rows.append(sum(1 << j for j, x in enumerate(entry) if x & 1))
        return cls(tuple(rows), ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls((0,) * nrows, ncols)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> List[List[int]]:
        return [[(row >> j) & 1 for j in range(self.ncols)] for row in self.rows]

    def apply(self, v: int) -> int:
        """Matrix-vector product; ``v`` and the result are bit vectors."""
        if v >> self.ncols:
            raise DimensionError("vector longer than the number of columns")
        out = 0
        for i, row in enumerate(self.rows):
            if bin(row & v).count("1") & 1:
                out |= 1 << i
        return out


def rref(m: BitMatrix) -> Tuple[BitMatrix, int]:
    """Reduced row-echelon form and rank.

    Rows of the result are ordered by pivot column; zero rows are kept at the
    bottom so the shape is unchanged.
    """
    work = list(m.rows)
    rank = 0
    for col in range(m.ncols):
        bit = 1 << col
        pivot = next((i for i in range(rank, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        for i in range(len(work)):
            if i != rank and work[i] & bit:
                work[i] ^= prow
        rank += 1
        if rank == len(work):
            break
    return BitMatrix(tuple(work), m.ncols), rank


def rank(m: BitMatrix) -> int:
    return rref(m)[1]


def kernel_space(m: BitMatrix) -> List[int]:
    """Basis of ``{v : m v = 0}``, one vector per free column, in column order."""
    reduced, r = rref(m)
    pivots = {}
    for row in reduced.rows[:r]:
        pivots[_lowbit(row)] = row
    basis = []
    for free in range(m.ncols):
        if free in pivots:
            continue
        v = 1 << free
        for pcol, row in pivots.items():
            if (row >> free) & 1:
                v |= 1 << pcol
        basis.append(v)
    return basis


def span_membership(basis: Sequence[int], v: int, length: int | None = None) -> bool:
    """True iff ``v`` is a GF(2) combination of ``basis``.

    When ``length`` is given every vector must fit in that many bits.
    """
    if length is not None:
        for w in (*basis, v):
            if w < 0 or w >> length:
                raise DimensionError(f"vector does not have length {length}")
    ech = Echelon()
    for w in basis:
        ech.add(w)
    return ech.reduce(v) == 0


class Echelon:
    """Incrementally maintained row-echelon basis keyed by lowest set bit.

    Used for span computations where vectors arrive one at a time (ideal
    products, kernels).  ``reduced()`` returns the canonical fully reduced
    basis.
    """

    __slots__ = ("pivots",)

    def __init__(self, vectors: Iterable[int] = ()):
        self.pivots: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, v: int) -> int:
        pivots = self.pivots
        while v:
            low = v & -v
            row = pivots.get(low)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        self.pivots[v & -v] = v
        return True

    def reduced(self) -> List[int]:
        """Fully reduced basis, sorted by pivot column."""
        done: dict[int, int] = {}
        # highest pivot first: rows used for clearing are already clean
        for k in sorted(self.pivots, reverse=True):
            row = self.pivots[k]
            v = row ^ k
            while v:
                low = v & -v
                hit = done.get(low)
                if hit is not None:
                    row ^= hit
                    v = row & ~((low << 1) - 1)
                else:
                    v ^= low
            done[k] = row
        return [done[k] for k in sorted(done)]
