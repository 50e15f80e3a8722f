"""Unital graded ring maps given on generators.

The maps of interest are induced maps ``f*: H*(Y) -> H*(X)`` and the
diagonal-evaluation map ``(Delta_{r-s}, f^s)*`` sending
``a_1 x ... x a_{r-s} x b_1 x ... x b_s`` to ``a_1 ... a_{r-s} f*(b_1) ... f*(b_s)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Sequence

from .f2 import BitMatrix, kernel_space
from .ring import Element, RingError, RingPresentation, embed, iter_bits, tensor


class RingMapError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class RingMap:
    source: RingPresentation
    target: RingPresentation
    images: tuple  # one target Element per source generator

    def __post_init__(self):
        if len(self.images) != len(self.source.generators):
            raise RingMapError(
                f"expected {len(self.source.generators)} generator images, got {len(self.images)}"
            )
        for g, img in zip(self.source.generators, self.images):
            if img.ring != self.target:
                raise RingMapError(f"image of {g.name} is not in the target ring")
            if img and img.degree != g.degree:
                raise RingMapError(
                    f"image of {g.name} must be homogeneous of degree {g.degree}, got {img}"
                )
            if img ** g.truncation:
                raise RingMapError(
                    f"{g.name}^{g.truncation} = 0 but ({img})^{g.truncation} != 0"
                )

    @cached_property
    def _image_cache(self) -> Dict[int, int]:
        return {0: 1}

    def monomial_image(self, idx: int) -> int:
        """Image of the source monomial with index ``idx``, as target bits."""
        cache = self._image_cache
        hit = cache.get(idx)
        if hit is not None:
            return hit
        # peel off one factor of the least significant generator present
        src = self.source
        k = len(src.generators) - 1
        while (idx // src.strides[k]) % src.generators[k].truncation == 0:
            k -= 1
        rest = self.monomial_image(idx - src.strides[k])
        img = (Element(self.target, rest) * self.images[k]).bits
        if len(cache) < 1 << 18:
            cache[idx] = img
        return img

    def apply(self, e: Element) -> Element:
        if e.ring != self.source:
            raise RingMapError("element is not in the source ring")
        out = 0
        for i in iter_bits(e.bits):
            out ^= self.monomial_image(i)
        return Element(self.target, out)

    __call__ = apply

    def matrix_of_degree(self, d: int) -> BitMatrix:
        """Matrix in the degree-``d`` monomial bases; column j is the image of
        the j-th source monomial."""
        cols = self.source.degree_indices(d)
        rows = self.target.degree_indices(d)
        row_pos = {idx: i for i, idx in enumerate(rows)}
        out = [0] * len(rows)
        for j, idx in enumerate(cols):
            for t in iter_bits(self.monomial_image(idx)):
                out[row_pos[t]] |= 1 << j
        return BitMatrix(tuple(out), len(cols))

    def kernel_basis(self, d: int) -> List[Element]:
        cols = self.source.degree_indices(d)
        basis = []
        for v in kernel_space(self.matrix_of_degree(d)):
            bits = 0
            for j in iter_bits(v):
                bits |= 1 << cols[j]
            basis.append(Element(self.source, bits))
        return basis

    def compose(self, inner: "RingMap") -> "RingMap":
        """``self o inner`` (apply ``inner`` first)."""
        if inner.target != self.source:
            raise RingMapError("maps are not composable")
        return RingMap(inner.source, self.target, tuple(self.apply(img) for img in inner.images))


def make_map(src: RingPresentation, dst: RingPresentation, images: Sequence[Element | str]) -> RingMap:
    imgs = tuple(dst.element(x) if isinstance(x, str) else x for x in images)
    return RingMap(src, dst, imgs)


def identity_map(ring: RingPresentation) -> RingMap:
    return RingMap(ring, ring, tuple(ring.gens()))


def zero_map(src: RingPresentation, dst: RingPresentation) -> RingMap:
    """Unital map killing every generator (pullback along a constant map)."""
    return RingMap(src, dst, tuple(dst.zero() for _ in src.generators))


def diagonal_evaluation_map(f: RingMap, r: int, s: int) -> RingMap:
    """``(Delta_{r-s}, f^s)*`` on ``H*(X)^(r-s) (x) H*(Y)^s -> H*(X)``.

    ``f`` is the induced map ``H*(Y) -> H*(X)``.  Generators of an X-factor go
    to themselves, generators of a Y-factor go to their ``f``-image.
    """
    if r < 2:
        raise RingMapError(f"r must be >= 2, got {r}")
    if not 1 <= s <= r:
        raise RingMapError(f"s must lie in [1, {r}], got {s}")
    hx, hy = f.target, f.source
    src = tensor([hx] * (r - s) + [hy] * s)
    images = []
    for _ in range(r - s):
        images.extend(hx.gens())
    for _ in range(s):
        images.extend(f.images)
    return RingMap(src, hx, tuple(images))


def power_map(f: RingMap, s: int) -> RingMap:
    """``(f^s)*``: factor-wise ``f`` from ``H*(Y)^(x)s`` to ``H*(X)^(x)s``."""
    if s < 1:
        raise RingMapError(f"s must be >= 1, got {s}")
    if s == 1:
        return f
    src = tensor([f.source] * s)
    dst = tensor([f.target] * s)
    images = []
    for i in range(s):
        images.extend(embed(dst, i, img) for img in f.images)
    return RingMap(src, dst, tuple(images))


def tensor_map(maps: Sequence[RingMap]) -> RingMap:
    """Factor-wise tensor product of ring maps (induced map of a product of maps)."""
    src = tensor([m.source for m in maps])
    dst = tensor([m.target for m in maps])
    images = []
    for i, m in enumerate(maps):
        images.extend(embed(dst, i, img) for img in m.images)
    return RingMap(src, dst, tuple(images))


__all__ = [
    "RingMap",
    "RingMapError",
    "RingError",
    "make_map",
    "identity_map",
    "zero_map",
    "diagonal_evaluation_map",
    "power_map",
    "tensor_map",
]
