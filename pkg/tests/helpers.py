"""Random presentations and maps shared by the test modules."""

import random

from htcmap.hom import RingMap, RingMapError
from htcmap.ring import Element, make_presentation


def random_ring(rng: random.Random, max_dim: int, prefix: str):
    while True:
        k = rng.randint(1, 3)
        gens = [(f"{prefix}{i}", rng.randint(1, 3), rng.randint(2, 4)) for i in range(k)]
        dim = 1
        for _, _, t in gens:
            dim *= t
        if dim <= max_dim:
            return make_presentation(gens)


def random_element_of_degree(rng: random.Random, ring, d: int) -> Element:
    bits = 0
    for i in ring.degree_indices(d):
        if rng.random() < 0.5:
            bits |= 1 << i
    return Element(ring, bits)


def random_map(rng: random.Random, max_dim: int = 32) -> RingMap:
    """f*: H*(Y) -> H*(X) with random homogeneous generator images; an image
    that breaks the truncation relation is replaced by 0."""
    hy = random_ring(rng, max_dim, "y")
    hx = random_ring(rng, max_dim, "x")
    images = []
    for g in hy.generators:
        img = random_element_of_degree(rng, hx, g.degree)
        if img ** g.truncation:
            img = hx.zero()
        images.append(img)
    try:
        return RingMap(hy, hx, tuple(images))
    except RingMapError:  # pragma: no cover - images are built to be valid
        raise
