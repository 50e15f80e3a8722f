"""Exact bounds on the higher topological complexity TC_{r,s}(f) of a map.

Mod-2 cohomology rings and kernel nilpotence give lower bounds; an interval
fixpoint over the known inequalities combines them with category estimates.
"""

from .catalog import Catalog, MapSpec, SpaceSpec, builtin_map, builtin_space, known_facts, product_space
from .engine import ContradictionError, Engine, Interval, Problem, solve
from .f2 import BitMatrix, kernel_space, rank, rref, span_membership
from .hom import RingMap, diagonal_evaluation_map, make_map, power_map
from .nilpotence import brute_force_nil_oracle, cup_length, kernel_ideal, nil_index, nil_report
from .problem import parse_problem
from .quantities import QuantityId, parse_quantity
from .ring import Element, GeneratorSpec, RingPresentation, degree_basis, make_presentation, ring_metrics, tensor

__version__ = "0.1.0"

__all__ = [
    "BitMatrix", "rref", "rank", "kernel_space", "span_membership",
    "GeneratorSpec", "RingPresentation", "Element", "make_presentation", "degree_basis",
    "tensor", "ring_metrics",
    "RingMap", "make_map", "diagonal_evaluation_map", "power_map",
    "kernel_ideal", "nil_index", "nil_report", "cup_length", "brute_force_nil_oracle",
    "Catalog", "SpaceSpec", "MapSpec", "builtin_space", "builtin_map", "product_space", "known_facts",
    "QuantityId", "parse_quantity",
    "Problem", "Engine", "Interval", "ContradictionError", "solve", "parse_problem",
]
