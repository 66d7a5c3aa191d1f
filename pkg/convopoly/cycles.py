"""
Simple cycles of G and G' and the rational corner vectors they induce.

A cycle of G read from its first vertex spells a periodic binary string;
one period, read as a subset C of Z_l, gives the corner
l^{-1} (1_C*1_{-C}(1), ..., 1_C*1_{-C}(d)). A cycle of G' spells a pair
of periodic strings, one growing rightward and one leftward, and gives
l^{-1} (1_{C'}*1_{C''}(1), ..., 1_{C'}*1_{C''}(d)).
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import networkx as nx

from .convolution import CyclicSet, cyclic_conv_diff, cyclic_conv_pair
from .debruijn import DeBruijnGraph, DoubleDeBruijnGraph, ShiftGraph, build_graph
from .decomposition import Cycle
from .errors import CapExceededError, InvalidArgumentError
from .settings import get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CornerVector:
    """
    Exact rational point numerators / denominator in [0, 1]^d.

    Equality and hashing use the rational coordinates, so (1, 1)/1 and
    (2, 2)/2 are the same point. The originating cycle is provenance only.
    """

    numerators: tuple[int, ...]
    denominator: int
    cycle: Cycle | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.denominator < 1:
            raise InvalidArgumentError(f"Denominator must be positive, got {self.denominator}")
        if not self.numerators:
            raise InvalidArgumentError("A corner vector needs at least one coordinate")

    @classmethod
    def from_fractions(cls, coords, cycle: Cycle | None = None) -> "CornerVector":
        coords = [Fraction(c) for c in coords]
        den = math.lcm(*(c.denominator for c in coords))
        return cls(tuple(int(c * den) for c in coords), den, cycle)

    @property
    def d(self) -> int:
        return len(self.numerators)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.denominator) for a in self.numerators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CornerVector):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def in_unit_cube(self) -> bool:
        return all(0 <= a <= self.denominator for a in self.numerators)

    def to_json(self) -> dict:
        doc = {"num": list(self.numerators), "den": self.denominator}
        if self.cycle is not None:
            doc["cycle"] = list(self.cycle.vertices)
        return doc

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def iter_cycles(graph: ShiftGraph, cap: int | None = None) -> Iterator[Cycle]:
    """
    Stream the simple cycles of graph in canonical rotation.

    Johnson's algorithm, as implemented by networkx, with a ceiling on the
    number of cycles produced.

    Raises:
        CapExceededError: If more than cap cycles exist
    """
    cap = cap if cap is not None else get_settings().cap_cycles
    count = 0
    for nodes in nx.simple_cycles(graph.digraph):
        count += 1
        if count > cap:
            raise CapExceededError(f"More than {cap} simple cycles; raise the cycle cap")
        yield Cycle(tuple(nodes)).canonical()


def enumerate_cycles(graph: ShiftGraph, cap: int | None = None) -> list[Cycle]:
    """
    All simple cycles of graph, sorted by (length, vertex sequence).

    Raises:
        CapExceededError: If more than cap cycles exist
    """
    cycles = sorted(iter_cycles(graph, cap), key=Cycle.sort_key)
    logger.info(f"Enumerated {len(cycles)} cycles (d={graph.d}, kind={graph.kind})")
    return cycles


def cycle_to_cyclic_set(c: Cycle, graph: DeBruijnGraph) -> CyclicSet:
    """
    One period of the string spelled by a G-cycle, as a subset of Z_l.

    Residue r belongs to the set when step r from the first vertex appends a 1.
    """
    members = [
        r for r, (u, v) in enumerate(c.edges) if graph.appended_symbol(u, v)
    ]
    return CyclicSet.from_residues(c.length, members)


def corner_vector(c: Cycle, graph: DeBruijnGraph) -> CornerVector:
    """Corner y = l^{-1} (1_C*1_{-C}(1), ..., 1_C*1_{-C}(d)) of a G-cycle."""
    C = cycle_to_cyclic_set(c, graph)
    nums = tuple(cyclic_conv_diff(C, h) for h in range(1, graph.d + 1))
    return CornerVector(nums, c.length, c)


def cycle_to_pair_sets(c: Cycle, graph: DoubleDeBruijnGraph) -> tuple[CyclicSet, CyclicSet]:
    """
    Forward and backward sets of a G'-cycle, both in Z_l.

    Step r appends a t-symbol at offset r + 1 to the right of the start and
    prepends an s-symbol at offset -r to the left, so
    C' = {r + 1 : appended 1} and C'' = {-r : prepended 1}, taken mod l.
    """
    forward = []
    backward = []
    for r, (u, v) in enumerate(c.edges):
        if graph.appended_symbol(u, v):
            forward.append(r + 1)
        if graph.prepended_symbol(u, v):
            backward.append(-r)
    return (
        CyclicSet.from_residues(c.length, forward),
        CyclicSet.from_residues(c.length, backward),
    )


def corner_vector_double(c: Cycle, graph: DoubleDeBruijnGraph) -> CornerVector:
    """Corner z = l^{-1} (1_{C'}*1_{C''}(1), ..., 1_{C'}*1_{C''}(d)) of a G'-cycle."""
    forward, backward = cycle_to_pair_sets(c, graph)
    nums = tuple(cyclic_conv_pair(forward, backward, h) for h in range(1, graph.d + 1))
    return CornerVector(nums, c.length, c)


def cycle_corner(c: Cycle, graph: ShiftGraph) -> CornerVector:
    if isinstance(graph, DoubleDeBruijnGraph):
        return corner_vector_double(c, graph)
    return corner_vector(c, graph)


def corner_candidates(
    d: int, kind: str, cap: int | None = None, max_d: int | None = None
) -> list[CornerVector]:
    """One corner per simple cycle, in enumeration order, duplicates kept."""
    graph = build_graph(d, kind, max_d)
    return [cycle_corner(c, graph) for c in enumerate_cycles(graph, cap)]


def distinct_corner_candidates(
    d: int, kind: str, cap: int | None = None, max_d: int | None = None
) -> list[CornerVector]:
    """
    Distinct corner vectors, sorted by coordinates.

    Cycles are streamed, so memory stays proportional to the number of
    distinct corners. Each corner keeps the cycle with the smallest
    (length, vertices) key as provenance.
    """
    graph = build_graph(d, kind, max_d)
    best: dict[tuple[Fraction, ...], CornerVector] = {}
    cycles_seen = 0
    for c in iter_cycles(graph, cap):
        cycles_seen += 1
        corner = cycle_corner(c, graph)
        key = corner.coords
        held = best.get(key)
        if held is None or c.sort_key() < held.cycle.sort_key():
            best[key] = corner
    logger.info(
        f"{len(best)} distinct corners from {cycles_seen} cycles (d={d}, kind={kind})"
    )
    return [best[k] for k in sorted(best)]


def corner_count_bound(d: int, kind: str) -> int:
    """Upper bound 2^{d(d+1)} for G and 4^{d(d+1)} for G' on the number of corners."""
    base = 2 if kind == "diff" else 4
    return base ** (d * (d + 1))
