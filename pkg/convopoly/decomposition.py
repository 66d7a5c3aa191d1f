"""
Decomposition of flow-conserving integer-weighted graphs into simple cycles.

A positive-weight walk in a balanced graph can always be continued, so
following out-edges from any vertex with positive out-weight eventually
revisits a vertex and closes a simple cycle. Subtracting that cycle keeps
the residual graph balanced.
"""

import logging
from dataclasses import dataclass, field

from .debruijn import ShiftGraph
from .errors import FlowConservationError, InvalidArgumentError, InvariantViolationError
from .walks import WeightedDigraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cycle:
    """A simple directed cycle given by its vertex sequence."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if not self.vertices:
            raise InvalidArgumentError("A cycle needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidArgumentError(f"Cycle {self.vertices} repeats a vertex")

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> list[tuple[int, int]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def canonical(self) -> "Cycle":
        """Rotation starting at the smallest vertex."""
        k = self.vertices.index(min(self.vertices))
        return Cycle(self.vertices[k:] + self.vertices[:k])

    def rotated_to(self, vertex: int) -> "Cycle":
        k = self.vertices.index(vertex)
        return Cycle(self.vertices[k:] + self.vertices[:k])

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return self.length, self.vertices

    def is_cycle_of(self, graph: ShiftGraph) -> bool:
        return all(graph.has_edge(u, v) for u, v in self.edges)


@dataclass
class CycleDecomposition:
    """A multiset of cycles with positive integer multiplicities."""

    terms: list[tuple[Cycle, int]] = field(default_factory=list)

    @property
    def total_length(self) -> int:
        return sum(c.length * n for c, n in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def to_json(self) -> list[dict]:
        return [{"cycle": list(c.vertices), "n": n} for c, n in self.terms]


def _find_cycle(residual: dict[tuple[int, int], int], start: int) -> list[int]:
    out_edges: dict[int, list[int]] = {}
    for (u, v), w in residual.items():
        if w > 0:
            out_edges.setdefault(u, []).append(v)
    path = [start]
    seen = {start: 0}
    current = start
    while True:
        targets = out_edges.get(current)
        if not targets:
            raise InvariantViolationError(
                f"Dead end at vertex {current} while peeling a balanced graph"
            )
        current = min(targets)
        if current in seen:
            return path[seen[current]:]
        seen[current] = len(path)
        path.append(current)


def peel_cycles(g: WeightedDigraph) -> CycleDecomposition:
    """
    Write a balanced weighted graph as a sum of simple cycles.

    Each round peels the cycle reached from the smallest vertex with
    positive out-weight, subtracting its minimum residual weight at once.

    Args:
        g: Flow-conserving weighted graph

    Returns:
        CycleDecomposition whose recomposition equals g

    Raises:
        FlowConservationError: If g is not balanced
        InvariantViolationError: If no cycle can be found in a nonempty residual
    """
    is_valid, error = g.check_flow_conservation()
    if not is_valid:
        raise FlowConservationError(f"Cannot peel an unbalanced graph: {error}")

    residual = dict(g.weights)
    multiplicity: dict[Cycle, int] = {}
    rounds = 0
    while residual:
        start = min(u for (u, _), w in residual.items() if w > 0)
        cycle = Cycle(tuple(_find_cycle(residual, start))).canonical()
        amount = min(residual[e] for e in cycle.edges)
        for e in cycle.edges:
            residual[e] -= amount
            if residual[e] == 0:
                del residual[e]
        multiplicity[cycle] = multiplicity.get(cycle, 0) + amount
        rounds += 1

    decomposition = CycleDecomposition(list(multiplicity.items()))
    if decomposition.total_length != g.total_weight:
        raise InvariantViolationError(
            f"Peeled length {decomposition.total_length} != total weight {g.total_weight}"
        )
    logger.debug(f"Peeled {len(decomposition)} distinct cycles in {rounds} rounds")
    return decomposition


def recompose(dec: CycleDecomposition, graph: ShiftGraph) -> WeightedDigraph:
    """
    Form the weighted graph sum of n_i * c_i.

    Raises:
        InvalidArgumentError: If a cycle uses an edge missing from graph
    """
    weights: dict[tuple[int, int], int] = {}
    for cycle, n in dec.terms:
        if not cycle.is_cycle_of(graph):
            raise InvalidArgumentError(f"Cycle {cycle.vertices} is not a cycle of the graph")
        for e in cycle.edges:
            weights[e] = weights.get(e, 0) + n
    return WeightedDigraph(graph, weights)
