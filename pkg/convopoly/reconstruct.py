"""
Witness sets for hull points.

Given convex weights lambda_i on the simple cycles, traverse cycle i
n_i = floor(N lambda_i / l_i) times, bridge between consecutive cycles by
shortest paths, and read the spelled binary string back as a set. The
normalized convolution vector of that set lies within
ERROR_CONSTANT * (d + |V|) * m / N of the target in the l-infinity norm,
where m counts the cycles with positive weight. When N is so small that
every n_i is 0, the heaviest cycle is traversed once instead.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import networkx as nx

from .convolution import IntegerSet, conv_vector_diff, conv_vector_sum
from .cycles import cycle_corner, enumerate_cycles
from .debruijn import DoubleDeBruijnGraph, ShiftGraph, build_graph
from .decomposition import Cycle
from .errors import InvalidArgumentError, InvariantViolationError
from .walks import Walk

logger = logging.getLogger(__name__)

ERROR_CONSTANT = 2


@dataclass(frozen=True)
class HullPoint:
    """Convex weights over an enumerated cycle list, plus the target size N."""

    lambdas: tuple[Fraction, ...]
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidArgumentError(f"N must be positive, got {self.n}")
        if any(w < 0 for w in self.lambdas):
            raise InvalidArgumentError("Convex weights must be nonnegative")
        total = sum(self.lambdas, Fraction(0))
        if total != 1:
            raise InvalidArgumentError(f"Convex weights sum to {total}, not 1")

    @classmethod
    def from_mapping(cls, weights: Mapping[int, Fraction], size: int, n: int) -> "HullPoint":
        """Dense weights from a sparse {cycle index: weight} mapping."""
        lambdas = [Fraction(0)] * size
        for index, w in weights.items():
            if not 0 <= index < size:
                raise InvalidArgumentError(f"Cycle index {index} outside 0..{size - 1}")
            lambdas[index] = Fraction(w)
        return cls(tuple(lambdas), n)

    @property
    def support(self) -> list[int]:
        return [i for i, w in enumerate(self.lambdas) if w > 0]


@dataclass
class Realization:
    """A witness set together with its exact deviation from the target."""

    set: IntegerSet
    achieved: tuple[Fraction, ...]
    target: tuple[Fraction, ...]
    linf_error: Fraction
    error_bound: Fraction
    walk_length: int = 0
    multiplicities: list[tuple[Cycle, int]] = field(default_factory=list, repr=False)

    @property
    def within_bound(self) -> bool:
        return self.linf_error <= self.error_bound


def multiplicities(hp: HullPoint, cycles: Sequence[Cycle]) -> list[tuple[Cycle, int]]:
    """
    n_i = floor(N lambda_i / l_i) for every cycle, in list order.

    Raises:
        InvalidArgumentError: If the weights and cycles differ in length
    """
    if len(hp.lambdas) != len(cycles):
        raise InvalidArgumentError(
            f"{len(hp.lambdas)} weights given for {len(cycles)} cycles"
        )
    return [(c, int(hp.n * w // c.length)) for c, w in zip(cycles, hp.lambdas)]


def _bridge(graph: ShiftGraph, current: int, cycle: Cycle) -> list[int]:
    """Shortest path to the nearest vertex of cycle; empty when current lies on it."""
    distances = nx.single_source_shortest_path_length(graph.digraph, current, cutoff=graph.d)
    reachable = [(distances[v], v) for v in cycle.vertices if v in distances]
    if not reachable:
        raise InvariantViolationError(
            f"No vertex of cycle {cycle.vertices} within {graph.d} steps of {current}"
        )
    _, entry = min(reachable)
    return nx.shortest_path(graph.digraph, current, entry)[1:]


def link_cycles(mults: Sequence[tuple[Cycle, int]], graph: ShiftGraph) -> Walk:
    """
    Join repeated cycle traversals into one walk.

    Cycles with n > 0 are visited in the given order. Each is entered at the
    vertex nearest to the end of the previous block, traversed n times, and
    left through a bridge of at most d edges.

    Raises:
        InvalidArgumentError: If no multiplicity is positive
        InvariantViolationError: If a bridge would need more than d edges
    """
    used = [(c, n) for c, n in mults if n > 0]
    if not used:
        raise InvalidArgumentError("No cycle has positive multiplicity")
    if any(n < 0 for _, n in mults):
        raise InvalidArgumentError("Multiplicities must be nonnegative")

    first, _ = used[0]
    vertices = [first.vertices[0]]
    for index, (cycle, n) in enumerate(used):
        if index > 0:
            bridge = _bridge(graph, vertices[-1], cycle)
            if len(bridge) > graph.d:
                raise InvariantViolationError(f"Bridge of {len(bridge)} edges exceeds d")
            vertices.extend(bridge)
        block = cycle.rotated_to(vertices[-1]).vertices
        for _ in range(n):
            vertices.extend(block[1:])
            vertices.append(block[0])
    walk = Walk(graph, tuple(vertices))
    logger.debug(f"Linked {len(used)} cycles into a walk of {walk.edge_count} edges")
    return walk


def walk_to_set(w: Walk, n: int) -> IntegerSet:
    """
    Read the string spelled by a walk on G as a subset of [1, N].

    Positions 1..d come from the start label; step r appends position d + r.
    Positions beyond N are trimmed.

    Raises:
        InvalidArgumentError: If N < d
    """
    d = w.graph.d
    if n < d:
        raise InvalidArgumentError(f"N={n} is smaller than d={d}")
    start = w.vertices[0]
    members = [p + 1 for p in range(d) if (start >> p) & 1]
    for r, (u, v) in enumerate(w.steps(), start=1):
        position = d + r
        if position > n:
            break
        if w.graph.appended_symbol(u, v):
            members.append(position)
    return IntegerSet.from_iterable((p for p in members if p <= n), 1, n)


def walk_to_set_double(w: Walk, n: int) -> IntegerSet:
    """
    Read the pair of strings spelled by a walk on G' as a subset of [-N, N].

    The start s-label covers -d+1..0 and the t-label covers 1..d. Step r
    (counted from 0) appends position d + 1 + r and prepends position
    -d - r. Both ends are trimmed to [-N, N].

    Raises:
        InvalidArgumentError: If N < d or the walk is not on G'
    """
    graph = w.graph
    if not isinstance(graph, DoubleDeBruijnGraph):
        raise InvalidArgumentError("walk_to_set_double needs a walk on G'")
    d = graph.d
    if n < d:
        raise InvalidArgumentError(f"N={n} is smaller than d={d}")
    s0, t0 = graph.split(w.vertices[0])
    members = [-d + 1 + p for p in range(d) if (s0 >> p) & 1]
    members += [1 + p for p in range(d) if (t0 >> p) & 1]
    for r, (u, v) in enumerate(w.steps()):
        if graph.appended_symbol(u, v):
            members.append(d + 1 + r)
        if graph.prepended_symbol(u, v):
            members.append(-d - r)
    return IntegerSet.from_iterable((p for p in members if -n <= p <= n), -n, n)


def achieved_vector(B: IntegerSet, d: int, kind: str) -> tuple[Fraction, ...]:
    """Normalized convolution vector at 1..d: diff over N, sum over 2N+1."""
    points = range(1, d + 1)
    if kind == "diff":
        n = B.ambient_hi
        return tuple(Fraction(c, n) for c in conv_vector_diff(B, points))
    n = B.ambient_hi
    return tuple(Fraction(c, 2 * n + 1) for c in conv_vector_sum(B, points))


def _single_traversal(
    hp: HullPoint, mults: list[tuple[Cycle, int]]
) -> list[tuple[Cycle, int]]:
    """Traverse the heaviest cycle once when N is too small for every floor."""
    heaviest = max(hp.support, key=lambda i: (hp.lambdas[i], -i))
    logger.warning(
        f"N={hp.n} too small for a full traversal; walking cycle {heaviest} once"
    )
    return [(c, 1 if i == heaviest else 0) for i, (c, _) in enumerate(mults)]


def realize(
    hp: HullPoint,
    kind: str,
    d: int,
    cycles: Sequence[Cycle] | None = None,
    graph: ShiftGraph | None = None,
) -> Realization:
    """
    Build a set whose normalized convolution vector approximates sum lambda_i y_i.

    Args:
        hp: Convex weights indexed like the cycle list
        kind: 'diff' for subsets of [1, N], 'sum' for subsets of [-N, N]
        d: Label length
        cycles: Cycle list the weights refer to (defaults to enumerate_cycles)
        graph: Optional prebuilt graph matching kind and d

    Returns:
        Realization with the witness set, achieved and target vectors, the
        measured l-infinity deviation and the a-priori bound
    """
    graph = graph or build_graph(d, kind)
    if graph.kind != kind or graph.d != d:
        raise InvalidArgumentError(f"Graph is kind={graph.kind}, d={graph.d}; expected {kind}, {d}")
    cycles = list(cycles) if cycles is not None else enumerate_cycles(graph)

    mults = multiplicities(hp, cycles)
    if all(k == 0 for _, k in mults):
        mults = _single_traversal(hp, mults)
    target = [Fraction(0)] * d
    for i in hp.support:
        corner = cycle_corner(cycles[i], graph).coords
        for j in range(d):
            target[j] += hp.lambdas[i] * corner[j]

    walk = link_cycles(mults, graph)
    if kind == "diff":
        B = walk_to_set(walk, hp.n)
    else:
        B = walk_to_set_double(walk, hp.n)
    achieved = achieved_vector(B, d, kind)
    error = max(abs(a - t) for a, t in zip(achieved, target))
    m = len(hp.support)
    bound = Fraction(ERROR_CONSTANT * (d + graph.vertex_count) * m, hp.n)
    if error > bound:
        raise InvariantViolationError(
            f"Realization error {error} exceeds the bound {bound} (N={hp.n}, m={m})"
        )
    logger.info(
        f"Realized hull point: N={hp.n}, m={m}, |B|={len(B)}, error={float(error):.6f}"
    )
    return Realization(
        set=B,
        achieved=achieved,
        target=tuple(target),
        linf_error=error,
        error_bound=bound,
        walk_length=walk.edge_count,
        multiplicities=[(c, k) for c, k in mults if k > 0],
    )
