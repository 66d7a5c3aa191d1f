"""
De Bruijn graph G on binary strings of length d and the double de Bruijn
graph G' on pairs of such strings.

Vertices are integer masks. Bit (p - 1) of a mask stores the symbol at
string position p, position 1 being the left-most symbol. A vertex of G'
with labels (s, t) is encoded as ``s | (t << d)``.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from .errors import CapExceededError, InvalidArgumentError
from .settings import DEFAULT_MAX_D, DEFAULT_MAX_D_DOUBLE, get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class BitLabel:
    """A binary string of length d stored as an integer mask."""

    d: int
    mask: int

    def __post_init__(self):
        if self.d < 1:
            raise InvalidArgumentError(f"Label length must be positive, got {self.d}")
        if not 0 <= self.mask < (1 << self.d):
            raise InvalidArgumentError(f"Mask {self.mask} does not fit {self.d} symbols")

    @classmethod
    def from_string(cls, text: str) -> "BitLabel":
        if not text or set(text) - {"0", "1"}:
            raise InvalidArgumentError(f"Not a binary string: {text!r}")
        mask = sum(1 << p for p, ch in enumerate(text) if ch == "1")
        return cls(len(text), mask)

    def symbol(self, position: int) -> int:
        """Symbol at 1-based string position."""
        if not 1 <= position <= self.d:
            raise InvalidArgumentError(f"Position {position} outside 1..{self.d}")
        return (self.mask >> (position - 1)) & 1

    def to_string(self) -> str:
        return "".join(str((self.mask >> p) & 1) for p in range(self.d))

    def shift_append(self, symbol: int) -> "BitLabel":
        """Drop the left-most symbol and append one on the right."""
        return BitLabel(self.d, (self.mask >> 1) | (symbol << (self.d - 1)))

    def shift_prepend(self, symbol: int) -> "BitLabel":
        """Drop the right-most symbol and prepend one on the left."""
        full = (1 << self.d) - 1
        return BitLabel(self.d, ((self.mask << 1) & full) | symbol)

    def __str__(self) -> str:
        return self.to_string()


def vertex_conv_contribution(v: BitLabel, j: int) -> int:
    """
    Contribution to 1_A*1_{-A}(j) of an edge leaving v that appends a 1.

    Args:
        v: Source label
        j: Shift in 1..d

    Returns:
        1 if v carries a 1 at position d - j + 1, else 0
    """
    if not 1 <= j <= v.d:
        raise InvalidArgumentError(f"Shift {j} outside 1..{v.d}")
    return v.symbol(v.d - j + 1)


class ShiftGraph:
    """Common behaviour of G and G': integer vertices, deterministic order."""

    kind = ""
    out_degree = 0

    def __init__(self, d: int):
        self.d = d

    @property
    def vertex_count(self) -> int:
        raise NotImplementedError

    def vertices(self) -> range:
        return range(self.vertex_count)

    def successors(self, v: int) -> list[int]:
        raise NotImplementedError

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.vertex_count and v in self.successors(u)

    def edge_pairs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertices() for v in self.successors(u)]

    @property
    def edge_count(self) -> int:
        return self.vertex_count * self.out_degree

    @cached_property
    def digraph(self) -> nx.DiGraph:
        """networkx view, nodes and edges inserted in mask order."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices())
        graph.add_edges_from(self.edge_pairs())
        return graph

    def in_degrees(self) -> dict[int, int]:
        return dict(self.digraph.in_degree())

    def is_strongly_connected(self) -> bool:
        return nx.is_strongly_connected(self.digraph)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "kind": self.kind,
            "vertices": self.vertex_count,
            "edges": [[u, v] for u, v in self.edge_pairs()],
        }


class DeBruijnGraph(ShiftGraph):
    """Directed de Bruijn graph with loops on 2^d vertices."""

    kind = "diff"
    out_degree = 2

    @property
    def vertex_count(self) -> int:
        return 1 << self.d

    def target(self, mask: int, symbol: int) -> int:
        return (mask >> 1) | (symbol << (self.d - 1))

    def successors(self, v: int) -> list[int]:
        return sorted({self.target(v, 0), self.target(v, 1)})

    def appended_symbol(self, u: int, v: int) -> int:
        """Symbol appended by the edge u -> v (the last symbol of v)."""
        return (v >> (self.d - 1)) & 1

    def label(self, v: int) -> BitLabel:
        return BitLabel(self.d, v)

    def loops(self) -> list[int]:
        return [v for v in self.vertices() if v in self.successors(v)]


@dataclass(frozen=True)
class DoubleVertex:
    """A vertex (s, t) of G'."""

    s: BitLabel
    t: BitLabel

    def __post_init__(self):
        if self.s.d != self.t.d:
            raise InvalidArgumentError("Both labels of a double vertex need the same length")

    @property
    def index(self) -> int:
        return self.s.mask | (self.t.mask << self.s.d)

    @classmethod
    def from_index(cls, d: int, index: int) -> "DoubleVertex":
        full = (1 << d) - 1
        return cls(BitLabel(d, index & full), BitLabel(d, index >> d))


class DoubleDeBruijnGraph(ShiftGraph):
    """Graph on 4^d pairs (s, t); s grows leftward and t grows rightward."""

    kind = "sum"
    out_degree = 4

    @property
    def vertex_count(self) -> int:
        return 1 << (2 * self.d)

    def split(self, v: int) -> tuple[int, int]:
        full = (1 << self.d) - 1
        return v & full, v >> self.d

    def join(self, s: int, t: int) -> int:
        return s | (t << self.d)

    def target(self, v: int, left: int, right: int) -> int:
        s, t = self.split(v)
        full = (1 << self.d) - 1
        s_next = ((s << 1) & full) | left
        t_next = (t >> 1) | (right << (self.d - 1))
        return self.join(s_next, t_next)

    def successors(self, v: int) -> list[int]:
        return sorted({self.target(v, b, c) for b in (0, 1) for c in (0, 1)})

    def prepended_symbol(self, u: int, v: int) -> int:
        """Symbol prepended to s by the edge u -> v (first symbol of s')."""
        s, _ = self.split(v)
        return s & 1

    def appended_symbol(self, u: int, v: int) -> int:
        """Symbol appended to t by the edge u -> v (last symbol of t')."""
        _, t = self.split(v)
        return (t >> (self.d - 1)) & 1

    def vertex(self, v: int) -> DoubleVertex:
        return DoubleVertex.from_index(self.d, v)


def _check_d(d: int, cap: int, default_cap: int, what: str) -> None:
    if d < 1:
        raise InvalidArgumentError(f"d must be at least 1, got {d}")
    if cap > default_cap:
        logger.warning(f"{what} cap raised to d <= {cap}; enumeration may be slow")
    if d > cap:
        raise CapExceededError(f"{what} with d={d} exceeds the cap d <= {cap}")


def build_debruijn(d: int, max_d: int | None = None) -> DeBruijnGraph:
    """
    Build the de Bruijn graph G for strings of length d.

    Args:
        d: String length
        max_d: Cap on d (defaults to CONVOPOLY_MAX_D)

    Returns:
        The graph G

    Raises:
        InvalidArgumentError: If d < 1
        CapExceededError: If d exceeds the cap
    """
    cap = max_d if max_d is not None else get_settings().max_d
    _check_d(d, cap, DEFAULT_MAX_D, "de Bruijn graph")
    graph = DeBruijnGraph(d)
    logger.info(f"Built de Bruijn graph: d={d}, {graph.vertex_count} vertices")
    return graph


def build_double_debruijn(d: int, max_d: int | None = None) -> DoubleDeBruijnGraph:
    """
    Build the double de Bruijn graph G' for pairs of strings of length d.

    Raises:
        InvalidArgumentError: If d < 1
        CapExceededError: If d exceeds the cap (CONVOPOLY_MAX_D_DOUBLE)
    """
    cap = max_d if max_d is not None else get_settings().max_d_double
    _check_d(d, cap, DEFAULT_MAX_D_DOUBLE, "double de Bruijn graph")
    graph = DoubleDeBruijnGraph(d)
    logger.info(f"Built double de Bruijn graph: d={d}, {graph.vertex_count} vertices")
    return graph


def build_graph(d: int, kind: str, max_d: int | None = None) -> ShiftGraph:
    """Build G for kind 'diff' and G' for kind 'sum'."""
    if kind == "diff":
        return build_debruijn(d, max_d)
    if kind == "sum":
        return build_double_debruijn(d, max_d)
    raise InvalidArgumentError(f"Unknown kind {kind!r}; expected 'diff' or 'sum'")
