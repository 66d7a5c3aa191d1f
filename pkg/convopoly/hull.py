"""
Exact convex-hull machinery on corner vectors: membership, l-infinity
distance, redundant-point elimination and coordinate projection.

Everything is decided by exact rational linear programs; there is no
floating-point tolerance anywhere in this module.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .cycles import CornerVector, corner_candidates, distinct_corner_candidates
from .errors import InvalidArgumentError, InvariantViolationError
from .simplex import OPTIMAL, is_feasible, solve_standard_form

logger = logging.getLogger(__name__)

# Fixed seed for the random probe directions used by minimize
_DIRECTION_SEED = 20240917
_RANDOM_DIRECTIONS = 24


@dataclass(frozen=True)
class Polytope:
    """The convex hull of a finite list of corner vectors."""

    d: int
    corners: tuple[CornerVector, ...]

    def __post_init__(self):
        if not self.corners:
            raise InvalidArgumentError("A polytope needs at least one corner")
        for c in self.corners:
            if c.d != self.d:
                raise InvalidArgumentError(f"Corner {c} does not have dimension {self.d}")

    @property
    def corner_count(self) -> int:
        return len(self.corners)

    def coordinate_set(self) -> set[tuple[Fraction, ...]]:
        return {c.coords for c in self.corners}

    def to_json(self) -> dict:
        return {"d": self.d, "corners": [c.to_json() for c in self.corners]}


def _as_point(q: Sequence, d: int) -> tuple[Fraction, ...]:
    point = tuple(Fraction(v) for v in q)
    if len(point) != d:
        raise InvalidArgumentError(f"Point has dimension {len(point)}, expected {d}")
    return point


def _contains(points: Sequence[tuple[Fraction, ...]], q: tuple[Fraction, ...]) -> bool:
    if q in points:
        return True
    d = len(q)
    rows = [[p[i] for p in points] for i in range(d)]
    rows.append([Fraction(1)] * len(points))
    return is_feasible(rows, list(q) + [Fraction(1)])


def hull_contains(P: Polytope, q: Sequence) -> bool:
    """
    Decide exactly whether q is a convex combination of the corners of P.

    Raises:
        InvalidArgumentError: If q does not have dimension P.d
    """
    point = _as_point(q, P.d)
    return _contains([c.coords for c in P.corners], point)


def hull_distance_linf(P: Polytope, q: Sequence) -> Fraction:
    """
    Exact l-infinity distance from q to the hull of P.

    Solves  min t  subject to  -t <= q_i - sum_k lambda_k c_{k,i} <= t,
    sum lambda = 1, lambda >= 0, written in standard form with surplus
    and slack variables.

    Raises:
        InvalidArgumentError: If q does not have dimension P.d
    """
    point = _as_point(q, P.d)
    corners = [c.coords for c in P.corners]
    if point in corners:
        return Fraction(0)
    k, d = len(corners), P.d
    n = k + 1 + 2 * d
    t_col = k
    rows = []
    rhs = []
    for i in range(d):
        upper = [corners[j][i] for j in range(k)] + [Fraction(0)] * (1 + 2 * d)
        upper[t_col] = Fraction(1)
        upper[k + 1 + i] = Fraction(-1)
        rows.append(upper)
        rhs.append(point[i])
        lower = [corners[j][i] for j in range(k)] + [Fraction(0)] * (1 + 2 * d)
        lower[t_col] = Fraction(-1)
        lower[k + 1 + d + i] = Fraction(1)
        rows.append(lower)
        rhs.append(point[i])
    rows.append([Fraction(1)] * k + [Fraction(0)] * (1 + 2 * d))
    rhs.append(Fraction(1))
    cost = [Fraction(0)] * n
    cost[t_col] = Fraction(1)
    result = solve_standard_form(cost, rows, rhs)
    if result.status != OPTIMAL:
        raise InvariantViolationError(f"Distance LP ended with status {result.status}")
    return result.value


def _probe_directions(d: int) -> list[tuple[int, ...]]:
    directions = []
    for i in range(d):
        for sign in (1, -1):
            e = [0] * d
            e[i] = sign
            directions.append(tuple(e))
    for i, j in combinations(range(d), 2):
        for si in (1, -1):
            for sj in (1, -1):
                e = [0] * d
                e[i], e[j] = si, sj
                directions.append(tuple(e))
    rng = random.Random(_DIRECTION_SEED)
    for _ in range(_RANDOM_DIRECTIONS):
        directions.append(tuple(rng.randint(-7, 7) for _ in range(d)))
    return directions


def _certified_extremes(points: list[tuple[Fraction, ...]]) -> set[int]:
    """Indices of points that are the lexicographic maximizer of some functional."""
    found = set()
    for w in _probe_directions(len(points[0])):
        best = max(
            range(len(points)),
            key=lambda i: (sum(a * b for a, b in zip(w, points[i])), points[i]),
        )
        found.add(best)
    return found


def minimize(candidates: Sequence[CornerVector]) -> Polytope:
    """
    Reduce a candidate list to the corners of its convex hull.

    Duplicates are merged first, keeping the provenance cycle with the
    smallest (length, vertices) key. Points maximizing fixed linear
    functionals are certified corners; every other point is tested against
    the certified set and then against the surviving uncertain points.
    The result is sorted by coordinates.

    Raises:
        InvalidArgumentError: If candidates is empty
    """
    if not candidates:
        raise InvalidArgumentError("Cannot minimize an empty candidate list")
    d = candidates[0].d
    unique: dict[tuple[Fraction, ...], CornerVector] = {}
    for c in candidates:
        if c.d != d:
            raise InvalidArgumentError("Candidates have mixed dimensions")
        held = unique.get(c.coords)
        if held is None or _provenance_key(c) < _provenance_key(held):
            unique[c.coords] = c
    points = sorted(unique)
    if len(points) == 1:
        return Polytope(d, (unique[points[0]],))

    extreme_idx = _certified_extremes(points)
    extremes = [points[i] for i in sorted(extreme_idx)]
    uncertain = [
        p for i, p in enumerate(points) if i not in extreme_idx and not _contains(extremes, p)
    ]
    kept = list(extremes)
    survivors = list(uncertain)
    for p in uncertain:
        others = extremes + [u for u in survivors if u != p]
        if _contains(others, p):
            survivors.remove(p)
    kept.extend(survivors)
    corners = tuple(unique[p] for p in sorted(kept))
    logger.info(f"Minimized {len(candidates)} candidates to {len(corners)} corners (d={d})")
    return Polytope(d, corners)


def _provenance_key(c: CornerVector):
    return (0, c.cycle.sort_key()) if c.cycle is not None else (1, ())


def project(P: Polytope, points: Sequence[int]) -> Polytope:
    """
    Coordinate projection (z_1, ..., z_D) -> (z_{x_1}, ..., z_{x_k}), then minimize.

    Args:
        P: Polytope for coordinates 1..D
        points: Strictly increasing 1-based coordinates x_1 < ... < x_k <= D

    Raises:
        InvalidArgumentError: If the coordinates are out of range or not increasing
    """
    xs = list(points)
    if not xs:
        raise InvalidArgumentError("Projection needs at least one coordinate")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise InvalidArgumentError(f"Coordinates {xs} are not strictly increasing")
    if xs[0] < 1 or xs[-1] > P.d:
        raise InvalidArgumentError(f"Coordinates {xs} outside 1..{P.d}")
    images = [
        CornerVector(tuple(c.numerators[x - 1] for x in xs), c.denominator, c.cycle)
        for c in P.corners
    ]
    return minimize(images)


def polytope_for(
    d: int,
    kind: str,
    raw: bool = False,
    cap: int | None = None,
    max_d: int | None = None,
) -> Polytope:
    """
    Corner polytope H (kind 'diff') or H' (kind 'sum') for coordinates 1..d.

    With raw=True the unminimized candidate list is returned, one corner per
    simple cycle in enumeration order.
    """
    if raw:
        return Polytope(d, tuple(corner_candidates(d, kind, cap, max_d)))
    return minimize(distinct_corner_candidates(d, kind, cap, max_d))
