"""
Brute-force ground truth for the convolution spectra S_N and T_N.

Every subset of [1, N] (or [-N, N]) is a bitmask; convolution counts for a
whole chunk of masks are computed at once with numpy shift/and/popcount
operations. Chunks are scanned on worker threads and the per-chunk
distinct count vectors are merged at the end.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, partial
from itertools import combinations
from typing import Sequence

import anyio
import numpy as np
import pandas as pd

from .convolution import IntegerSet, conv_vector_diff, conv_vector_sum
from .errors import CapExceededError, InvalidArgumentError, InvariantViolationError
from .hull import Polytope, hull_distance_linf, polytope_for, project
from .settings import get_settings

logger = logging.getLogger(__name__)

CHUNK_BITS = 16

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def _popcount(v: np.ndarray) -> np.ndarray:
    """Bit counts of a uint64 array."""
    v = v - ((v >> np.uint64(1)) & _M1)
    v = (v & _M2) + ((v >> np.uint64(2)) & _M2)
    v = (v + (v >> np.uint64(4))) & _M4
    return ((v * _H01) >> np.uint64(56)).astype(np.int64)


def _reverse_bits(masks: np.ndarray, width: int) -> np.ndarray:
    reversed_ = np.zeros_like(masks)
    one = np.uint64(1)
    for k in range(width):
        reversed_ |= ((masks >> np.uint64(k)) & one) << np.uint64(width - 1 - k)
    return reversed_


def spectrum_counts(masks: np.ndarray, n: int, kind: str, x: Sequence[int]) -> np.ndarray:
    """
    Convolution counts at x_1..x_d for each subset mask.

    For kind 'diff' bit p - 1 marks element p of [1, N] and the count at x
    is popcount(m & (m >> x)). For kind 'sum' bit i marks element i - N of
    [-N, N]; with r the mask reversed over 2N + 1 bits the count at x is
    popcount(m & (r << x)).

    Returns:
        int64 array of shape (len(masks), len(x))
    """
    masks = masks.astype(np.uint64, copy=False)
    counts = np.empty((masks.shape[0], len(x)), dtype=np.int64)
    if kind == "diff":
        for k, shift in enumerate(x):
            counts[:, k] = _popcount(masks & (masks >> np.uint64(shift)))
    else:
        reversed_ = _reverse_bits(masks, 2 * n + 1)
        for k, shift in enumerate(x):
            counts[:, k] = _popcount(masks & (reversed_ << np.uint64(shift)))
    return counts


def _scan_chunk(start: int, stop: int, n: int, kind: str, x: tuple[int, ...]) -> np.ndarray:
    masks = np.arange(start, stop, dtype=np.uint64)
    if kind == "diff":
        # A and its reflection N + 1 - A share every difference count
        masks = masks[masks <= _reverse_bits(masks, n)]
    counts = spectrum_counts(masks, n, kind, x)
    return np.unique(counts, axis=0)


async def _scan_all(
    ranges: list[tuple[int, int]], n: int, kind: str, x: tuple[int, ...], workers: int
) -> list[np.ndarray]:
    limiter = anyio.CapacityLimiter(workers)
    results: list[np.ndarray | None] = [None] * len(ranges)

    async def run(index: int, start: int, stop: int) -> None:
        results[index] = await anyio.to_thread.run_sync(
            partial(_scan_chunk, start, stop, n, kind, x), limiter=limiter
        )

    async with anyio.create_task_group() as tg:
        for index, (start, stop) in enumerate(ranges):
            tg.start_soon(run, index, start, stop)
    return results


@dataclass
class SpectrumCloud:
    """Distinct normalized convolution vectors over all subsets."""

    d: int
    kind: str
    n: int
    x: tuple[int, ...]
    counts: np.ndarray = field(repr=False)
    subsets_scanned: int = 0

    @property
    def denominator(self) -> int:
        return self.n if self.kind == "diff" else 2 * self.n + 1

    @cached_property
    def points(self) -> list[tuple[Fraction, ...]]:
        den = self.denominator
        return [tuple(Fraction(int(c), den) for c in row) for row in self.counts]

    def __len__(self) -> int:
        return int(self.counts.shape[0])


def _validate_x(d: int, x: Sequence[int] | None) -> tuple[int, ...]:
    if x is None:
        return tuple(range(1, d + 1))
    x = tuple(int(v) for v in x)
    if len(x) != d:
        raise InvalidArgumentError(f"Expected {d} points, got {len(x)}")
    if x[0] < 1 or any(b <= a for a, b in zip(x, x[1:])):
        raise InvalidArgumentError(f"Points {list(x)} must be positive and strictly increasing")
    return x


def _check_n(n: int, kind: str) -> int:
    """Number of bits for the ambient interval, after cap checks."""
    settings = get_settings()
    if n < 1:
        raise InvalidArgumentError(f"N must be positive, got {n}")
    if kind == "diff":
        if n > settings.max_n_diff:
            raise CapExceededError(f"Enumeration over [1, {n}] exceeds N <= {settings.max_n_diff}")
        return n
    if kind == "sum":
        if n > settings.max_n_sum:
            raise CapExceededError(f"Enumeration over [-{n}, {n}] exceeds N <= {settings.max_n_sum}")
        return 2 * n + 1
    raise InvalidArgumentError(f"Unknown kind {kind!r}; expected 'diff' or 'sum'")


def enumerate_spectrum(
    d: int,
    n: int,
    kind: str,
    points: Sequence[int] | None = None,
    workers: int | None = None,
    seed: int = 0,
) -> SpectrumCloud:
    """
    Enumerate S_N (kind 'diff') or T_N (kind 'sum') exactly.

    Args:
        d: Number of evaluation points
        n: Ambient size N
        kind: 'diff' for subsets of [1, N], 'sum' for subsets of [-N, N]
        points: x_1 < ... < x_d (defaults to 1..d)
        workers: Worker threads (defaults to CONVOPOLY_WORKERS)
        seed: Seed for the direct-count cross-check sample

    Returns:
        SpectrumCloud with the distinct count vectors, sorted

    Raises:
        CapExceededError: If N exceeds the enumeration cap
    """
    x = _validate_x(d, points)
    bits = _check_n(n, kind)
    workers = workers or get_settings().workers
    total = 1 << bits
    chunk = 1 << CHUNK_BITS
    ranges = [(start, min(start + chunk, total)) for start in range(0, total, chunk)]
    logger.info(f"Scanning {total} subsets in {len(ranges)} chunks (N={n}, kind={kind})")

    crosscheck_vectorized(n, kind, x, seed=seed)
    parts = anyio.run(_scan_all, ranges, n, kind, x, workers)
    counts = np.unique(np.vstack(parts), axis=0)
    cloud = SpectrumCloud(d, kind, n, x, counts, subsets_scanned=total)
    if counts.min() < 0 or counts.max() > cloud.denominator:
        raise InvariantViolationError("Convolution count outside [0, denominator]")
    logger.info(f"S/T cloud: {len(cloud)} distinct points (N={n}, kind={kind})")
    return cloud


def crosscheck_vectorized(
    n: int, kind: str, x: Sequence[int], samples: int | None = None, seed: int = 0
) -> int:
    """
    Compare the vectorized counts with direct counting on random subsets.

    Returns:
        Number of subsets checked

    Raises:
        InvariantViolationError: On the first disagreement
    """
    samples = samples if samples is not None else get_settings().crosscheck_samples
    bits = n if kind == "diff" else 2 * n + 1
    lo = 1 if kind == "diff" else -n
    rng = np.random.default_rng(seed)
    masks = rng.integers(0, 1 << bits, size=samples, dtype=np.uint64)
    fast = spectrum_counts(masks, n, kind, x)
    direct = conv_vector_diff if kind == "diff" else conv_vector_sum
    for row, mask in zip(fast, masks):
        mask = int(mask)
        A = IntegerSet.from_iterable((lo + i for i in range(bits) if (mask >> i) & 1), lo, n)
        expected = direct(A, x)
        if tuple(int(c) for c in row) != expected:
            raise InvariantViolationError(
                f"Vectorized counts {row.tolist()} != direct {list(expected)} for {sorted(A)}"
            )
    logger.debug(f"Cross-checked {samples} random subsets (N={n}, kind={kind})")
    return samples


@dataclass(frozen=True)
class EnclosureReport:
    """Two-sided l-infinity comparison between a cloud and a polytope."""

    n: int
    cloud_size: int
    forward: Fraction
    converse: Fraction

    @property
    def forward_scaled(self) -> Fraction:
        return self.forward * self.n

    @property
    def converse_scaled(self) -> Fraction:
        return self.converse * self.n

    def to_row(self) -> dict:
        return {
            "n": self.n,
            "cloud_size": self.cloud_size,
            "forward": self.forward,
            "forward_scaled": self.forward_scaled,
            "converse": self.converse,
            "converse_scaled": self.converse_scaled,
        }


def probe_points(P: Polytope) -> list[tuple[Fraction, ...]]:
    """All corners plus the midpoints of all corner pairs."""
    corners = [c.coords for c in P.corners]
    mids = [
        tuple((a + b) / 2 for a, b in zip(p, q)) for p, q in combinations(corners, 2)
    ]
    return corners + mids


def _nearest_cloud_distance(cloud: SpectrumCloud, q: tuple[Fraction, ...]) -> Fraction:
    """min over cloud points of ||p - q||_inf, in exact integer arithmetic."""
    den = cloud.denominator
    scale = math.lcm(den, *(c.denominator for c in q))
    target = np.array([int(c * scale) for c in q], dtype=np.int64)
    scaled = cloud.counts * (scale // den)
    gaps = np.abs(scaled - target).max(axis=1)
    return Fraction(int(gaps.min()), scale)


def enclosure_report(cloud: SpectrumCloud, P: Polytope) -> EnclosureReport:
    """
    Forward and converse l-infinity distances between a cloud and a polytope.

    The forward distance is the largest exact hull distance of a cloud
    point. The converse distance is the largest distance from a probe
    point (corner or midpoint of two corners) to its nearest cloud point.

    Raises:
        InvalidArgumentError: If the dimensions differ
    """
    if P.d != cloud.d:
        raise InvalidArgumentError(f"Polytope has d={P.d} but the cloud has d={cloud.d}")
    corners = P.coordinate_set()
    forward = Fraction(0)
    for point in cloud.points:
        if point in corners:
            continue
        forward = max(forward, hull_distance_linf(P, point))
    converse = max(_nearest_cloud_distance(cloud, q) for q in probe_points(P))
    report = EnclosureReport(cloud.n, len(cloud), forward, converse)
    logger.info(
        f"Enclosure N={cloud.n}: forward*N={float(report.forward_scaled):.4f}, "
        f"converse*N={float(report.converse_scaled):.4f}"
    )
    return report


def verify_range(
    d: int,
    kind: str,
    n_values: Sequence[int],
    points: Sequence[int] | None = None,
    polytope: Polytope | None = None,
    workers: int | None = None,
    seed: int = 0,
    cap: int | None = None,
) -> pd.DataFrame:
    """
    Enclosure table over a range of N.

    When points other than 1..d are requested, the polytope is built for
    coordinates 1..x_d and projected onto x_1..x_d.

    Returns:
        DataFrame with columns n, cloud_size, forward, forward_scaled,
        converse, converse_scaled (exact Fractions)
    """
    x = _validate_x(d, points)
    if polytope is None:
        if x == tuple(range(1, d + 1)):
            polytope = polytope_for(d, kind, cap=cap)
        else:
            polytope = project(polytope_for(x[-1], kind, cap=cap), x)
    rows = []
    for n in n_values:
        cloud = enumerate_spectrum(d, n, kind, x, workers=workers, seed=seed)
        rows.append(enclosure_report(cloud, polytope).to_row())
    return pd.DataFrame(
        rows,
        columns=["n", "cloud_size", "forward", "forward_scaled", "converse", "converse_scaled"],
    )
