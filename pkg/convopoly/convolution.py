"""
Exact convolutions of indicator functions over the integers and over
cyclic groups.

All counts use the ordered-pair convention: 1_A*1_B(x) is the number of
pairs (a, b) in A x B with a + b = x, so a pair (b, b) is counted once.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class IntegerSet:
    """A finite set of integers inside a closed ambient interval."""

    elements: tuple[int, ...]
    ambient_lo: int
    ambient_hi: int

    def __post_init__(self):
        if self.ambient_lo > self.ambient_hi:
            raise InvalidArgumentError(
                f"Empty ambient interval [{self.ambient_lo}, {self.ambient_hi}]"
            )
        previous = None
        for value in self.elements:
            if previous is not None and value <= previous:
                raise InvalidArgumentError("Elements must be strictly increasing")
            if not self.ambient_lo <= value <= self.ambient_hi:
                raise InvalidArgumentError(
                    f"Element {value} outside [{self.ambient_lo}, {self.ambient_hi}]"
                )
            previous = value
        # membership lookups dominate every convolution
        object.__setattr__(self, "_members", frozenset(self.elements))

    @classmethod
    def from_iterable(cls, items: Iterable[int], lo: int, hi: int) -> "IntegerSet":
        return cls(tuple(sorted(set(items))), lo, hi)

    @classmethod
    def interval(cls, lo: int, hi: int) -> "IntegerSet":
        return cls(tuple(range(lo, hi + 1)), lo, hi)

    def __contains__(self, value: int) -> bool:
        return value in self._members

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def shifted(self, t: int) -> "IntegerSet":
        """Translate the set and its ambient interval by t."""
        return IntegerSet(
            tuple(a + t for a in self.elements), self.ambient_lo + t, self.ambient_hi + t
        )

    def reflected(self) -> "IntegerSet":
        """Reflect through the midpoint of the ambient interval."""
        pivot = self.ambient_lo + self.ambient_hi
        return IntegerSet.from_iterable(
            (pivot - a for a in self.elements), self.ambient_lo, self.ambient_hi
        )

    def indicator_string(self) -> str:
        """Binary string indexed by the ambient interval, left to right."""
        return "".join(
            "1" if i in self._members else "0"
            for i in range(self.ambient_lo, self.ambient_hi + 1)
        )


@dataclass(frozen=True)
class CyclicSet:
    """A subset of the cyclic group Z_M."""

    modulus: int
    members: frozenset[int]

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidArgumentError(f"Modulus must be positive, got {self.modulus}")
        for r in self.members:
            if not 0 <= r < self.modulus:
                raise InvalidArgumentError(f"Residue {r} outside Z_{self.modulus}")

    @classmethod
    def from_residues(cls, modulus: int, residues: Iterable[int]) -> "CyclicSet":
        if modulus < 1:
            raise InvalidArgumentError(f"Modulus must be positive, got {modulus}")
        return cls(modulus, frozenset(r % modulus for r in residues))

    def __contains__(self, residue: int) -> bool:
        return residue % self.modulus in self.members

    def __len__(self) -> int:
        return len(self.members)

    def shifted(self, t: int) -> "CyclicSet":
        return CyclicSet.from_residues(self.modulus, (r + t for r in self.members))

    def sorted_members(self) -> list[int]:
        return sorted(self.members)


def conv_diff(A: IntegerSet, x: int) -> int:
    """Count ordered pairs (a, b) in A x A with a - b = x."""
    return sum(1 for a in A.elements if (a - x) in A)


def conv_sum(A: IntegerSet, x: int) -> int:
    """Count ordered pairs (a, b) in A x A with a + b = x."""
    return sum(1 for a in A.elements if (x - a) in A)


def cyclic_conv_diff(B: CyclicSet, x: int) -> int:
    """Count ordered pairs (a, b) in B x B with a - b = x (mod M)."""
    m = B.modulus
    return sum(1 for a in B.members if (a - x) % m in B.members)


def cyclic_conv_pair(P: CyclicSet, Q: CyclicSet, x: int) -> int:
    """
    Count pairs (p, q) in P x Q with p + q = x (mod M).

    Raises:
        InvalidArgumentError: If the two sets live in different groups
    """
    if P.modulus != Q.modulus:
        raise InvalidArgumentError(
            f"Modulus mismatch: Z_{P.modulus} versus Z_{Q.modulus}"
        )
    m = P.modulus
    return sum(1 for p in P.members if (x - p) % m in Q.members)


def conv_vector_diff(A: IntegerSet, points: Sequence[int]) -> tuple[int, ...]:
    return tuple(conv_diff(A, x) for x in points)


def conv_vector_sum(A: IntegerSet, points: Sequence[int]) -> tuple[int, ...]:
    return tuple(conv_sum(A, x) for x in points)
