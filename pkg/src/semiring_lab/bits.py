"""Bit-vector subsets and the closure routines shared by ideals and subsemimodules.

A subset of a carrier ``0..n-1`` is an ``int`` whose bit ``i`` marks element ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import OwnerMismatch

MAX_ORDER = 64

Table = Sequence[Sequence[int]]


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def full_mask(order: int) -> int:
    return (1 << order) - 1


@dataclass(frozen=True)
class SubsetHandle:
    """A subset of one structure's carrier.

    ``owner`` is the key of the structure the subset lives in; combining
    handles of different owners raises :class:`OwnerMismatch`.
    """

    owner: str
    bits: int

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.bits))

    def _same(self, other: "SubsetHandle") -> None:
        if self.owner != other.owner:
            raise OwnerMismatch(f"{self.owner} vs {other.owner}")

    def issubset(self, other: "SubsetHandle") -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def __le__(self, other: "SubsetHandle") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "SubsetHandle") -> bool:
        return self.issubset(other) and self.bits != other.bits

    def __or__(self, other: "SubsetHandle") -> "SubsetHandle":
        self._same(other)
        return SubsetHandle(self.owner, self.bits | other.bits)

    def __and__(self, other: "SubsetHandle") -> "SubsetHandle":
        self._same(other)
        return SubsetHandle(self.owner, self.bits & other.bits)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


def additive_closure(add: Table, mask: int) -> int:
    """Smallest superset of ``mask | {0}`` closed under ``add``."""
    closed = mask | 1
    frontier = closed
    while frontier:
        new = 0
        members = list(iter_bits(closed))
        for a in iter_bits(frontier):
            row = add[a]
            for b in members:
                new |= 1 << row[b]
        new &= ~closed
        closed |= new
        frontier = new
    return closed


def is_closed(add: Table, orbits: Sequence[int], mask: int) -> bool:
    """True iff ``mask`` is nonempty, closed under ``add`` and under every scalar.

    ``orbits[x]`` is the mask of all scalar multiples of ``x``.
    """
    if not mask:
        return False
    members = list(iter_bits(mask))
    for a in members:
        if orbits[a] & ~mask:
            return False
    for i, a in enumerate(members):
        row = add[a]
        for b in members[i:]:
            if not mask >> row[b] & 1:
                return False
    return True


def closed_subsets_by_scan(order: int, add: Table, orbits: Sequence[int]) -> list[int]:
    """Every closed subset, found by testing all 2^order subsets."""
    return [m for m in range(1, 1 << order) if is_closed(add, orbits, m)]


def closed_subsets_by_closure(order: int, add: Table, orbits: Sequence[int]) -> list[int]:
    """Every closed subset, grown from cyclic ones by pairwise sums to a fixpoint.

    Every closed subset of a finite structure is a finite sum of cyclic ones,
    so the fixpoint is complete.
    """
    cyclic = {additive_closure(add, orbits[x]) for x in range(order)}
    family = set(cyclic) | {1}
    frontier = set(family)
    while frontier:
        new = set()
        for a in frontier:
            for b in cyclic:
                s = additive_closure(add, a | b)
                if s not in family:
                    new.add(s)
        family |= new
        frontier = new
    return sorted(family)
