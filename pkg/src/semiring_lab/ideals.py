"""Ideals of a finite semiring: enumeration, classification and arithmetic."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .bits import (
    SubsetHandle,
    additive_closure,
    closed_subsets_by_closure,
    closed_subsets_by_scan,
    is_closed,
    iter_bits,
    mask_of,
)
from .core import FiniteSemiring, is_yoked, memoized
from .errors import NotAnIdeal, OwnerMismatch

SCAN_LIMIT = 16


@dataclass(frozen=True)
class IdealFlags:
    subtractive: bool
    prime: bool
    maximal: bool
    proper: bool


def _own(S: FiniteSemiring, A: SubsetHandle) -> int:
    if A.owner != S.key:
        raise OwnerMismatch(f"subset of {A.owner} used with {S.key}")
    return A.bits


def _require_ideal(S: FiniteSemiring, A: SubsetHandle) -> int:
    bits = _own(S, A)
    if not is_closed(S.add, S.orbits, bits):
        raise NotAnIdeal(f"{A} is not an ideal of {S.name}")
    return bits


def is_ideal(S: FiniteSemiring, A: SubsetHandle) -> bool:
    return is_closed(S.add, S.orbits, _own(S, A))


def generated_ideal(S: FiniteSemiring, gens: Iterable[int]) -> SubsetHandle:
    multiples = 0
    for g in gens:
        multiples |= S.orbits[g]
    return S.handle(additive_closure(S.add, multiples))


@memoized
def ideals_by_scan(S: FiniteSemiring) -> tuple[SubsetHandle, ...]:
    return tuple(S.handle(m) for m in closed_subsets_by_scan(S.order, S.add, S.orbits))


@memoized
def ideals_by_closure(S: FiniteSemiring) -> tuple[SubsetHandle, ...]:
    return tuple(S.handle(m) for m in closed_subsets_by_closure(S.order, S.add, S.orbits))


def all_ideals(S: FiniteSemiring) -> tuple[SubsetHandle, ...]:
    """All ideals (S included), ascending by bit-vector value."""
    if S.order <= SCAN_LIMIT:
        return ideals_by_scan(S)
    return ideals_by_closure(S)


def subtractive_witness(S: FiniteSemiring, I: SubsetHandle):
    """A pair ``(a, b)`` with a+b, b in I but a not in I, or ``None``."""
    bits = _own(S, I)
    for b in iter_bits(bits):
        for a in S.elements:
            if not bits >> a & 1 and bits >> S.add[a][b] & 1:
                return a, b
    return None


def is_subtractive(S: FiniteSemiring, I: SubsetHandle) -> bool:
    return subtractive_witness(S, I) is None


def is_prime(S: FiniteSemiring, I: SubsetHandle) -> bool:
    bits = _own(S, I)
    if bits == S.full.bits:
        return False
    for a in S.elements:
        if bits >> a & 1:
            continue
        for b in S.elements:
            if not bits >> b & 1 and bits >> S.mul[a][b] & 1:
                return False
    return True


@memoized
def maximal_ideals(S: FiniteSemiring) -> tuple[SubsetHandle, ...]:
    full = S.full.bits
    proper = [I.bits for I in all_ideals(S) if I.bits != full]
    return tuple(
        S.handle(m) for m in proper if not any(o != m and o & m == m for o in proper)
    )


@memoized
def prime_ideals(S: FiniteSemiring) -> tuple[SubsetHandle, ...]:
    return tuple(I for I in all_ideals(S) if is_prime(S, I))


def is_maximal(S: FiniteSemiring, I: SubsetHandle) -> bool:
    _own(S, I)
    return I in maximal_ideals(S)


def ideal_flags(S: FiniteSemiring, I: SubsetHandle) -> IdealFlags:
    _require_ideal(S, I)
    return IdealFlags(
        subtractive=is_subtractive(S, I),
        prime=is_prime(S, I),
        maximal=is_maximal(S, I),
        proper=I.bits != S.full.bits,
    )


def classify_ideals(S: FiniteSemiring) -> list[tuple[SubsetHandle, IdealFlags]]:
    return [(I, ideal_flags(S, I)) for I in all_ideals(S)]


@memoized
def maximals_all_subtractive(S: FiniteSemiring) -> bool:
    return all(is_subtractive(S, m) for m in maximal_ideals(S))


def local_maximal_ideal(S: FiniteSemiring) -> SubsetHandle | None:
    """The unique maximal ideal if ``S`` is local, else ``None``."""
    maximals = maximal_ideals(S)
    return maximals[0] if len(maximals) == 1 else None


def ideal_sum(S: FiniteSemiring, I: SubsetHandle, J: SubsetHandle) -> SubsetHandle:
    a, b = _require_ideal(S, I), _require_ideal(S, J)
    return S.handle(additive_closure(S.add, a | b))


def ideal_product(S: FiniteSemiring, I: SubsetHandle, J: SubsetHandle) -> SubsetHandle:
    """Finite sums of products a*b with a in I and b in J."""
    a_bits, b_bits = _require_ideal(S, I), _require_ideal(S, J)
    bs = list(iter_bits(b_bits))
    products = mask_of(S.mul[a][b] for a in iter_bits(a_bits) for b in bs)
    return S.handle(additive_closure(S.add, products))


def ideal_residual(S: FiniteSemiring, I: SubsetHandle, J: SubsetHandle) -> SubsetHandle:
    """``(I : J) = {s : sJ ⊆ I}``."""
    i_bits, j_bits = _require_ideal(S, I), _require_ideal(S, J)
    js = list(iter_bits(j_bits))
    return S.subset(s for s in S.elements if all(i_bits >> S.mul[s][b] & 1 for b in js))


def is_yoked_and_subtractive(S: FiniteSemiring) -> bool:
    """The standing base hypotheses: yoked, with every maximal ideal subtractive."""
    return is_yoked(S) and maximals_all_subtractive(S)
