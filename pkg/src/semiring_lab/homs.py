"""Semimodule homomorphisms, dual-basis certificates and ideal embeddings."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .bits import SubsetHandle, mask_of
from .core import FiniteSemiring, is_semidomain, memoized
from .errors import BaseMismatch, PreconditionUnmet, SizeBoundExceeded
from .localization import FractionalIdeal, invertible_witness
from .semimodule import (
    FiniteSemimodule,
    generated_subsemimodule,
    is_mc_semimodule,
    is_multiplication,
    module_over_itself,
)

HOM_LIMIT = 12
BRUTE_LIMIT = 4


@dataclass(frozen=True)
class HomTable:
    source: FiniteSemimodule
    target: FiniteSemimodule
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    @property
    def image(self) -> SubsetHandle:
        return self.target.handle(mask_of(self.map))

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.order

    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.order


def is_surjective(h: HomTable) -> bool:
    return h.is_surjective()


def is_hom(M: FiniteSemimodule, N: FiniteSemimodule, f) -> bool:
    if f[0] != 0:
        return False
    for x in M.elements:
        for y in M.elements:
            if f[M.add[x][y]] != N.add[f[x]][f[y]]:
                return False
    for s in M.base.elements:
        for x in M.elements:
            if f[M.action[s][x]] != N.action[s][f[x]]:
                return False
    return True


@memoized
def generating_set(M: FiniteSemimodule) -> tuple[int, ...]:
    """A greedy generating set: ascending elements not yet in the span."""
    gens: list[int] = []
    span = 1
    for x in M.elements:
        if not span >> x & 1:
            gens.append(x)
            span = generated_subsemimodule(M, gens).bits
    return tuple(gens)


def _extend(M: FiniteSemimodule, N: FiniteSemimodule, partial: dict) -> tuple[int, ...] | None:
    """Propagate ``partial`` through sums and scalar multiples; None on conflict."""
    f = dict(partial)
    f[0] = 0
    changed = True
    while changed:
        changed = False
        known = list(f.items())
        for x, fx in known:
            for s in M.base.elements:
                y, v = M.action[s][x], N.action[s][fx]
                old = f.get(y)
                if old is None:
                    f[y] = v
                    changed = True
                elif old != v:
                    return None
        known = list(f.items())
        for x, fx in known:
            for y, fy in known:
                z, v = M.add[x][y], N.add[fx][fy]
                old = f.get(z)
                if old is None:
                    f[z] = v
                    changed = True
                elif old != v:
                    return None
    if len(f) != M.order:
        return None
    return tuple(f[x] for x in M.elements)


def all_homs(M: FiniteSemimodule, N: FiniteSemimodule) -> list[HomTable]:
    """Every S-homomorphism M -> N, found by assigning images to a generating set."""
    if M.base is not N.base:
        raise BaseMismatch(f"{M.name} and {N.name} have different bases")
    if M.order > HOM_LIMIT:
        raise SizeBoundExceeded(f"|{M.name}| = {M.order} > {HOM_LIMIT}")
    return list(_homs(M, N))


@memoized
def _homs(M: FiniteSemimodule, N: FiniteSemimodule) -> tuple[HomTable, ...]:
    gens = generating_set(M)
    found = set()
    for images in itertools.product(N.elements, repeat=len(gens)):
        f = _extend(M, N, dict(zip(gens, images)))
        if f is not None and is_hom(M, N, f):
            found.add(f)
    return tuple(HomTable(M, N, f) for f in sorted(found))


def all_homs_brute(M: FiniteSemimodule, N: FiniteSemimodule) -> list[HomTable]:
    """Oracle: test every map M -> N (only for |M| <= 4)."""
    if M.order > BRUTE_LIMIT:
        raise SizeBoundExceeded(f"brute-force hom scan limited to |M| <= {BRUTE_LIMIT}")
    return [
        HomTable(M, N, f)
        for f in itertools.product(N.elements, repeat=M.order)
        if is_hom(M, N, f)
    ]


# -- projectivity ------------------------------------------------------------


@dataclass(frozen=True)
class DualBasis:
    """Pairs (m_i, phi_i) with x = sum_i phi_i(x)·m_i for every x."""

    module: FiniteSemimodule
    pairs: tuple[tuple[int, HomTable], ...]

    def verify(self) -> bool:
        M = self.module
        for x in M.elements:
            total = 0
            for m, phi in self.pairs:
                total = M.add[total][M.action[phi(x)][m]]
            if total != x:
                return False
        return True


def dual_basis_certificate(M: FiniteSemimodule, bound: int) -> DualBasis | None:
    """Search families of at most ``bound`` pairs for a dual basis.

    ``None`` means none was found within the bound, which is not a proof
    that M is not projective.
    """
    if bound > M.order:
        raise SizeBoundExceeded(f"bound {bound} exceeds |M| = {M.order}")
    S_mod = module_over_itself(M.base)
    homs = all_homs(M, S_mod)
    target = tuple(M.elements)
    zero = (0,) * M.order
    # contribution of a pair (m, phi) is the vector x -> phi(x)·m
    by_vector: dict[tuple, list] = {}
    for m in M.elements:
        for phi in homs:
            v = tuple(M.action[phi(x)][m] for x in M.elements)
            if v != zero:
                by_vector.setdefault(v, []).append((m, phi))
    vectors = sorted(by_vector)
    add = M.add
    failed = set()

    def plus(u, v):
        return tuple(add[a][b] for a, b in zip(u, v))

    def search(start, acc, left):
        if acc == target:
            return []
        if left == 0 or (start, acc, left) in failed:
            return None
        for i in range(start, len(vectors)):
            v = vectors[i]
            # the same vector may be used once per distinct pair producing it
            for k in range(1, min(len(by_vector[v]), left) + 1):
                total = acc
                for _ in range(k):
                    total = plus(total, v)
                rest = search(i + 1, total, left - k)
                if rest is not None:
                    return by_vector[v][:k] + rest
        failed.add((start, acc, left))
        return None

    pairs = search(0, zero, bound)
    if pairs is None:
        return None
    cert = DualBasis(M, tuple(pairs))
    assert cert.verify()
    return cert


# -- embedding as an ideal ---------------------------------------------------


@dataclass(frozen=True)
class IdealImage:
    hom: HomTable
    ideal: SubsetHandle
    inverse: FractionalIdeal | None

    @property
    def invertible(self) -> bool:
        return self.inverse is not None


def isomorphic_ideal_image(M: FiniteSemimodule) -> IdealImage | None:
    """An injective hom M -> S whose image is an ideal, with its invertibility.

    Requires a semidomain base. Returns ``None`` when M is not an MC
    multiplication semimodule (the construction does not apply).
    """
    S: FiniteSemiring = M.base
    if not is_semidomain(S):
        raise PreconditionUnmet(f"{S.name} is not a semidomain")
    if not (is_mc_semimodule(M) and is_multiplication(M)):
        return None
    S_mod = module_over_itself(S)
    best = None
    for h in all_homs(M, S_mod):
        if not h.is_injective():
            continue
        ideal = S.handle(h.image.bits)
        candidate = IdealImage(h, ideal, invertible_witness(S, ideal))
        if candidate.invertible:
            return candidate
        best = best or candidate
    return best
