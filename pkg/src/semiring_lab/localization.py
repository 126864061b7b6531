"""Localizations T⁻¹S, T⁻¹M, M_p, the total quotient Q(S), and invertible ideals."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .bits import SubsetHandle, additive_closure, iter_bits, mask_of
from .core import FiniteSemiring, mc_elements, memoized, validate_semiring
from .errors import (
    NotMultClosed,
    NotPrime,
    OwnerMismatch,
    PreconditionUnmet,
    SizeBoundExceeded,
    WellDefinednessError,
)
from .ideals import is_ideal, is_prime
from .semimodule import FiniteSemimodule, all_subsemimodules, validate_semimodule

QUOTIENT_LIMIT = 16

Source = Union[FiniteSemiring, FiniteSemimodule]


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            # keep the smaller index as root so class order is stable
            lo, hi = min(ri, rj), max(ri, rj)
            self.parent[hi] = lo


@dataclass(frozen=True)
class MultClosedSet:
    owner: FiniteSemiring
    members: SubsetHandle
    adjoined_one: bool = False

    def __iter__(self):
        return iter(self.members)


def mult_closed_set(S: FiniteSemiring, elements: Iterable[int]) -> MultClosedSet:
    """Validate a multiplicatively closed subset, adjoining 1 when it is missing."""
    bits = S.subset(elements).bits
    if not bits:
        raise NotMultClosed("multiplicatively closed sets are nonempty")
    adjoined = not bits >> S.one & 1
    bits |= 1 << S.one
    for a in iter_bits(bits):
        for b in iter_bits(bits):
            if not bits >> S.mul[a][b] & 1:
                raise NotMultClosed(f"{a}*{b} = {S.mul[a][b]} leaves the set")
    return MultClosedSet(S, S.handle(bits), adjoined)


@dataclass(frozen=True, eq=False)
class LocalizedStructure:
    """The quotient of ``source × T`` by (m,t) ~ (m',t') ⇔ ∃s∈T: s·t·m' = s·t'·m.

    Classes are numbered with the class of (0, 1) first, then by smallest
    representative pair. For a semiring source ``mul`` is set; for a
    semimodule source ``action`` is indexed by classes of ``base``.
    """

    name: str
    source: Source
    tset: MultClosedSet
    pairs: tuple[tuple[int, int], ...]
    classes: tuple[tuple[tuple[int, int], ...], ...]
    class_of: dict
    add: tuple
    mul: tuple | None = None
    action: tuple | None = None
    base: "LocalizedStructure | None" = None
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.classes)

    def fraction(self, x: int, t: int) -> int:
        return self.class_of[(x, t)]

    @property
    def embedding(self) -> tuple[int, ...]:
        """Class of x/1 for each source element x."""
        one = self.tset.owner.one
        return tuple(self.class_of[(x, one)] for x in range(self.source.order))

    @property
    def one(self) -> int:
        S = self.tset.owner
        return self.class_of[(S.one, S.one)]

    def localize_bits(self, bits: int) -> int:
        """Classes of x/t for x in the given source subset and t in T."""
        ts = list(self.tset)
        return mask_of(self.class_of[(x, t)] for x in iter_bits(bits) for t in ts)

    def as_semiring(self) -> FiniteSemiring:
        if self.mul is None:
            raise TypeError("not a localized semiring")
        if self.order == 1:
            raise PreconditionUnmet("T contains 0, so the localization is the zero semiring (no 1 != 0)")
        if "semiring" not in self._memo:
            self._memo["semiring"] = validate_semiring(self.add, self.mul, self.one, self.name)
        return self._memo["semiring"]

    def as_semimodule(self) -> FiniteSemimodule:
        if self.action is None:
            raise TypeError("not a localized semimodule")
        if self.base.order == 1:
            raise PreconditionUnmet("T contains 0, so the localized base is the zero semiring")
        if "semimodule" not in self._memo:
            self._memo["semimodule"] = validate_semimodule(
                self.base.as_semiring(), self.add, self.action, self.name
            )
        return self._memo["semimodule"]


def _act(source: Source):
    if isinstance(source, FiniteSemiring):
        return source.mul
    return source.action


def _build_classes(source: Source, T: MultClosedSet):
    S = T.owner
    act = _act(source)
    ts = list(T)
    pairs = [(x, t) for x in range(source.order) for t in ts]
    # zero class first: (0, 1) leads the enumeration
    pairs.sort(key=lambda p: (p != (0, S.one), p))

    def related(a, b):
        (m, t), (m2, t2) = a, b
        for s in ts:
            if act[S.mul[s][t]][m2] == act[S.mul[s][t2]][m]:
                return True
        return False

    uf = UnionFind(len(pairs))
    rel = [[False] * len(pairs) for _ in pairs]
    for i, a in enumerate(pairs):
        for j in range(i, len(pairs)):
            if related(a, pairs[j]):
                rel[i][j] = rel[j][i] = True
                uf.union(i, j)
    # the relation must already be an equivalence: related exactly within classes
    for i in range(len(pairs)):
        for j in range(len(pairs)):
            if rel[i][j] != (uf.find(i) == uf.find(j)):
                raise WellDefinednessError(
                    f"localization relation not transitive at {pairs[i]}, {pairs[j]}"
                )
    roots: dict[int, int] = {}
    members: list[list] = []
    class_of = {}
    for i, p in enumerate(pairs):
        r = uf.find(i)
        if r not in roots:
            roots[r] = len(members)
            members.append([])
        members[roots[r]].append(p)
        class_of[p] = roots[r]
    return tuple(pairs), tuple(tuple(c) for c in members), class_of


def _induced(left_classes, right_classes, combine, class_of, what):
    """Table of combine(rep_l, rep_r) classes, verified independent of representatives."""
    table = []
    for i, cl in enumerate(left_classes):
        row = []
        for j, cr in enumerate(right_classes):
            results = {class_of[combine(a, b)] for a in cl for b in cr}
            if len(results) != 1:
                raise WellDefinednessError(f"induced {what} not well defined at classes {i}, {j}")
            row.append(results.pop())
        table.append(tuple(row))
    return tuple(table)


def _check_owner(S: FiniteSemiring, T: MultClosedSet) -> None:
    if T.owner is not S:
        raise OwnerMismatch(f"multiplicatively closed set of {T.owner.name} used with {S.name}")


def localize_semiring(S: FiniteSemiring, T: MultClosedSet, name: str | None = None) -> LocalizedStructure:
    _check_owner(S, T)
    pairs, classes, class_of = _build_classes(S, T)
    add, mul = S.add, S.mul

    def plus(a, b):
        (x, t), (y, u) = a, b
        return add[mul[u][x]][mul[t][y]], mul[t][u]

    def times(a, b):
        (x, t), (y, u) = a, b
        return mul[x][y], mul[t][u]

    return LocalizedStructure(
        name or f"{S.name}[T={'_'.join(map(str, T))}]",
        S,
        T,
        pairs,
        classes,
        class_of,
        _induced(classes, classes, plus, class_of, "addition"),
        mul=_induced(classes, classes, times, class_of, "multiplication"),
    )


def localize_semimodule(M: FiniteSemimodule, T: MultClosedSet, name: str | None = None) -> LocalizedStructure:
    S = M.base
    _check_owner(S, T)
    name = name or f"{M.name}[T={'_'.join(map(str, T))}]"
    base = localize_semiring(S, T, f"{S.name}[{name}]")
    pairs, classes, class_of = _build_classes(M, T)
    add, act, mul = M.add, M.action, S.mul

    def plus(a, b):
        (x, t), (y, u) = a, b
        return add[act[u][x]][act[t][y]], mul[t][u]

    def scale(a, b):
        (s, t), (x, u) = a, b
        return act[s][x], mul[t][u]

    return LocalizedStructure(
        name,
        M,
        T,
        pairs,
        classes,
        class_of,
        _induced(classes, classes, plus, class_of, "addition"),
        action=_induced(base.classes, classes, scale, class_of, "action"),
        base=base,
    )


def _base_of(X: Source) -> FiniteSemiring:
    return X if isinstance(X, FiniteSemiring) else X.base


@memoized
def _at_prime(X: Source, p_bits: int) -> LocalizedStructure:
    S = _base_of(X)
    T = mult_closed_set(S, (s for s in S.elements if not p_bits >> s & 1))
    tag = "_".join(map(str, iter_bits(p_bits)))
    if isinstance(X, FiniteSemiring):
        return localize_semiring(X, T, f"{X.name}@{tag}")
    return localize_semimodule(X, T, f"{X.name}@{tag}")


def localize_at_prime(X: Source, p: SubsetHandle) -> LocalizedStructure:
    """``X_p``: localization at the complement of the prime ideal ``p``."""
    S = _base_of(X)
    if p.owner != S.key:
        raise OwnerMismatch(f"subset of {p.owner} used with {S.key}")
    if not is_ideal(S, p) or not is_prime(S, p):
        raise NotPrime(f"{p} is not a prime ideal of {S.name}")
    return _at_prime(X, p.bits)


@memoized
def total_quotient(S: FiniteSemiring) -> LocalizedStructure:
    """Q(S), the localization at the multiplicatively cancellable elements."""
    T = mult_closed_set(S, mc_elements(S))
    Q = localize_semiring(S, T, f"Q({S.name})")
    if len(set(Q.embedding)) != S.order:
        raise WellDefinednessError(f"canonical map {S.name} -> Q is not injective")
    return Q


# -- fractional and invertible ideals ----------------------------------------


@dataclass(frozen=True)
class FractionalIdeal:
    quotient: LocalizedStructure
    members: SubsetHandle
    denominator_witness: int


@memoized
def quotient_as_module(S: FiniteSemiring) -> FiniteSemimodule:
    """Q(S) as an S-semimodule via s·c = (s/1)c."""
    Q = total_quotient(S)
    emb = Q.embedding
    action = [[Q.mul[emb[s]][c] for c in range(Q.order)] for s in S.elements]
    return validate_semimodule(S, Q.add, action, f"Q({S.name})-module")


@memoized
def fractional_ideals(S: FiniteSemiring) -> tuple[FractionalIdeal, ...]:
    Q = total_quotient(S)
    if Q.order > QUOTIENT_LIMIT:
        raise SizeBoundExceeded(f"|Q({S.name})| = {Q.order} > {QUOTIENT_LIMIT}")
    qmod = quotient_as_module(S)
    emb = Q.embedding
    image = mask_of(emb)
    out = []
    for F in all_subsemimodules(qmod):
        for d in mc_elements(S):
            dq = Q.mul[emb[d]]
            if all(image >> dq[c] & 1 for c in F):
                out.append(FractionalIdeal(Q, F, d))
                break
    return tuple(out)


def fractional_product_bits(Q: LocalizedStructure, a_bits: int, b_bits: int) -> int:
    bs = list(iter_bits(b_bits))
    products = mask_of(Q.mul[a][b] for a in iter_bits(a_bits) for b in bs)
    return additive_closure(Q.add, products)


def invertible_witness(S: FiniteSemiring, I: SubsetHandle) -> FractionalIdeal | None:
    """A fractional ideal J with IJ = S (inside Q(S)), or ``None``."""
    if I.owner != S.key:
        raise OwnerMismatch(f"subset of {I.owner} used with {S.key}")
    Q = total_quotient(S)
    emb = Q.embedding
    i_bits = mask_of(emb[a] for a in I)
    target = mask_of(emb)
    for J in fractional_ideals(S):
        if fractional_product_bits(Q, i_bits, J.members.bits) == target:
            return J
    return None


def is_invertible_ideal(S: FiniteSemiring, I: SubsetHandle) -> bool:
    return invertible_witness(S, I) is not None
