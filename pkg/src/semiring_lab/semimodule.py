"""Finite semimodules over finite semirings and the predicates defined on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .bits import (
    MAX_ORDER,
    SubsetHandle,
    additive_closure,
    closed_subsets_by_closure,
    closed_subsets_by_scan,
    full_mask,
    is_closed,
    iter_bits,
    mask_of,
)
from .core import (
    FiniteSemiring,
    Table,
    check_entries,
    commutative_monoid_violation,
    freeze_table,
    is_semidomain,
    memoized,
)
from .errors import (
    AxiomViolation,
    BaseMismatch,
    MalformedTable,
    NotASubsemimodule,
    NotAnIdeal,
    NotMaximal,
    OwnerMismatch,
    PreconditionUnmet,
    SizeBoundExceeded,
)
from .ideals import all_ideals, ideal_sum, is_maximal, is_yoked_and_subtractive

SCAN_LIMIT = 16

SEMIMODULE_AXIOMS = (
    "additive-commutativity",
    "additive-associativity",
    "additive-identity",
    "zero-action",
    "unit-action",
    "action-associativity",
    "scalar-distributivity",
    "module-distributivity",
)


@dataclass(frozen=True, eq=False)
class FiniteSemimodule:
    """A validated semimodule on ``0..order-1`` over ``base``; ``action[s][x]`` is s·x."""

    name: str
    base: FiniteSemiring
    order: int
    add: Table
    action: Table
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    zero = 0

    @property
    def key(self) -> str:
        return f"semimodule:{self.name}"

    @property
    def elements(self) -> range:
        return range(self.order)

    def subset(self, elements=()) -> SubsetHandle:
        elements = list(elements)
        for e in elements:
            if not 0 <= e < self.order:
                raise MalformedTable(f"element {e} not in {self.name}")
        return SubsetHandle(self.key, mask_of(elements))

    def handle(self, bits: int) -> SubsetHandle:
        return SubsetHandle(self.key, bits)

    @property
    def full(self) -> SubsetHandle:
        return SubsetHandle(self.key, full_mask(self.order))

    @property
    def orbits(self) -> tuple[int, ...]:
        try:
            return self._memo["orbits"]
        except KeyError:
            value = tuple(
                mask_of(self.action[s][x] for s in self.base.elements) for x in self.elements
            )
            self._memo["orbits"] = value
            return value

    def same_tables(self, other: "FiniteSemimodule") -> bool:
        return (
            self.base.same_tables(other.base)
            and (self.order, self.add, self.action) == (other.order, other.add, other.action)
        )

    def __repr__(self) -> str:
        return f"FiniteSemimodule({self.name!r} over {self.base.name!r}, order={self.order})"


def semimodule_violation(S: FiniteSemiring, add: Table, action: Table):
    bad = commutative_monoid_violation(add)
    if bad:
        return bad
    m = len(add)
    for s in S.elements:
        if action[s][0] != 0:
            return "zero-action", (s, 0)
    for x in range(m):
        if action[0][x] != 0:
            return "zero-action", (0, x)
    for x in range(m):
        if action[S.one][x] != x:
            return "unit-action", (x,)
    for s in S.elements:
        for t in S.elements:
            st = S.mul[s][t]
            for x in range(m):
                if action[st][x] != action[s][action[t][x]]:
                    return "action-associativity", (s, t, x)
    for s in S.elements:
        for t in S.elements:
            st = S.add[s][t]
            for x in range(m):
                if action[st][x] != add[action[s][x]][action[t][x]]:
                    return "scalar-distributivity", (s, t, x)
    for s in S.elements:
        row = action[s]
        for x in range(m):
            for y in range(m):
                if row[add[x][y]] != add[row[x]][row[y]]:
                    return "module-distributivity", (s, x, y)
    return None


def validate_semimodule(S: FiniteSemiring, add, action, name: str = "M") -> FiniteSemimodule:
    """Check the semimodule axioms and return the frozen structure.

    The action table has one row per scalar of ``S`` and one column per element.
    """
    if not isinstance(S, FiniteSemiring):
        raise BaseMismatch(f"base must be a FiniteSemiring, got {type(S).__name__}")
    m = len(add)
    if m < 1:
        raise MalformedTable("a semimodule needs order >= 1")
    if m > MAX_ORDER:
        raise SizeBoundExceeded(f"order {m} exceeds the supported maximum {MAX_ORDER}")
    add = freeze_table(add, m, m, "add-table")
    action = freeze_table(action, S.order, m, "action-table")
    check_entries(add, m, "add-table")
    check_entries(action, m, "action-table")
    bad = semimodule_violation(S, add, action)
    if bad:
        raise AxiomViolation(*bad)
    return FiniteSemimodule(name, S, m, add, action)


@memoized
def module_over_itself(S: FiniteSemiring) -> FiniteSemimodule:
    return validate_semimodule(S, S.add, S.mul, f"{S.name}-self")


def _restrict(M: FiniteSemimodule, bits: int, name: str) -> FiniteSemimodule:
    members = list(iter_bits(bits))
    index = {x: i for i, x in enumerate(members)}
    add = [[index[M.add[a][b]] for b in members] for a in members]
    action = [[index[M.action[s][x]] for x in members] for s in M.base.elements]
    return validate_semimodule(M.base, add, action, name)


@memoized
def submodule(M: FiniteSemimodule, N: SubsetHandle) -> FiniteSemimodule:
    """``N`` as a semimodule in its own right; element ``i`` is the i-th smallest member."""
    bits = _require_sub(M, N)
    if bits == M.full.bits:
        return M
    tag = "_".join(map(str, iter_bits(bits)))
    return _restrict(M, bits, f"{M.name}-sub-{tag}")


def ideal_as_module(S: FiniteSemiring, I: SubsetHandle) -> FiniteSemimodule:
    """The ideal ``I`` viewed as an S-semimodule."""
    if I.owner != S.key:
        raise OwnerMismatch(f"subset of {I.owner} used with {S.key}")
    if not is_closed(S.add, S.orbits, I.bits):
        raise NotAnIdeal(f"{I} is not an ideal of {S.name}")
    if I.bits == S.full.bits:
        return module_over_itself(S)
    tag = "_".join(map(str, I))
    return _restrict(module_over_itself(S), I.bits, f"{S.name}-ideal-{tag}")


def direct_sum(M: FiniteSemimodule, N: FiniteSemimodule, name: str | None = None) -> FiniteSemimodule:
    """``M ⊕ N``; the pair (x, y) is element ``x + y*|M|``."""
    if M.base is not N.base:
        raise BaseMismatch("direct sum needs a common base")
    m, n = M.order, N.order
    pairs = [(x, y) for y in range(n) for x in range(m)]
    add = [[M.add[a][c] + N.add[b][d] * m for (c, d) in pairs] for (a, b) in pairs]
    action = [[M.action[s][a] + N.action[s][b] * m for (a, b) in pairs] for s in M.base.elements]
    return validate_semimodule(M.base, add, action, name or f"{M.name}+{N.name}")


def relabel_semimodule(M: FiniteSemimodule, perm: Sequence[int], name: str | None = None):
    inv = [0] * M.order
    for old, new in enumerate(perm):
        inv[new] = old
    add = [[perm[M.add[inv[a]][inv[b]]] for b in M.elements] for a in M.elements]
    action = [[perm[M.action[s][inv[x]]] for x in M.elements] for s in M.base.elements]
    return validate_semimodule(M.base, add, action, name or M.name)


# -- subsemimodules ----------------------------------------------------------


def _own(M: FiniteSemimodule, A: SubsetHandle) -> int:
    if A.owner != M.key:
        raise OwnerMismatch(f"subset of {A.owner} used with {M.key}")
    return A.bits


def _require_sub(M: FiniteSemimodule, A: SubsetHandle) -> int:
    bits = _own(M, A)
    if not is_closed(M.add, M.orbits, bits):
        raise NotASubsemimodule(f"{A} is not a subsemimodule of {M.name}")
    return bits


def _require_base_ideal(M: FiniteSemimodule, I: SubsetHandle) -> int:
    S = M.base
    if I.owner != S.key:
        raise OwnerMismatch(f"subset of {I.owner} used with {S.key}")
    if not is_closed(S.add, S.orbits, I.bits):
        raise NotAnIdeal(f"{I} is not an ideal of {S.name}")
    return I.bits


def is_subsemimodule(M: FiniteSemimodule, A: SubsetHandle) -> bool:
    return is_closed(M.add, M.orbits, _own(M, A))


def generated_subsemimodule(M: FiniteSemimodule, gens: Iterable[int]) -> SubsetHandle:
    multiples = 0
    for g in gens:
        multiples |= M.orbits[g]
    return M.handle(additive_closure(M.add, multiples))


def cyclic_subsemimodule(M: FiniteSemimodule, x: int) -> SubsetHandle:
    """``Sx`` (already additively closed by distributivity)."""
    return M.handle(additive_closure(M.add, M.orbits[x]))


def generates(M: FiniteSemimodule, gens: Iterable[int]) -> bool:
    return generated_subsemimodule(M, gens).bits == M.full.bits


@memoized
def subsemimodules_by_scan(M: FiniteSemimodule) -> tuple[SubsetHandle, ...]:
    return tuple(M.handle(m) for m in closed_subsets_by_scan(M.order, M.add, M.orbits))


@memoized
def subsemimodules_by_closure(M: FiniteSemimodule) -> tuple[SubsetHandle, ...]:
    return tuple(M.handle(m) for m in closed_subsets_by_closure(M.order, M.add, M.orbits))


def all_subsemimodules(M: FiniteSemimodule) -> tuple[SubsetHandle, ...]:
    if M.order <= SCAN_LIMIT:
        return subsemimodules_by_scan(M)
    return subsemimodules_by_closure(M)


# -- residuals and products --------------------------------------------------


def _residual_bits(M: FiniteSemimodule, n_bits: int, l_bits: int) -> int:
    ls = list(iter_bits(l_bits))
    out = 0
    for s in M.base.elements:
        row = M.action[s]
        if all(n_bits >> row[x] & 1 for x in ls):
            out |= 1 << s
    return out


def residual(N: SubsetHandle, L: SubsetHandle, M: FiniteSemimodule) -> SubsetHandle:
    """``(N : L) = {s : sL ⊆ N}``, an ideal of the base semiring."""
    n_bits, l_bits = _require_sub(M, N), _require_sub(M, L)
    return M.base.handle(_residual_bits(M, n_bits, l_bits))


def _times_bits(M: FiniteSemimodule, i_bits: int, l_bits: int) -> int:
    ls = list(iter_bits(l_bits))
    products = 0
    for a in iter_bits(i_bits):
        row = M.action[a]
        for x in ls:
            products |= 1 << row[x]
    return additive_closure(M.add, products)


def ideal_times(I: SubsetHandle, L: SubsetHandle, M: FiniteSemimodule) -> SubsetHandle:
    """``IL``: finite sums of a·x with a in I, x in L."""
    i_bits = _require_base_ideal(M, I)
    l_bits = _require_sub(M, L)
    return M.handle(_times_bits(M, i_bits, l_bits))


def ideal_times_module(I: SubsetHandle, M: FiniteSemimodule) -> SubsetHandle:
    return ideal_times(I, M.full, M)


@memoized
def multiplication_witness(M: FiniteSemimodule) -> SubsetHandle | None:
    """Smallest subsemimodule N with N != (N:M)M, or ``None`` if M is a multiplication semimodule."""
    full = M.full.bits
    for N in all_subsemimodules(M):
        if _times_bits(M, _residual_bits(M, N.bits, full), full) != N.bits:
            return N
    return None


def is_multiplication(M: FiniteSemimodule) -> bool:
    return multiplication_witness(M) is None


@memoized
def ideal_products_with_module(M: FiniteSemimodule) -> dict[int, tuple[SubsetHandle, ...]]:
    """Map ``IM`` (as bits) to every ideal I producing it."""
    out: dict[int, list] = {}
    for I in all_ideals(M.base):
        out.setdefault(_times_bits(M, I.bits, M.full.bits), []).append(I)
    return {k: tuple(v) for k, v in out.items()}


def multiplication_witness_by_ideal_scan(M: FiniteSemimodule) -> SubsetHandle | None:
    """Oracle route: search every ideal I for N = IM."""
    products = ideal_products_with_module(M)
    for N in all_subsemimodules(M):
        if N.bits not in products:
            return N
    return None


# -- element-level predicates ------------------------------------------------


@memoized
def is_cancellative(M: FiniteSemimodule) -> bool:
    return all(len(set(row)) == M.order for row in M.add)


@memoized
def is_faithful(M: FiniteSemimodule) -> bool:
    return not any(not any(M.action[s]) for s in range(1, M.base.order))


@memoized
def is_mc_semimodule(M: FiniteSemimodule) -> bool:
    """For m != 0, sm = s'm forces s = s'."""
    n = M.base.order
    return all(len({M.action[s][x] for s in M.base.elements}) == n for x in range(1, M.order))


@memoized
def is_torsionfree(M: FiniteSemimodule) -> bool:
    if not is_semidomain(M.base):
        raise PreconditionUnmet("torsionfree is only defined over a semidomain")
    return all(len(set(M.action[a])) == M.order for a in range(1, M.base.order))


@memoized
def cyclic_generator(M: FiniteSemimodule) -> int | None:
    full = M.full.bits
    for x in M.elements:
        if cyclic_subsemimodule(M, x).bits == full:
            return x
    return None


def is_cyclic(M: FiniteSemimodule) -> bool:
    return cyclic_generator(M) is not None


# -- maximal-ideal local data ------------------------------------------------


def _require_maximal(M: FiniteSemimodule, p: SubsetHandle) -> int:
    S = M.base
    if p.owner != S.key:
        raise OwnerMismatch(f"subset of {p.owner} used with {S.key}")
    if not is_maximal(S, p):
        raise NotMaximal(f"{p} is not a maximal ideal of {S.name}")
    return p.bits


def _complements(S: FiniteSemiring, p_bits: int):
    """Pairs (s, q) with q in p and s + q = 1, ordered by s then q."""
    return [
        (s, q)
        for s in S.elements
        for q in iter_bits(p_bits)
        if S.add[s][q] == S.one
    ]


def t_p_set(M: FiniteSemimodule, p: SubsetHandle) -> SubsetHandle:
    """``{m : sm = 0 for some s with s + q = 1, q in p}``."""
    p_bits = _require_maximal(M, p)
    killers = {s for s, _ in _complements(M.base, p_bits)}
    return M.subset(x for x in M.elements if any(M.action[s][x] == 0 for s in killers))


@memoized
def _p_cyclic_witness(M: FiniteSemimodule, p_bits: int):
    S = M.base
    pairs = _complements(S, p_bits)
    images = {}
    for t, _ in pairs:
        images.setdefault(t, mask_of(M.action[t]))
    for m in M.elements:
        sm = cyclic_subsemimodule(M, m).bits
        for t, q in pairs:
            if images[t] & ~sm == 0:
                return m, t, q
    return None


def p_cyclic_witness(M: FiniteSemimodule, p: SubsetHandle):
    """A triple ``(m, t, q)`` with q in p, t + q = 1 and tM ⊆ Sm, or ``None``."""
    return _p_cyclic_witness(M, _require_maximal(M, p))


def is_p_cyclic(M: FiniteSemimodule, p: SubsetHandle) -> bool:
    return p_cyclic_witness(M, p) is not None


@dataclass(frozen=True)
class FixpointSet:
    members: SubsetHandle
    is_subsemimodule: bool
    standing_hypotheses: bool


def fixpoint_set(M: FiniteSemimodule, p: SubsetHandle) -> FixpointSet:
    """``{m : m = qm for some q in p}`` with its closure status.

    ``standing_hypotheses`` records whether the base is yoked with all maximal
    ideals subtractive and M is cancellative; there the set must be closed.
    """
    p_bits = _require_maximal(M, p)
    qs = list(iter_bits(p_bits))
    bits = mask_of(x for x in M.elements if any(M.action[q][x] == x for q in qs))
    return FixpointSet(
        M.handle(bits),
        is_closed(M.add, M.orbits, bits),
        is_yoked_and_subtractive(M.base) and is_cancellative(M),
    )


@memoized
def theta(M: FiniteSemimodule) -> SubsetHandle:
    """Sum over m of the residuals (Sm : M)."""
    S = M.base
    total = S.handle(1)
    for x in M.elements:
        total = ideal_sum(S, total, residual(cyclic_subsemimodule(M, x), M.full, M))
    return total
