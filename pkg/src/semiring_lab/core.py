"""Finite commutative semirings given by Cayley tables."""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Sequence

from .bits import MAX_ORDER, SubsetHandle, full_mask, mask_of
from .errors import AxiomViolation, MalformedTable, SizeBoundExceeded

Table = tuple[tuple[int, ...], ...]

# Order in which semiring axioms are checked; the first failure is reported.
SEMIRING_AXIOMS = (
    "additive-commutativity",
    "additive-associativity",
    "additive-identity",
    "one-nonzero",
    "multiplicative-identity",
    "multiplicative-associativity",
    "zero-absorption",
    "left-distributivity",
    "right-distributivity",
    "multiplicative-commutativity",
)


def memoized(fn):
    """Cache ``fn(struct, *args)`` on the (immutable) structure itself."""

    @functools.wraps(fn)
    def wrapper(struct, *args):
        key = (fn.__name__, args)
        cache = struct._memo
        try:
            return cache[key]
        except KeyError:
            value = cache[key] = fn(struct, *args)
            return value

    return wrapper


def freeze_table(raw, rows: int, cols: int, what: str) -> Table:
    try:
        table = tuple(tuple(int(v) for v in row) for row in raw)
    except (TypeError, ValueError) as exc:
        raise MalformedTable(f"{what}: non-integer entry ({exc})") from None
    if len(table) != rows:
        raise MalformedTable(f"{what}: expected {rows} rows, got {len(table)}")
    for i, row in enumerate(table):
        if len(row) != cols:
            raise MalformedTable(f"{what}: row {i} has {len(row)} entries, expected {cols}")
    return table


def check_entries(table: Table, bound: int, what: str) -> None:
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not 0 <= v < bound:
                raise MalformedTable(f"{what}[{i}][{j}] = {v} out of range 0..{bound - 1}")


def commutative_monoid_violation(add: Table):
    """First violated additive axiom as ``(axiom, witness)``, or ``None``."""
    n = len(add)
    for a in range(n):
        for b in range(a + 1, n):
            if add[a][b] != add[b][a]:
                return "additive-commutativity", (a, b)
    for a in range(n):
        for b in range(n):
            ab = add[a][b]
            for c in range(n):
                if add[ab][c] != add[a][add[b][c]]:
                    return "additive-associativity", (a, b, c)
    for a in range(n):
        if add[0][a] != a:
            return "additive-identity", (a,)
    return None


@dataclass(frozen=True, eq=False)
class FiniteSemiring:
    """A validated commutative semiring on ``0..order-1`` with zero at index 0.

    Build instances with :func:`validate_semiring`; the constructor does not check axioms.
    """

    name: str
    order: int
    add: Table
    mul: Table
    one: int
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    zero = 0

    @property
    def key(self) -> str:
        return f"semiring:{self.name}"

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
        """``orbits[a]`` is the mask of ``{s*a : s in S}``."""
        try:
            return self._memo["orbits"]
        except KeyError:
            value = tuple(mask_of(self.mul[s][a] for s in self.elements) for a in self.elements)
            self._memo["orbits"] = value
            return value

    def same_tables(self, other: "FiniteSemiring") -> bool:
        return (self.order, self.one, self.add, self.mul) == (other.order, other.one, other.add, other.mul)

    def __repr__(self) -> str:
        return f"FiniteSemiring({self.name!r}, order={self.order})"


def semiring_violation(add: Table, mul: Table, one: int):
    """Return ``(axiom, witness)`` for the first failing axiom, or ``None``."""
    n = len(add)
    bad = commutative_monoid_violation(add)
    if bad:
        return bad
    if one == 0:
        return "one-nonzero", (one,)
    for a in range(n):
        if mul[one][a] != a or mul[a][one] != a:
            return "multiplicative-identity", (a,)
    for a in range(n):
        for b in range(n):
            ab = mul[a][b]
            for c in range(n):
                if mul[ab][c] != mul[a][mul[b][c]]:
                    return "multiplicative-associativity", (a, b, c)
    for a in range(n):
        if mul[0][a] != 0 or mul[a][0] != 0:
            return "zero-absorption", (a,)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                    return "left-distributivity", (a, b, c)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[add[b][c]][a] != add[mul[b][a]][mul[c][a]]:
                    return "right-distributivity", (a, b, c)
    for a in range(n):
        for b in range(a + 1, n):
            if mul[a][b] != mul[b][a]:
                return "multiplicative-commutativity", (a, b)
    return None


def validate_semiring(add, mul, one: int, name: str = "S") -> FiniteSemiring:
    """Check every semiring axiom and return the frozen structure.

    Raises :class:`MalformedTable` for shape/range problems and
    :class:`AxiomViolation` naming the first failed axiom otherwise.
    """
    n = len(add)
    if n < 2:
        raise MalformedTable("a semiring needs order >= 2 (1 != 0)")
    if n > MAX_ORDER:
        raise SizeBoundExceeded(f"order {n} exceeds the supported maximum {MAX_ORDER}")
    add = freeze_table(add, n, n, "add-table")
    mul = freeze_table(mul, n, n, "mul-table")
    check_entries(add, n, "add-table")
    check_entries(mul, n, "mul-table")
    if not 0 <= one < n:
        raise MalformedTable(f"one = {one} out of range")
    bad = semiring_violation(add, mul, one)
    if bad:
        raise AxiomViolation(*bad)
    return FiniteSemiring(name, n, add, mul, one)


def semiring_from_ops(name: str, order: int, plus, times, one: int = 1) -> FiniteSemiring:
    """Tabulate two Python callables on ``range(order)`` and validate."""
    r = range(order)
    return validate_semiring(
        [[plus(a, b) for b in r] for a in r],
        [[times(a, b) for b in r] for a in r],
        one,
        name,
    )


# -- predicates -------------------------------------------------------------


@memoized
def is_yoked(S: FiniteSemiring) -> bool:
    """For all a, b some t has a + t = b or b + t = a."""
    reach = [mask_of(row) for row in S.add]  # reach[a] = {a + t}
    return all(reach[a] >> b & 1 or reach[b] >> a & 1 for a in S.elements for b in S.elements)


@memoized
def is_entire(S: FiniteSemiring) -> bool:
    return all(S.mul[a][b] != 0 for a in range(1, S.order) for b in range(1, S.order))


def _cancels(S: FiniteSemiring, s: int) -> bool:
    return len(set(S.mul[s])) == S.order


@memoized
def is_semidomain(S: FiniteSemiring) -> bool:
    return all(_cancels(S, a) for a in range(1, S.order))


@memoized
def is_mult_idempotent(S: FiniteSemiring) -> bool:
    return all(S.mul[a][a] == a for a in S.elements)


@memoized
def units(S: FiniteSemiring) -> SubsetHandle:
    return S.subset(s for s in S.elements if S.one in S.mul[s])


@memoized
def mc_elements(S: FiniteSemiring) -> SubsetHandle:
    """Multiplicatively cancellable elements: sb = sc implies b = c."""
    return S.subset(s for s in S.elements if _cancels(S, s))


def is_local(S: FiniteSemiring) -> bool:
    from .ideals import local_maximal_ideal

    return local_maximal_ideal(S) is not None


def relabel_semiring(S: FiniteSemiring, perm: Sequence[int], name: str | None = None) -> FiniteSemiring:
    """Isomorphic copy where old element ``x`` becomes ``perm[x]`` (``perm[0]`` must be 0)."""
    inv = [0] * S.order
    for old, new in enumerate(perm):
        inv[new] = old
    add = [[perm[S.add[inv[a]][inv[b]]] for b in S.elements] for a in S.elements]
    mul = [[perm[S.mul[inv[a]][inv[b]]] for b in S.elements] for a in S.elements]
    return validate_semiring(add, mul, perm[S.one], name or S.name)

