"""Exhaustive enumeration of small semirings and semimodules.

Tables are filled cell by cell with backtracking; after every assignment
each axiom instance whose entries are all defined is checked. Additive
monoids are fixed first so that multiplications are only tried on
associative, commutative additions.
"""
from __future__ import annotations

import itertools
from typing import Iterator

from .core import FiniteSemiring, validate_semiring
from .errors import SizeBoundExceeded
from .semimodule import FiniteSemimodule, validate_semimodule

MAX_SEMIRING_ORDER = 5
MAX_SEMIMODULE_ORDER = 6
U = -1  # undefined cell


def _assoc_ok(t, n: int) -> bool:
    for a in range(n):
        ta = t[a]
        for b in range(n):
            ab = ta[b]
            if ab == U:
                continue
            tab = t[ab]
            tb = t[b]
            for c in range(n):
                left = tab[c]
                if left == U:
                    continue
                bc = tb[c]
                if bc == U:
                    continue
                right = ta[bc]
                if right != U and right != left:
                    return False
    return True


def _fill_symmetric(t, cells, n, ok) -> Iterator[tuple]:
    """Assign every cell (i, j) and its mirror; yield frozen tables passing ``ok``."""
    if not cells:
        yield tuple(tuple(row) for row in t)
        return
    (i, j), rest = cells[0], cells[1:]
    for v in range(n):
        t[i][j] = t[j][i] = v
        if ok(t):
            yield from _fill_symmetric(t, rest, n, ok)
    t[i][j] = t[j][i] = U


def commutative_monoids(n: int) -> Iterator[tuple]:
    """Addition tables on 0..n-1 with identity 0, commutative and associative."""
    t = [[U] * n for _ in range(n)]
    for a in range(n):
        t[0][a] = t[a][0] = a
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    yield from _fill_symmetric(t, cells, n, lambda t: _assoc_ok(t, n))


def _distributive_ok(add, mul, n: int) -> bool:
    for a in range(n):
        ma = mul[a]
        for b in range(n):
            ab = ma[b]
            if ab == U:
                continue
            addb = add[b]
            for c in range(n):
                ac = ma[c]
                if ac == U:
                    continue
                left = ma[addb[c]]
                if left != U and left != add[ab][ac]:
                    return False
    return True


def semiring_multiplications(add, one: int = 1) -> Iterator[tuple]:
    n = len(add)
    t = [[U] * n for _ in range(n)]
    for a in range(n):
        t[0][a] = t[a][0] = 0
        t[one][a] = t[a][one] = a
    free = [x for x in range(n) if x not in (0, one)]
    cells = [(i, j) for k, i in enumerate(free) for j in free[k:]]

    def ok(t):
        return _assoc_ok(t, n) and _distributive_ok(add, t, n)

    yield from _fill_symmetric(t, cells, n, ok)


def _semiring_canon(add, mul, n: int):
    best = None
    for tail in itertools.permutations(range(2, n)):
        perm = (0, 1) + tail
        inv = [0] * n
        for old, new in enumerate(perm):
            inv[new] = old
        form = tuple(perm[add[inv[a]][inv[b]]] for a in range(n) for b in range(n)) + tuple(
            perm[mul[inv[a]][inv[b]]] for a in range(n) for b in range(n)
        )
        if best is None or form < best:
            best = form
    return best


def enumerate_semirings(order: int, up_to_iso: bool = False) -> Iterator[FiniteSemiring]:
    """Every commutative semiring on 0..order-1 with zero 0 and one 1.

    With ``up_to_iso`` only the first member of each isomorphism class is kept.
    """
    if not 2 <= order <= MAX_SEMIRING_ORDER:
        raise SizeBoundExceeded(f"semiring order must be in 2..{MAX_SEMIRING_ORDER}")
    seen = set()
    k = 0
    for add in commutative_monoids(order):
        for mul in semiring_multiplications(add, 1):
            if up_to_iso:
                canon = _semiring_canon(add, mul, order)
                if canon in seen:
                    continue
                seen.add(canon)
            yield validate_semiring(add, mul, 1, f"e{order}_{k}")
            k += 1


def _actions(S: FiniteSemiring, add) -> Iterator[tuple]:
    m, n = len(add), S.order
    act = [[U] * m for _ in range(n)]
    for x in range(m):
        act[0][x] = 0
        act[S.one][x] = x
    for s in range(n):
        act[s][0] = 0
    cells = [(s, x) for s in range(n) if s not in (0, S.one) for x in range(1, m)]

    def ok() -> bool:
        for s in range(n):
            row = act[s]
            for x in range(m):
                sx = row[x]
                if sx == U:
                    continue
                for y in range(m):
                    sy = row[y]
                    if sy == U:
                        continue
                    left = row[add[x][y]]
                    if left != U and left != add[sx][sy]:
                        return False
                for t in range(n):
                    tx = act[t][x]
                    if tx == U:
                        continue
                    left = act[S.add[s][t]][x]
                    if left != U and left != add[sx][tx]:
                        return False
                    left = act[S.mul[t][s]][x]
                    right = act[t][sx]
                    if left != U and right != U and left != right:
                        return False
        return True

    def fill(i):
        if i == len(cells):
            yield tuple(tuple(row) for row in act)
            return
        s, x = cells[i]
        for v in range(m):
            act[s][x] = v
            if ok():
                yield from fill(i + 1)
        act[s][x] = U

    if ok():
        yield from fill(0)


def _module_canon(add, action, m: int):
    best = None
    for tail in itertools.permutations(range(1, m)):
        perm = (0,) + tail
        inv = [0] * m
        for old, new in enumerate(perm):
            inv[new] = old
        form = tuple(perm[add[inv[a]][inv[b]]] for a in range(m) for b in range(m)) + tuple(
            perm[row[inv[x]]] for row in action for x in range(m)
        )
        if best is None or form < best:
            best = form
    return best


def enumerate_semimodules(S: FiniteSemiring, order: int, up_to_iso: bool = False) -> Iterator[FiniteSemimodule]:
    """Every S-semimodule on 0..order-1 with zero 0 (optionally up to isomorphism)."""
    if not 1 <= order <= MAX_SEMIMODULE_ORDER:
        raise SizeBoundExceeded(f"semimodule order must be in 1..{MAX_SEMIMODULE_ORDER}")
    seen = set()
    k = 0
    for add in commutative_monoids(order):
        for action in _actions(S, add):
            if up_to_iso:
                canon = _module_canon(add, action, order)
                if canon in seen:
                    continue
                seen.add(canon)
            yield validate_semimodule(S, add, action, f"{S.name}_m{order}_{k}")
            k += 1
