import itertools

import pytest

from oracles import is_semiring_tables
from semiring_lab.enumeration import enumerate_semimodules, enumerate_semirings
from semiring_lab.errors import SizeBoundExceeded


def symmetric_monoids(n):
    """Symmetric tables with 0 as identity that are associative."""
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    for values in itertools.product(range(n), repeat=len(cells)):
        t = [[0] * n for _ in range(n)]
        for x in range(n):
            t[0][x] = t[x][0] = x
        for (i, j), v in zip(cells, values):
            t[i][j] = t[j][i] = v
        if all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n)):
            yield tuple(map(tuple, t))


def semirings_oracle(n):
    cells = [(i, j) for i in range(2, n) for j in range(i, n)]
    out = []
    for add in symmetric_monoids(n):
        for values in itertools.product(range(n), repeat=len(cells)):
            mul = [[0] * n for _ in range(n)]
            for x in range(n):
                mul[1][x] = mul[x][1] = x
            mul[0] = [0] * n
            for x in range(n):
                mul[x][0] = 0
            for (i, j), v in zip(cells, values):
                mul[i][j] = mul[j][i] = v
            if is_semiring_tables(add, mul, 1):
                out.append((add, tuple(map(tuple, mul))))
    return out


def relabel(table, perm):
    n = len(table)
    inv = {perm[i]: i for i in range(n)}
    return tuple(tuple(perm[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))


def relabel_action(act, perm):
    inv = {perm[i]: i for i in range(len(perm))}
    return tuple(tuple(perm[row[inv[x]]] for x in range(len(perm))) for row in act)


def iso_classes(pairs, n):
    perms = [(0, 1, *p) for p in itertools.permutations(range(2, n))]
    return len({min((relabel(a, p), relabel(m, p)) for p in perms) for a, m in pairs})


@pytest.mark.parametrize("n, labelled, classes", [(2, 2, 2), (3, 6, 6), (4, 69, 36)])
def test_semiring_counts(n, labelled, classes):
    oracle = semirings_oracle(n)
    assert len(oracle) == labelled
    assert iso_classes(oracle, n) == classes
    found = list(enumerate_semirings(n))
    assert len(found) == labelled
    assert {(S.add, S.mul) for S in found} == set(oracle)
    assert len(list(enumerate_semirings(n, up_to_iso=True))) == classes


def modules_oracle(S, m):
    free = [(s, x) for s in range(S.order) if s not in (0, S.one) for x in range(1, m)]
    out = []
    for add in symmetric_monoids(m):
        for values in itertools.product(range(m), repeat=len(free)):
            act = [[0] * m for _ in range(S.order)]
            act[S.one] = list(range(m))
            for (s, x), v in zip(free, values):
                act[s][x] = v
            r, sr = range(m), range(S.order)
            if all(act[S.mul[s][t]][x] == act[s][act[t][x]] for s in sr for t in sr for x in r) and all(
                act[S.add[s][t]][x] == add[act[s][x]][act[t][x]] for s in sr for t in sr for x in r
            ) and all(act[s][add[x][y]] == add[act[s][x]][act[s][y]] for s in sr for x in r for y in r):
                out.append((add, tuple(map(tuple, act))))
    return out


def test_semimodule_counts():
    total = 0
    for n in (2, 3):
        for S in enumerate_semirings(n, up_to_iso=True):
            for m in (1, 2, 3):
                oracle = modules_oracle(S, m)
                found = {(M.add, M.action) for M in enumerate_semimodules(S, m)}
                assert found == set(oracle), (S.name, m)
                perms = [(0, *p) for p in itertools.permutations(range(1, m))]
                classes = {min((relabel(a, p), relabel_action(act, p)) for p in perms) for a, act in oracle}
                iso = list(enumerate_semimodules(S, m, up_to_iso=True))
                assert len(iso) == len(classes)
                total += len(iso)
    assert total == 32


def test_size_bounds(get):
    with pytest.raises(SizeBoundExceeded):
        list(enumerate_semirings(6))
    with pytest.raises(SizeBoundExceeded):
        list(enumerate_semirings(1))
    with pytest.raises(SizeBoundExceeded):
        list(enumerate_semimodules(get("bool2"), 7))
