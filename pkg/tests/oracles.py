"""Independent brute-force routines used as test oracles.

They work on plain Python sets and callables and share no code with the
library's bit-vector routines.
"""
import itertools


def closed_sets(carrier, plus, scalars, act):
    """All nonempty subsets closed under ``plus`` and ``act(s, x)``."""
    carrier = list(carrier)
    out = []
    for r in range(1, len(carrier) + 1):
        for combo in itertools.combinations(carrier, r):
            A = set(combo)
            if all(plus(a, b) in A for a in A for b in A) and all(act(s, a) in A for s in scalars for a in A):
                out.append(frozenset(A))
    return set(out)


def zn_ideals(n):
    """Ideals of Z/n are the multiples of the divisors of n."""
    return {frozenset((d * k) % n for k in range(n)) for d in range(1, n + 1) if n % d == 0}


def classes_by_closure(elements, related):
    """Equivalence classes of the transitive closure of ``related``, by BFS."""
    remaining = list(elements)
    classes = []
    while remaining:
        seed = remaining.pop(0)
        cls, frontier = {seed}, [seed]
        while frontier:
            a = frontier.pop()
            for b in list(remaining):
                if related(a, b) or related(b, a):
                    remaining.remove(b)
                    cls.add(b)
                    frontier.append(b)
        classes.append(frozenset(cls))
    return classes


def is_semiring_tables(add, mul, one):
    return all(axiom_holds(a, add, mul, one) for a in AXIOMS)


def span(plus, zero, products):
    """Additive closure of ``products`` together with ``zero``."""
    out = {zero} | set(products)
    grew = True
    while grew:
        grew = False
        for a in list(out):
            for b in list(out):
                c = plus(a, b)
                if c not in out:
                    out.add(c)
                    grew = True
    return frozenset(out)


def module_ideal_product(M, ideal):
    """IM computed with plain sets."""
    return span(lambda a, b: M.add[a][b], 0, {M.action[a][x] for a in ideal for x in range(M.order)})


def base_ideals(S):
    return closed_sets(range(S.order), lambda a, b: S.add[a][b], range(S.order), lambda s, a: S.mul[s][a])


def module_subs(M):
    return closed_sets(range(M.order), lambda a, b: M.add[a][b], range(M.base.order), lambda s, a: M.action[s][a])


AXIOMS = (
    "additive-commutativity", "additive-associativity", "additive-identity", "one-nonzero",
    "multiplicative-identity", "multiplicative-associativity", "zero-absorption",
    "left-distributivity", "right-distributivity", "multiplicative-commutativity",
)


def axiom_holds(axiom, add, mul, one):
    """Direct check of one named semiring axiom."""
    n = len(add)
    r = range(n)
    checks = {
        "additive-commutativity": lambda: all(add[a][b] == add[b][a] for a in r for b in r),
        "additive-associativity": lambda: all(add[add[a][b]][c] == add[a][add[b][c]] for a in r for b in r for c in r),
        "additive-identity": lambda: all(add[0][a] == a == add[a][0] for a in r),
        "one-nonzero": lambda: one != 0,
        "multiplicative-identity": lambda: all(mul[one][a] == a == mul[a][one] for a in r),
        "multiplicative-associativity": lambda: all(mul[mul[a][b]][c] == mul[a][mul[b][c]] for a in r for b in r for c in r),
        "zero-absorption": lambda: all(mul[0][a] == 0 == mul[a][0] for a in r),
        "left-distributivity": lambda: all(mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]] for a in r for b in r for c in r),
        "right-distributivity": lambda: all(mul[add[b][c]][a] == add[mul[b][a]][mul[c][a]] for a in r for b in r for c in r),
        "multiplicative-commutativity": lambda: all(mul[a][b] == mul[b][a] for a in r for b in r),
    }
    return checks[axiom]()
