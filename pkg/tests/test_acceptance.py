"""Acceptance criteria, one test per criterion.

Each test prints a PASS/FAIL line, and the lines are repeated in the pytest
terminal summary. Time budgets are measured with ``perf_counter`` around the
whole criterion.
"""
import json
import time
from contextlib import contextmanager

import pytest

from acceptance_log import LINES
from oracles import (
    axiom_holds,
    base_ideals,
    classes_by_closure,
    is_semiring_tables,
    module_ideal_product,
    span,
)
from semiring_lab import cli
from semiring_lab.core import FiniteSemiring, mc_elements, units, validate_semiring
from semiring_lab.enumeration import enumerate_semirings
from semiring_lab.errors import AxiomViolation
from semiring_lab.fileformat import format_structure, parse_structures
from semiring_lab.harness import ANTI_VACUITY, check_all, registry
from semiring_lab.ideals import all_ideals, ideals_by_closure, ideals_by_scan, maximal_ideals, prime_ideals
from semiring_lab.localization import is_invertible_ideal, localize_at_prime
from semiring_lab.semimodule import (
    FiniteSemimodule,
    all_subsemimodules,
    ideal_as_module,
    ideal_times_module,
    is_multiplication,
    module_over_itself,
    multiplication_witness,
    residual,
    subsemimodules_by_closure,
    subsemimodules_by_scan,
    validate_semimodule,
)


@contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title} ({elapsed:.2f}s of {budget}s)"
        LINES.append(line)
        print(line)


def _modules_over(corpus, S):
    return [module_over_itself(S)] + [M for M in corpus.semimodules if M.base is S]


# -- criterion 1 -----------------------------------------------------------------

BOOL2 = (((0, 1), (1, 1)), ((0, 0), (0, 1)), 1)
CHAIN3 = (((0, 1, 2), (1, 1, 2), (2, 2, 2)), ((0, 0, 0), (0, 1, 1), (0, 1, 2)), 2)
ADD4 = ((0, 1, 2, 3), (1, 1, 1, 1), (2, 1, 2, 2), (3, 1, 2, 3))
E4_8 = (ADD4, ((0, 0, 0, 0), (0, 1, 2, 3), (0, 2, 2, 3), (0, 3, 3, 3)), 1)
E4_6 = (ADD4, ((0, 0, 0, 0), (0, 1, 2, 3), (0, 2, 2, 0), (0, 3, 0, 0)), 1)

# (base, table, row, col, new value, expected axiom); table "one" replaces the identity
MUTATIONS = [
    (BOOL2, "add", 0, 1, 0, "additive-commutativity"),
    (CHAIN3, "add", 0, 0, 2, "additive-associativity"),
    (BOOL2, "add", 0, 0, 1, "additive-identity"),
    (BOOL2, "one", None, None, 0, "one-nonzero"),
    (BOOL2, "mul", 0, 1, 1, "multiplicative-identity"),
    (CHAIN3, "mul", 0, 0, 2, "multiplicative-associativity"),
    (BOOL2, "mul", 0, 0, 1, "zero-absorption"),
    (CHAIN3, "add", 1, 1, 0, "left-distributivity"),
    (E4_8, "mul", 2, 3, 2, "right-distributivity"),
    (E4_6, "mul", 2, 3, 3, "multiplicative-commutativity"),
]


def _mutate(base, table, row, col, value):
    add, mul, one = [list(map(list, t)) for t in base[:2]] + [base[2]]
    if table == "one":
        one = value
    else:
        (add if table == "add" else mul)[row][col] = value
    return add, mul, one


def test_criterion_1_validation(corpus):
    with criterion(1, "corpus validates; each axiom mutation is rejected by name", 1.0):
        for base in (BOOL2, CHAIN3, E4_8, E4_6):
            assert is_semiring_tables(*base)
        for X in corpus.structures:
            if isinstance(X, FiniteSemiring):
                validate_semiring(X.add, X.mul, X.one, X.name)
            else:
                validate_semimodule(X.base, X.add, X.action, X.name)
        seen = set()
        for base, table, row, col, value, axiom in MUTATIONS:
            add, mul, one = _mutate(base, table, row, col, value)
            assert not axiom_holds(axiom, add, mul, one)
            with pytest.raises(AxiomViolation) as info:
                validate_semiring(add, mul, one, "mutant")
            assert info.value.axiom == axiom
            seen.add(axiom)
        assert len(seen) == 10


# -- criterion 2 -----------------------------------------------------------------


def test_criterion_2_closure_equals_scan(corpus):
    with criterion(2, "closure enumeration equals subset scan", 10.0):
        for S in corpus.semirings:
            assert S.order <= 16
            assert {h.bits for h in ideals_by_scan(S)} == {h.bits for h in ideals_by_closure(S)}
        for M in corpus.semimodules:
            assert M.order <= 16
            assert {h.bits for h in subsemimodules_by_scan(M)} == {h.bits for h in subsemimodules_by_closure(M)}


# -- criterion 3 -----------------------------------------------------------------


def test_criterion_3_residual_criterion(corpus):
    with criterion(3, "N = (N:M)M agrees with the ideal-scan oracle", 10.0):
        for M in corpus.semimodules:
            products = {module_ideal_product(M, I) for I in base_ideals(M.base)}
            for N in all_subsemimodules(M):
                lib = ideal_times_module(residual(N, M.full, M), M) == N
                assert lib == (frozenset(N) in products), (M.name, N)
            assert is_multiplication(M) == all(frozenset(N) in products for N in all_subsemimodules(M))
        bool2sq = corpus.get("bool2sq")
        assert not is_multiplication(bool2sq)
        assert set(multiplication_witness(bool2sq)) == {0, 1}  # B x 0
        for S in corpus.semirings:
            assert is_multiplication(module_over_itself(S)), S.name


# -- criterion 4 -----------------------------------------------------------------


def _localized_classes(X, p):
    S = X if isinstance(X, FiniteSemiring) else X.base
    act = S.mul if X is S else X.action
    ts = [s for s in range(S.order) if s not in p]
    pairs = [(x, t) for x in range(X.order) for t in ts]

    def related(a, b):
        (m, t), (m2, t2) = a, b
        return any(act[S.mul[s][t]][m2] == act[S.mul[s][t2]][m] for s in ts)

    return classes_by_closure(pairs, related)


def test_criterion_4_localization(corpus):
    with criterion(4, "localization orders, well-definedness, product identity, local-global", 30.0):
        z6 = corpus.get("z6")
        two, three = z6.subset({0, 2, 4}), z6.subset({0, 3})
        assert len(_localized_classes(z6, set(two))) == 2
        assert len(_localized_classes(z6, set(three))) == 3
        assert localize_at_prime(z6, two).order == 2
        assert localize_at_prime(z6, three).order == 3

        for S in corpus.semirings:
            primes = prime_ideals(S)
            for p in primes:
                loc = localize_at_prime(S, p)
                oracle = _localized_classes(S, set(p))
                assert sorted(map(sorted, oracle)) == sorted(sorted(c) for c in loc.classes)
                loc.as_semiring()
            ideals = all_ideals(S)
            maximals = maximal_ideals(S)
            for M in _modules_over(corpus, S):
                subs = all_subsemimodules(M)
                for p in primes:
                    L = localize_at_prime(M, p)
                    oracle = _localized_classes(M, set(p))
                    assert sorted(map(sorted, oracle)) == sorted(sorted(c) for c in L.classes)
                    L.as_semimodule()
                    B = L.base
                    for I in ideals:
                        local_I = [c for c in range(B.order) if B.localize_bits(I.bits) >> c & 1]
                        lhs = span(lambda a, b: L.add[a][b], 0,
                                   {L.action[c][y] for c in local_I for y in range(L.order)})
                        rhs_bits = L.localize_bits(ideal_times_module(I, M).bits)
                        assert lhs == {c for c in range(L.order) if rhs_bits >> c & 1}, (M.name, list(p), list(I))
                locs = [localize_at_prime(M, m) for m in maximals]
                for N in subs:
                    for N2 in subs:
                        if all(L.localize_bits(N.bits) == L.localize_bits(N2.bits) for L in locs):
                            assert N == N2, (M.name, list(N), list(N2))


# -- criterion 5 -----------------------------------------------------------------


def test_criterion_5_registry_on_corpus(corpus):
    with criterion(5, "all registry entries pass or are vacuous, anti-vacuity quotas met", 120.0):
        reports = check_all(corpus.structures)
        assert len(reports) == len(registry()) == 21
        for r in reports:
            assert r.verdict in ("pass", "vacuous"), r.line()
        counts = {r.id: r.structures_checked for r in reports}
        for i in ANTI_VACUITY:
            assert counts[i] >= 3, (i, counts[i])


# -- criterion 6 -----------------------------------------------------------------


def test_criterion_6_exhaustive_search(capsys):
    with criterion(6, "search to order 3 exhausts every id; two semirings of order 2", 600.0):
        labelled = 0
        for cells in range(16 ** 2):
            digits = [(cells >> k) & 1 for k in range(8)]
            add = (tuple(digits[0:2]), tuple(digits[2:4]))
            mul = (tuple(digits[4:6]), tuple(digits[6:8]))
            labelled += is_semiring_tables(add, mul, 1)
        assert labelled == 2
        assert sum(1 for _ in enumerate_semirings(2, up_to_iso=True)) == 2
        for spec in registry():
            capsys.readouterr()
            code = cli.main(["search", "--theorem", spec.id, "--max-order", "3", "--format", "json"])
            doc = json.loads(capsys.readouterr().out)
            assert code == 0
            assert [t["verdict"] for t in doc["theorems"]] == ["exhausted"], spec.id


# -- criterion 7 -----------------------------------------------------------------


def test_criterion_7_invertible_ideals(corpus):
    with criterion(7, "invertible iff multiplication and meets MC(S)", 30.0):
        for S in corpus.semirings:
            mc = set(mc_elements(S))
            # every MC element of a corpus semiring is a unit, so Q(S) = S and
            # IJ = S forces I = S
            assert mc == set(units(S))
            for I in all_ideals(S):
                inv = is_invertible_ideal(S, I)
                assert inv == (len(I) == S.order), (S.name, list(I))
                criterion_rhs = is_multiplication(ideal_as_module(S, I)) and bool(mc & set(I))
                assert inv == criterion_rhs, (S.name, list(I))
        z6 = corpus.get("z6")
        two = z6.subset({0, 2, 4})
        assert is_multiplication(ideal_as_module(z6, two))
        assert not is_invertible_ideal(z6, two)


# -- criterion 8 -----------------------------------------------------------------


def test_criterion_8_round_trip_and_exit_codes(corpus, tmp_path, capsys):
    with criterion(8, "parse after print is the identity; exit codes 0/1/2", 10.0):
        bases = {S.name: S for S in corpus.semirings}
        for X in corpus.structures:
            (Y,) = parse_structures(format_structure(X), bases)
            assert type(Y) is type(X) and Y.name == X.name and Y.same_tables(X)
            if isinstance(X, FiniteSemimodule):
                assert Y.base is X.base

        bad = tmp_path / "bad.sr"
        bad.write_text("semiring broken\norder 2\none 1\nadd-table\n0 1\n1 1\nmul-table\n1 0\n0 1\nend\n")
        assert cli.main(["ideals", "z6"]) == 0
        assert cli.main(["validate", str(bad)]) == 1
        assert cli.main(["ideals", "no-such-structure"]) == 2
        capsys.readouterr()
