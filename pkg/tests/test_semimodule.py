import pytest
from hypothesis import given, settings, strategies as st

from oracles import base_ideals, module_ideal_product, module_subs, span
from semiring_lab.core import is_semidomain
from semiring_lab.enumeration import enumerate_semimodules, enumerate_semirings
from semiring_lab.errors import AxiomViolation, NotASubsemimodule, NotMaximal, PreconditionUnmet
from semiring_lab.ideals import all_ideals, maximal_ideals
from semiring_lab.semimodule import (
    all_subsemimodules,
    cyclic_generator,
    cyclic_subsemimodule,
    direct_sum,
    fixpoint_set,
    ideal_as_module,
    ideal_times_module,
    is_cancellative,
    is_faithful,
    is_mc_semimodule,
    is_multiplication,
    is_p_cyclic,
    is_torsionfree,
    module_over_itself,
    multiplication_witness,
    multiplication_witness_by_ideal_scan,
    p_cyclic_witness,
    relabel_semimodule,
    residual,
    submodule,
    t_p_set,
    theta,
    validate_semimodule,
)


def census_modules():
    out = []
    for S in list(enumerate_semirings(2, up_to_iso=True)) + list(enumerate_semirings(3, up_to_iso=True)):
        for m in (1, 2, 3):
            out.extend(enumerate_semimodules(S, m, up_to_iso=True))
    return out


CENSUS = census_modules()


def sets(handles):
    return {frozenset(h) for h in handles}


def all_modules(corpus):
    return list(corpus.semimodules) + CENSUS


def test_bool2_squared_has_seven_subsemimodules(get):
    M = get("bool2sq")
    expected = {frozenset(s) for s in ({0}, {0, 1}, {0, 2}, {0, 3}, {0, 1, 3}, {0, 2, 3}, {0, 1, 2, 3})}
    assert module_subs(M) == expected
    assert sets(all_subsemimodules(M)) == expected


def test_direct_sum_builds_bool2_squared(get):
    B = module_over_itself(get("bool2"))
    assert direct_sum(B, B).same_tables(get("bool2sq"))


def test_subsemimodules_match_oracle(corpus):
    for M in all_modules(corpus):
        assert sets(all_subsemimodules(M)) == module_subs(M), M.name


def test_bool2_squared_is_not_multiplication(get):
    M = get("bool2sq")
    first_factor = M.subset({0, 1})
    assert set(residual(first_factor, M.full, M)) == {0}
    assert set(ideal_times_module(residual(first_factor, M.full, M), M)) == {0}
    assert multiplication_witness(M) == first_factor
    assert multiplication_witness_by_ideal_scan(M) == first_factor
    assert is_mc_semimodule(M)
    assert set(theta(M)) == {0}


def test_residual_and_product_adjunction(corpus):
    for M in corpus.semimodules:
        S = M.base
        subs = all_subsemimodules(M)
        for N in subs:
            res = residual(N, M.full, M)
            assert set(res) == {s for s in range(S.order) if all(M.action[s][x] in N for x in range(M.order))}
            for I in all_ideals(S):
                IM = ideal_times_module(I, M)
                assert set(IM) == module_ideal_product(M, I)
                assert (IM <= N) == (I <= res)


def test_multiplication_oracles_agree(corpus):
    for M in all_modules(corpus):
        products = {module_ideal_product(M, I) for I in base_ideals(M.base)}
        expected = module_subs(M) <= products
        assert is_multiplication(M) == expected, M.name
        assert (multiplication_witness(M) is None) == (multiplication_witness_by_ideal_scan(M) is None)


def test_ideals_of_multiplicatively_idempotent_bases_are_multiplication(get):
    for name in ("bool2", "chain3"):
        S = get(name)
        for I in all_ideals(S):
            assert is_multiplication(ideal_as_module(S, I))


def test_t_p_and_p_cyclic(get):
    z4, z6 = get("z4"), get("z6")
    z4_self = module_over_itself(z4)
    assert set(t_p_set(z4_self, z4.subset({0, 2}))) == {0}

    z6_self = module_over_itself(z6)
    p = z6.subset({0, 2, 4})
    m, t, q = 3, 3, 4
    assert q in p and z6.add[t][q] == z6.one
    assert {z6.mul[t][x] for x in range(6)} <= set(cyclic_subsemimodule(z6_self, m))
    m, t, q = p_cyclic_witness(z6_self, p)
    assert q in p and z6.add[t][q] == z6.one
    assert {z6.mul[t][x] for x in range(6)} <= set(cyclic_subsemimodule(z6_self, m))
    assert is_p_cyclic(z6_self, z6.subset({0, 3}))
    with pytest.raises(NotMaximal):
        t_p_set(z6_self, z6.subset({0}))


def test_t_p_matches_definition(corpus):
    for M in all_modules(corpus):
        S = M.base
        for p in maximal_ideals(S):
            killers = {s for s in range(S.order) for q in p if S.add[s][q] == S.one}
            expected = {x for x in range(M.order) if any(M.action[s][x] == 0 for s in killers)}
            assert set(t_p_set(M, p)) == expected
            fix = fixpoint_set(M, p)
            assert set(fix.members) == {x for x in range(M.order) if any(M.action[q][x] == x for q in p)}
            assert fix.is_subsemimodule == (frozenset(fix.members) in module_subs(M))


def test_fixpoints_of_chain3(get):
    S = get("chain3")
    fix = fixpoint_set(module_over_itself(S), S.subset({0, 1}))
    assert set(fix.members) == {0, 1}
    assert fix.is_subsemimodule and fix.standing_hypotheses is False


def test_theta_is_sum_of_cyclic_residuals(corpus):
    for M in corpus.semimodules:
        S = M.base
        gens = set()
        for x in range(M.order):
            Sx = set(cyclic_subsemimodule(M, x))
            gens |= {s for s in range(S.order) if all(M.action[s][y] in Sx for y in range(M.order))}
        assert set(theta(M)) == span(lambda a, b: S.add[a][b], 0, gens)


def test_nonzero_mc_implies_faithful(corpus):
    for M in all_modules(corpus):
        if M.order == 1:
            # vacuously MC, and sM = {0} for every s
            assert is_mc_semimodule(M) and not is_faithful(M)
        elif is_mc_semimodule(M):
            assert is_faithful(M)


def test_predicates_against_definitions(corpus):
    for M in all_modules(corpus):
        S = M.base
        r, sr = range(M.order), range(S.order)
        assert is_cancellative(M) == all(
            b == c for a in r for b in r for c in r if M.add[a][b] == M.add[a][c])
        assert is_faithful(M) == all(s == 0 or any(M.action[s][x] != 0 for x in r) for s in sr)
        gen = cyclic_generator(M)
        if gen is not None:
            assert set(cyclic_subsemimodule(M, gen)) == set(r)
        else:
            assert all(len(cyclic_subsemimodule(M, x)) < M.order for x in r)


def test_torsionfree_needs_a_semidomain(get):
    z6 = get("z6")
    assert not is_semidomain(z6)
    with pytest.raises(PreconditionUnmet):
        is_torsionfree(module_over_itself(z6))
    assert is_torsionfree(module_over_itself(get("z5")))


def test_semimodule_axiom_violations(get):
    S = get("bool2")
    add = [[0, 1], [1, 1]]
    with pytest.raises(AxiomViolation) as info:
        validate_semimodule(S, add, [[0, 1], [0, 1]])
    assert info.value.axiom == "zero-action"
    with pytest.raises(AxiomViolation) as info:
        validate_semimodule(S, add, [[0, 0], [0, 0]])
    assert info.value.axiom == "unit-action"


def test_submodule_requires_closure(get):
    M = get("bool2sq")
    with pytest.raises(NotASubsemimodule):
        submodule(M, M.subset({0, 1, 2}))
    sub = submodule(M, M.subset({0, 1, 3}))
    assert sub.order == 3


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CENSUS).flatmap(
    lambda M: st.tuples(st.just(M), st.permutations(range(1, M.order)))))
def test_relabelling_preserves_module_predicates(case):
    M, rest = case
    perm = (0, *rest)
    N = relabel_semimodule(M, perm, M.name + "-relabelled")
    assert is_multiplication(M) == is_multiplication(N)
    assert is_mc_semimodule(M) == is_mc_semimodule(N)
    assert {frozenset(perm[x] for x in A) for A in all_subsemimodules(M)} == sets(all_subsemimodules(N))


def test_bool2_squared_edge_cases(get):
    M, B = get("bool2sq"), get("bool2")
    action = [list(row) for row in M.action]
    action[1][1] = 2  # 1·(1,0) = (0,1)
    with pytest.raises(AxiomViolation) as info:
        validate_semimodule(B, M.add, action)
    assert info.value.axiom == "unit-action"
    assert not is_p_cyclic(M, B.subset({0}))
