import pytest

from broomlab.graphs import Graph
from broomlab.oracles import find_core_oracle
from broomlab.structures import (
    CoreWitness,
    Params,
    ThetaTable,
    check_conditions,
    find_core,
    is_dense_to,
    is_eta_mixed,
    is_matching_covered,
    max_matching_covered_chi,
    verify_core,
)


def test_find_core_examples(c4, c5, k5):
    core = find_core(c4, 2, 2)
    assert core is not None and set(core.parts) == {
        frozenset({0, 2}),
        frozenset({1, 3}),
    }
    assert find_core(c5, 2, 2) is None
    assert find_core_oracle(c5, 2, 2) is None
    small = find_core(k5, 1, 3)
    assert small is not None and verify_core(k5, small, 1, 3)


def test_find_core_oracle_200():
    from broomlab.suites import suite_core

    result = suite_core(trials=200, seed=13)
    assert result.ok, result.failures[:3]


def test_dense_and_mixed(c4):
    core = CoreWitness((frozenset({0, 2}), frozenset({1, 3})))
    apex = Graph(5, list(c4.edges()) + [(4, 0), (4, 1), (4, 2), (4, 3)])
    assert is_dense_to(apex, 4, core, 1)
    assert not is_eta_mixed(apex, 4, core, 1, 1)  # dense, so not mixed
    lonely = Graph(5, list(c4.edges()))
    assert not is_dense_to(lonely, 4, core, 1)
    assert not is_eta_mixed(lonely, 4, core, 1, 1)
    one_part = Graph(5, list(c4.edges()) + [(4, 0), (4, 2)])
    assert is_eta_mixed(one_part, 4, core, 2, 1)
    assert is_eta_mixed(one_part, 0, core, 2, 1)  # core members are mixed
    with pytest.raises(ValueError):
        is_dense_to(one_part, 0, core, 1)
    two_each = Graph(5, list(c4.edges()) + [(4, 0), (4, 1)])
    assert not is_dense_to(two_each, 4, core, 2)  # alpha=2 needs two per part


def test_matching_covered_examples():
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    res = is_matching_covered(star, frozenset({0}))
    assert res.ok and res.witnesses[0] == 1
    res = is_matching_covered(star, frozenset({1, 2}))
    assert not res.ok
    p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    res = is_matching_covered(p4, frozenset({1, 2}))
    assert res.ok and res.witnesses == {1: 0, 2: 3}
    assert is_matching_covered(p4, frozenset()).ok


def test_max_matching_covered_chi_examples(k4):
    edgeless = Graph(5)
    verdict = max_matching_covered_chi(edgeless, 1)
    assert verdict.status == "pass_exhaustive"
    # A shared edge with private pendants: both ends form a matching-
    # covered set of chromatic number two.
    g = Graph(4, [(0, 1), (0, 2), (1, 3)])
    verdict = max_matching_covered_chi(g, 1)
    assert verdict.status == "violation"
    assert verdict.violating_set == frozenset({0, 1})
    assert verdict.violating_chi == 2
    # Complete graphs only carry singleton matching-covered sets.
    assert max_matching_covered_chi(k4, 1).status == "pass_exhaustive"


def test_max_matching_covered_sampling():
    big = Graph(20, [(i, i + 1) for i in range(19)])
    with pytest.raises(ValueError):
        max_matching_covered_chi(big, 1)
    verdict = max_matching_covered_chi(big, 2, sample_budget=200, seed=3)
    assert verdict.status == "pass_sampled"


def test_theta_table():
    t = ThetaTable((0, 1, 2, 5))
    assert t(0) == 0 and t(3) == 5 and t(10) == 5
    with pytest.raises(ValueError):
        ThetaTable((2, 1))
    with pytest.raises(ValueError):
        ThetaTable(())
    with pytest.raises(ValueError):
        t(-1)


def test_params_validation():
    with pytest.raises(ValueError):
        Params(delta=0)
    with pytest.raises(ValueError):
        Params(beta=1)
    with pytest.raises(ValueError):
        Params(alpha=0)
    p = Params.with_minimal_sides(delta=2, tau=1, alpha=1, beta=2)
    assert p.eta == 2 and p.zeta == 4


def test_check_conditions_petersen(pet):
    p = Params(delta=1, tau=3, alpha=1, beta=2, zeta=2, eta=1,
               theta=ThetaTable((3, 3, 3)))
    rep = check_conditions(pet, p)
    assert rep.t_free
    assert rep.chi2 == 3 and rep.chi2_ok
    assert rep.matching_covered.status == "pass_exhaustive"
    assert rep.no_forbidden_core  # triangle-free
    assert rep.all_ok


def test_check_conditions_k4(k4):
    p = Params(delta=1, tau=3, alpha=1, beta=2, zeta=2, eta=1,
               theta=ThetaTable((6, 6)))
    rep = check_conditions(k4, p)
    assert not rep.no_forbidden_core  # K4 houses a (1,3)-core
    assert not rep.all_ok


def test_check_conditions_null():
    p = Params(delta=1, tau=0, alpha=1, beta=2, zeta=2, eta=1)
    rep = check_conditions(Graph(0), p)
    assert rep.all_ok


def test_core_threshold_condition(c4):
    # chi(C4) = 2 > theta(1) = 1 forces an (1,2)-core to exist; it does.
    p = Params(delta=1, tau=2, alpha=1, beta=2, zeta=2, eta=1,
               theta=ThetaTable((1, 1, 1)))
    rep = check_conditions(c4, p)
    assert rep.core_threshold_ok
    # Edgeless graph with chi=1 > theta(a)=0 has no (a,2)-core at all.
    p0 = Params(delta=1, tau=2, alpha=1, beta=2, zeta=2, eta=1,
                theta=ThetaTable((0, 0)))
    rep = check_conditions(Graph(3), p0)
    assert not rep.core_threshold_ok
