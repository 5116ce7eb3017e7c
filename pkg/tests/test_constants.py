import json

import pytest

from broomlab.constants import (
    compose_phi,
    dense_bound_of,
    epsilon_of,
    gamma_of,
    ledger,
    phi_step,
    reevaluate,
)
from broomlab.structures import Params, ThetaTable


def spec_params():
    return Params(delta=1, tau=1, alpha=1, beta=2, zeta=3, eta=1)


def test_hand_values():
    lg = ledger(spec_params())
    assert lg.value("gamma") == 9
    assert lg.value("epsilon") == 27
    assert lg.value("partial_clean2.d") == 0
    assert lg.value("strong_contacts.s3") == 2
    assert lg.value("strong_contacts.s2") == 74
    assert lg.value("strong_contacts.s1") == 83
    assert lg.value("strong_contacts.s") == 498


def test_helper_values():
    p = spec_params()
    assert gamma_of(p) == 9
    assert epsilon_of(p) == 27
    assert dense_bound_of(p) == 1 * 1 * 2 ** 6


def test_reevaluation_matches():
    for p in (
        spec_params(),
        Params.with_minimal_sides(delta=2, tau=1, alpha=1, beta=2),
        Params.with_minimal_sides(delta=1, tau=0, alpha=1, beta=3),
    ):
        lg = ledger(p)
        again = reevaluate(lg)
        assert all(again[e.key] == e.value for e in lg.entries)


def test_tower_magnitude():
    # The tower entry is already over a hundred bits at tiny parameters,
    # which is exactly why the full pipeline never runs at true scale.
    p = Params(delta=1, tau=1, alpha=1, beta=2, zeta=4, eta=1)
    lg = ledger(p)
    assert lg.value("nested.t1").bit_length() > 100


def test_monotonicity():
    keys = None
    base = dict(delta=1, tau=1, alpha=1, beta=2, zeta=3, eta=1)
    axes = {
        "delta": [1, 2],
        "tau": [0, 1, 2],
        "beta": [2, 3],
        "zeta": [3, 4],
    }
    for axis, values in axes.items():
        previous = None
        for value in values:
            kw = dict(base)
            kw[axis] = value
            if axis == "delta":
                kw["eta"] = max(kw["eta"], value)
                kw["zeta"] = max(kw["zeta"], kw["eta"] + value)
            lg = ledger(Params(**kw))
            current = {e.key: e.value for e in lg.entries}
            keys = keys or set(current)
            if previous is not None:
                for key in keys:
                    assert current[key] >= previous[key], (axis, value, key)
            previous = current


def test_phi_step_examples():
    assert phi_step("partial_clean1", 2, t=1) == 6
    assert phi_step("clean1", 5, t=2, tau=3) == 11
    assert phi_step("partial_clean1", 0, t=0) == 0
    assert phi_step("clean1", 0, t=0, tau=5) == 0
    assert phi_step("extract", 4, theta_zeta=7) == 11
    assert phi_step("partial_clean2", 3, s=2) == 15
    assert phi_step("clean2", 1, t=4, beta=2) == 16
    assert phi_step("clean3", 2, delta=1, tau=2, ell=10) == 16
    with pytest.raises(ValueError):
        phi_step("unknown", 1)
    with pytest.raises(ValueError):
        phi_step("extract", -1, theta_zeta=0)


def test_phi_step_composes_with_inner():
    assert phi_step("partial_clean1", 2, psi=lambda x: x + 1, t=1) == 7


def test_compose_phi_order():
    p = Params(delta=1, tau=1, alpha=1, beta=2, zeta=2, eta=1,
               theta=ThetaTable((0, 1, 2)))
    lg = ledger(p)
    t = lg.value("dense_count.bound")
    s = lg.value("strong_contacts.s")
    d = lg.value("partial_clean2.d")
    ell = lg.value("u_high_degree.ell")
    t2 = (d + 1) * p.beta * p.zeta * p.tau
    c = 5
    expected = c + p.delta * p.tau**2 + ell
    expected = (expected + p.beta + 1) * t2
    expected = (2 * s + 1) * expected
    expected = expected + t * p.tau
    expected = (2 * t + 1) * expected
    expected = expected + p.theta(p.zeta)
    assert compose_phi(p, lg)(c) == expected
    assert compose_phi(p, lg)(c + 1) > expected


def test_serialization_decimal_strings():
    lg = ledger(spec_params())
    payload = lg.to_json_dict()
    by_key = {e["key"]: e for e in payload["entries"]}
    assert by_key["gamma"]["decimal"] == "9"
    assert by_key["strong_contacts.s"]["decimal"] == "498"
    text = json.dumps(payload)
    assert json.loads(text)["params"]["delta"] == 1


def test_serialization_truncates_huge_entries():
    lg = ledger(spec_params())
    payload = lg.to_json_dict(bits_cap=8)
    by_key = {e["key"]: e for e in payload["entries"]}
    assert by_key["strong_contacts.s"]["decimal"] is None
    assert by_key["strong_contacts.s"]["truncated"] is True
    assert by_key["strong_contacts.s"]["bit_length"] == 498 .bit_length()
