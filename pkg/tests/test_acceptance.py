"""Acceptance gate: one test per contractual criterion, each printing a
pass/fail line.  Trial counts, tolerances, and runtime caps are pinned
here and nowhere else."""

import json
import time

from broomlab.constants import ledger, reevaluate
from broomlab.generators import FIXTURES, groetzsch, petersen
from broomlab.oracles import contains_induced_oracle
from broomlab.solvers import chi_local, chromatic_number, clique_number
from broomlab.structures import (
    CoreWitness,
    Params,
    ThetaTable,
    check_conditions,
)
from broomlab.suites import (
    suite_containment,
    suite_digraph,
    suite_pipeline,
    suite_private_cover,
    suite_stable_removal,
)
from broomlab.templates import (
    Template,
    TemplateArray,
    bound_audit,
    clean1,
    extract_T_delta_witness,
    extract_template_array,
)
from broomlab.trees import build_T, contains_induced, verify_embedding
from broomlab.generators import cycle, complete_multipartite


def report(number: int, description: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[criterion {number:2d}] {status} - {description}{suffix}")
    assert ok, f"criterion {number}: {description}{suffix}"


def test_criterion_1_containment_oracle():
    result = suite_containment(trials=500, seed=2024)
    ok = result.ok and result.elapsed < 60.0
    report(
        1,
        "induced-containment matcher agrees with naive enumeration 500/500",
        ok,
        f"{500 - len(result.failures)}/500 in {result.elapsed:.1f}s",
    )


def test_criterion_2_named_graph_exactness():
    checks = []
    timings = []
    cases = [
        ("chi(C5)", lambda: chromatic_number(cycle(5))[0], 3),
        ("chi(K33)", lambda: chromatic_number(complete_multipartite([3, 3]))[0], 2),
        ("chi(Petersen)", lambda: chromatic_number(petersen())[0], 3),
        ("chi(Mycielski C5)", lambda: chromatic_number(groetzsch())[0], 4),
        ("omega(Petersen)", lambda: clique_number(petersen())[0], 2),
    ]
    for name, fn, want in cases:
        start = time.perf_counter()
        got = fn()
        took = time.perf_counter() - start
        timings.append(took)
        checks.append((name, got == want and took < 1.0, got, took))
    chi2 = chi_local(cycle(5), 2)
    checks.append(("chi2(C5)", chi2 == 3, chi2, 0.0))
    ok = all(c[1] for c in checks)
    detail = ", ".join(f"{c[0]}={c[2]}" for c in checks)
    report(2, "named-graph exactness under one second each", ok, detail)


def test_criterion_3_t1_sanity():
    pet = petersen()
    c7 = cycle(7)
    t1 = build_T(1)
    pet_free = contains_induced(pet, t1) is None
    c7_free = contains_induced(c7, t1) is None
    pet_naive = not contains_induced_oracle(pet, t1.tree)
    c7_naive = not contains_induced_oracle(c7, t1.tree)
    ok = pet_free and pet_naive and (not c7_free) and (not c7_naive)
    report(
        3,
        "T(1) sanity on Petersen and C7, cross-checked by the naive enumerator",
        ok,
        f"petersen_free={pet_free}/{pet_naive}, c7_free={c7_free}/{c7_naive}",
    )


def test_criterion_4_digraph_suite():
    result = suite_digraph(trials=300, seed=77)
    ok = result.ok and result.elapsed < 30.0
    report(
        4,
        "bounded-outdegree colouring: 300 general + 300 acyclic digraphs",
        ok,
        f"{result.trials - len(result.failures)}/{result.trials} in {result.elapsed:.1f}s",
    )


def test_criterion_5_private_cover_suite():
    result = suite_private_cover(trials=300, seed=123)
    report(
        5,
        "private-cover construction: 300 covered instances, all bullets verified",
        result.ok,
        f"{result.trials - len(result.failures)}/{result.trials}",
    )


def test_criterion_6_stable_removal_suite():
    result = suite_stable_removal(trials=200, seed=321)
    report(
        6,
        "stable-removal witness: 200 hypothesis-satisfying instances",
        result.ok,
        f"{result.trials - len(result.failures)}/{result.trials}",
    )


def test_criterion_7_pipeline_validity():
    result = suite_pipeline(instances=100, seed=11)
    ok = result.ok and result.elapsed < 300.0
    report(
        7,
        "pipeline validity on 100 generated instances, leftover core-free",
        ok,
        f"{result.trials - len(result.failures)}/{result.trials} in {result.elapsed:.1f}s",
    )


FIXTURE_PLAN = [
    ("c4", dict(delta=1, tau=3), (3, 3, 3, 3)),
    ("c4_pendant_path", dict(delta=1, tau=3), (3, 3, 3, 3)),
    ("c4_double_pendant", dict(delta=1, tau=3), (3, 3, 3, 3)),
    ("c4_z_vertex", dict(delta=1, tau=3), (3, 3, 3, 3)),
    ("kp22_pair", dict(delta=1, tau=3), (3, 3, 3, 3)),
    ("k33", dict(delta=1, tau=3), (3, 3, 3, 3)),
    ("k23", dict(delta=1, tau=3), (3, 3, 3, 3)),
    ("c5", dict(delta=1, tau=3), (3, 3, 3, 3)),
    ("c6", dict(delta=1, tau=3), (3, 3, 3, 3)),
    ("petersen", dict(delta=1, tau=3), (3, 3, 3, 3)),
    ("c4_isolated", dict(delta=1, tau=3), (3, 3, 3, 3)),
    ("k44_z_pendant", dict(delta=2, tau=2, zeta=4, eta=2), (2, 2, 2)),
]


def test_criterion_8_bound_audit_on_verified_fixtures():
    failures = []
    for fid, overrides, theta in FIXTURE_PLAN:
        g = FIXTURES[fid]()
        assert g.n <= 20
        kw = dict(delta=1, tau=1, alpha=1, beta=2, zeta=2, eta=1)
        kw.update(overrides)
        kw["theta"] = ThetaTable(theta)
        p = Params(**kw)
        conditions = check_conditions(g, p, exhaustive_limit=16)
        if not conditions.all_ok:
            failures.append(f"{fid}: host conditions fail")
            continue
        if conditions.matching_covered.status != "pass_exhaustive":
            failures.append(f"{fid}: matching-covered scan not exhaustive")
            continue
        arr, _ = extract_template_array(g, p)
        arr1, _ = clean1(arr)
        audit = bound_audit(arr1)
        for rule in ("core_contacts", "template_contacts", "dense_count"):
            if audit.checks[rule].status != "pass":
                failures.append(
                    f"{fid}: {rule} -> {audit.checks[rule].status}"
                )
    ok = not failures and len(FIXTURE_PLAN) >= 10
    report(
        8,
        f"bound audit clean on {len(FIXTURE_PLAN)} condition-verified fixtures",
        ok,
        "; ".join(failures) if failures else f"{len(FIXTURE_PLAN)} fixtures",
    )


def test_criterion_9_witness_extraction():
    g = FIXTURES["many_y_violation"]()
    p = Params(delta=1, tau=1, alpha=2, beta=2, zeta=3, eta=2)
    templates = []
    for c in range(3):
        base = 6 * c
        core = CoreWitness(
            (
                frozenset(range(base, base + 3)),
                frozenset(range(base + 3, base + 6)),
            )
        )
        templates.append(Template(core=core, h=core.vertices()))
    arr = TemplateArray(
        graph=g,
        templates=tuple(templates),
        u=frozenset({18}),
        params=p,
        cleanliness="clean1",
    )
    audit = bound_audit(arr)
    violations = audit.checks["core_contacts"].violations
    ok = bool(violations)
    result = None
    if ok:
        result = extract_T_delta_witness(arr, violations[0])
        ok = (
            result.found
            and verify_embedding(g, result.pattern, result.embedding)
            and result.pattern.tree.n == build_T(1).tree.n
        )
    report(
        9,
        "contact-violation replay yields a re-verified induced T(1)",
        ok,
        f"mapping={dict(result.embedding.pairs) if result and result.found else None}",
    )


GRID_HAND_VALUES = {
    "gamma": 9,
    "epsilon": 27,
    "partial_clean2.d": 0,
    "strong_contacts.s3": 2,
    "strong_contacts.s2": 74,
    "strong_contacts.s1": 83,
    "strong_contacts.s": 498,
}


def test_criterion_10_constants_ledger():
    failures = []
    for delta in (1, 2):
        for tau in (0, 1, 2):
            for beta in (2, 3):
                p = Params.with_minimal_sides(delta=delta, tau=tau, beta=beta)
                lg = ledger(p)
                again = reevaluate(lg)
                for e in lg.entries:
                    if again[e.key] != e.value:
                        failures.append(
                            f"delta={delta} tau={tau} beta={beta}: {e.key}"
                        )
    hand = ledger(Params(delta=1, tau=1, alpha=1, beta=2, zeta=3, eta=1))
    for key, want in GRID_HAND_VALUES.items():
        if hand.value(key) != want:
            failures.append(f"hand value {key}: {hand.value(key)} != {want}")
    report(
        10,
        "ledger matches an independent evaluator on the 12-point grid "
        "plus hand values",
        not failures,
        "; ".join(failures) if failures else "12 grid points, 7 hand values",
    )


def test_criterion_11_cli_determinism(tmp_path):
    from broomlab.cli import main

    outputs = []
    for round_name in ("one", "two"):
        base = tmp_path / round_name
        base.mkdir()
        graph_file = base / "g.edges"
        assert main([
            "gen", "--family", "erdos_renyi", "--params",
            '{"n": 16, "p": 0.25}', "--seed", "9", "--out", str(graph_file),
        ]) == 0
        analyze_file = base / "report.json"
        assert main([
            "analyze", "--graph", str(graph_file), "--delta", "1",
            "--out", str(analyze_file),
        ]) == 0
        ledger_file = base / "ledger.json"
        assert main([
            "constants", "--delta", "1", "--tau", "2", "--beta", "2",
            "--out", str(ledger_file),
        ]) == 0
        suite_file = base / "suite.json"
        assert main([
            "lemma-check", "--suite", "core", "--trials", "25",
            "--seed", "4", "--out", str(suite_file),
        ]) == 0
        pipeline_file = base / "trace.json"
        assert main([
            "pipeline", "--graph", str(graph_file), "--out", str(pipeline_file),
        ]) == 0
        outputs.append(
            [
                graph_file.read_bytes(),
                _scrub(analyze_file),
                ledger_file.read_bytes(),
                suite_file.read_bytes(),
                _scrub(pipeline_file),
            ]
        )
    ok = outputs[0] == outputs[1]
    report(11, "repeated CLI runs produce byte-identical outputs", ok)


def _scrub(path):
    # The reports embed the input path; normalize it before comparing.
    payload = json.loads(path.read_text())
    payload.get("instance", {}).pop("graph", None)
    return json.dumps(payload, sort_keys=True)
