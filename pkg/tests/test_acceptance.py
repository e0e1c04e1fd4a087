"""Acceptance gate: one test per numbered criterion, in order.

``pytest tests/test_acceptance.py -v`` prints one PASS/FAIL line per
criterion; add ``-s`` to also see the measured numbers.  Criteria 3 and
4 share one seeded 200-instance corpus, so a failure there reproduces
byte-for-byte.
"""

import json
import random
import subprocess
import sys
import time

import pytest

from mechpay import (
    EF,
    IC,
    approx_payments,
    build_graph,
    classify,
    clarke_payments,
    compute_payments,
    cycle_monotonicity_check,
    find_negative_cycle,
    gen_example,
    local_efficiency_check,
    min_shift_one_sided,
    pareto_frontier,
    partition_payments,
    prune_graph,
    shift_graph,
    verify_payments,
)
from mechpay.fixtures import (
    single_item_candidates,
    single_item_loser_compensation_payments,
    single_item_min_vcg_payments,
)
from mechpay.partition import TrustPartition
from mechpay.payments import NegativeCycleError

from oracles import frontier_reference, random_instance, reverify

TOL = 1e-9


@pytest.fixture(scope="module")
def corpus():
    rng = random.Random(2024)
    return [
        random_instance(rng, m_max=3, types_max=3, bundles_max=4)
        for _ in range(200)
    ]


def _ok(n, detail):
    print(f"criterion {n}: PASS ({detail})")


# Arcs of the blocking eight-cycle; traversing the list back-to-front
# walks the cycle.  Entries are
# (kind, tail agent, tail profile, head agent, head profile), 0-based.
_CYCLE_PRINT_ORDER = [
    (EF, 1, (0, 0, 0), 0, (0, 0, 0)),
    (IC, 1, (0, 1, 0), 1, (0, 0, 0)),
    (EF, 0, (0, 1, 0), 1, (0, 1, 0)),
    (IC, 0, (1, 1, 0), 0, (0, 1, 0)),
    (EF, 1, (1, 1, 0), 0, (1, 1, 0)),
    (IC, 1, (1, 0, 0), 1, (1, 1, 0)),
    (EF, 0, (1, 0, 0), 1, (1, 0, 0)),
    (IC, 0, (0, 0, 0), 0, (1, 0, 0)),
]

_EXPECTED_WEIGHTS = (0.0, 0.0, 0.0, 0.1, 0.0, -0.2, 0.0, 0.0)


def test_criterion_1_eight_cycle_reproduction():
    t0 = time.perf_counter()
    inst = gen_example("claim3")  # defaults z1=(1,1), z2=(2,2), z3=0
    g = build_graph(inst)
    by_endpoints = {}
    for k in g.arc_indices("ALL"):
        by_endpoints[(g._tails[k], g._heads[k])] = k
    total = 0.0
    cycle_ids = set()
    for (kind, ta, tp, ha, hp), expected in zip(
        _CYCLE_PRINT_ORDER, _EXPECTED_WEIGHTS
    ):
        k = by_endpoints[(g.vertex_id(ta, tp), g.vertex_id(ha, hp))]
        assert g.arc_kind(k) == kind
        assert g.base_weight(k) == pytest.approx(expected, abs=TOL)
        total += g.base_weight(k)
        cycle_ids.add(k)
    assert total == pytest.approx(
        0.1 * (1.0 - 2.0), abs=TOL
    ), "cycle weight must match 0.1 * (z1[0] - z2[1])"
    # reading the list back-to-front must chain head-to-tail
    walk = list(reversed(_CYCLE_PRINT_ORDER))
    for (_, _, _, ha, hp), (_, ta, tp, _, _) in zip(walk, walk[1:] + walk[:1]):
        assert (ha, hp) == (ta, tp)
    # the detector finds exactly this cycle
    w = find_negative_cycle(g, "ALL")
    assert set(w.arc_indices) == cycle_ids
    assert w.total_weight == pytest.approx(-0.1, abs=TOL)
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    _ok(1, f"total {total:+.3f} in {elapsed:.3f}s")


def test_criterion_2_classification_matrix():
    expectations = [
        ("claim1", False, True, False),
        ("claim2", True, False, False),
        ("claim3", True, True, False),
        ("fig1", True, True, True),
    ]
    times = []
    for name, ef, ic, both in expectations:
        inst = gen_example(name)
        t0 = time.perf_counter()
        rep = classify(inst)
        times.append(time.perf_counter() - t0)
        assert times[-1] < 1.0, name
        assert rep.ef_implementable is ef, name
        assert rep.ic_implementable is ic, name
        assert rep.ef_and_ic_implementable is both, name
        for ok, witness in [
            (ef, rep.ef_witness),
            (ic, rep.ic_witness),
            (both, rep.ef_and_ic_witness),
        ]:
            if ok:
                assert witness is None, name
            else:
                reverify(inst, witness)
    _ok(2, f"4 instances, slowest {max(times):.3f}s")


def test_criterion_3_oracle_equivalence(corpus):
    t0 = time.perf_counter()
    assert len(corpus) >= 200
    ef_disagree = ic_disagree = 0
    for inst in corpus:
        g = build_graph(inst)
        if (find_negative_cycle(g, EF) is None) != local_efficiency_check(inst)[0]:
            ef_disagree += 1
        k_max = max(2, max(len(ts) for ts in inst.type_spaces))
        if (find_negative_cycle(g, IC) is None) != cycle_monotonicity_check(
            inst, k_max
        )[0]:
            ic_disagree += 1
    elapsed = time.perf_counter() - t0
    assert ef_disagree == 0 and ic_disagree == 0
    assert elapsed < 60.0
    _ok(3, f"{len(corpus)} instances, 0 disagreements, {elapsed:.1f}s")


def test_criterion_4_payment_soundness(corpus):
    feasible = 0
    for inst in corpus:
        g = build_graph(inst)
        try:
            table = compute_payments(g)
        except NegativeCycleError:
            continue
        feasible += 1
        rep = verify_payments(inst, table)
        assert rep.max_ef_violation <= TOL, inst
        assert rep.max_ic_violation <= TOL, inst
    assert feasible > 0
    _ok(4, f"{feasible}/{len(corpus)} feasible instances, all clean")


def test_criterion_5_payment_table_patterns():
    inst = gen_example("fig1")
    rows = {
        "truthful-but-envious": single_item_min_vcg_payments(inst),
        "envy-free-but-manipulable": single_item_loser_compensation_payments(
            inst
        ),
        "both": clarke_payments(inst, single_item_candidates(3)),
    }
    reports = {name: verify_payments(inst, t) for name, t in rows.items()}
    assert not reports["truthful-but-envious"].envy_free
    assert reports["truthful-but-envious"].incentive_compatible
    assert reports["envy-free-but-manipulable"].envy_free
    assert not reports["envy-free-but-manipulable"].incentive_compatible
    assert reports["both"].envy_free
    assert reports["both"].incentive_compatible
    _ok(
        5,
        "patterns (ic-not-ef, ef-not-ic, both) with violations "
        f"{reports['truthful-but-envious'].max_ef_violation:g} and "
        f"{reports['envy-free-but-manipulable'].max_ic_violation:g}",
    )


def test_criterion_6_tradeoff_contract():
    t0 = time.perf_counter()
    inst = gen_example("claim3")
    g = build_graph(inst)
    f = pareto_frontier(g)
    assert f.complete

    first, last = f.vertices[0], f.vertices[-1]
    assert first.c_ic == 0.0 and last.c_ef == 0.0
    assert first.c_ef == pytest.approx(min_shift_one_sided(g, EF), abs=1e-7)
    assert last.c_ic == pytest.approx(min_shift_one_sided(g, IC), abs=1e-7)

    for v, binding_axis in [(first, EF), (last, IC)]:
        shifted = shift_graph(g, v.c_ef, v.c_ic)
        assert find_negative_cycle(shifted, "ALL") is None
        step = (1e-5, 0.0) if binding_axis == EF else (0.0, 1e-5)
        worse = shift_graph(g, v.c_ef - step[0], v.c_ic - step[1])
        assert find_negative_cycle(worse, "ALL") is not None
        table = approx_payments(g, v.c_ef, v.c_ic)
        rep = verify_payments(inst, table)
        assert rep.max_ef_violation <= v.c_ef + 1e-7
        assert rep.max_ic_violation <= v.c_ic + 1e-7

    ref = frontier_reference(g)
    assert len(f.vertices) == len(ref)
    for got, (rx, ry) in zip(f.vertices, ref):
        assert got.c_ef == pytest.approx(float(rx), abs=1e-7)
        assert got.c_ic == pytest.approx(float(ry), abs=1e-7)
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    _ok(
        6,
        f"endpoints ({first.c_ef:.6g}, 0) and (0, {last.c_ic:.6g}), "
        f"{len(f.vertices)} vertices vs oracle, {elapsed:.2f}s",
    )


def test_criterion_7_partition_guarantee():
    inst = gen_example("claim3")
    g = build_graph(inst)
    for bits in range(8):
        trusted = [a for a in range(3) if bits >> a & 1]
        part = TrustPartition.of(3, trusted)
        assert find_negative_cycle(prune_graph(g, part), "ALL") is None
        _table, report = partition_payments(inst, part)
        assert report.surviving.max_ef_violation <= TOL, trusted
        assert report.surviving.max_ic_violation <= TOL, trusted
    _ok(7, "all 8 trusted subsets pruned clean and paid within 1e-9")


def _run_cli(args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "mechpay", *args],
        input=stdin,
        capture_output=True,
        timeout=60,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_criterion_8_cli_determinism(tmp_path):
    fixtures = {}
    for name in ("fig1", "claim1", "claim2", "claim3"):
        path = tmp_path / f"{name}.json"
        code, out, err = _run_cli(["gen-example", name])
        assert code == 0, err
        path.write_bytes(out)
        fixtures[name] = str(path)

    zeros = tmp_path / "zeros.json"

    def zero_table(name):
        inst = gen_example(name)
        rows = []
        for profile in inst.allocation.table:
            for agent in range(inst.num_agents):
                rows.append(
                    {
                        "agent": agent + 1,
                        "profile": list(profile),
                        "payment": 0.0,
                    }
                )
        zeros.write_text(json.dumps({"payments": rows}))

    runs = 0
    for name, path in fixtures.items():
        zero_table(name)
        commands = [
            ["gen-example", name],
            ["check", path],
            ["payments", path],
            ["payments", path, "--format", "csv"],
            ["frontier", path],
            ["frontier", path, "--format", "csv"],
            ["partition", path, "--trusted", "1"],
            ["verify", path, "--payments", str(zeros)],
        ]
        for cmd in commands:
            first = _run_cli(cmd)
            second = _run_cli(cmd)
            assert first == second, cmd
            runs += 1
    _ok(8, f"{runs} command pairs byte-identical (including failures)")
