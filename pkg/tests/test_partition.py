import itertools
import random

import pytest

from mechpay import (
    EF,
    IC,
    PartitionPreconditionError,
    TrustPartition,
    build_graph,
    partition_payments,
    prune_graph,
    shift_graph,
    verify_payments,
)

from oracles import random_instance


def all_subsets(m):
    for r in range(m + 1):
        yield from itertools.combinations(range(m), r)


def test_partition_validation():
    with pytest.raises(ValueError):
        TrustPartition.of(3, [3])
    with pytest.raises(ValueError):
        TrustPartition.of(2, [-1])
    p = TrustPartition.of(3, [0, 2])
    assert p.untrusted == {1}


def test_prune_counts_claim3(claim3_graph):
    # Each agent receives 2 EF arcs per profile (4 profiles) and agents
    # 1 and 2 each own 4 IC arcs; agent 3 has a single type and none.
    ic_owned = {0: 4, 1: 4, 2: 0}
    for trusted in all_subsets(3):
        part = TrustPartition.of(3, trusted)
        pruned = prune_graph(claim3_graph, part)
        assert pruned.num_ef_arcs == 8 * len(trusted)
        assert pruned.num_ic_arcs == sum(
            ic_owned[a] for a in part.untrusted
        )
        assert pruned.vertex_count == claim3_graph.vertex_count


def test_prune_extremes(claim3_graph):
    every = prune_graph(claim3_graph, TrustPartition.of(3, range(3)))
    assert every.num_ef_arcs == claim3_graph.num_ef_arcs
    assert every.num_ic_arcs == 0
    none = prune_graph(claim3_graph, TrustPartition.of(3, []))
    assert none.num_ef_arcs == 0
    assert none.num_ic_arcs == claim3_graph.num_ic_arcs


def test_pruned_arcs_point_at_their_side(claim3_graph):
    part = TrustPartition.of(3, [1])
    pruned = prune_graph(claim3_graph, part)
    original = {(a.tail, a.head): a.weight for a in claim3_graph.arcs}
    for a in pruned.arcs:
        if a.kind == EF:
            assert a.head.agent in part.trusted
        else:
            assert a.head.agent in part.untrusted
        assert original[(a.tail, a.head)] == a.weight


def test_prune_rejects_shifted_graph(claim3_graph):
    with pytest.raises(ValueError):
        prune_graph(shift_graph(claim3_graph, 0.1, 0.0), TrustPartition.of(3, [0]))


def test_prune_rejects_agent_count_mismatch(claim3_graph):
    with pytest.raises(ValueError):
        prune_graph(claim3_graph, TrustPartition.of(2, [0]))


def test_claim3_every_split_works(claim3):
    # The instance has no joint payments, yet every one of the eight
    # trusted subsets admits payments for its surviving constraints.
    for trusted in all_subsets(3):
        table, report = partition_payments(claim3, TrustPartition.of(3, trusted))
        assert report.surviving.max_ef_violation <= claim3.tolerance
        assert report.surviving.max_ic_violation <= claim3.tolerance
        # joint infeasibility must show up in the full audit instead
        full = report.full
        assert max(full.max_ef_violation, full.max_ic_violation) > claim3.tolerance
        assert len(table.payments) == 12


def test_precondition_pure_ef(claim1):
    with pytest.raises(PartitionPreconditionError) as e:
        partition_payments(claim1, TrustPartition.of(2, [0]))
    assert e.value.kind == EF
    assert e.value.witness.n_ic == 0


def test_precondition_pure_ic(claim2):
    with pytest.raises(PartitionPreconditionError) as e:
        partition_payments(claim2, TrustPartition.of(2, []))
    assert e.value.kind == IC
    assert e.value.witness.n_ef == 0


def test_feasible_instance_any_split(fig1):
    for trusted in all_subsets(fig1.num_agents):
        table, report = partition_payments(fig1, TrustPartition.of(3, trusted))
        assert report.surviving.max_ef_violation <= fig1.tolerance
        assert report.surviving.max_ic_violation <= fig1.tolerance


def test_report_json_shape(claim3):
    _, report = partition_payments(claim3, TrustPartition.of(3, [0, 2]))
    doc = report.to_json_dict()
    assert doc["trusted"] == [1, 3]
    assert set(doc) == {"trusted", "surviving_violations", "all_arc_violations"}
    assert doc["surviving_violations"]["envy_free"] is True
    assert doc["surviving_violations"]["incentive_compatible"] is True


def test_random_eligible_instances():
    # Precondition holds iff neither pure class has a negative cycle;
    # whenever it does, every split must come back clean on the
    # surviving side.
    rng = random.Random(43)
    eligible = 0
    for _ in range(150):
        inst = random_instance(rng, m_max=3, types_max=2, bundles_max=3)
        g = build_graph(inst)
        part = TrustPartition.of(
            inst.num_agents,
            [a for a in range(inst.num_agents) if rng.random() < 0.5],
        )
        try:
            table, report = partition_payments(inst, part)
        except PartitionPreconditionError:
            continue
        eligible += 1
        assert report.surviving.max_ef_violation <= inst.tolerance
        assert report.surviving.max_ic_violation <= inst.tolerance
        # the full audit of the same table must agree with verify_payments
        fresh = verify_payments(inst, table)
        assert fresh.max_ef_violation == report.full.max_ef_violation
        assert fresh.max_ic_violation == report.full.max_ic_violation
    assert eligible > 40
