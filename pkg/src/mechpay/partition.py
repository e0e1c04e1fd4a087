"""Per-agent constraint selection for a trusted/untrusted split.

Trusted agents keep their envy constraints and drop their truthfulness
constraints; untrusted agents keep truthfulness and drop envy.  Pruning
removes exactly the arcs *entering* a dropped agent's vertices: IC arcs
into trusted agents, EF arcs into untrusted agents.

When the graph has no pure-EF and no pure-IC negative cycle, the pruned
graph has no negative cycle at all: every surviving EF arc ends at a
trusted vertex and every surviving IC arc ends at an untrusted one,
while EF arcs leave vertices of all agents of the same profile and IC
arcs stay within one agent, so a surviving cycle can never cross from a
trusted agent to an untrusted one and must be pure.  A negative cycle
after pruning under that precondition therefore indicates a bug and is
raised loudly instead of being reported as a result.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Iterable

from .cycles import WitnessCycle, find_negative_cycle
from .graph import EF, IC, ConstraintGraph, build_graph
from .model import Instance
from .payments import (
    PaymentTable,
    ViolationReport,
    compute_payments,
    verify_over_arcs,
)


class PartitionPreconditionError(Exception):
    """A pure negative cycle rules out the split ahead of pruning."""

    def __init__(self, kind: str, witness: WitnessCycle):
        super().__init__(
            f"pure {kind} negative cycle (total weight "
            f"{witness.total_weight!r}) blocks every trusted/untrusted split"
        )
        self.kind = kind
        self.witness = witness


class PrunedNegativeCycleError(RuntimeError):
    """The pruned graph kept a negative cycle despite the precondition."""

    def __init__(self, witness: WitnessCycle):
        super().__init__(
            "pruned graph unexpectedly contains a negative cycle; "
            "this contradicts the pruning argument and means a bug"
        )
        self.witness = witness


@dataclass(frozen=True)
class TrustPartition:
    """Subset of 0-based agent indices whose envy constraints are kept."""

    num_agents: int
    trusted: frozenset[int]

    def __post_init__(self):
        bad = [a for a in self.trusted if not 0 <= a < self.num_agents]
        if bad:
            raise ValueError(
                f"trusted agents {sorted(bad)} out of range for "
                f"{self.num_agents} agents"
            )

    @classmethod
    def of(cls, num_agents: int, trusted: Iterable[int]) -> "TrustPartition":
        return cls(num_agents=num_agents, trusted=frozenset(trusted))

    @property
    def untrusted(self) -> frozenset[int]:
        return frozenset(range(self.num_agents)) - self.trusted


def prune_graph(g: ConstraintGraph, part: TrustPartition) -> ConstraintGraph:
    """Keep EF arcs into trusted agents and IC arcs into untrusted ones.

    Requires an unshifted graph; the vertex set is unchanged.
    """
    if g.shift != (0.0, 0.0):
        raise ValueError("prune_graph requires an unshifted graph")
    if part.num_agents != g.num_agents:
        raise ValueError("partition and graph disagree on the agent count")

    tails = array("i")
    heads = array("i")
    kinds = array("b")
    weights = array("d")
    m = g.num_agents

    def keep(k: int) -> bool:
        head_agent = g._heads[k] % m
        if g.arc_kind(k) == EF:
            return head_agent in part.trusted
        return head_agent in part.untrusted

    n_ef = 0
    for k in g.arc_indices(EF):
        if keep(k):
            tails.append(g._tails[k])
            heads.append(g._heads[k])
            kinds.append(0)
            weights.append(g.base_weight(k))
            n_ef += 1
    for k in g.arc_indices(IC):
        if keep(k):
            tails.append(g._tails[k])
            heads.append(g._heads[k])
            kinds.append(1)
            weights.append(g.base_weight(k))

    return ConstraintGraph(
        num_agents=g.num_agents,
        profiles=g.profiles,
        tails=tails,
        heads=heads,
        kinds=kinds,
        base_weights=weights,
        n_ef=n_ef,
        tolerance=g.tolerance,
    )


@dataclass(frozen=True)
class PartitionReport:
    """Audit of partition payments at both scopes.

    ``surviving`` covers only the kept arcs and must be clean;
    ``full`` audits all constraints of the instance and is informational
    (the dropped constraints may legitimately be violated).
    """

    partition: TrustPartition
    surviving: ViolationReport
    full: ViolationReport

    def to_json_dict(self) -> dict:
        return {
            "trusted": sorted(a + 1 for a in self.partition.trusted),
            "surviving_violations": self.surviving.to_json_dict(),
            "all_arc_violations": self.full.to_json_dict(),
        }


def partition_payments(
    inst: Instance, part: TrustPartition
) -> tuple[PaymentTable, PartitionReport]:
    """Payments satisfying the kept constraints of the split.

    Precondition: the full graph has no pure-EF and no pure-IC negative
    cycle (mixed cycles are fine; pruning breaks them).
    """
    g = build_graph(inst)
    for kind in (EF, IC):
        pure = find_negative_cycle(g, kind)
        if pure is not None:
            raise PartitionPreconditionError(kind, pure)

    pruned = prune_graph(g, part)
    leftover = find_negative_cycle(pruned, "ALL")
    if leftover is not None:
        raise PrunedNegativeCycleError(leftover)

    table = compute_payments(pruned)
    report = PartitionReport(
        partition=part,
        surviving=verify_over_arcs(pruned.arcs, table, inst.tolerance),
        full=verify_over_arcs(g.arcs, table, inst.tolerance),
    )
    return table, report
