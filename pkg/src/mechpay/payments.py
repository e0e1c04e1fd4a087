"""Payment synthesis from shortest-path labels, and payment auditing.

When the constraint graph has no negative cycle, Bellman-Ford labels
from the virtual super source satisfy every arc constraint
``p[head] <= p[tail] + weight`` (up to half the tolerance, inherited
from the detector's per-arc nudge), so the label of each vertex is
directly a feasible payment.  No revenue objective is applied.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .cycles import WitnessCycle, _search
from .graph import EF, IC, Arc, ConstraintGraph, build_graph
from .model import Instance, Profile


class NegativeCycleError(Exception):
    """Payments were requested but a negative cycle forbids them."""

    def __init__(self, witness: WitnessCycle):
        super().__init__(
            f"no feasible payments: negative cycle of total weight "
            f"{witness.total_weight!r}"
        )
        self.witness = witness


class PaymentCoverageError(ValueError):
    """A payment table is missing a vertex required for verification."""


@dataclass(frozen=True)
class PaymentTable:
    """Payment per (agent, profile) vertex.  Keys use 0-based agents."""

    payments: Mapping[tuple[int, Profile], float]

    def get(self, agent: int, profile: Profile) -> float:
        return self.payments[(agent, profile)]

    def __len__(self) -> int:
        return len(self.payments)

    def _sorted_items(self):
        return sorted(self.payments.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def to_json_dict(self) -> dict:
        return {
            "payments": [
                {"agent": agent + 1, "profile": list(profile), "payment": pay}
                for (agent, profile), pay in self._sorted_items()
            ]
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        num_agents = max((a for (a, _p) in self.payments), default=0) + 1
        m = max((len(p) for (_a, p) in self.payments), default=num_agents)
        writer.writerow(["agent"] + [f"t{i}" for i in range(m)] + ["payment"])
        for (agent, profile), pay in self._sorted_items():
            writer.writerow([agent + 1, *profile, repr(pay)])
        return buf.getvalue()

    @classmethod
    def from_json_dict(cls, doc: dict) -> "PaymentTable":
        if not isinstance(doc, dict) or "payments" not in doc:
            raise ValueError("payment document must contain a 'payments' list")
        rows = doc["payments"]
        if not isinstance(rows, list):
            raise ValueError("'payments' must be a list")
        table: dict[tuple[int, Profile], float] = {}
        for row in rows:
            if not isinstance(row, dict) or not {
                "agent",
                "profile",
                "payment",
            } <= set(row):
                raise ValueError(
                    "payment rows need 'agent', 'profile' and 'payment'"
                )
            agent = row["agent"]
            if not isinstance(agent, int) or agent < 1:
                raise ValueError("'agent' must be a 1-based integer")
            profile = row["profile"]
            if not isinstance(profile, list):
                raise ValueError("'profile' must be a list of type indices")
            table[(agent - 1, tuple(profile))] = float(row["payment"])
        return cls(table)


def compute_payments(g: ConstraintGraph) -> PaymentTable:
    """Feasible payments for the graph at its current shift.

    Raises ``NegativeCycleError`` carrying a witness when none exist.
    """
    dist, witness = _search(g, "ALL")
    if witness is not None:
        raise NegativeCycleError(witness)
    table = {}
    for vid, d in enumerate(dist):
        v = g.vertex(vid)
        # d != 0.0 is false for -0.0, normalizing the sign of zero.
        table[(v.agent, v.profile)] = d if d != 0.0 else 0.0
    return PaymentTable(table)


@dataclass(frozen=True)
class ViolationReport:
    """Worst-case slack of a payment table against both arc classes.

    Violations are ``max(0, p[head] - p[tail] - weight)``; the worst arc
    of a class is recorded only when its maximum is strictly positive.
    """

    max_ef_violation: float
    max_ic_violation: float
    worst_ef_arc: Optional[Arc]
    worst_ic_arc: Optional[Arc]
    tolerance: float

    @property
    def envy_free(self) -> bool:
        return self.max_ef_violation <= self.tolerance

    @property
    def incentive_compatible(self) -> bool:
        return self.max_ic_violation <= self.tolerance

    def to_json_dict(self) -> dict:
        def arc(a: Optional[Arc]):
            if a is None:
                return None
            return {
                "kind": a.kind,
                "tail": {"agent": a.tail.agent + 1, "profile": list(a.tail.profile)},
                "head": {"agent": a.head.agent + 1, "profile": list(a.head.profile)},
                "weight": a.weight,
            }

        return {
            "max_ef_violation": self.max_ef_violation,
            "max_ic_violation": self.max_ic_violation,
            "envy_free": self.envy_free,
            "incentive_compatible": self.incentive_compatible,
            "worst_ef_arc": arc(self.worst_ef_arc),
            "worst_ic_arc": arc(self.worst_ic_arc),
        }


def verify_over_arcs(
    arcs: Iterable[Arc], table: PaymentTable, tolerance: float
) -> ViolationReport:
    """Audit a payment table against an explicit arc collection."""
    max_v = {EF: 0.0, IC: 0.0}
    worst: dict[str, Optional[Arc]] = {EF: None, IC: None}
    for a in arcs:
        try:
            p_head = table.get(a.head.agent, a.head.profile)
            p_tail = table.get(a.tail.agent, a.tail.profile)
        except KeyError as e:
            raise PaymentCoverageError(
                f"payment table missing vertex (agent {e.args[0][0] + 1}, "
                f"profile {list(e.args[0][1])})"
            ) from e
        violation = p_head - p_tail - a.weight
        if violation > max_v[a.kind]:
            max_v[a.kind] = violation
            worst[a.kind] = a
    return ViolationReport(
        max_ef_violation=max_v[EF],
        max_ic_violation=max_v[IC],
        worst_ef_arc=worst[EF],
        worst_ic_arc=worst[IC],
        tolerance=tolerance,
    )


def verify_payments(inst: Instance, table: PaymentTable) -> ViolationReport:
    """Recompute every constraint of the instance and audit ``table``.

    Weights are rebuilt from the instance values, independent of however
    the table was produced.
    """
    g = build_graph(inst)
    return verify_over_arcs(g.arcs, table, inst.tolerance)
