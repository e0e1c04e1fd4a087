"""Negative-cycle detection, implementability classification, oracles.

Detection runs Bellman-Ford on weights nudged up by half the instance
tolerance per arc.  A cycle is therefore reported only when its true
weight is below ``-len(cycle) * tolerance / 2``, which for the shortest
possible cycles is exactly the contract that total weights in
``[-tolerance, 0)`` count as zero; longer cycles get proportionally more
slack, keeping the rule noise-proof under float accumulation.  Every
witness is re-verified against the unnudged weights before it is
returned.

The module also hosts the two independent brute-force oracles the graph
route is measured against: permutation-based local efficiency and
cycle-monotonicity over report sequences.
"""

from __future__ import annotations

import itertools
from array import array
from dataclasses import dataclass
from typing import Optional

from . import kernel
from .graph import EF, IC, Arc, ConstraintGraph, build_graph
from .model import Instance, Profile, profile_space


@dataclass(frozen=True)
class WitnessCycle:
    """A simple cycle certifying a negative total constraint weight.

    ``arcs`` are in traversal order (each head is the next arc's tail)
    and ``total_weight`` is their left-to-right float sum, strictly below
    minus the detecting graph's tolerance.
    """

    arcs: tuple[Arc, ...]
    total_weight: float
    n_ef: int
    n_ic: int
    arc_indices: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.arcs)

    def to_json_dict(self) -> dict:
        return {
            "arcs": [
                {
                    "kind": a.kind,
                    "tail": {
                        "agent": a.tail.agent + 1,
                        "profile": list(a.tail.profile),
                    },
                    "head": {
                        "agent": a.head.agent + 1,
                        "profile": list(a.head.profile),
                    },
                    "weight": a.weight,
                }
                for a in self.arcs
            ],
            "total_weight": self.total_weight,
            "n_ef": self.n_ef,
            "n_ic": self.n_ic,
        }


def _witness_from_indices(
    g: ConstraintGraph, indices: list[int]
) -> WitnessCycle:
    # Canonical rotation: start at the arc whose tail has the lowest id.
    tails = [g._tails[k] for k in indices]
    pos = tails.index(min(tails))
    indices = indices[pos:] + indices[:pos]

    arcs = tuple(g.arc(k) for k in indices)
    for a, b in zip(arcs, arcs[1:] + arcs[:1]):
        if a.head != b.tail:
            raise RuntimeError("extracted cycle does not chain")
    total = 0.0
    for a in arcs:
        total += a.weight
    if not total < -g.tolerance:
        raise RuntimeError(
            f"extracted cycle is not a negativity witness (total {total!r})"
        )
    return WitnessCycle(
        arcs=arcs,
        total_weight=total,
        n_ef=sum(1 for a in arcs if a.kind == EF),
        n_ic=sum(1 for a in arcs if a.kind == IC),
        arc_indices=tuple(indices),
    )


def _search(g: ConstraintGraph, arc_filter: str):
    """Run the kernel on one arc class.

    Returns ``(dist, witness_or_none)``; ``dist`` are shortest-path
    labels on the nudged weights (every vertex a source).
    """
    idx = g.arc_indices(arc_filter)
    half_tol = 0.5 * g.tolerance
    tails = array("i", (g._tails[k] for k in idx))
    heads = array("i", (g._heads[k] for k in idx))
    weights = array("d", (g.effective_weight(k) + half_tol for k in idx))
    dist, cycle = kernel.bellman_ford(g.vertex_count, tails, heads, weights)
    if cycle is None:
        return dist, None
    return dist, _witness_from_indices(g, [idx[c] for c in cycle])


def find_negative_cycle(
    g: ConstraintGraph, arc_filter: str = "ALL"
) -> Optional[WitnessCycle]:
    """Search one arc class (``"EF"``, ``"IC"`` or ``"ALL"``) for a
    negative cycle; ``None`` means none exists above the dead zone."""
    return _search(g, arc_filter)[1]


@dataclass(frozen=True)
class ImplementabilityReport:
    """Joint answer of the three filtered searches on one instance."""

    ef_implementable: bool
    ic_implementable: bool
    ef_and_ic_implementable: bool
    ef_witness: Optional[WitnessCycle]
    ic_witness: Optional[WitnessCycle]
    ef_and_ic_witness: Optional[WitnessCycle]

    def to_json_dict(self) -> dict:
        def w(x):
            return None if x is None else x.to_json_dict()

        return {
            "ef_implementable": self.ef_implementable,
            "ic_implementable": self.ic_implementable,
            "ef_and_ic_implementable": self.ef_and_ic_implementable,
            "witnesses": {
                "ef": w(self.ef_witness),
                "ic": w(self.ic_witness),
                "ef_and_ic": w(self.ef_and_ic_witness),
            },
        }


def classify(inst: Instance) -> ImplementabilityReport:
    """Decide EF-, IC- and joint implementability of an instance.

    Joint implementability of both at once is the all-arc search; note
    that payments satisfying EF and IC separately (in general by two
    different payment functions) exist iff both one-class searches are
    clean.
    """
    g = build_graph(inst)
    w_ef = find_negative_cycle(g, EF)
    w_ic = find_negative_cycle(g, IC)
    w_all = find_negative_cycle(g, "ALL")
    return ImplementabilityReport(
        ef_implementable=w_ef is None,
        ic_implementable=w_ic is None,
        ef_and_ic_implementable=w_all is None,
        ef_witness=w_ef,
        ic_witness=w_ic,
        ef_and_ic_witness=w_all,
    )


# ---------------------------------------------------------------------------
# brute-force oracles


@dataclass(frozen=True)
class EfficiencyViolation:
    """Profile and permutation whose reshuffled welfare beats the table."""

    profile: Profile
    permutation: tuple[int, ...]
    assigned_welfare: float
    permuted_welfare: float


_MAX_ORACLE_AGENTS = 8


def local_efficiency_check(
    inst: Instance,
) -> tuple[bool, Optional[EfficiencyViolation]]:
    """Exhaustively test that no within-profile reshuffle of the assigned
    bundles raises total reported welfare.

    Enumerates all m! permutations per profile, so instances with more
    than 8 agents are refused.
    """
    m = inst.num_agents
    if m > _MAX_ORACLE_AGENTS:
        raise ValueError(
            f"local efficiency oracle enumerates m! permutations; "
            f"m={m} exceeds the limit of {_MAX_ORACLE_AGENTS}"
        )
    tol = inst.tolerance
    for profile in profile_space(inst):
        outcome = inst.allocation.outcome(profile)
        # vals[i][k] = value agent i (at its reported type) puts on the
        # bundle assigned to agent k.
        vals = [
            [inst.type_spaces[i][profile[i]].values[b] for b in outcome]
            for i in range(m)
        ]
        assigned = sum(vals[i][i] for i in range(m))
        for perm in itertools.permutations(range(m)):
            permuted = sum(vals[i][perm[i]] for i in range(m))
            if assigned < permuted - tol:
                return False, EfficiencyViolation(
                    profile=profile,
                    permutation=perm,
                    assigned_welfare=assigned,
                    permuted_welfare=permuted,
                )
    return True, None


@dataclass(frozen=True)
class MonotonicityViolation:
    """Report sequence of one agent with a negative closed constraint sum.

    ``sequence`` lists distinct type indices t_1 .. t_K of ``agent``;
    the violated sum is over k of
    ``v^{t_k}(a(t_k)) - v^{t_k}(a(t_{k+1}))`` with t_{K+1} = t_1, the
    other agents' reports fixed at ``fixed_others``.
    """

    agent: int
    fixed_others: tuple[int, ...]
    sequence: tuple[int, ...]
    total: float


def cycle_monotonicity_check(
    inst: Instance, k_max: int
) -> tuple[bool, Optional[MonotonicityViolation]]:
    """Test every report cycle of length 2..k_max of every single agent.

    ``k_max`` is capped by each agent's type count; values below 2 are
    rejected.  Sequences visit pairwise distinct type indices, so
    duplicated valuation vectors are still treated as distinct reports.
    """
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    m = inst.num_agents
    sizes = [len(ts) for ts in inst.type_spaces]
    tol = inst.tolerance
    for i in range(m):
        n_i = sizes[i]
        k_hi = min(k_max, n_i)
        if k_hi < 2:
            continue
        other_ranges = [range(sizes[j]) for j in range(m) if j != i]
        for combo in itertools.product(*other_ranges):
            def with_own(t: int) -> Profile:
                return tuple(combo[:i]) + (t,) + tuple(combo[i:])

            # cross[t][u] = value of type t for the bundle agent i gets
            # when it reports u instead.
            got = [inst.allocation.outcome(with_own(t))[i] for t in range(n_i)]
            cross = [
                [inst.type_spaces[i][t].values[got[u]] for u in range(n_i)]
                for t in range(n_i)
            ]
            for k in range(2, k_hi + 1):
                for subset in itertools.combinations(range(n_i), k):
                    first = subset[0]
                    for rest in itertools.permutations(subset[1:]):
                        seq = (first,) + rest
                        total = 0.0
                        for pos, t in enumerate(seq):
                            t_next = seq[(pos + 1) % k]
                            total += cross[t][t] - cross[t][t_next]
                        if total < -tol:
                            return False, MonotonicityViolation(
                                agent=i,
                                fixed_others=combo,
                                sequence=seq,
                                total=total,
                            )
    return True, None
