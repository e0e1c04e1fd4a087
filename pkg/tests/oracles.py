"""Independent reference machinery for the test suite.

Everything here deliberately avoids the library's search path: cycles
are enumerated exhaustively through networkx, frontier geometry is done
by brute-force half-plane intersection over exact rationals, and random
instances use a dyadic value grid (multiples of 1/64) so that every
arithmetic comparison in both routes is exact and threshold-free.
"""

from __future__ import annotations

import random
from fractions import Fraction

import networkx as nx

from mechpay.graph import ConstraintGraph, EF
from mechpay.model import Instance, ValuationType, make_instance

GRID = 64  # values are k / GRID with |k| <= 2 * GRID


def random_instance(rng: random.Random, m_max=3, types_max=3, bundles_max=4):
    """Small random instance with values on the dyadic grid in [-2, 2]."""
    m = rng.choice([1] + [2, 3] * 3)
    m = min(m, m_max)
    n_bundles = rng.randint(1, bundles_max)
    bundles = [f"b{k}" for k in range(n_bundles)]
    sizes = [rng.randint(1, types_max) for _ in range(m)]

    def rand_value() -> float:
        return rng.randint(-2 * GRID, 2 * GRID) / GRID

    type_spaces = [
        [ValuationType({b: rand_value() for b in bundles}) for _ in range(s)]
        for s in sizes
    ]
    allocation = {}
    profiles = [()]
    for s in sizes:
        profiles = [p + (t,) for p in profiles for t in range(s)]
    for p in profiles:
        allocation[p] = tuple(rng.choice(bundles) for _ in range(m))
    return make_instance(m, bundles, type_spaces, allocation)


def reverify(inst: Instance, witness):
    """Recompute each witness arc weight from instance values alone."""
    total = 0.0
    for a in witness.arcs:
        profile = a.head.profile
        if a.kind == EF:
            assert a.tail.profile == profile
            i, j = a.head.agent, a.tail.agent
            out = inst.allocation.outcome(profile)
            vals = inst.type_spaces[i][profile[i]].values
            w = vals[out[i]] - vals[out[j]]
        else:
            i = a.head.agent
            vals = inst.type_spaces[i][profile[i]].values
            w = (
                vals[inst.allocation.outcome(profile)[i]]
                - vals[inst.allocation.outcome(a.tail.profile)[i]]
            )
        assert w == a.weight
        total += w
    for a, b in zip(witness.arcs, witness.arcs[1:] + witness.arcs[:1]):
        assert a.head == b.tail
    assert total == witness.total_weight
    assert total < -inst.tolerance


def enumerate_cycles(g: ConstraintGraph, max_cycles: int = 500_000):
    """All simple cycles as (arc index tuple, n_ef, n_ic, exact total).

    Totals are exact Fraction sums of the float arc weights, so there is
    no rounding on the oracle side.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(range(g.vertex_count))
    arc_of = {}
    for k in g.arc_indices("ALL"):
        t, h = g._tails[k], g._heads[k]
        assert (t, h) not in arc_of, "parallel arcs would break enumeration"
        arc_of[(t, h)] = k
        graph.add_edge(t, h)
    out = []
    for nodes in nx.simple_cycles(graph):
        ks = []
        for a, b in zip(nodes, nodes[1:] + nodes[:1]):
            ks.append(arc_of[(a, b)])
        n_ef = sum(1 for k in ks if g.arc_kind(k) == EF)
        total = sum(Fraction(g.effective_weight(k)) for k in ks)
        out.append((tuple(ks), n_ef, len(ks) - n_ef, total))
        assert len(out) <= max_cycles, "cycle enumeration blew up"
    return out


def negative_cycles(g: ConstraintGraph, arc_filter: str = "ALL"):
    """Strictly negative simple cycles of one arc class (exact totals)."""
    out = []
    for ks, n_ef, n_ic, total in enumerate_cycles(g):
        if arc_filter == "EF" and n_ic:
            continue
        if arc_filter == "IC" and n_ef:
            continue
        if total < 0:
            out.append((ks, n_ef, n_ic, total))
    return out


def min_shift_reference(g: ConstraintGraph, axis: str):
    """max over negative cycles of -total / n_axis, as an exact Fraction.

    Returns 0 when no negative cycle exists and None when some negative
    cycle has no arc of the axis kind (one-sided correction impossible).
    """
    best = Fraction(0)
    for _ks, n_ef, n_ic, total in negative_cycles(g):
        count = n_ef if axis == "EF" else n_ic
        if count == 0:
            return None
        best = max(best, -total / count)
    return best


def frontier_reference(g: ConstraintGraph):
    """Exact Pareto boundary of the correcting region, by brute force.

    Candidate points are all pairwise intersections of the cycle
    constraint lines plus their axis roots; a candidate survives when it
    is feasible for every constraint and not dominated by another
    survivor.  Returns vertices (Fraction pairs) by falling x, or None
    when some negative cycle is pure (no boundary across the quadrant).
    """
    constraints = {}
    for _ks, n_ef, n_ic, total in negative_cycles(g):
        if n_ef == 0 or n_ic == 0:
            return None
        key = (n_ef, n_ic)
        bound = -total
        if key not in constraints or constraints[key] < bound:
            constraints[key] = bound
    if not constraints:
        return [(Fraction(0), Fraction(0))]

    lines = [(Fraction(n), Fraction(m), b) for (n, m), b in constraints.items()]
    candidates = set()
    for n, m, b in lines:
        candidates.add((b / n, Fraction(0)))
        candidates.add((Fraction(0), b / m))
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            n1, m1, b1 = lines[i]
            n2, m2, b2 = lines[j]
            det = n1 * m2 - n2 * m1
            if det == 0:
                continue
            x = (b1 * m2 - b2 * m1) / det
            y = (n1 * b2 - n2 * b1) / det
            candidates.add((x, y))

    feasible = [
        (x, y)
        for x, y in candidates
        if x >= 0 and y >= 0 and all(n * x + m * y >= b for n, m, b in lines)
    ]
    minimal = [
        p
        for p in feasible
        if not any(
            q != p and q[0] <= p[0] and q[1] <= p[1] for q in feasible
        )
    ]
    return sorted(minimal, key=lambda p: p[0], reverse=True)
