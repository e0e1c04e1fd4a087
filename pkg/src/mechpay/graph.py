"""Constraint graphs over (agent, profile) vertices.

For an instance with allocation ``a`` the graph has one vertex per
(agent, profile) pair and two arc families, both expressing upper bounds
``p[head] <= p[tail] + weight`` on any feasible payment assignment:

* envy arcs (kind ``EF``), one per ordered agent pair within a profile:
  ``(j, v) -> (i, v)`` with weight ``v_i(a_i(v)) - v_i(a_j(v))``;
* truthfulness arcs (kind ``IC``), one per ordered pair of types of one
  agent with the other agents' reports fixed:
  ``(i, (t', v_-i)) -> (i, (t, v_-i))`` with weight
  ``v_i^t(a_i(t, v_-i)) - v_i^t(a_i(t', v_-i))``.

Payments of the required kind exist exactly when the corresponding arc
class contains no negative-weight cycle.

Arcs are stored as parallel arrays, EF block first, each block grouped
by its constraint component (profile for EF; agent plus fixed opposing
reports for IC), so filtered traversal is a contiguous slice.  A graph
carries an additive ``shift`` per arc kind; shifting never mutates the
base weights, so repeated shifts compose exactly.
"""

from __future__ import annotations

import itertools
from array import array
from dataclasses import dataclass

from .model import Instance, Profile, profile_space

EF = "EF"
IC = "IC"

_KIND_EF = 0
_KIND_IC = 1


@dataclass(frozen=True)
class Vertex:
    agent: int
    profile: Profile


@dataclass(frozen=True)
class Arc:
    tail: Vertex
    head: Vertex
    weight: float
    kind: str


class ConstraintGraph:
    """Immutable arc-list graph with a per-kind additive weight shift."""

    __slots__ = (
        "num_agents",
        "profiles",
        "tolerance",
        "shift",
        "_profile_ids",
        "_tails",
        "_heads",
        "_kinds",
        "_base_w",
        "_n_ef",
        "_arcs_cache",
    )

    def __init__(
        self,
        num_agents: int,
        profiles: tuple[Profile, ...],
        tails: array,
        heads: array,
        kinds: array,
        base_weights: array,
        n_ef: int,
        tolerance: float,
        shift: tuple[float, float] = (0.0, 0.0),
    ):
        self.num_agents = num_agents
        self.profiles = profiles
        self.tolerance = tolerance
        self.shift = shift
        self._profile_ids = {p: k for k, p in enumerate(profiles)}
        self._tails = tails
        self._heads = heads
        self._kinds = kinds
        self._base_w = base_weights
        self._n_ef = n_ef
        self._arcs_cache: tuple[Arc, ...] | None = None

    # -- vertices ----------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.profiles) * self.num_agents

    def vertex_id(self, agent: int, profile: Profile) -> int:
        return self._profile_ids[profile] * self.num_agents + agent

    def vertex(self, vid: int) -> Vertex:
        pid, agent = divmod(vid, self.num_agents)
        return Vertex(agent, self.profiles[pid])

    # -- arcs --------------------------------------------------------------

    @property
    def num_arcs(self) -> int:
        return len(self._tails)

    @property
    def num_ef_arcs(self) -> int:
        return self._n_ef

    @property
    def num_ic_arcs(self) -> int:
        return len(self._tails) - self._n_ef

    def arc_indices(self, arc_filter: str = "ALL") -> range:
        """Contiguous index range of the requested arc class."""
        if arc_filter == "ALL":
            return range(len(self._tails))
        if arc_filter == EF:
            return range(self._n_ef)
        if arc_filter == IC:
            return range(self._n_ef, len(self._tails))
        raise ValueError(f"unknown arc filter {arc_filter!r}")

    def arc_kind(self, k: int) -> str:
        return EF if self._kinds[k] == _KIND_EF else IC

    def base_weight(self, k: int) -> float:
        return self._base_w[k]

    def effective_weight(self, k: int) -> float:
        """Stored weight plus the shift of the arc's kind."""
        return self._base_w[k] + self.shift[self._kinds[k]]

    def arc(self, k: int) -> Arc:
        return Arc(
            tail=self.vertex(self._tails[k]),
            head=self.vertex(self._heads[k]),
            weight=self.effective_weight(k),
            kind=self.arc_kind(k),
        )

    @property
    def arcs(self) -> tuple[Arc, ...]:
        if self._arcs_cache is None:
            self._arcs_cache = tuple(self.arc(k) for k in range(len(self._tails)))
        return self._arcs_cache

    @property
    def ef_arcs(self) -> tuple[Arc, ...]:
        return self.arcs[: self._n_ef]

    @property
    def ic_arcs(self) -> tuple[Arc, ...]:
        return self.arcs[self._n_ef :]

    def arc_arrays(self, arc_filter: str = "ALL") -> tuple[array, array, array]:
        """(tails, heads, effective weights) for the requested arc class."""
        idx = self.arc_indices(arc_filter)
        tails = array("i", (self._tails[k] for k in idx))
        heads = array("i", (self._heads[k] for k in idx))
        weights = array("d", (self.effective_weight(k) for k in idx))
        return tails, heads, weights

    def _replace(self, **kwargs) -> "ConstraintGraph":
        base = dict(
            num_agents=self.num_agents,
            profiles=self.profiles,
            tails=self._tails,
            heads=self._heads,
            kinds=self._kinds,
            base_weights=self._base_w,
            n_ef=self._n_ef,
            tolerance=self.tolerance,
            shift=self.shift,
        )
        base.update(kwargs)
        return ConstraintGraph(**base)


def expected_ef_arc_count(inst: Instance) -> int:
    m = inst.num_agents
    profiles = 1
    for ts in inst.type_spaces:
        profiles *= len(ts)
    return profiles * m * (m - 1)


def expected_ic_arc_count(inst: Instance) -> int:
    total = 0
    sizes = [len(ts) for ts in inst.type_spaces]
    for i, n_i in enumerate(sizes):
        others = 1
        for j, n_j in enumerate(sizes):
            if j != i:
                others *= n_j
        total += others * n_i * (n_i - 1)
    return total


def build_graph(inst: Instance) -> ConstraintGraph:
    """Construct the full constraint graph of an instance (shift zero)."""
    m = inst.num_agents
    profiles = tuple(profile_space(inst))
    pid = {p: k for k, p in enumerate(profiles)}
    alloc = inst.allocation.outcome

    tails = array("i")
    heads = array("i")
    kinds = array("b")
    weights = array("d")

    # EF block, grouped by profile; within a profile ordered by (tail, head).
    for p_index, profile in enumerate(profiles):
        outcome = alloc(profile)
        base_vid = p_index * m
        for j in range(m):
            for i in range(m):
                if i == j:
                    continue
                vals = inst.type_spaces[i][profile[i]].values
                tails.append(base_vid + j)
                heads.append(base_vid + i)
                kinds.append(_KIND_EF)
                weights.append(vals[outcome[i]] - vals[outcome[j]])
    n_ef = len(tails)

    # IC block, grouped by (agent, fixed opposing reports).
    sizes = [len(ts) for ts in inst.type_spaces]
    for i in range(m):
        other_ranges = [range(sizes[j]) for j in range(m) if j != i]
        for combo in itertools.product(*other_ranges):
            def with_own(t: int) -> Profile:
                return tuple(combo[:i]) + (t,) + tuple(combo[i:])

            for t_from in range(sizes[i]):
                tail_vid = pid[with_own(t_from)] * m + i
                a_from = alloc(with_own(t_from))[i]
                for t_to in range(sizes[i]):
                    if t_to == t_from:
                        continue
                    head_profile = with_own(t_to)
                    vals = inst.type_spaces[i][t_to].values
                    tails.append(tail_vid)
                    heads.append(pid[head_profile] * m + i)
                    kinds.append(_KIND_IC)
                    weights.append(vals[alloc(head_profile)[i]] - vals[a_from])

    if n_ef != expected_ef_arc_count(inst):
        raise RuntimeError("EF arc count does not match the closed form")
    if len(tails) - n_ef != expected_ic_arc_count(inst):
        raise RuntimeError("IC arc count does not match the closed form")

    return ConstraintGraph(
        num_agents=m,
        profiles=profiles,
        tails=tails,
        heads=heads,
        kinds=kinds,
        base_weights=weights,
        n_ef=n_ef,
        tolerance=inst.tolerance,
    )


def shift_graph(g: ConstraintGraph, c_ef: float, c_ic: float) -> ConstraintGraph:
    """Add ``c_ef`` to every EF weight and ``c_ic`` to every IC weight.

    Shifts accumulate: shifting an already-shifted graph by (a, b) and
    then (c, d) yields exactly the shift (a + c, b + d).
    """
    if c_ef < 0.0 or c_ic < 0.0:
        raise ValueError("negative shift rejected")
    return g._replace(shift=(g.shift[0] + c_ef, g.shift[1] + c_ic))


def export_arcs(g: ConstraintGraph) -> str:
    """Plain-text arc dump, one arc per line: tail, head, weight, kind.

    Agents are printed 1-based, profiles as comma-joined 0-based type
    indices.  Intended for debugging and diffing, not round-tripping.
    """
    lines = []
    for a in g.arcs:
        t, h = a.tail, a.head
        lines.append(
            f"{t.agent + 1}:{','.join(map(str, t.profile))}\t"
            f"{h.agent + 1}:{','.join(map(str, h.profile))}\t"
            f"{a.weight!r}\t{a.kind}"
        )
    return "\n".join(lines) + "\n"
