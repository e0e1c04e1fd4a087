"""Relaxation trade-off between envy and truthfulness constraints.

Relaxing every EF constraint by ``x >= 0`` and every IC constraint by
``y >= 0`` turns a cycle of weight ``w`` with ``n`` EF arcs and ``m`` IC
arcs into the linear requirement ``n*x + m*y + w >= 0``.  The set of
correcting pairs is therefore an intersection of half planes in the
first quadrant, and its Pareto-minimal boundary is a falling polyline.

``pareto_frontier`` finds that polyline without enumerating cycles: it
keeps the constraints discovered so far, computes the exact boundary of
their intersection (rational arithmetic on the float cycle weights, so
the geometry itself adds no rounding), and probes each candidate vertex
with the shifted-graph cycle detector.  A probe either certifies the
vertex or returns a new cycle whose constraint strictly cuts it.  Since
a half-plane constraint restricted to a segment attains its minimum at
an endpoint, certified vertices certify the whole polyline.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cycles import WitnessCycle, find_negative_cycle
from .graph import EF, IC, ConstraintGraph, shift_graph
from .payments import PaymentTable, compute_payments


class AxisInfeasibleError(Exception):
    """A pure cycle of the opposite kind makes one-sided shifts useless."""

    def __init__(self, axis: str, witness: WitnessCycle):
        kind = IC if axis == EF else EF
        super().__init__(
            f"no {axis} shift can correct a pure {kind} negative cycle "
            f"(total weight {witness.total_weight!r})"
        )
        self.axis = axis
        self.witness = witness


def is_cycle_correcting(g: ConstraintGraph, c_ef: float, c_ic: float) -> bool:
    """Whether shifting by ``(c_ef, c_ic)`` removes every negative cycle."""
    return find_negative_cycle(shift_graph(g, c_ef, c_ic), "ALL") is None


def _shift_pair(axis: str, c: float) -> tuple[float, float]:
    if axis == EF:
        return c, 0.0
    if axis == IC:
        return 0.0, c
    raise ValueError(f"unknown axis {axis!r}")


def min_shift_one_sided(g: ConstraintGraph, axis: str) -> float:
    """Smallest single-axis shift that corrects every negative cycle.

    Bisects between the known-infeasible 0 and an upper bound that is
    always sufficient (largest arc magnitude times vertex count).
    Raises ``AxisInfeasibleError`` when a pure cycle of the other kind
    exists, since no shift on ``axis`` touches it.
    """
    opposite = IC if axis == EF else EF
    pure = find_negative_cycle(g, opposite)
    if pure is not None:
        raise AxisInfeasibleError(axis, pure)
    if find_negative_cycle(g, "ALL") is None:
        return 0.0

    w_max = max(
        abs(g.effective_weight(k)) for k in g.arc_indices("ALL")
    )
    hi = w_max * g.vertex_count + 1.0
    lo = 0.0
    if not is_cycle_correcting(g, *_shift_pair(axis, hi)):
        raise RuntimeError("shift upper bound failed to correct the graph")
    for _ in range(100):
        if hi - lo <= 1e-10:
            break
        mid = 0.5 * (lo + hi)
        if is_cycle_correcting(g, *_shift_pair(axis, mid)):
            hi = mid
        else:
            lo = mid
    return hi


def approx_payments(
    g: ConstraintGraph, c_ef: float, c_ic: float
) -> PaymentTable:
    """Payments feasible for the constraints relaxed by ``(c_ef, c_ic)``.

    Each original constraint is violated by at most the shift of its
    kind (plus the tolerance slack).  Propagates the negative-cycle
    error when the pair is not correcting.
    """
    return compute_payments(shift_graph(g, c_ef, c_ic))


@dataclass(frozen=True)
class FrontierVertex:
    c_ef: float
    c_ic: float
    binding: tuple[WitnessCycle, ...] = ()


@dataclass(frozen=True)
class Frontier:
    """Pareto-minimal correcting shifts, ordered by falling ``c_ef``.

    ``complete`` is False only if the probe loop hit its round limit; the
    vertices then describe a certified-infeasible outer bound rather than
    the final boundary.
    """

    vertices: tuple[FrontierVertex, ...]
    complete: bool = True

    @property
    def segments(self) -> list[tuple[FrontierVertex, FrontierVertex]]:
        return list(zip(self.vertices, self.vertices[1:]))

    def to_json_dict(self) -> dict:
        return {
            "complete": self.complete,
            "vertices": [
                {
                    "c_ef": v.c_ef,
                    "c_ic": v.c_ic,
                    "binding_cycles": [w.to_json_dict() for w in v.binding],
                }
                for v in self.vertices
            ],
            "segments": [
                {
                    "from": {"c_ef": a.c_ef, "c_ic": a.c_ic},
                    "to": {"c_ef": b.c_ef, "c_ic": b.c_ic},
                }
                for a, b in self.segments
            ],
        }

    def to_csv(self) -> str:
        lines = ["c_ef,c_ic"]
        for v in self.vertices:
            lines.append(f"{v.c_ef!r},{v.c_ic!r}")
        return "\n".join(lines) + "\n"


@dataclass
class _Constraint:
    n_ef: Fraction
    n_ic: Fraction
    bound: Fraction  # n_ef * x + n_ic * y >= bound
    witness: WitnessCycle


def _constraint_from_witness(g: ConstraintGraph, w: WitnessCycle) -> _Constraint:
    # Witnesses come from shifted probes; the constraint must use the
    # unshifted cycle weight, recomputed from the base arc weights.
    base_total = 0.0
    for k in w.arc_indices:
        base_total += g.base_weight(k)
    return _Constraint(
        n_ef=Fraction(w.n_ef),
        n_ic=Fraction(w.n_ic),
        bound=-Fraction(base_total),
        witness=w,
    )


def _envelope_vertices(
    constraints: list[_Constraint],
) -> list[tuple[Fraction, Fraction, tuple[int, ...]]]:
    """Exact Pareto boundary of the constraint intersection.

    Returns vertices as (x, y, indices of constraints tight there),
    ordered by strictly falling x.  Every constraint has positive counts
    on both axes (pure cycles are rejected before this point) and a
    positive bound, so the boundary runs from the x-axis to the y-axis.
    """
    # y(x) of each constraint boundary line.
    def line_y(c: _Constraint, x: Fraction) -> Fraction:
        return (c.bound - c.n_ef * x) / c.n_ic

    x_star = max(c.bound / c.n_ef for c in constraints)
    y_star = max(c.bound / c.n_ic for c in constraints)

    xs = {Fraction(0), x_star}
    n = len(constraints)
    for a in range(n):
        for b in range(a + 1, n):
            ca, cb = constraints[a], constraints[b]
            det = ca.n_ef * cb.n_ic - cb.n_ef * ca.n_ic
            if det == 0:
                continue
            x = (ca.bound * cb.n_ic - cb.bound * ca.n_ic) / det
            if 0 < x < x_star:
                xs.add(x)
    ordered = sorted(xs, reverse=True)

    points: list[tuple[Fraction, Fraction]] = []
    for x in ordered:
        y = max(line_y(c, x) for c in constraints)
        if y < 0:
            y = Fraction(0)
        points.append((x, y))
    # Drop collinear middle points; candidates gathered from all pairwise
    # intersections always include the true corners.
    pruned: list[tuple[Fraction, Fraction]] = []
    for p in points:
        while len(pruned) >= 2:
            (x1, y1), (x2, y2) = pruned[-2], pruned[-1]
            cross = (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1)
            if cross == 0:
                pruned.pop()
            else:
                break
        if not pruned or pruned[-1] != p:
            pruned.append(p)

    out = []
    for x, y in pruned:
        tight = tuple(
            k
            for k, c in enumerate(constraints)
            if c.n_ef * x + c.n_ic * y == c.bound
        )
        out.append((x, y, tight))
    return out


def pareto_frontier(g: ConstraintGraph, max_rounds: int = 200) -> Frontier:
    """Compute the boundary of the correcting region by cutting planes.

    Degenerates to the single vertex (0, 0) when the graph already has
    no negative cycle.  Raises ``AxisInfeasibleError`` when a pure EF or
    pure IC negative cycle exists, because the boundary then never meets
    one of the axes.
    """
    seed = find_negative_cycle(g, "ALL")
    if seed is None:
        return Frontier(vertices=(FrontierVertex(0.0, 0.0),))
    for axis, opposite in ((EF, IC), (IC, EF)):
        pure = find_negative_cycle(g, opposite)
        if pure is not None:
            raise AxisInfeasibleError(axis, pure)

    constraints = [_constraint_from_witness(g, seed)]
    complete = False
    for _ in range(max_rounds):
        verts = _envelope_vertices(constraints)
        progressed = False
        for x, y, _tight in verts:
            found = find_negative_cycle(shift_graph(g, float(x), float(y)), "ALL")
            if found is None:
                continue
            cut = _constraint_from_witness(g, found)
            value = cut.n_ef * x + cut.n_ic * y
            if value >= cut.bound:
                raise RuntimeError(
                    "probe returned a cycle that does not cut its vertex"
                )
            replaced = False
            for c in constraints:
                if c.n_ef == cut.n_ef and c.n_ic == cut.n_ic:
                    if cut.bound <= c.bound:
                        raise RuntimeError(
                            "probe rediscovered a dominated constraint"
                        )
                    c.bound = cut.bound
                    c.witness = cut.witness
                    replaced = True
                    break
            if not replaced:
                constraints.append(cut)
            progressed = True
        if not progressed:
            complete = True
            break

    verts = _envelope_vertices(constraints)
    out = []
    for x, y, tight in verts:
        out.append(
            FrontierVertex(
                c_ef=float(x),
                c_ic=float(y),
                binding=tuple(constraints[k].witness for k in tight),
            )
        )
    return Frontier(vertices=tuple(out), complete=complete)
