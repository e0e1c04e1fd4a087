"""Pinned example generators and reference payment rules.

Each example id names a small instance family with documented defaults:

* ``fig1-single-item``: one indivisible item, welfare-maximizing
  assignment over a grid of per-agent values.
* ``claim1-dictator``: two agents, the item always handed to agent 1
  regardless of reports (locally inefficient, hence never envy-freeable).
* ``claim2-proportional``: two agents splitting a divisible good by a
  non-monotone but locally efficient share rule (truthful payments are
  impossible, envy-free ones exist).
* ``claim3-8cycle``: three agents splitting a divisible good; every
  constraint class alone is satisfiable but one mixed eight-arc cycle
  blocks jointly envy-free truthful payments.

Divisible shares are discretized into opaque bundle ids ``frac_<value>``
so the instances stay within the finite tabulated model.
"""

from __future__ import annotations

import itertools
from typing import Mapping, Sequence

from .model import (
    DEFAULT_TOLERANCE,
    AllocationTable,
    Instance,
    Outcome,
    Profile,
    ValuationType,
    make_instance,
    profile_space,
)
from .payments import PaymentTable

ITEM = "item"
EMPTY = "empty"


def _frac_id(f: float) -> str:
    return f"frac_{f!r}"


# ---------------------------------------------------------------------------
# generic builders


def welfare_max_allocation(
    type_spaces: Sequence[Sequence[ValuationType]],
    candidates: Sequence[Outcome],
) -> AllocationTable:
    """Pick, per profile, the first candidate outcome maximizing total
    reported value (ties broken by candidate list order)."""
    if not candidates:
        raise ValueError("at least one candidate outcome is required")
    m = len(type_spaces)
    table: dict[Profile, Outcome] = {}
    for profile in itertools.product(*(range(len(ts)) for ts in type_spaces)):
        best = None
        best_score = None
        for cand in candidates:
            score = sum(
                type_spaces[i][profile[i]].values[cand[i]] for i in range(m)
            )
            if best_score is None or score > best_score:
                best, best_score = cand, score
        table[profile] = best
    return AllocationTable(table)


def clarke_payments(
    inst: Instance, candidates: Sequence[Outcome]
) -> PaymentTable:
    """Pivot payments: each agent pays the others' best welfare without
    it minus their realized welfare.

    The allocation table must equal the welfare maximizer over
    ``candidates`` (first-maximum tie-break); a mismatch is an error.
    For a single agent the pivot term is an empty maximum, taken as 0.
    """
    m = inst.num_agents
    expected = welfare_max_allocation(inst.type_spaces, candidates)
    table: dict[tuple[int, Profile], float] = {}
    for profile in profile_space(inst):
        outcome = inst.allocation.outcome(profile)
        if outcome != expected.outcome(profile):
            raise ValueError(
                f"allocation at profile {list(profile)} is not the "
                f"welfare maximizer over the given candidates"
            )
        for i in range(m):
            without_i = max(
                sum(
                    inst.type_spaces[j][profile[j]].values[cand[j]]
                    for j in range(m)
                    if j != i
                )
                for cand in candidates
            )
            realized = sum(
                inst.type_spaces[j][profile[j]].values[outcome[j]]
                for j in range(m)
                if j != i
            )
            table[(i, profile)] = without_i - realized
    return PaymentTable(table)


# ---------------------------------------------------------------------------
# single-item helpers


def single_item_candidates(m: int) -> list[Outcome]:
    return [
        tuple(ITEM if k == winner else EMPTY for k in range(m))
        for winner in range(m)
    ]


def _item_values(inst: Instance, profile: Profile) -> list[float]:
    return [
        inst.type_spaces[i][profile[i]].values[ITEM]
        for i in range(inst.num_agents)
    ]


def _winner(z: Sequence[float]) -> int:
    best = 0
    for k in range(1, len(z)):
        if z[k] > z[best]:
            best = k
    return best


def single_item_min_vcg_payments(inst: Instance) -> PaymentTable:
    """Truthful but envious single-item payments.

    The winner pays the smallest other value; each loser pays the
    smallest value among the others minus the winner's value.  This is
    the pivot rule with the minimum instead of the maximum, so it keeps
    truthfulness while making losers strictly prefer the winner's deal
    whenever more than two values are distinct.
    """
    m = inst.num_agents
    if m < 2:
        raise ValueError("needs at least two agents")
    table: dict[tuple[int, Profile], float] = {}
    for profile in profile_space(inst):
        z = _item_values(inst, profile)
        w = _winner(z)
        for j in range(m):
            others_min = min(z[k] for k in range(m) if k != j)
            table[(j, profile)] = others_min - (0.0 if j == w else z[w])
    return PaymentTable(table)


def single_item_loser_compensation_payments(inst: Instance) -> PaymentTable:
    """Envy-free but manipulable single-item payments.

    The winner pays nothing; every loser is paid the largest losing
    value, which removes envy but lets a loser inflate its report to
    raise its own compensation.
    """
    m = inst.num_agents
    if m < 2:
        raise ValueError("needs at least two agents")
    table: dict[tuple[int, Profile], float] = {}
    for profile in profile_space(inst):
        z = _item_values(inst, profile)
        w = _winner(z)
        top_loser = max(z[k] for k in range(m) if k != w)
        for j in range(m):
            table[(j, profile)] = 0.0 if j == w else -top_loser
    return PaymentTable(table)


# ---------------------------------------------------------------------------
# example generators


def gen_single_item_auction(
    values: Sequence[Sequence[float]] = ((3.0,), (2.0, 2.5), (1.0,)),
    tolerance: float = DEFAULT_TOLERANCE,
) -> Instance:
    """Single item to the highest reported value (first maximum wins)."""
    if not values or any(not vs for vs in values):
        raise ValueError("each agent needs at least one value")
    type_spaces = [
        [ValuationType({ITEM: float(z), EMPTY: 0.0}) for z in vs]
        for vs in values
    ]
    allocation = welfare_max_allocation(
        type_spaces, single_item_candidates(len(values))
    )
    return make_instance(
        num_agents=len(values),
        bundles=(ITEM, EMPTY),
        type_spaces=type_spaces,
        allocation=allocation.table,
        tolerance=tolerance,
    )


def gen_fixed_winner_auction(
    z1: float = 1.0,
    z2: float = 2.0,
    tolerance: float = DEFAULT_TOLERANCE,
) -> Instance:
    """Two single-type agents; agent 1 always receives the item.

    With ``z1 < z2`` the assignment wastes welfare, so no payments can
    remove envy, yet truthfulness is trivial (nobody can misreport).
    """
    type_spaces = [
        [ValuationType({ITEM: float(z1), EMPTY: 0.0})],
        [ValuationType({ITEM: float(z2), EMPTY: 0.0})],
    ]
    return make_instance(
        num_agents=2,
        bundles=(ITEM, EMPTY),
        type_spaces=type_spaces,
        allocation={(0, 0): (ITEM, EMPTY)},
        tolerance=tolerance,
    )


def _proportional_shares(z1: float, z2: float) -> tuple[float, float]:
    if z1 == z2:
        return 0.5, 0.5
    if z1 < z2:
        s = z1 / (2.0 * (z1 + z2))
        return 0.25 - s, 0.75 + s
    s = z2 / (2.0 * (z1 + z2))
    return 0.75 + s, 0.25 - s


def gen_proportional_split(
    z1: Sequence[float] = (1.0, 1.9),
    z2: Sequence[float] = (2.0,),
    tolerance: float = DEFAULT_TOLERANCE,
) -> Instance:
    """Two agents sharing one divisible good, larger report favored.

    The share handed to the lower-value agent shrinks as its own report
    grows, so the rule is not monotone and admits no truthful payments;
    both shares are positive and ordered by value, keeping every profile
    locally efficient, so envy-free payments exist.
    """
    if not z1 or not z2:
        raise ValueError("each agent needs at least one value")
    if any(z <= 0 for z in list(z1) + list(z2)):
        raise ValueError("values must be positive")
    shares: dict[Profile, tuple[float, float]] = {}
    fracs: set[float] = set()
    for i, a in enumerate(z1):
        for j, b in enumerate(z2):
            s = _proportional_shares(float(a), float(b))
            shares[(i, j)] = s
            fracs.update(s)
    bundle_order = sorted(fracs)
    bundles = tuple(_frac_id(f) for f in bundle_order)
    type_spaces = [
        [
            ValuationType({_frac_id(f): f * float(z) for f in bundle_order})
            for z in zs
        ]
        for zs in (z1, z2)
    ]
    allocation = {
        p: (_frac_id(s[0]), _frac_id(s[1])) for p, s in shares.items()
    }
    return make_instance(
        num_agents=2,
        bundles=bundles,
        type_spaces=type_spaces,
        allocation=allocation,
        tolerance=tolerance,
    )


_CLAIM3_FRACS = (0.0, 0.2, 0.4, 0.5)


def gen_three_agent_split(
    z1: Sequence[float] = (1.0, 1.0),
    z2: Sequence[float] = (2.0, 2.0),
    z3: float = 0.0,
    tolerance: float = DEFAULT_TOLERANCE,
) -> Instance:
    """Three agents, first two with two types each, sharing one good.

    Allocation: shares (0.4, 0.4, 0.2) when both two-type agents report
    their second type, (0.5, 0.5, 0) otherwise.  Requires the parameter
    ordering ``z2[0] >= z2[1] > z1[0] >= z1[1] >= z3``; the all-negative
    variant models a divisible task instead of a good.  Separately, envy
    and truthfulness are each achievable, but one mixed cycle of weight
    ``0.1 * (z1[0] - z2[1])`` (negative under the ordering whenever
    ``z1[0] < z2[1]``) blocks achieving both with one payment rule.
    """
    z1 = tuple(float(z) for z in z1)
    z2 = tuple(float(z) for z in z2)
    z3 = float(z3)
    if len(z1) != 2 or len(z2) != 2:
        raise ValueError("z1 and z2 must each list exactly two values")
    if not (z2[0] >= z2[1] > z1[0] >= z1[1] >= z3):
        raise ValueError(
            "parameter ordering violated: need z2[0] >= z2[1] > z1[0] >= "
            f"z1[1] >= z3, got z1={z1}, z2={z2}, z3={z3}"
        )
    bundles = tuple(_frac_id(f) for f in _CLAIM3_FRACS)

    def vt(z: float) -> ValuationType:
        return ValuationType({_frac_id(f): f * z for f in _CLAIM3_FRACS})

    type_spaces = [[vt(z1[0]), vt(z1[1])], [vt(z2[0]), vt(z2[1])], [vt(z3)]]
    allocation: dict[Profile, Outcome] = {}
    for t1 in range(2):
        for t2 in range(2):
            if t1 == 1 and t2 == 1:
                shares = (0.4, 0.4, 0.2)
            else:
                shares = (0.5, 0.5, 0.0)
            allocation[(t1, t2, 0)] = tuple(_frac_id(f) for f in shares)
    return make_instance(
        num_agents=3,
        bundles=bundles,
        type_spaces=type_spaces,
        allocation=allocation,
        tolerance=tolerance,
    )


EXAMPLES: Mapping[str, tuple] = {
    "fig1-single-item": (gen_single_item_auction, "fig1"),
    "claim1-dictator": (gen_fixed_winner_auction, "claim1"),
    "claim2-proportional": (gen_proportional_split, "claim2"),
    "claim3-8cycle": (gen_three_agent_split, "claim3"),
}

_ALIASES = {short: full for full, (_f, short) in EXAMPLES.items()}


def example_names() -> list[str]:
    return list(EXAMPLES)


def gen_example(name: str, **params) -> Instance:
    """Build a pinned example by full id or short alias.

    Parameters are forwarded to the generator; unknown names raise
    ``ValueError`` and bad parameters raise ``TypeError``/``ValueError``.
    """
    full = _ALIASES.get(name, name)
    if full not in EXAMPLES:
        known = ", ".join(sorted(EXAMPLES) + sorted(_ALIASES))
        raise ValueError(f"unknown example {name!r} (known: {known})")
    builder, _short = EXAMPLES[full]
    return builder(**params)
