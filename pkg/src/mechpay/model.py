"""Finite mechanism instances: type spaces, allocation tables, JSON I/O.

An instance fixes the number of agents, a list of opaque bundle ids, a
finite type space per agent (each type assigns a real value to every
bundle), and a total allocation table mapping every type profile to the
bundle each agent receives.  Values are IEEE doubles; comparisons
throughout the package use the instance-level ``tolerance``.

The on-disk format is a single JSON object with exactly the keys
``agents``, ``bundles``, ``types`` and ``allocation``::

    {
      "agents": 2,
      "bundles": ["item", "empty"],
      "types": [[{"values": {"item": 1.0, "empty": 0.0}}], ...],
      "allocation": [{"profile": [0, 0], "assigned": ["item", "empty"]}, ...]
    }

Profiles are lists of 0-based type indices, one per agent, and the table
must contain every profile exactly once.  Unknown keys are rejected.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Any, Iterator, Mapping, Sequence

DEFAULT_TOLERANCE = 1e-9

Profile = tuple[int, ...]
Outcome = tuple[str, ...]


class InstanceFormatError(ValueError):
    """The document is not a structurally well-formed instance."""


class InstanceValidationError(ValueError):
    """The document parses but violates an instance invariant."""


@dataclass(frozen=True)
class ValuationType:
    """A single reported type: one finite value per bundle id."""

    values: Mapping[str, float]

    def value(self, bundle: str) -> float:
        return self.values[bundle]


@dataclass(frozen=True)
class AllocationTable:
    """Total map from type profiles to the tuple of assigned bundles."""

    table: Mapping[Profile, Outcome]

    def outcome(self, profile: Profile) -> Outcome:
        return self.table[profile]

    def __iter__(self) -> Iterator[Profile]:
        return iter(self.table)

    def __len__(self) -> int:
        return len(self.table)


@dataclass(frozen=True)
class Instance:
    num_agents: int
    bundles: tuple[str, ...]
    type_spaces: tuple[tuple[ValuationType, ...], ...]
    allocation: AllocationTable
    tolerance: float = DEFAULT_TOLERANCE

    def value_of(self, agent: int, type_index: int, bundle: str) -> float:
        """Value the given type of ``agent`` (0-based) assigns to ``bundle``."""
        return self.type_spaces[agent][type_index].values[bundle]

    def outcome(self, profile: Profile) -> Outcome:
        return self.allocation.outcome(profile)


def profile_space(inst: Instance) -> list[Profile]:
    """All type profiles in lexicographic order, agent 0 most significant."""
    return list(itertools.product(*(range(len(ts)) for ts in inst.type_spaces)))


def value_of(inst: Instance, agent: int, type_index: int, bundle: str) -> float:
    return inst.value_of(agent, type_index, bundle)


# ---------------------------------------------------------------------------
# construction and validation


def make_instance(
    num_agents: int,
    bundles: Sequence[str],
    type_spaces: Sequence[Sequence[ValuationType]],
    allocation: Mapping[Profile, Outcome],
    tolerance: float = DEFAULT_TOLERANCE,
) -> Instance:
    """Build and validate an instance from already-typed pieces."""
    inst = Instance(
        num_agents=int(num_agents),
        bundles=tuple(bundles),
        type_spaces=tuple(tuple(ts) for ts in type_spaces),
        allocation=AllocationTable(dict(allocation)),
        tolerance=float(tolerance),
    )
    validate_instance(inst)
    return inst


def validate_instance(inst: Instance) -> None:
    """Raise ``InstanceValidationError`` naming the first violated invariant.

    Duplicate valuation vectors within one type space are deliberately
    allowed: the allocation table may still distinguish the two type
    indices, and collapsing them would change the constraint graph.
    """
    if inst.num_agents < 1:
        raise InstanceValidationError("agents must be a positive integer")
    if not inst.bundles:
        raise InstanceValidationError("bundles must be a non-empty list")
    seen: set[str] = set()
    for b in inst.bundles:
        if b in seen:
            raise InstanceValidationError(f"duplicate bundle id {b!r}")
        seen.add(b)
    if len(inst.type_spaces) != inst.num_agents:
        raise InstanceValidationError(
            f"types must list one type space per agent "
            f"(got {len(inst.type_spaces)} for {inst.num_agents} agents)"
        )
    bundle_set = set(inst.bundles)
    for i, space in enumerate(inst.type_spaces):
        if not space:
            raise InstanceValidationError(f"agent {i + 1} has an empty type space")
        for t, vt in enumerate(space):
            for b in vt.values:
                if b not in bundle_set:
                    raise InstanceValidationError(
                        f"unknown bundle id {b!r} in type {t} of agent {i + 1}"
                    )
            for b in inst.bundles:
                if b not in vt.values:
                    raise InstanceValidationError(
                        f"type {t} of agent {i + 1} missing a value for bundle {b!r}"
                    )
                v = vt.values[b]
                if (
                    isinstance(v, bool)
                    or not isinstance(v, (int, float))
                    or not math.isfinite(v)
                ):
                    raise InstanceValidationError(
                        f"non-finite value for bundle {b!r} in type {t} of agent {i + 1}"
                    )
    if not (isinstance(inst.tolerance, float) and inst.tolerance > 0.0):
        raise InstanceValidationError("tolerance must be a positive real")

    sizes = tuple(len(ts) for ts in inst.type_spaces)
    for profile, outcome in inst.allocation.table.items():
        if len(profile) != inst.num_agents:
            raise InstanceValidationError(
                f"profile {list(profile)} has wrong length (expected {inst.num_agents})"
            )
        for i, t in enumerate(profile):
            if not 0 <= t < sizes[i]:
                raise InstanceValidationError(
                    f"profile {list(profile)} has out-of-range type index for agent {i + 1}"
                )
        if len(outcome) != inst.num_agents:
            raise InstanceValidationError(
                f"assigned bundles for profile {list(profile)} have wrong length"
            )
        for b in outcome:
            if b not in bundle_set:
                raise InstanceValidationError(
                    f"unknown bundle id {b!r} assigned at profile {list(profile)}"
                )
    for profile in itertools.product(*(range(s) for s in sizes)):
        if profile not in inst.allocation.table:
            raise InstanceValidationError(
                f"incomplete allocation table: missing profile {list(profile)}"
            )


# ---------------------------------------------------------------------------
# JSON


def _require_keys(obj: Mapping[str, Any], keys: set[str], where: str) -> None:
    for k in obj:
        if k not in keys:
            raise InstanceFormatError(f"unknown key {k!r} in {where}")
    for k in keys:
        if k not in obj:
            raise InstanceFormatError(f"missing key {k!r} in {where}")


def _as_number(x: Any, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InstanceFormatError(f"expected a number in {where}")
    return float(x)


def instance_from_dict(doc: Any, tolerance: float = DEFAULT_TOLERANCE) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance document must be a JSON object")
    _require_keys(doc, {"agents", "bundles", "types", "allocation"}, "instance")

    agents = doc["agents"]
    if isinstance(agents, bool) or not isinstance(agents, int):
        raise InstanceFormatError("'agents' must be an integer")

    bundles = doc["bundles"]
    if not isinstance(bundles, list) or not all(isinstance(b, str) for b in bundles):
        raise InstanceFormatError("'bundles' must be a list of strings")

    raw_types = doc["types"]
    if not isinstance(raw_types, list):
        raise InstanceFormatError("'types' must be a list")
    type_spaces = []
    for i, space in enumerate(raw_types):
        if not isinstance(space, list):
            raise InstanceFormatError(f"type space of agent {i + 1} must be a list")
        parsed = []
        for t, entry in enumerate(space):
            if not isinstance(entry, dict):
                raise InstanceFormatError(
                    f"type {t} of agent {i + 1} must be an object"
                )
            _require_keys(entry, {"values"}, f"type {t} of agent {i + 1}")
            vals = entry["values"]
            if not isinstance(vals, dict):
                raise InstanceFormatError(
                    f"'values' of type {t} of agent {i + 1} must be an object"
                )
            # Store values in declared bundle order so serialization is
            # canonical independent of the source document's key order.
            ordered: dict[str, float] = {}
            for b in bundles:
                if b in vals:
                    ordered[b] = _as_number(
                        vals[b], f"value of bundle {b!r}, type {t}, agent {i + 1}"
                    )
            for b in vals:
                if b not in ordered:
                    ordered[b] = _as_number(vals[b], f"type {t} of agent {i + 1}")
            parsed.append(ValuationType(ordered))
        type_spaces.append(tuple(parsed))

    raw_alloc = doc["allocation"]
    if not isinstance(raw_alloc, list):
        raise InstanceFormatError("'allocation' must be a list")
    table: dict[Profile, Outcome] = {}
    for row in raw_alloc:
        if not isinstance(row, dict):
            raise InstanceFormatError("allocation rows must be objects")
        _require_keys(row, {"profile", "assigned"}, "allocation row")
        prof = row["profile"]
        if not isinstance(prof, list) or not all(
            isinstance(t, int) and not isinstance(t, bool) for t in prof
        ):
            raise InstanceFormatError("'profile' must be a list of integers")
        assigned = row["assigned"]
        if not isinstance(assigned, list) or not all(
            isinstance(b, str) for b in assigned
        ):
            raise InstanceFormatError("'assigned' must be a list of bundle ids")
        key = tuple(prof)
        if key in table:
            raise InstanceValidationError(
                f"duplicate allocation row for profile {prof}"
            )
        table[key] = tuple(assigned)

    inst = Instance(
        num_agents=agents,
        bundles=tuple(bundles),
        type_spaces=tuple(type_spaces),
        allocation=AllocationTable(table),
        tolerance=float(tolerance),
    )
    validate_instance(inst)
    return inst


def load_instance(text: str, tolerance: float = DEFAULT_TOLERANCE) -> Instance:
    """Parse and validate an instance from JSON text."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"invalid JSON: {e}") from e
    return instance_from_dict(doc, tolerance=tolerance)


def instance_to_dict(inst: Instance) -> dict[str, Any]:
    """Canonical plain-dict form: allocation rows in lexicographic order."""
    return {
        "agents": inst.num_agents,
        "bundles": list(inst.bundles),
        "types": [
            [{"values": {b: vt.values[b] for b in inst.bundles}} for vt in space]
            for space in inst.type_spaces
        ],
        "allocation": [
            {
                "profile": list(p),
                "assigned": list(inst.allocation.outcome(p)),
            }
            for p in profile_space(inst)
        ],
    }


def serialize_instance(inst: Instance) -> str:
    """Canonical JSON text; ``load_instance`` round-trips it field-for-field."""
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"
