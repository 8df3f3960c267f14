"""Executable checks of the mixing procedures' structural properties.

Each check returns a PropertyReport: applicable or not, plus the concrete
violating points when it fails.  The expected mix is designed to pass all of
them; the average mix deliberately fails the union-containment and the
probability-monotonicity checks on known counterexample instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import PreconditionError
from .geometry import (
    Being,
    CapabilitySet,
    at_least_as_good,
    coords_equal,
    in_union_region,
    intersection_corners,
    weak_dominates,
)
from .mixing import Act, MixedSet, ProbabilityVector, average_set, expected_set

EXPECTED = "expected"
AVERAGE = "average"


@dataclass(frozen=True)
class PropertyReport:
    """One property checked on one instance.

    `holds` is true exactly when `violations` is empty; `applicable` is false
    when the property's precondition fails, in which case the (vacuous)
    report carries the reason in `instance`.
    """

    property_id: str
    instance: str
    violations: tuple[tuple[Being, str], ...] = ()
    applicable: bool = True

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict[str, object]:
        return {
            "property": self.property_id,
            "instance": self.instance,
            "applicable": self.applicable,
            "holds": self.holds,
            "violations": [
                {"point": list(point.coords), "reason": reason}
                for point, reason in self.violations
            ],
        }


def _mix(act: Act, p: ProbabilityVector, kind: str) -> MixedSet:
    if kind == EXPECTED:
        return expected_set(act, p)
    if kind == AVERAGE:
        return average_set(act, p)
    raise PreconditionError(f"unknown mix kind {kind!r}")


def _undominated(points: Sequence[Being], pool: Sequence[Being], reason: str) -> list[tuple[Being, str]]:
    return [
        (pt, reason)
        for pt in points
        if not any(weak_dominates(q, pt) for q in pool)
    ]


def _set_mismatches(left: Sequence[Being], right: Sequence[Being]) -> list[tuple[Being, str]]:
    out = []
    for pt in left:
        if not any(coords_equal(pt, q) for q in right):
            out.append((pt, "present on one side only"))
    for q in right:
        if not any(coords_equal(q, pt) for pt in left):
            out.append((q, "present on one side only"))
    return out


def check_consistency(act: Act, p: ProbabilityVector) -> PropertyReport:
    """Scalar singleton scenarios reduce both mixes to the plain expectation."""
    if act.dimension != 1 or any(len(s) != 1 for s in act.per_state):
        raise PreconditionError(
            "consistency check needs one-dimensional singleton capability sets"
        )
    scalar = sum(
        p[l] * act.per_state[l].beings[0].coords[0] for l in range(act.num_states)
    )
    target = Being((scalar,))
    violations: list[tuple[Being, str]] = []
    for kind in (EXPECTED, AVERAGE):
        points = _mix(act, p, kind).points
        if len(points) != 1 or not coords_equal(points[0], target):
            violations.extend(
                (pt, f"{kind} mix differs from scalar expectation {scalar:.12g}")
                for pt in points
            )
    return PropertyReport(
        "consistency",
        f"act {act.label!r}, scalar expectation {scalar:.12g}",
        tuple(violations),
    )


def check_sure_domination_upper(
    act: Act, p: ProbabilityVector, mix_kind: str = EXPECTED
) -> PropertyReport:
    """Every mix point must be dominated in at least one state.

    Holds for the expected mix by construction; the average mix can exceed
    every state's dominated region (joint averages of incomparable members),
    which is the documented counterexample behaviour.
    """
    mix = _mix(act, p, mix_kind)
    violations = tuple(
        (pt, "not dominated by any state's capability set")
        for pt in mix.points
        if not in_union_region(pt, act.per_state)
    )
    return PropertyReport(
        "sure-domination-upper", f"act {act.label!r}, {mix_kind} mix", violations
    )


def check_sure_domination_lower(mix: MixedSet, act: Act) -> PropertyReport:
    """Every corner of the intersection region must be dominated by the mix."""
    corners = intersection_corners(act.per_state)
    violations = tuple(
        (corner, "intersection corner not dominated by any mix point")
        for corner in corners
        if not any(weak_dominates(pt, corner) for pt in mix.points)
    )
    return PropertyReport(
        "sure-domination-lower",
        f"act {act.label!r}, {mix.kind.value} mix, {len(corners)} corners",
        violations,
    )


def check_linearity(
    act: Act,
    p: ProbabilityVector,
    shift: Sequence[float],
    scale: Sequence[float],
    mix_kind: str = EXPECTED,
) -> PropertyReport:
    """Mixing commutes with componentwise shifts and positive rescaling."""
    if len(shift) != act.dimension or len(scale) != act.dimension:
        raise PreconditionError("shift and scale must match the act's dimension")
    if any(not f > 0 for f in scale):
        raise PreconditionError("scale factors must be strictly positive")
    base = _mix(act, p, mix_kind).points
    violations: list[tuple[Being, str]] = []

    mixed_shifted = _mix(act.translate(shift), p, mix_kind).points
    shifted_mix = [Being(c + o for c, o in zip(pt.coords, shift)) for pt in base]
    for pt, reason in _set_mismatches(mixed_shifted, shifted_mix):
        violations.append((pt, f"shift: {reason}"))

    mixed_scaled = _mix(act.scale(scale), p, mix_kind).points
    scaled_mix = [Being(c * f for c, f in zip(pt.coords, scale)) for pt in base]
    for pt, reason in _set_mismatches(mixed_scaled, scaled_mix):
        violations.append((pt, f"scale: {reason}"))

    return PropertyReport(
        "linearity",
        f"act {act.label!r}, {mix_kind} mix, shift {tuple(shift)}, scale {tuple(scale)}",
        tuple(violations),
    )


def check_monotonicity_sets(
    act_a: Act, act_b: Act, p: ProbabilityVector, mix_kind: str = EXPECTED
) -> PropertyReport:
    """Dominating every state's set can only improve the mix."""
    if act_a.num_states != act_b.num_states:
        raise PreconditionError("acts must share the state space")
    dominated_everywhere = all(
        at_least_as_good(b_set, a_set)
        for a_set, b_set in zip(act_a.per_state, act_b.per_state)
    )
    if not dominated_everywhere:
        return PropertyReport(
            "monotonicity-sets",
            f"{act_a.label!r} vs {act_b.label!r}: second act does not dominate "
            "the first in every state",
            applicable=False,
        )
    mix_a = _mix(act_a, p, mix_kind).points
    mix_b = _mix(act_b, p, mix_kind).points
    violations = tuple(
        _undominated(mix_a, mix_b, "mix point of the dominated act left undominated")
    )
    return PropertyReport(
        "monotonicity-sets",
        f"{act_a.label!r} vs {act_b.label!r}, {mix_kind} mix",
        violations,
    )


def check_monotonicity_probs(
    act: Act,
    p: ProbabilityVector,
    source_state: int,
    target_state: int,
    mass: float,
    mix_kind: str = EXPECTED,
) -> PropertyReport:
    """Shifting probability mass toward a dominating state improves the mix.

    Applicable only when the target state's set dominates the source state's.
    The expected mix satisfies this; the average mix does not in general.
    """
    states = act.num_states
    if not (0 <= source_state < states and 0 <= target_state < states):
        raise PreconditionError("state indices out of range")
    if not 0 < mass <= p[source_state]:
        raise PreconditionError(
            f"mass shift must lie in (0, {p[source_state]:.12g}], got {mass:.12g}"
        )
    if not at_least_as_good(act.per_state[target_state], act.per_state[source_state]):
        return PropertyReport(
            "monotonicity-probs",
            f"act {act.label!r}: state {target_state} does not dominate "
            f"state {source_state}",
            applicable=False,
        )
    before = _mix(act, p, mix_kind).points
    after = _mix(act, p.shift_mass(source_state, target_state, mass), mix_kind).points
    violations = tuple(
        _undominated(before, after, "pre-shift mix point left undominated after shift")
    )
    return PropertyReport(
        "monotonicity-probs",
        f"act {act.label!r}, {mix_kind} mix, mass {mass:.12g} from state "
        f"{source_state} to state {target_state}",
        violations,
    )


def check_expected_below_average(act: Act, p: ProbabilityVector) -> PropertyReport:
    """Every expected-mix point is dominated by some average-mix point."""
    expected_points = expected_set(act, p).points
    average_points = average_set(act, p).points
    violations = tuple(
        _undominated(
            expected_points, average_points, "expected point not dominated by the average set"
        )
    )
    return PropertyReport(
        "expected-below-average", f"act {act.label!r}", violations
    )


def run_axiom_illustrations(act: Act, p: ProbabilityVector) -> PropertyReport:
    """Union enlarges, intersection shrinks: both confirmed per state pair.

    For every ordered pair of states, the union of the two sets must be at
    least as good as the first, and the first must be at least as good as the
    corner set of the pair's intersection region.
    """
    violations: list[tuple[Being, str]] = []
    pairs = 0
    for l in range(act.num_states):
        for lp in range(act.num_states):
            if l == lp:
                continue
            pairs += 1
            a_set = act.per_state[l]
            other = act.per_state[lp]
            union = CapabilitySet(a_set.beings + other.beings)
            if not at_least_as_good(union, a_set):
                violations.append(
                    (a_set.beings[0], f"union of states {l},{lp} fails to cover state {l}")
                )
            corner_set = CapabilitySet(intersection_corners([a_set, other]))
            if not at_least_as_good(a_set, corner_set):
                violations.append(
                    (
                        corner_set.beings[0],
                        f"state {l} fails to cover the pair ({l},{lp}) intersection corners",
                    )
                )
    return PropertyReport(
        "axioms", f"act {act.label!r}, {pairs} state pairs", tuple(violations)
    )


def random_instance(
    rng: random.Random,
    *,
    max_states: int = 3,
    max_dim: int = 3,
    max_set_size: int = 4,
    coord_values: Sequence[float] = tuple(range(11)),
) -> tuple[Act, ProbabilityVector]:
    """Small random act with integer coordinates and a random simplex vector.

    Integer coordinates keep every comparison far away from the tolerance, so
    pass/fail outcomes are unambiguous.
    """
    states = rng.randint(1, max_states)
    dim = rng.randint(1, max_dim)
    sets = []
    for l in range(states):
        members = [
            Being(rng.choice(coord_values) for _ in range(dim))
            for _ in range(rng.randint(1, max_set_size))
        ]
        sets.append(CapabilitySet(members, label=f"s{l + 1}"))
    raw = [rng.random() + 1e-6 for _ in range(states)]
    total = sum(raw)
    probs = [r / total for r in raw]
    probs[-1] = max(0.0, 1.0 - sum(probs[:-1]))
    return Act(sets, label="random"), ProbabilityVector(probs)
