"""Mixing procedures for capability sets under state uncertainty.

Two aggregations are provided.  The *average* mix takes every combination of
one member per state and aggregates it with the state probabilities.  The
*expected* mix instead aggregates per-state beings that are (a) dominated by
their state's set and (b) totally ordered across states; its maximal points
are computed exactly by enumerating one anchor member per state together with
a chain order and taking cumulative componentwise minima down the chain,
which dominates every other feasible assignment for that anchor/order pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import permutations, product
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DimensionMismatchError, InvalidProbabilityError
from .geometry import (
    EPS,
    Being,
    CapabilitySet,
    coords_equal,
    in_union_region,
    intersection_corners,
    meet,
    strictly_dominates,
    weak_dominates,
)

#: Default ceiling on enumeration work (combinations, chain evaluations).
DEFAULT_ENUMERATION_CAP = 10_000_000

#: Default ceiling on the brute-force oracle's candidate-tuple count.
DEFAULT_ORACLE_CAP = 1_000_000


@dataclass(frozen=True)
class ProbabilityVector:
    """Per-state probabilities: non-negative, summing to one within 1e-9."""

    probs: tuple[float, ...]

    def __init__(self, probs: Iterable[float]) -> None:
        tup = tuple(float(p) for p in probs)
        if not tup:
            raise InvalidProbabilityError("a probability vector must not be empty")
        for i, p in enumerate(tup):
            if not math.isfinite(p) or p < 0:
                raise InvalidProbabilityError(f"probability {i} is invalid: {p!r}")
        total = math.fsum(tup)
        if abs(total - 1.0) > 1e-9:
            raise InvalidProbabilityError(f"probabilities sum to {total:.12g}")
        object.__setattr__(self, "probs", tup)

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, index: int) -> float:
        return self.probs[index]

    def shift_mass(self, source: int, target: int, amount: float) -> ProbabilityVector:
        """Move `amount` of probability mass from `source` to `target`."""
        if source == target:
            raise InvalidProbabilityError("source and target states must differ")
        if not 0 < amount <= self.probs[source] + EPS:
            raise InvalidProbabilityError(
                f"mass shift {amount:.12g} outside (0, {self.probs[source]:.12g}]"
            )
        shifted = list(self.probs)
        shifted[source] = max(0.0, shifted[source] - amount)
        shifted[target] += amount
        return ProbabilityVector(shifted)


@dataclass(frozen=True)
class Act:
    """Maps every state of the world to one capability set."""

    per_state: tuple[CapabilitySet, ...]
    label: str = "act"

    def __init__(self, per_state: Iterable[CapabilitySet], label: str = "act") -> None:
        sets = tuple(per_state)
        if not sets:
            raise ValueError("an act needs at least one state")
        dim = sets[0].dimension
        for s in sets[1:]:
            if s.dimension != dim:
                raise DimensionMismatchError(dim, s.dimension, "act")
        object.__setattr__(self, "per_state", sets)
        object.__setattr__(self, "label", label)

    @property
    def num_states(self) -> int:
        return len(self.per_state)

    @property
    def dimension(self) -> int:
        return self.per_state[0].dimension

    def with_state(self, index: int, capability_set: CapabilitySet) -> Act:
        sets = list(self.per_state)
        sets[index] = capability_set
        return Act(sets, self.label)

    def translate(self, offset: Sequence[float]) -> Act:
        return Act((s.translate(offset) for s in self.per_state), self.label)

    def scale(self, factors: Sequence[float]) -> Act:
        return Act((s.scale(factors) for s in self.per_state), self.label)


class MixKind(Enum):
    AVERAGE = "average"
    AVERAGE_PF = "average_pf"
    EXPECTED = "expected"


@dataclass(frozen=True)
class ChainCertificate:
    """Witness for one expected-mix point.

    ``selection`` holds the anchor member chosen in each state, ``permutation``
    lists state indices from the bottom of the chain upward, and ``adjusted``
    holds the beings actually aggregated: the cumulative componentwise minima
    of the anchors from each chain position to the top.
    """

    selection: tuple[Being, ...]
    permutation: tuple[int, ...]
    adjusted: tuple[Being, ...]

    def __post_init__(self) -> None:
        n = len(self.selection)
        if sorted(self.permutation) != list(range(n)) or len(self.adjusted) != n:
            raise ValueError("certificate indices are inconsistent")
        for z, b in zip(self.selection, self.adjusted):
            if not weak_dominates(z, b):
                raise ValueError(f"adjusted being {b} escapes its anchor {z}")
        for lo, hi in zip(self.permutation, self.permutation[1:]):
            if not weak_dominates(self.adjusted[hi], self.adjusted[lo]):
                raise ValueError("adjusted beings do not form a chain")

    @classmethod
    def from_selection(cls, selection: Sequence[Being], permutation: Sequence[int]) -> ChainCertificate:
        """Build the certificate whose adjusted beings are the suffix minima."""
        adjusted: list[Being | None] = [None] * len(selection)
        running: Being | None = None
        for idx in reversed(tuple(permutation)):
            running = selection[idx] if running is None else meet(selection[idx], running)
            adjusted[idx] = running
        return cls(tuple(selection), tuple(permutation), tuple(adjusted))  # type: ignore[arg-type]

    def aggregate(self, p: ProbabilityVector) -> Being:
        return _weighted_sum(self.adjusted, p)

    def order_binaries(self) -> dict[tuple[int, int], int]:
        """Chain order as pairwise binaries: 0 forces state l below state l'."""
        position = {state: pos for pos, state in enumerate(self.permutation)}
        return {
            (l, lp): 0 if position[l] < position[lp] else 1
            for l in range(len(self.selection))
            for lp in range(len(self.selection))
            if l != lp
        }


@dataclass(frozen=True)
class MixedSet:
    """Result of a mixing procedure with per-point provenance.

    For the average kinds each provenance entry is the tuple of per-state
    combinations that aggregate to the point; for the expected kind it is the
    point's ChainCertificate.
    """

    kind: MixKind
    points: tuple[Being, ...]
    provenance: tuple[object, ...]

    def __post_init__(self) -> None:
        if len(self.points) != len(self.provenance):
            raise ValueError("points and provenance must align")

    @property
    def dimension(self) -> int:
        return self.points[0].dimension

    def as_capability_set(self, label: str | None = None) -> CapabilitySet:
        return CapabilitySet(self.points, label)


def _weighted_sum(beings: Sequence[Being], p: ProbabilityVector) -> Being:
    dim = beings[0].dimension
    return Being(
        math.fsum(p[l] * beings[l].coords[h] for l in range(len(beings)))
        for h in range(dim)
    )


def _validate_inputs(act: Act, p: ProbabilityVector) -> None:
    if len(p) != act.num_states:
        raise InvalidProbabilityError(
            f"act has {act.num_states} states but {len(p)} probabilities were given"
        )


def average_set(act: Act, p: ProbabilityVector, *, cap: int = DEFAULT_ENUMERATION_CAP) -> MixedSet:
    """All probability-weighted combinations of one member per state.

    The result is the raw aggregate set (deduplicated within EPS, no Pareto
    filtering); every point carries the combinations that produce it.
    """
    _validate_inputs(act, p)
    count = math.prod(len(s) for s in act.per_state)
    if count > cap:
        raise CapacityError(count, cap, "average-set enumeration")

    by_coords: dict[tuple[float, ...], list[tuple[Being, ...]]] = {}
    for combo in product(*(s.beings for s in act.per_state)):
        point = _weighted_sum(combo, p)
        by_coords.setdefault(point.coords, []).append(combo)

    # Merge keys that only differ within EPS (distinct float noise on equal values).
    merged: list[tuple[Being, list[tuple[Being, ...]]]] = []
    for coords, combos in by_coords.items():
        point = Being(coords)
        for existing, bucket in merged:
            if coords_equal(existing, point):
                bucket.extend(combos)
                break
        else:
            merged.append((point, combos))

    merged.sort(key=lambda item: item[0].coords)
    return MixedSet(
        MixKind.AVERAGE,
        tuple(point for point, _ in merged),
        tuple(tuple(combos) for _, combos in merged),
    )


def average_pf(act: Act, p: ProbabilityVector, *, cap: int = DEFAULT_ENUMERATION_CAP) -> MixedSet:
    """Pareto frontier of the average set (provenance carried through)."""
    mix = average_set(act, p, cap=cap)
    keep = [
        i
        for i, pt in enumerate(mix.points)
        if not any(strictly_dominates(other, pt) for j, other in enumerate(mix.points) if j != i)
    ]
    return MixedSet(
        MixKind.AVERAGE_PF,
        tuple(mix.points[i] for i in keep),
        tuple(mix.provenance[i] for i in keep),
    )


def chain_value(cert: ChainCertificate, p: ProbabilityVector) -> Being:
    """Aggregate value of a certificate's anchor/order pair.

    Recomputes the suffix minima from the selection and permutation; the
    resulting assignment componentwise-dominates every feasible assignment
    with the same anchors and order, so this is the best value the pair can
    contribute.
    """
    rebuilt = ChainCertificate.from_selection(cert.selection, cert.permutation)
    return rebuilt.aggregate(p)


def _update_frontier(
    entries: list[tuple[Being, ChainCertificate]], point: Being, cert: ChainCertificate
) -> None:
    # First certificate wins on ties: a point weakly dominated by (or equal
    # within EPS to) an existing entry is discarded.
    for existing, _ in entries:
        if weak_dominates(existing, point):
            return
    entries[:] = [(q, c) for q, c in entries if not strictly_dominates(point, q)]
    entries.append((point, cert))


def expected_set(act: Act, p: ProbabilityVector, *, cap: int = DEFAULT_ENUMERATION_CAP) -> MixedSet:
    """Maximal aggregates over dominated, totally ordered per-state beings.

    Enumerates every anchor selection and every chain order, evaluates the
    cumulative-minimum assignment for each, and keeps the Pareto-maximal
    aggregate points.  Each surviving point carries the first certificate (in
    selection-then-order enumeration order) that attains it.
    """
    _validate_inputs(act, p)
    states = act.num_states
    evaluations = math.prod(len(s) for s in act.per_state) * math.factorial(states)
    if evaluations > cap:
        raise CapacityError(evaluations, cap, "expected-set enumeration")

    frontier: list[tuple[Being, ChainCertificate]] = []
    orders = tuple(permutations(range(states)))
    for selection in product(*(s.beings for s in act.per_state)):
        for order in orders:
            cert = ChainCertificate.from_selection(selection, order)
            _update_frontier(frontier, cert.aggregate(p), cert)

    frontier.sort(key=lambda entry: entry[0].coords)
    return MixedSet(
        MixKind.EXPECTED,
        tuple(point for point, _ in frontier),
        tuple(cert for _, cert in frontier),
    )


@dataclass(frozen=True)
class SandwichReport:
    """Outcome of the two-sided containment check for a mixed set.

    The mix passes when every one of its points is dominated in at least one
    state (upper bound) and every corner of the intersection region is
    dominated by some mix point (lower bound).
    """

    holds: bool
    upper_violations: tuple[Being, ...]
    lower_violations: tuple[Being, ...]

    def describe(self) -> str:
        if self.holds:
            return "sandwich condition holds"
        parts = []
        if self.upper_violations:
            pts = ", ".join(repr(b) for b in self.upper_violations)
            parts.append(f"points outside every state's dominated region: {pts}")
        if self.lower_violations:
            pts = ", ".join(repr(b) for b in self.lower_violations)
            parts.append(f"intersection corners left undominated: {pts}")
        return "; ".join(parts)


def sandwich_check(mix: MixedSet, act: Act) -> SandwichReport:
    """Check the intersection-below / union-above containment for `mix`."""
    upper = tuple(
        point for point in mix.points if not in_union_region(point, act.per_state)
    )
    corners = intersection_corners(act.per_state)
    lower = tuple(
        corner
        for corner in corners
        if not any(weak_dominates(point, corner) for point in mix.points)
    )
    return SandwichReport(not upper and not lower, upper, lower)


def oracle_tuple_count(act: Act) -> int:
    """Number of candidate tuples the brute-force oracle would enumerate."""
    grids = _candidate_grids(act)
    return math.prod(len(g) for g in grids)


def _candidate_grids(act: Act) -> list[np.ndarray]:
    """Per-state candidate beings: the per-dimension value grid, restricted to
    each state's dominated region."""
    dim = act.dimension
    values = [
        sorted({b.coords[h] for s in act.per_state for b in s.beings})
        for h in range(dim)
    ]
    grid = np.array(list(product(*values)), dtype=float)
    grids = []
    for s in act.per_state:
        anchors = np.array([b.coords for b in s.beings], dtype=float)
        dominated = (grid[:, None, :] <= anchors[None, :, :] + EPS).all(axis=2).any(axis=1)
        grids.append(grid[dominated])
    return grids


def _maxima_rows(arr: np.ndarray) -> np.ndarray:
    """EPS-maximal rows of `arr`, ascending lexicographic, one per EPS-group."""
    if len(arr) == 1:
        return arr
    order = np.lexsort(arr.T[::-1])[::-1]
    walked = arr[order]
    kept = np.empty_like(arr)
    count = 0
    for row in walked:
        if count and bool((kept[:count] >= row - EPS).all(axis=1).any()):
            continue
        kept[count] = row
        count += 1
    front = kept[:count]
    # The descending walk can miss dominators that are lexicographically
    # smaller only within EPS; a final pairwise pass over the small survivor
    # set settles those corners and collapses EPS-duplicates.
    ge_all = (front[:, None, :] >= front[None, :, :] - EPS).all(axis=2)
    gt_any = (front[:, None, :] > front[None, :, :] + EPS).any(axis=2)
    front = front[~(ge_all & gt_any).any(axis=0)]
    front = front[np.lexsort(front.T[::-1])]
    unique = [front[0]]
    for row in front[1:]:
        if not bool((np.abs(row - unique[-1]) <= EPS).all()):
            unique.append(row)
    return np.array(unique)


def brute_force_expected(
    act: Act, p: ProbabilityVector, *, cap: int = DEFAULT_ORACLE_CAP
) -> list[Being]:
    """Independent grid-enumeration oracle for the expected mix.

    Every binding bound on an aggregated coordinate is some member coordinate,
    so the optimum lies on the per-dimension grid of values occurring in any
    state.  This enumerates all per-state grid candidates that are dominated
    by their state's set, keeps tuples that admit a total order across states,
    aggregates them, and Pareto-filters the aggregates.  Tiny instances only.
    """
    _validate_inputs(act, p)
    grids = _candidate_grids(act)
    total = math.prod(len(g) for g in grids)
    if total > cap:
        raise CapacityError(total, cap, "brute-force candidate enumeration")

    states = act.num_states
    comparable: dict[tuple[int, int], np.ndarray] = {}
    for l in range(states):
        for lp in range(l + 1, states):
            le = (grids[l][:, None, :] <= grids[lp][None, :, :] + EPS).all(axis=2)
            ge = (grids[l][:, None, :] >= grids[lp][None, :, :] - EPS).all(axis=2)
            comparable[(l, lp)] = le | ge

    rows = np.arange(len(grids[0]), dtype=np.intp)[:, None]
    for lp in range(1, states):
        joined = []
        for start in range(0, len(rows), 65536):
            block = rows[start : start + 65536]
            mask = comparable[(0, lp)][block[:, 0], :]
            for l in range(1, lp):
                mask = mask & comparable[(l, lp)][block[:, l], :]
            left, right = np.nonzero(mask)
            joined.append(np.hstack([block[left], right[:, None]]))
        rows = np.vstack(joined)

    if len(rows) == 0:
        # A total order always exists for at least the all-origin tuple.
        raise AssertionError("no totally ordered candidate tuple found")

    aggregates = np.zeros((len(rows), act.dimension))
    for l in range(states):
        aggregates += p[l] * grids[l][rows[:, l]]
    unique = np.unique(aggregates, axis=0)
    return [Being(row) for row in _maxima_rows(unique)]


__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "DEFAULT_ORACLE_CAP",
    "Act",
    "ChainCertificate",
    "MixKind",
    "MixedSet",
    "ProbabilityVector",
    "SandwichReport",
    "average_pf",
    "average_set",
    "brute_force_expected",
    "chain_value",
    "expected_set",
    "oracle_tuple_count",
    "sandwich_check",
]
