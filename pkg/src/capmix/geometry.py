"""Points, dominance relations, Pareto filtering and set-preference verdicts.

A *being* is a point in the non-negative orthant describing one attainable
multidimensional welfare outcome.  A *capability set* is a finite non-empty
collection of beings of uniform dimension; its dominated region is everything
weakly below at least one member.  All comparisons use a single fixed
absolute tolerance ``EPS`` per coordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterable, Sequence

from .errors import DimensionMismatchError

#: Absolute per-coordinate tolerance for every >=, <= and equality test.
EPS = 1e-9


@dataclass(frozen=True)
class Being:
    """One attainable welfare bundle: finite, non-negative coordinates."""

    coords: tuple[float, ...]

    def __init__(self, coords: Iterable[float]) -> None:
        tup = tuple(float(c) for c in coords)
        if not tup:
            raise ValueError("a being needs at least one dimension")
        for i, c in enumerate(tup):
            if not math.isfinite(c):
                raise ValueError(f"coordinate {i} is not finite: {c!r}")
            if c < 0:
                raise ValueError(f"coordinate {i} is negative: {c!r}")
        object.__setattr__(self, "coords", tup)

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def __repr__(self) -> str:
        inner = ", ".join(f"{c:g}" for c in self.coords)
        return f"Being(({inner}))"


@dataclass(frozen=True)
class CapabilitySet:
    """Finite non-empty set of beings of uniform dimension.

    Members whose coordinates coincide within ``EPS`` are deduplicated on
    construction (first occurrence kept, input order preserved).
    """

    beings: tuple[Being, ...]
    label: str | None = None

    def __init__(self, beings: Iterable[Being | Sequence[float]], label: str | None = None) -> None:
        members: list[Being] = []
        for raw in beings:
            b = raw if isinstance(raw, Being) else Being(raw)
            if members and b.dimension != members[0].dimension:
                raise DimensionMismatchError(members[0].dimension, b.dimension, "capability set")
            if not any(coords_equal(b, seen) for seen in members):
                members.append(b)
        if not members:
            raise ValueError("a capability set must be non-empty")
        object.__setattr__(self, "beings", tuple(members))
        object.__setattr__(self, "label", label)

    @property
    def dimension(self) -> int:
        return self.beings[0].dimension

    def __len__(self) -> int:
        return len(self.beings)

    def translate(self, offset: Sequence[float]) -> CapabilitySet:
        """New set with `offset` added componentwise to every member."""
        if len(offset) != self.dimension:
            raise DimensionMismatchError(self.dimension, len(offset), "translate")
        return CapabilitySet(
            (Being(c + o for c, o in zip(b.coords, offset)) for b in self.beings), self.label
        )

    def scale(self, factors: Sequence[float]) -> CapabilitySet:
        """New set with every member multiplied componentwise by `factors`."""
        if len(factors) != self.dimension:
            raise DimensionMismatchError(self.dimension, len(factors), "scale")
        return CapabilitySet(
            (Being(c * f for c, f in zip(b.coords, factors)) for b in self.beings), self.label
        )


class Relation(Enum):
    """Strongest preference relation holding between two capability sets."""

    STRICTLY_PREFERRED = "strictly_preferred"
    AT_LEAST_AS_GOOD = "at_least_as_good"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class PreferenceVerdict:
    """Outcome of comparing two capability sets, with direction.

    ``direction`` names the preferred side (``"first"`` or ``"second"``) for
    directed relations and is ``None`` for Equivalent / Incomparable.
    ``witness`` is, for a strict verdict, a member of the preferred set that
    the other set fails to dominate.

    For finite sets a one-way at-least-as-good relation that is not strict
    forces the mutual relation, so the strongest label collapses to either
    StrictlyPreferred, Equivalent or Incomparable; AT_LEAST_AS_GOOD exists as
    the semantic category implied by the first two.
    """

    relation: Relation
    direction: str | None = None
    witness: Being | None = None

    def at_least_as_good(self, side: str) -> bool:
        """Whether `side` ("first"/"second") is at least as good as the other."""
        if self.relation is Relation.EQUIVALENT:
            return True
        if self.relation in (Relation.STRICTLY_PREFERRED, Relation.AT_LEAST_AS_GOOD):
            return self.direction == side
        return False


def _check_same_dimension(dim: int, other: int, context: str) -> None:
    if dim != other:
        raise DimensionMismatchError(dim, other, context)


def weak_dominates(a: Being, b: Being) -> bool:
    """True when `a` is at least as large as `b` in every dimension (within EPS)."""
    _check_same_dimension(a.dimension, b.dimension, "weak_dominates")
    return all(x >= y - EPS for x, y in zip(a.coords, b.coords))


def strictly_dominates(a: Being, b: Being) -> bool:
    """Weak dominance plus at least one coordinate better beyond EPS."""
    return weak_dominates(a, b) and any(x > y + EPS for x, y in zip(a.coords, b.coords))


def coords_equal(a: Being, b: Being) -> bool:
    """Componentwise equality within EPS."""
    _check_same_dimension(a.dimension, b.dimension, "coords_equal")
    return all(abs(x - y) <= EPS for x, y in zip(a.coords, b.coords))


def meet(a: Being, b: Being) -> Being:
    """Componentwise minimum of two beings."""
    _check_same_dimension(a.dimension, b.dimension, "meet")
    return Being(min(x, y) for x, y in zip(a.coords, b.coords))


def pareto_frontier(points: Sequence[Being]) -> list[Being]:
    """The maximal points of `points`: nothing left that another point dominates.

    Points equal within EPS count as duplicates and only the lexicographically
    smallest representative is kept.  The result is sorted lexicographically.
    """
    if not points:
        raise ValueError("pareto_frontier of an empty collection")
    dim = points[0].dimension
    for p in points[1:]:
        _check_same_dimension(dim, p.dimension, "pareto_frontier")

    # Dedup in ascending lexicographic order so each group's representative
    # is its smallest member.
    reps: list[Being] = []
    for p in sorted(points, key=lambda b: b.coords):
        if not any(coords_equal(p, r) for r in reps):
            reps.append(p)

    frontier = [
        p for p in reps if not any(strictly_dominates(q, p) for q in reps if q is not p)
    ]
    return frontier


def in_dominated_region(b: Being, capability_set: CapabilitySet) -> bool:
    """True when some member of the set weakly dominates `b`."""
    _check_same_dimension(capability_set.dimension, b.dimension, "in_dominated_region")
    return any(weak_dominates(member, b) for member in capability_set.beings)


def in_union_region(b: Being, sets: Sequence[CapabilitySet]) -> bool:
    """True when `b` lies in the dominated region of at least one set."""
    if not sets:
        raise ValueError("in_union_region needs at least one set")
    return any(in_dominated_region(b, s) for s in sets)


def in_intersection_region(b: Being, sets: Sequence[CapabilitySet]) -> bool:
    """True when `b` lies in the dominated region of every set."""
    if not sets:
        raise ValueError("in_intersection_region needs at least one set")
    return all(in_dominated_region(b, s) for s in sets)


def intersection_corners(sets: Sequence[CapabilitySet]) -> list[Being]:
    """Maximal points of the intersection of the sets' dominated regions.

    A point is dominated by every set exactly when it sits below the
    componentwise minimum of one member per set, so the corners are the
    Pareto frontier of all such minima.  The union of the corners' dominated
    regions is exactly the intersection region.
    """
    if not sets:
        raise ValueError("intersection_corners needs at least one set")
    dim = sets[0].dimension
    for s in sets[1:]:
        _check_same_dimension(dim, s.dimension, "intersection_corners")
    meets = []
    for combo in product(*(s.beings for s in sets)):
        low = combo[0]
        for z in combo[1:]:
            low = meet(low, z)
        meets.append(low)
    return pareto_frontier(meets)


def at_least_as_good(candidate: CapabilitySet, baseline: CapabilitySet) -> bool:
    """True when every member of `baseline` is dominated by `candidate`."""
    _check_same_dimension(candidate.dimension, baseline.dimension, "at_least_as_good")
    return all(in_dominated_region(b, candidate) for b in baseline.beings)


def compare_sets(first: CapabilitySet, second: CapabilitySet) -> PreferenceVerdict:
    """Strongest preference relation between two capability sets.

    `second` is at least as good as `first` when every member of `first` is
    dominated by `second`; the relation is strict when additionally some
    member of the preferred set escapes the other set's dominated region.
    Mutual at-least-as-good yields Equivalent, neither yields Incomparable.
    """
    second_over_first = at_least_as_good(second, first)
    first_over_second = at_least_as_good(first, second)
    if second_over_first and first_over_second:
        return PreferenceVerdict(Relation.EQUIVALENT)
    if second_over_first:
        witness = next(b for b in second.beings if not in_dominated_region(b, first))
        return PreferenceVerdict(Relation.STRICTLY_PREFERRED, "second", witness)
    if first_over_second:
        witness = next(b for b in first.beings if not in_dominated_region(b, second))
        return PreferenceVerdict(Relation.STRICTLY_PREFERRED, "first", witness)
    return PreferenceVerdict(Relation.INCOMPARABLE)
