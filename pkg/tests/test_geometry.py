from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capmix.errors import DimensionMismatchError
from capmix.geometry import (
    Being,
    CapabilitySet,
    Relation,
    at_least_as_good,
    compare_sets,
    in_dominated_region,
    in_intersection_region,
    in_union_region,
    intersection_corners,
    pareto_frontier,
    strictly_dominates,
    weak_dominates,
)
from helpers import assert_points, coords_of

A1 = CapabilitySet([(2, 7), (3, 4)], label="s1")
A2 = CapabilitySet([(4, 3), (7, 2)], label="s2")


def _random_being(rng: random.Random, dim: int, hi: int = 10) -> Being:
    return Being(rng.randint(0, hi) for _ in range(dim))


def _random_set(rng: random.Random, dim: int, max_size: int = 4) -> CapabilitySet:
    return CapabilitySet(_random_being(rng, dim) for _ in range(rng.randint(1, max_size)))


class TestBeing:
    def test_coordinates_are_tuples_of_floats(self):
        b = Being([1, 2.5])
        assert b.coords == (1.0, 2.5)
        assert b.dimension == 2

    @pytest.mark.parametrize("bad", [[], [-1.0], [float("nan")], [float("inf"), 1.0]])
    def test_rejects_invalid_coordinates(self, bad):
        with pytest.raises(ValueError):
            Being(bad)


class TestCapabilitySet:
    def test_deduplicates_members(self):
        cs = CapabilitySet([(1, 1), (1, 1), (0, 2)])
        assert coords_of(cs.beings) == [(1, 1), (0, 2)]

    def test_rejects_empty_and_mixed_dimension(self):
        with pytest.raises(ValueError):
            CapabilitySet([])
        with pytest.raises(DimensionMismatchError):
            CapabilitySet([(1, 2), (1, 2, 3)])

    def test_translate_and_scale(self):
        cs = CapabilitySet([(1, 2)]).translate((1, 0)).scale((2, 3))
        assert coords_of(cs.beings) == [(4, 6)]


class TestWeakDominates:
    def test_examples(self):
        assert weak_dominates(Being((3, 10)), Being((3, 4)))
        assert not weak_dominates(Being((2, 7)), Being((4, 3)))

    def test_reflexive(self):
        b = Being((2.5, 0.0, 7.125))
        assert weak_dominates(b, b)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            weak_dominates(Being((1,)), Being((1, 2)))

    def test_reflexive_and_transitive_on_random_sample(self):
        rng = random.Random(20240)
        for _ in range(10_000):
            dim = rng.randint(1, 3)
            a, b, c = (_random_being(rng, dim) for _ in range(3))
            assert weak_dominates(a, a)
            if weak_dominates(a, b) and weak_dominates(b, c):
                assert weak_dominates(a, c)


class TestParetoFrontier:
    def test_average_set_example(self):
        points = [Being(p) for p in [(3, 5), (3.5, 3.5), (4.5, 4.5), (5, 3)]]
        assert coords_of(pareto_frontier(points)) == [(3, 5), (4.5, 4.5), (5, 3)]

    def test_singleton(self):
        b = Being((1, 2))
        assert pareto_frontier([b]) == [b]

    def test_duplicates_collapse(self):
        points = [Being(p) for p in [(1, 1), (1, 1), (0, 2)]]
        assert coords_of(pareto_frontier(points)) == [(0, 2), (1, 1)]

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            pareto_frontier([])

    def test_output_sorted_lexicographically(self):
        points = [Being(p) for p in [(5, 3), (3, 5), (4.5, 4.5)]]
        out = coords_of(pareto_frontier(points))
        assert out == sorted(out)

    def test_random_invariants(self):
        rng = random.Random(7)
        for _ in range(300):
            dim = rng.randint(1, 3)
            points = [_random_being(rng, dim) for _ in range(rng.randint(1, 12))]
            front = pareto_frontier(points)
            for q in front:
                assert not any(strictly_dominates(r, q) for r in front)
            for p in points:
                assert any(weak_dominates(q, p) for q in front)

    @settings(max_examples=200, deadline=None)
    @given(
        st.lists(
            st.tuples(
                st.floats(0, 100, allow_nan=False), st.floats(0, 100, allow_nan=False)
            ),
            min_size=1,
            max_size=12,
        )
    )
    def test_hypothesis_frontier_covers_input(self, raw):
        points = [Being(p) for p in raw]
        front = pareto_frontier(points)
        assert front
        for p in points:
            assert any(weak_dominates(q, p) for q in front)


class TestRegions:
    def test_dominated_region_examples(self):
        assert not in_dominated_region(Being((3.5, 3.5)), A2)
        assert in_dominated_region(Being((2, 7)), A1)
        assert in_dominated_region(Being((2, 2)), A1)

    def test_union_examples(self):
        assert not in_union_region(Being((4.5, 4.5)), [A1, A2])
        assert in_union_region(Being((7, 2)), [A1, A2])
        assert in_union_region(Being((0, 0)), [A1, A2])
        with pytest.raises(ValueError):
            in_union_region(Being((0, 0)), [])

    def test_intersection_examples(self):
        assert in_intersection_region(Being((3, 3)), [A1, A2])
        assert not in_intersection_region(Being((3.5, 3)), [A1, A2])
        assert not in_intersection_region(Being((8, 8)), [A1, A2])
        with pytest.raises(ValueError):
            in_intersection_region(Being((0, 0)), [])

    def test_union_and_intersection_match_per_set_loops(self):
        rng = random.Random(99)
        for _ in range(300):
            dim = rng.randint(1, 3)
            sets = [_random_set(rng, dim) for _ in range(rng.randint(1, 3))]
            probe = _random_being(rng, dim)
            individually = [in_dominated_region(probe, s) for s in sets]
            assert in_union_region(probe, sets) == any(individually)
            assert in_intersection_region(probe, sets) == all(individually)


class TestIntersectionCorners:
    def test_two_state_example(self):
        assert coords_of(intersection_corners([A1, A2])) == [(3, 3)]

    def test_single_set_is_its_own_frontier(self):
        cs = CapabilitySet([(1, 5), (3, 3), (2, 2)])
        assert intersection_corners([cs]) == pareto_frontier(list(cs.beings))

    def test_four_by_three_meets(self):
        b1 = CapabilitySet([(3, 10), (4, 5), (7, 3), (8, 1)])
        b2 = CapabilitySet([(2, 5), (5, 4), (10, 2)])
        # Componentwise minima of the 12 member pairs, maximal ones kept
        # (scanned by hand with a nested loop).
        assert_points(intersection_corners([b1, b2]), [(2, 5), (4, 4), (5, 3), (7, 2), (8, 1)])

    def test_corners_characterize_the_intersection_region(self):
        rng = random.Random(4242)
        for _ in range(200):
            dim = rng.randint(1, 3)
            sets = [_random_set(rng, dim) for _ in range(rng.randint(1, 3))]
            corners = intersection_corners(sets)
            for _ in range(5):
                probe = _random_being(rng, dim)
                expected = in_intersection_region(probe, sets)
                via_corners = any(weak_dominates(c, probe) for c in corners)
                assert expected == via_corners


class TestCompareSets:
    def test_figure_sets(self, figure2_sets):
        a, b, c = figure2_sets["A"], figure2_sets["B"], figure2_sets["C"]
        verdict = compare_sets(a, b)
        assert verdict.relation is Relation.STRICTLY_PREFERRED
        assert verdict.direction == "second"
        assert verdict.witness is not None
        assert compare_sets(a, a).relation is Relation.EQUIVALENT
        assert compare_sets(a, c).relation is Relation.INCOMPARABLE

    def test_direction_flips_with_argument_order(self, figure2_sets):
        a, b = figure2_sets["A"], figure2_sets["B"]
        assert compare_sets(b, a).direction == "first"

    def test_at_least_as_good_helper(self):
        union = CapabilitySet(A1.beings + A2.beings)
        assert at_least_as_good(union, A1)
        assert not at_least_as_good(A1, A2)

    def test_strict_forbids_reverse_domination(self):
        rng = random.Random(31337)
        for _ in range(300):
            dim = rng.randint(1, 3)
            first, second = _random_set(rng, dim), _random_set(rng, dim)
            verdict = compare_sets(first, second)
            if verdict.relation is Relation.STRICTLY_PREFERRED:
                reverse = compare_sets(second, first)
                assert reverse.relation is Relation.STRICTLY_PREFERRED
                assert {verdict.direction, reverse.direction} == {"first", "second"}
                winner, loser = (
                    (second, first) if verdict.direction == "second" else (first, second)
                )
                assert not at_least_as_good(loser, winner)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            compare_sets(A1, CapabilitySet([(1, 2, 3)]))
