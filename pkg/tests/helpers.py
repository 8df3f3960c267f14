"""Shared assertion helpers for the test suite."""

from __future__ import annotations

from typing import Iterable, Sequence

TOL = 1e-9


def coords_of(points) -> list[tuple[float, ...]]:
    return [tuple(p.coords) for p in points]


def close(a: Sequence[float], b: Sequence[float], tol: float = TOL) -> bool:
    return len(a) == len(b) and all(abs(x - y) <= tol for x, y in zip(a, b))


def as_point_set(actual, expected: Iterable[Sequence[float]], tol: float = TOL) -> tuple[list, list]:
    """Return (missing, extra) when matching two point collections within tol."""
    actual_coords = coords_of(actual) if actual and hasattr(actual[0], "coords") else [tuple(p) for p in actual]
    expected_coords = [tuple(p) for p in expected]
    missing = [e for e in expected_coords if not any(close(e, a, tol) for a in actual_coords)]
    extra = [a for a in actual_coords if not any(close(a, e, tol) for e in expected_coords)]
    return missing, extra


def assert_points(actual, expected: Iterable[Sequence[float]], tol: float = TOL) -> None:
    missing, extra = as_point_set(actual, expected, tol)
    assert not missing and not extra, f"missing={missing} extra={extra}"
