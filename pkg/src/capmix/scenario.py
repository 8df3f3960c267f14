"""Scenario documents: parse, validate, and canonically serialize.

A scenario is a JSON document with a `version: 1` field carrying the welfare
dimension, labeled states, one probability per state, and one or more named
acts (per state, an array of coordinate arrays).  Validation is strict;
probabilities are never silently renormalized.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import CapmixError, ScenarioFormatError
from .geometry import Being, CapabilitySet
from .mixing import Act, ProbabilityVector

SCENARIO_VERSION = 1

_ALLOWED_KEYS = {
    "version",
    "title",
    "source",
    "notes",
    "dimension",
    "states",
    "probabilities",
    "acts",
}


@dataclass(frozen=True)
class Scenario:
    """A fully validated scenario document."""

    dimension: int
    states: tuple[str, ...]
    probabilities: ProbabilityVector
    acts: tuple[tuple[str, Act], ...]
    title: str | None = None
    source: str | None = None
    notes: str | None = None

    @property
    def act_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.acts)

    def act(self, name: str | None = None) -> Act:
        """Look up an act by name; with one act the name may be omitted."""
        if name is None:
            if len(self.acts) != 1:
                raise ScenarioFormatError(
                    f"scenario has acts {list(self.act_names)}; pick one with --act",
                    "acts",
                )
            return self.acts[0][1]
        for act_name, act in self.acts:
            if act_name == name:
                return act
        raise ScenarioFormatError(f"unknown act {name!r}", "acts")


def _require(condition: bool, message: str, location: str) -> None:
    if not condition:
        raise ScenarioFormatError(message, location)


def _coerce_number(value: object, location: str) -> float:
    _require(
        isinstance(value, (int, float)) and not isinstance(value, bool),
        f"expected a number, got {value!r}",
        location,
    )
    return float(value)  # type: ignore[arg-type]


def parse_scenario(text: str) -> Scenario:
    """Parse and fully validate a scenario document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(
            f"invalid JSON: {exc.msg}", f"line {exc.lineno}, column {exc.colno}"
        ) from None
    _require(isinstance(doc, dict), "top level must be an object", "document")
    unknown = sorted(set(doc) - _ALLOWED_KEYS)
    _require(not unknown, f"unknown keys {unknown}", "document")
    _require(doc.get("version") == SCENARIO_VERSION, "missing or unsupported version (need 1)", "version")

    dimension = doc.get("dimension")
    _require(
        isinstance(dimension, int) and not isinstance(dimension, bool) and dimension >= 1,
        "dimension must be a positive integer",
        "dimension",
    )

    states = doc.get("states")
    _require(
        isinstance(states, list) and states and all(isinstance(s, str) for s in states),
        "states must be a non-empty list of labels",
        "states",
    )
    _require(len(set(states)) == len(states), "state labels must be unique", "states")

    raw_probs = doc.get("probabilities")
    _require(isinstance(raw_probs, list), "probabilities must be a list", "probabilities")
    _require(
        len(raw_probs) == len(states),
        f"{len(raw_probs)} probabilities for {len(states)} states",
        "probabilities",
    )
    numbers = [
        _coerce_number(v, f"probabilities[{i}]") for i, v in enumerate(raw_probs)
    ]
    try:
        probabilities = ProbabilityVector(numbers)
    except CapmixError as exc:
        raise ScenarioFormatError(str(exc), "probabilities") from None

    raw_acts = doc.get("acts")
    _require(
        isinstance(raw_acts, dict) and raw_acts,
        "acts must be a non-empty object of named acts",
        "acts",
    )
    acts: list[tuple[str, Act]] = []
    for name, per_state in raw_acts.items():
        location = f"acts.{name}"
        _require(
            isinstance(per_state, list) and len(per_state) == len(states),
            f"expected one capability set per state ({len(states)})",
            location,
        )
        sets = []
        for l, raw_set in enumerate(per_state):
            set_location = f"{location}[{l}]"
            _require(
                isinstance(raw_set, list) and raw_set,
                "capability set must be a non-empty array of points",
                set_location,
            )
            beings = []
            for n, raw_point in enumerate(raw_set):
                point_location = f"{set_location}[{n}]"
                _require(
                    isinstance(raw_point, list) and len(raw_point) == dimension,
                    f"point must have {dimension} coordinates",
                    point_location,
                )
                coords = [
                    _coerce_number(c, f"{point_location}[{h}]")
                    for h, c in enumerate(raw_point)
                ]
                try:
                    beings.append(Being(coords))
                except ValueError as exc:
                    raise ScenarioFormatError(str(exc), point_location) from None
            sets.append(CapabilitySet(beings, label=states[l]))
        acts.append((name, Act(sets, label=name)))

    def _opt_text(key: str) -> str | None:
        value = doc.get(key)
        if value is None:
            return None
        _require(isinstance(value, str), "must be a string", key)
        return value

    return Scenario(
        dimension=dimension,
        states=tuple(states),
        probabilities=probabilities,
        acts=tuple(acts),
        title=_opt_text("title"),
        source=_opt_text("source"),
        notes=_opt_text("notes"),
    )


def round12(x: float) -> float:
    """Clamp a float to 12 significant digits (the interchange precision)."""
    return float(f"{x:.12g}")


def _num(x: float) -> int | float:
    rounded = round12(x)
    return int(rounded) if rounded == int(rounded) and abs(rounded) < 1e15 else rounded


def scenario_to_text(scenario: Scenario) -> str:
    """Canonical serialization: stable key order, LF endings, short decimals."""
    doc: dict[str, object] = {"version": SCENARIO_VERSION}
    for key in ("title", "source", "notes"):
        value = getattr(scenario, key)
        if value is not None:
            doc[key] = value
    doc["dimension"] = scenario.dimension
    doc["states"] = list(scenario.states)
    doc["probabilities"] = [_num(p) for p in scenario.probabilities.probs]
    doc["acts"] = {
        name: [
            [[_num(c) for c in being.coords] for being in cs.beings]
            for cs in act.per_state
        ]
        for name, act in scenario.acts
    }
    return json.dumps(doc, indent=2) + "\n"


def load_scenario(path: str | Path) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def save_scenario(scenario: Scenario, path: str | Path) -> None:
    Path(path).write_text(scenario_to_text(scenario), encoding="utf-8", newline="\n")


def bundled_scenario_path(name: str) -> Path:
    """Path of a scenario shipped with the package (e.g. ``example3.json``)."""
    path = Path(str(resources.files("capmix").joinpath("data", name)))
    if not path.is_file():
        raise FileNotFoundError(f"no bundled scenario named {name!r}")
    return path


def bundled_scenario_names() -> list[str]:
    data_dir = resources.files("capmix").joinpath("data")
    return sorted(
        entry.name for entry in data_dir.iterdir() if entry.name.endswith(".json")
    )
