"""Command-line interface: scenario files in, result documents out.

Subcommands mirror the library operations; results are JSON documents that
are byte-identical across runs apart from the trailing timing field.  Exit
status is 0 on success, 1 when ``check --strict`` finds a violation, and 2 on
any input problem.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import properties
from .errors import CapmixError
from .geometry import at_least_as_good, compare_sets
from .mixing import (
    DEFAULT_ENUMERATION_CAP,
    Act,
    ChainCertificate,
    MixedSet,
    ProbabilityVector,
    average_pf,
    average_set,
    expected_set,
    sandwich_check,
)
from .milp import export_finite_model
from .plot import render_scenario_svg
from .properties import PropertyReport
from .scenario import Scenario, load_scenario, round12

CAP_ENV_VAR = "CAPMIX_CAP"

_MIX_CHOICES = ("expected", "average")
_PROPERTY_CHOICES = (
    "consistency",
    "sure-domination-upper",
    "sure-domination-lower",
    "sandwich",
    "linearity",
    "monotonicity-sets",
    "monotonicity-probs",
    "expected-below-average",
    "axioms",
)


def _num(x: float) -> int | float:
    rounded = round12(x)
    return int(rounded) if rounded == int(rounded) and abs(rounded) < 1e15 else rounded


def _points_payload(points) -> list[list[int | float]]:
    return [[_num(c) for c in p.coords] for p in points]


def _certificate_payload(cert: ChainCertificate, states: tuple[str, ...]) -> dict:
    return {
        "selection": _points_payload(cert.selection),
        "adjusted": _points_payload(cert.adjusted),
        "chain": [states[i] for i in cert.permutation],
        "order_binaries": {
            f"d_{l + 1}_{lp + 1}": value
            for (l, lp), value in sorted(cert.order_binaries().items())
        },
    }


def _provenance_payload(mix: MixedSet, states: tuple[str, ...]) -> list[dict]:
    if isinstance(mix.provenance[0] if mix.provenance else None, ChainCertificate):
        return [_certificate_payload(cert, states) for cert in mix.provenance]
    return [
        {"combinations": [_points_payload(combo) for combo in combos]}
        for combos in mix.provenance
    ]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capmix",
        description="Mix capability sets across uncertain states: average and "
        "expected aggregation, property checks, MILP export, and figures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, summary in (
        ("average", "all probability-weighted combinations (one member per state)"),
        ("expected", "maximal chain-constrained aggregates with certificates"),
        ("pf", "Pareto frontier of the average set"),
        ("compare", "preference verdict between two acts' mixed sets"),
        ("check", "run the property suite or one named property"),
        ("export-milp", "emit the finite-set model as solver-ready text"),
        ("plot", "render a 2-D SVG figure of the mix over the state regions"),
    ):
        cmd = sub.add_parser(command, help=summary)
        cmd.add_argument("scenario", help="path to a scenario file")
        cmd.add_argument("--act", help="act name (optional when the scenario has one act)")
        cmd.add_argument("--acts", help="two act names, comma separated (compare/check)")
        cmd.add_argument(
            "--mix", choices=_MIX_CHOICES, default="expected", help="mix kind where relevant"
        )
        cmd.add_argument(
            "--property", choices=_PROPERTY_CHOICES, help="restrict check to one property"
        )
        cmd.add_argument(
            "--strict", action="store_true", help="exit 1 when check finds a violation"
        )
        cmd.add_argument("--out", help="write output to this path instead of stdout")
        cmd.add_argument("--cap", type=int, help="enumeration cap override")
    return parser


def _resolve_cap(args: argparse.Namespace) -> int:
    if args.cap is not None:
        return args.cap
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is not None:
        try:
            return int(raw)
        except ValueError:
            raise CapmixError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from None
    return DEFAULT_ENUMERATION_CAP


def _mix_of_kind(act: Act, p: ProbabilityVector, kind: str, cap: int) -> MixedSet:
    if kind == "average":
        return average_set(act, p, cap=cap)
    return expected_set(act, p, cap=cap)


def _compute_mix(scenario: Scenario, args: argparse.Namespace, cap: int) -> tuple[str, MixedSet]:
    act = scenario.act(args.act)
    p = scenario.probabilities
    if args.command == "average":
        return act.label, average_set(act, p, cap=cap)
    if args.command == "pf":
        return act.label, average_pf(act, p, cap=cap)
    return act.label, expected_set(act, p, cap=cap)


def _split_act_pair(scenario: Scenario, raw: str | None) -> tuple[Act, Act] | None:
    if raw is None:
        return None
    names = [n.strip() for n in raw.split(",")]
    if len(names) != 2:
        raise CapmixError(f"--acts needs exactly two comma-separated names, got {raw!r}")
    return scenario.act(names[0]), scenario.act(names[1])


def _run_check(scenario: Scenario, args: argparse.Namespace, cap: int) -> list[PropertyReport]:
    act = scenario.act(args.act) if args.act else scenario.acts[0][1]
    p = scenario.probabilities
    kind = args.mix
    pair = _split_act_pair(scenario, args.acts)
    ones = [1.0] * act.dimension
    twos = [2.0] * act.dimension

    reports: list[PropertyReport] = []

    def want(name: str) -> bool:
        return args.property is None or args.property == name

    if want("consistency"):
        if act.dimension == 1 and all(len(s) == 1 for s in act.per_state):
            reports.append(properties.check_consistency(act, p))
        else:
            reports.append(
                PropertyReport(
                    "consistency",
                    "needs one-dimensional singleton sets; not applicable here",
                    applicable=False,
                )
            )
    if want("sure-domination-upper"):
        reports.append(properties.check_sure_domination_upper(act, p, kind))
    if want("sure-domination-lower"):
        reports.append(
            properties.check_sure_domination_lower(_mix_of_kind(act, p, kind, cap), act)
        )
    if want("sandwich"):
        sandwich = sandwich_check(_mix_of_kind(act, p, kind, cap), act)
        violations = tuple(
            [(pt, "outside every state's dominated region") for pt in sandwich.upper_violations]
            + [(pt, "intersection corner left undominated") for pt in sandwich.lower_violations]
        )
        reports.append(
            PropertyReport("sandwich", f"act {act.label!r}, {kind} mix", violations)
        )
    if want("linearity"):
        reports.append(properties.check_linearity(act, p, ones, twos, kind))
    if want("monotonicity-sets"):
        if pair is None:
            reports.append(
                PropertyReport(
                    "monotonicity-sets",
                    "needs two acts (--acts A,B); not applicable here",
                    applicable=False,
                )
            )
        else:
            reports.append(properties.check_monotonicity_sets(pair[0], pair[1], p, kind))
    if want("monotonicity-probs"):
        chosen = None
        for source in range(act.num_states):
            for target in range(act.num_states):
                if source == target or p[source] <= 0:
                    continue
                if at_least_as_good(act.per_state[target], act.per_state[source]):
                    chosen = (source, target)
                    break
            if chosen:
                break
        if chosen is None:
            reports.append(
                PropertyReport(
                    "monotonicity-probs",
                    "no state pair with a dominating target; not applicable here",
                    applicable=False,
                )
            )
        else:
            source, target = chosen
            reports.append(
                properties.check_monotonicity_probs(
                    act, p, source, target, p[source] / 2.0, kind
                )
            )
    if want("expected-below-average"):
        reports.append(properties.check_expected_below_average(act, p))
    if want("axioms"):
        reports.append(properties.run_axiom_illustrations(act, p))
    return reports


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _result_json(doc: dict, elapsed: float) -> str:
    doc["timing_seconds"] = round(elapsed, 6)
    return json.dumps(doc, indent=2) + "\n"


def _dispatch(args: argparse.Namespace) -> int:
    scenario_path = Path(args.scenario)
    raw = scenario_path.read_bytes()
    scenario = load_scenario(scenario_path)
    digest = hashlib.sha256(raw).hexdigest()
    cap = _resolve_cap(args)
    started = time.perf_counter()

    base = {
        "version": 1,
        "operation": args.command,
        "input": {"path": scenario_path.name, "sha256": digest},
    }

    if args.command in ("average", "expected", "pf"):
        act_label, mix = _compute_mix(scenario, args, cap)
        doc = {
            **base,
            "act": act_label,
            "parameters": {"probabilities": [_num(x) for x in scenario.probabilities.probs]},
            "points": _points_payload(mix.points),
            "provenance": _provenance_payload(mix, scenario.states),
        }
        _emit(_result_json(doc, time.perf_counter() - started), args.out)
        return 0

    if args.command == "compare":
        pair = _split_act_pair(scenario, args.acts)
        if pair is None:
            raise CapmixError("compare needs --acts FIRST,SECOND")
        first, second = pair
        p = scenario.probabilities
        mix_first = _mix_of_kind(first, p, args.mix, cap)
        mix_second = _mix_of_kind(second, p, args.mix, cap)
        verdict = compare_sets(
            mix_first.as_capability_set(first.label),
            mix_second.as_capability_set(second.label),
        )
        preferred = None
        if verdict.direction == "first":
            preferred = first.label
        elif verdict.direction == "second":
            preferred = second.label
        doc = {
            **base,
            "acts": [first.label, second.label],
            "parameters": {"mix": args.mix},
            "relation": verdict.relation.value,
            "preferred": preferred,
            "witness": list(_points_payload([verdict.witness])[0]) if verdict.witness else None,
            "points": {
                first.label: _points_payload(mix_first.points),
                second.label: _points_payload(mix_second.points),
            },
        }
        _emit(_result_json(doc, time.perf_counter() - started), args.out)
        return 0

    if args.command == "check":
        reports = _run_check(scenario, args, cap)
        failed = [r for r in reports if r.applicable and not r.holds]
        doc = {
            **base,
            "parameters": {"mix": args.mix, "property": args.property},
            "reports": [r.to_dict() for r in reports],
            "violations_found": bool(failed),
        }
        _emit(_result_json(doc, time.perf_counter() - started), args.out)
        return 1 if failed and args.strict else 0

    if args.command == "export-milp":
        act = scenario.act(args.act)
        model = export_finite_model(act, scenario.probabilities)
        _emit(model.to_text(), args.out)
        return 0

    if args.command == "plot":
        act = scenario.act(args.act)
        mix = _mix_of_kind(act, scenario.probabilities, args.mix, cap)
        title = scenario.title or scenario_path.stem
        _emit(render_scenario_svg(act, mix, title=f"{title} ({args.mix} mix)"), args.out)
        return 0

    raise CapmixError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (CapmixError, OSError, ValueError) as exc:
        print(f"capmix: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
