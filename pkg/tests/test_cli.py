from __future__ import annotations

import json
import xml.etree.ElementTree as ET

import pytest

from capmix.cli import main
from capmix.scenario import bundled_scenario_path
from helpers import assert_points

EXAMPLE2 = str(bundled_scenario_path("example2.json"))
EXAMPLE3 = str(bundled_scenario_path("example3.json"))
COUNTEREXAMPLE = str(bundled_scenario_path("counterexample_prob.json"))
FIGURE2 = str(bundled_scenario_path("figure2_sets.json"))


def _run_json(capsys, argv: list[str]) -> tuple[int, dict]:
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestMixCommands:
    def test_average_reproduces_the_combination_table(self, capsys):
        code, doc = _run_json(capsys, ["average", EXAMPLE2])
        assert code == 0
        assert doc["operation"] == "average"
        assert_points([tuple(p) for p in doc["points"]], [(3, 5), (3.5, 3.5), (4.5, 4.5), (5, 3)])
        assert all("combinations" in entry for entry in doc["provenance"])

    def test_expected_lists_certified_points(self, capsys):
        code, doc = _run_json(capsys, ["expected", EXAMPLE3])
        assert code == 0
        points = [tuple(p) for p in doc["points"]]
        for documented in [(2.8, 9), (3, 8.8), (4, 4.8), (4.2, 4), (5, 3.2), (6.6, 3), (7, 2.8), (7.6, 2), (8.4, 1.2)]:
            assert documented in points
        first = doc["provenance"][0]
        assert first["selection"] == [[3, 10], [2, 5]]
        assert first["chain"] == ["s2", "s1"]
        assert first["order_binaries"] == {"d_1_2": 1, "d_2_1": 0}

    def test_pf_filters_the_average(self, capsys):
        code, doc = _run_json(capsys, ["pf", EXAMPLE2])
        assert code == 0
        assert_points([tuple(p) for p in doc["points"]], [(3, 5), (4.5, 4.5), (5, 3)])

    def test_digest_and_points_are_deterministic(self, tmp_path):
        out_a, out_b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["expected", EXAMPLE3, "--out", str(out_a)]) == 0
        assert main(["expected", EXAMPLE3, "--out", str(out_b)]) == 0
        strip = lambda text: [l for l in text.splitlines() if "timing_seconds" not in l]
        assert strip(out_a.read_text()) == strip(out_b.read_text())


class TestCompare:
    def test_covering_act_is_strictly_preferred(self, capsys):
        code, doc = _run_json(capsys, ["compare", FIGURE2, "--acts", "A,B"])
        assert code == 0
        assert doc["relation"] == "strictly_preferred"
        assert doc["preferred"] == "B"
        assert doc["witness"] is not None

    def test_incomparable_abstains(self, capsys):
        code, doc = _run_json(capsys, ["compare", FIGURE2, "--acts", "A,C"])
        assert code == 0
        assert doc["relation"] == "incomparable"
        assert doc["preferred"] is None

    def test_requires_two_acts(self, capsys):
        assert main(["compare", FIGURE2]) == 2
        assert "error" in capsys.readouterr().err


class TestCheck:
    def test_counterexample_average_fails_monotonicity(self, capsys):
        code, doc = _run_json(
            capsys,
            ["check", COUNTEREXAMPLE, "--property", "monotonicity-probs", "--mix", "average"],
        )
        assert code == 0  # not strict
        (report,) = doc["reports"]
        assert report["applicable"] and not report["holds"]
        assert report["violations"] == [
            {"point": [0.5, 0.5], "reason": "pre-shift mix point left undominated after shift"}
        ]

    def test_strict_exit_code(self, capsys):
        code = main(
            ["check", COUNTEREXAMPLE, "--property", "monotonicity-probs", "--mix", "average", "--strict"]
        )
        capsys.readouterr()
        assert code == 1

    def test_expected_mix_passes_strict(self, capsys):
        code = main(
            ["check", COUNTEREXAMPLE, "--property", "monotonicity-probs", "--mix", "expected", "--strict"]
        )
        capsys.readouterr()
        assert code == 0

    def test_full_suite_reports_every_property(self, capsys):
        code, doc = _run_json(capsys, ["check", EXAMPLE2])
        assert code == 0
        names = [r["property"] for r in doc["reports"]]
        assert names == [
            "consistency",
            "sure-domination-upper",
            "sure-domination-lower",
            "sandwich",
            "linearity",
            "monotonicity-sets",
            "monotonicity-probs",
            "expected-below-average",
            "axioms",
        ]

    def test_average_suite_flags_the_union_escape(self, capsys):
        code, doc = _run_json(capsys, ["check", EXAMPLE2, "--mix", "average"])
        assert code == 0
        by_name = {r["property"]: r for r in doc["reports"]}
        assert not by_name["sure-domination-upper"]["holds"]
        assert [4.5, 4.5] in [v["point"] for v in by_name["sure-domination-upper"]["violations"]]

    def test_unknown_property_rejected(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["check", EXAMPLE2, "--property", "nope"])
        assert info.value.code == 2
        capsys.readouterr()

    def test_set_monotonicity_with_act_pair(self, capsys):
        code, doc = _run_json(
            capsys, ["check", FIGURE2, "--acts", "A,B", "--property", "monotonicity-sets"]
        )
        assert code == 0
        (report,) = doc["reports"]
        assert report["applicable"] and report["holds"]

    def test_set_monotonicity_not_applicable_without_pair(self, capsys):
        code, doc = _run_json(
            capsys, ["check", FIGURE2, "--property", "monotonicity-sets"]
        )
        assert code == 0
        (report,) = doc["reports"]
        assert not report["applicable"]


class TestExportMilp:
    def test_model_text_sections(self, capsys):
        code = main(["export-milp", EXAMPLE3])
        out = capsys.readouterr().out
        assert code == 0
        for section in ("OBJECTIVES", "CONSTRAINTS", "BOUNDS", "BINARIES", "END"):
            assert section in out
        assert out.count("delta_") >= 7


class TestPlot:
    def test_svg_structure(self, capsys):
        code = main(["plot", EXAMPLE2, "--mix", "expected"])
        out = capsys.readouterr().out
        assert code == 0
        root = ET.fromstring(out)
        ns = "{http://www.w3.org/2000/svg}"
        markers = [c for c in root.iter(f"{ns}circle") if c.get("class") == "mix-point"]
        outlines = [
            p for p in root.iter(f"{ns}polyline") if p.get("class") == "state-outline"
        ]
        assert len(markers) == 4
        assert len(outlines) == 2


class TestErrorsAndCaps:
    def test_missing_file(self, capsys):
        assert main(["expected", "no-such-file.json"]) == 2
        assert "error" in capsys.readouterr().err

    def test_invalid_probabilities(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(
            json.dumps(
                {
                    "version": 1,
                    "dimension": 1,
                    "states": ["a", "b"],
                    "probabilities": [0.5, 0.6],
                    "acts": {"f": [[[1]], [[2]]]},
                }
            )
        )
        assert main(["expected", str(bad)]) == 2
        assert "sum to 1.1" in capsys.readouterr().err

    def test_unknown_act(self, capsys):
        assert main(["expected", EXAMPLE2, "--act", "nope"]) == 2
        capsys.readouterr()

    def test_cap_flag(self, capsys):
        assert main(["expected", EXAMPLE3, "--cap", "3"]) == 2
        assert "cap" in capsys.readouterr().err

    def test_cap_environment_override(self, capsys, monkeypatch):
        monkeypatch.setenv("CAPMIX_CAP", "3")
        assert main(["expected", EXAMPLE3]) == 2
        capsys.readouterr()
        monkeypatch.setenv("CAPMIX_CAP", "1000000")
        assert main(["expected", EXAMPLE3]) == 0
        capsys.readouterr()

    def test_invalid_cap_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("CAPMIX_CAP", "lots")
        assert main(["expected", EXAMPLE3]) == 2
        assert "CAPMIX_CAP" in capsys.readouterr().err
