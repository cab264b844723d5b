"""Tests for the command layer and the console scripts."""

import json

import pytest

from raaglift.autos import AutWord, PartialConj
from raaglift.cli import _import_script
from raaglift.commands import (
    ExitCode,
    cmd_analyze,
    cmd_census,
    cmd_decompose,
    cmd_identity_lifts,
    cmd_lift,
    cmd_validate,
    emit,
)
from raaglift.config import Config
from raaglift.liftability import verify_lift
from tests.conftest import FIXTURES

COVERS = FIXTURES / "covers"
AUTS = FIXTURES / "automorphisms"
GRAPHS = FIXTURES / "graphs"


class TestValidate:
    def test_valid_cover(self, config):
        result = cmd_validate(COVERS / "c8.yaml", config)
        assert result.exit_code == ExitCode.OK
        assert result.record["valid"]
        assert result.record["deck_order"] == 2
        assert result.record["fibers"]["w"] == ["1", "5"]

    def test_broken_cover(self, config):
        result = cmd_validate(COVERS / "broken.yaml", config)
        assert result.exit_code == ExitCode.INVALID_COVER
        assert not result.record["valid"]
        categories = [i["category"] for i in result.record["validation"]["issues"]]
        assert "Not Locally Bijective" in categories

    def test_missing_file(self, config, tmp_path):
        result = cmd_validate(tmp_path / "nope.yaml", config)
        assert result.exit_code == ExitCode.LOAD_ERROR
        assert result.record["error_type"] == "DataLoadError"


class TestAnalyze:
    def test_notlift(self, config):
        result = cmd_analyze(COVERS / "notlift.yaml", config)
        assert result.exit_code == ExitCode.OK
        assert not result.record["all_liftable"]
        assert "Closures" in result.tables

    def test_broken_cover_is_invalid(self, config):
        result = cmd_analyze(COVERS / "broken.yaml", config)
        assert result.exit_code == ExitCode.INVALID_COVER


class TestLift:
    def test_not_liftable(self, config):
        result = cmd_lift(
            COVERS / "notlift.yaml", AUTS / "notlift_partial_conj_blue.yaml", config
        )
        assert result.exit_code == ExitCode.NOT_LIFTABLE
        assert result.record["verdict"] == "not_liftable"
        assert "lift" not in result.record

    def test_lift_is_written_and_verifies(self, config, loader, c8, tmp_path):
        out = tmp_path / "lift.yaml"
        result = cmd_lift(
            COVERS / "c8.yaml", AUTS / "c8_partial_conj.yaml", config, out
        )
        assert result.exit_code == ExitCode.OK
        assert result.record["lift"]["verified"] is True
        F = loader.load_automorphism(out, c8.total)
        f = AutWord.of(c8.base, PartialConj("w", frozenset({"y"})))
        assert verify_lift(c8, F, f)

    def test_automorphism_over_wrong_graph(self, config):
        result = cmd_lift(COVERS / "c8.yaml", AUTS / "hex_deck.yaml", config)
        assert result.exit_code == ExitCode.LOAD_ERROR


class TestDecompose:
    def test_conjugating(self, config):
        result = cmd_decompose(GRAPHS / "c4.yaml", AUTS / "c4_conjugating.yaml", config)
        assert result.exit_code == ExitCode.OK
        assert result.record["conjugating"]
        assert result.record["steps"] == [
            {"vertex": "w", "component": ["y"], "sign": 1},
            {"vertex": "x", "component": ["z"], "sign": -1},
        ]

    def test_mixed(self, config):
        result = cmd_decompose(GRAPHS / "c4.yaml", AUTS / "c4_mixed.yaml", config)
        assert result.exit_code == ExitCode.OK
        assert not result.record["conjugating"]
        assert len(result.record["h"]["generators"]) == 2
        assert result.record["h_cyclically_reduced"]


class TestIdentityLifts:
    def test_kernel_inner(self, config):
        result = cmd_identity_lifts(
            COVERS / "free.yaml", AUTS / "free_kernel_inner.yaml", config
        )
        assert result.exit_code == ExitCode.OK
        assert result.record["member"]
        assert result.record["ia"]

    def test_non_kernel_inner(self, config):
        result = cmd_identity_lifts(
            COVERS / "free.yaml", AUTS / "free_non_kernel_inner.yaml", config
        )
        assert result.exit_code == ExitCode.NOT_LIFTABLE
        assert not result.record["member"]

    def test_commutator_transvection(self, config):
        result = cmd_identity_lifts(
            COVERS / "hex.yaml", AUTS / "hex_commutator.yaml", config
        )
        assert result.exit_code == ExitCode.OK
        assert result.record["ia"]
        assert result.record["mu_is_identity"]
        assert result.record["corrected_ia"]


class TestCensus:
    def test_square(self, config):
        result = cmd_census(GRAPHS / "c4.yaml", config, max_n=2)
        assert result.exit_code == ExitCode.OK
        assert [r["voltages"] for r in result.record["rows"]] == ["0", "0", "y-z:1"]

    def test_resource_ceiling(self, tmp_path):
        settings = tmp_path / "config" / "settings.yaml"
        settings.parent.mkdir()
        settings.write_text("census:\n  max_covers: 1\n", encoding="utf-8")
        result = cmd_census(GRAPHS / "c4.yaml", Config(settings), max_n=2)
        assert result.exit_code == ExitCode.LOAD_ERROR
        assert result.record["error_type"] == "CensusLimitError"


class TestRendering:
    def test_json_is_byte_stable(self, config):
        first = cmd_analyze(COVERS / "c8.yaml", config).render("json")
        second = cmd_analyze(COVERS / "c8.yaml", config).render("json")
        assert first == second
        doc = json.loads(first)
        assert list(doc) == sorted(doc)
        assert doc["command"] == "analyze"

    def test_human_report(self, config):
        text = cmd_validate(COVERS / "c8.yaml", config).render("human")
        assert "VALIDATE" in text
        assert "[OK] regular, degree 2, deck order 2" in text

    def test_emit_to_file(self, config, tmp_path):
        out = tmp_path / "reports" / "validate.json"
        code = emit(cmd_validate(COVERS / "c8.yaml", config), config, "json", out)
        assert code == 0
        assert json.loads(out.read_text(encoding="utf-8"))["valid"]


class TestScripts:
    def test_validate_script(self, capsys):
        main = _import_script("validate_cover").main
        assert main([str(COVERS / "c8.yaml"), "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["deck_order"] == 2

    def test_lift_script_exit_code(self, capsys):
        main = _import_script("lift_automorphism").main
        code = main(
            [
                str(COVERS / "notlift.yaml"),
                str(AUTS / "notlift_partial_conj_red.yaml"),
                "--format",
                "json",
            ]
        )
        assert code == 3
        assert json.loads(capsys.readouterr().out)["verdict"] == "not_liftable"

    @pytest.mark.parametrize(
        "name",
        [
            "validate_cover",
            "analyze_cover",
            "lift_automorphism",
            "decompose_automorphism",
            "identity_lifts",
            "run_census",
        ],
    )
    def test_scripts_expose_main(self, name):
        assert callable(_import_script(name).main)
