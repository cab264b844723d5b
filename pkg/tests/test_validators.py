"""Tests for covering map validation reports."""

from raaglift.covering import CoveringMap
from raaglift.graph_core import Graph
from raaglift.validators import CoverValidator, ValidationIssue, ValidationReport
from tests.conftest import FIXTURES


def _square() -> Graph:
    return Graph.from_edges("wxyz", [("w", "x"), ("x", "y"), ("y", "z"), ("z", "w")])


class TestValidationReport:
    def test_errors_fail_the_report(self):
        report = ValidationReport(total_vertices=4, total_edges=4)
        report.add_issue(ValidationIssue("info", "Note", "only a note"))
        assert report.passed
        report.add_issue(ValidationIssue("error", "Broken", "bad", count=1))
        assert not report.passed
        summary = report.get_summary()
        assert summary["error_count"] == 1
        assert summary["info_count"] == 1
        assert summary["issues"][1]["category"] == "Broken"

    def test_print_report(self, capsys):
        report = ValidationReport(total_vertices=8, total_edges=8)
        report.add_issue(
            ValidationIssue(
                "error", "Not Simplicial", "Edges collapsed", 1, [{"edge": ["1", "2"]}]
            )
        )
        report.print_report()
        out = capsys.readouterr().out
        assert "[X] FAILED" in out
        assert "[X] Not Simplicial" in out
        assert "e.g. {'edge': ['1', '2']}" in out

    def test_clean_report(self, capsys):
        ValidationReport(total_vertices=1, total_edges=0).print_report()
        assert "No validation issues found" in capsys.readouterr().out


class TestCoverValidator:
    def test_valid_covers_pass(self, loader):
        validator = CoverValidator()
        for name in ("c8", "hex", "notlift", "id_c4"):
            c = loader.load_cover(FIXTURES / "covers" / f"{name}.yaml")
            assert validator.validate_cover(c).passed, name

    def test_collapsed_edge(self):
        total = Graph.from_edges("ab", [("a", "b")])
        base = Graph.from_edges("v", [])
        report = CoverValidator().validate_cover(
            CoveringMap(total, base, {"a": "v", "b": "v"})
        )
        categories = {i.category for i in report.errors}
        assert "Not Simplicial" in categories

    def test_unhit_base_vertex(self):
        base = _square()
        total = Graph.from_edges("wx", [("w", "x")])
        report = CoverValidator().validate_cover(
            CoveringMap(total, base, {"w": "w", "x": "x"})
        )
        categories = {i.category for i in report.errors}
        assert "Not Surjective" in categories

    def test_bad_codomain_stops_early(self):
        base = _square()
        report = CoverValidator().validate_cover(
            CoveringMap(base, base, {v: "q" for v in base.vertices})
        )
        assert [i.category for i in report.errors] == ["Map Codomain"]

    def test_example_limit(self, config, loader):
        c = loader.load_cover(FIXTURES / "covers" / "broken.yaml")
        report = CoverValidator(config).validate_cover(c)
        issue = next(i for i in report.errors if i.category == "Not Locally Bijective")
        assert issue.count >= len(issue.examples)
        assert len(issue.examples) <= 3
