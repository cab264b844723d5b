"""Tests for the per-generator liftability analysis of a cover."""

import pytest

from raaglift.analysis import analyze_cover
from raaglift.covering import CoveringMap, IrregularCoverError
from raaglift.graph_core import Graph
from raaglift.liftability import Verdict


class TestNotliftAnalysis:
    @pytest.fixture
    def analysis(self, notlift):
        return analyze_cover(notlift)

    @pytest.mark.parametrize(
        "label, verdict",
        [
            ("T(v4, v3)", Verdict.LIFTABLE),
            ("T(v2, v1)", Verdict.NOT_LIFTABLE),
            ("P(v, {v2, v2p})", Verdict.NOT_LIFTABLE),
            ("P(v, {r1, r2})", Verdict.NOT_LIFTABLE),
            ("P(v, {v2, v2p, r1, r2})", Verdict.LIFTABLE),
            ("P(v, {v4, v4p})", Verdict.LIFTABLE),
        ],
    )
    def test_verdicts(self, analysis, label, verdict):
        row = analysis.find(label)
        assert row is not None, label
        assert row.verdict is verdict

    def test_closures_are_recorded(self, analysis):
        row = analysis.find("P(v, {v2, v2p})")
        assert row.fields["closure"] == ["v2", "v2p", "r1", "r2"]

    def test_merged_closure_listed_once(self, analysis):
        labels = [r.label for r in analysis.of_kind("partial_conj")]
        assert labels.count("P(v, {v2, v2p, r1, r2})") == 1

    def test_inversions_always_lift(self, analysis, notlift):
        inversions = analysis.of_kind("inversion")
        assert len(inversions) == len(notlift.base)
        assert all(r.liftable for r in inversions)

    def test_obstruction_recorded_on_refused_transvections(self, analysis):
        row = analysis.find("T(v2, v1)")
        assert "block_obstruction" in row.fields
        assert "block_obstruction" not in analysis.find("T(v4, v3)").fields

    def test_counts(self, analysis, notlift):
        counts = analysis.counts()
        assert counts["inversions"] == len(notlift.base)
        assert counts["liftable_transvections"] < counts["transvections"]
        assert not analysis.all_liftable

    def test_frame(self, analysis):
        df = analysis.to_frame()
        assert df.columns == ["kind", "generator", "verdict", "detail"]
        assert len(df) == len(analysis.rows)
        assert set(df["verdict"].unique()) == {"liftable", "not_liftable"}


class TestSmallCovers:
    def test_identity_cover_lifts_everything(self, id_c4, id_k3):
        for c in (id_c4, id_k3):
            assert analyze_cover(c).all_liftable

    def test_c8(self, c8):
        analysis = analyze_cover(c8)
        assert analysis.find("T(w, y)").verdict is Verdict.NOT_LIFTABLE
        assert analysis.find("P(w, {y})").liftable
        assert len(analysis.of_kind("symmetry")) == 7
        assert all(r.liftable for r in analysis.of_kind("symmetry"))

    def test_square_transvection_labels(self, id_c4):
        labels = {r.label for r in analyze_cover(id_c4).of_kind("transvection")}
        assert labels == {"T(w, y)", "T(x, z)", "T(y, w)", "T(z, x)"}

    def test_disconnected_regular_cover(self):
        """Three disjoint edges over one edge: every generator lifts."""
        total = Graph.from_edges(
            ["a1", "b1", "a2", "b2", "a3", "b3"],
            [("a1", "b1"), ("a2", "b2"), ("a3", "b3")],
        )
        base = Graph.from_edges(["a", "b"], [("a", "b")])
        c = CoveringMap(total, base, {u: u[0] for u in total.vertices})
        assert c.regular
        assert c.deck.order == 6
        assert analyze_cover(c).all_liftable

    def test_irregular_cover_is_rejected(self):
        """A triangle beside a hexagon triple covers a triangle irregularly."""
        total = Graph.from_edges(
            ["a0", "b0", "c0", "a1", "b1", "c1", "a2", "b2", "c2"],
            [
                ("a0", "b0"),
                ("b0", "c0"),
                ("c0", "a0"),
                ("a1", "b1"),
                ("b1", "c1"),
                ("c1", "a2"),
                ("a2", "b2"),
                ("b2", "c2"),
                ("c2", "a1"),
            ],
        )
        base = Graph.from_edges("abc", [("a", "b"), ("b", "c"), ("c", "a")])
        c = CoveringMap(total, base, {u: u[0] for u in total.vertices})
        assert not c.regular
        with pytest.raises(IrregularCoverError):
            analyze_cover(c)
