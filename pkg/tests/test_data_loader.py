"""Tests for reading and writing documents."""

import json

import pytest

from raaglift.autos import (
    AutWord,
    CommutatorTransvection,
    Inner,
    Inversion,
    PartialConj,
    Side,
    Symmetry,
    Transvection,
)
from raaglift.data_loader import (
    DataLoadError,
    automorphism_to_doc,
    cover_to_doc,
    dumps,
    generator_to_doc,
    graph_to_doc,
    infer_format,
    parse_automorphism,
    parse_cover,
    parse_generator,
    parse_graph,
    parse_voltages,
)
from raaglift.graph_core import Graph
from raaglift.raag_words import Word
from tests.conftest import FIXTURES


class TestParseGraph:
    def test_graph(self):
        g = parse_graph({"vertices": ["a", "b", "c"], "edges": [["a", "b"]]})
        assert g.vertices == ("a", "b", "c")
        assert g.is_adjacent("a", "b")

    def test_edges_are_optional(self):
        assert len(parse_graph({"vertices": ["a"]})) == 1

    @pytest.mark.parametrize(
        "doc, match",
        [
            ([], "must be a mapping"),
            ({"edges": []}, "missing 'vertices'"),
            ({"vertices": [1, 2]}, "list of strings"),
            ({"vertices": ["a"], "edges": [["a", "a"]]}, "Invalid graph"),
            ({"vertices": ["a"], "edges": [["a", "b"]]}, "Invalid graph"),
        ],
    )
    def test_malformed(self, doc, match):
        with pytest.raises(DataLoadError, match=match):
            parse_graph(doc)

    def test_round_trip(self, c4: Graph):
        assert parse_graph(graph_to_doc(c4)) == c4


class TestParseCover:
    def test_cover_document(self, loader):
        c = loader.load_cover(FIXTURES / "covers" / "c8.yaml")
        assert len(c.total) == 8
        assert c.vmap["5"] == "w"
        assert parse_cover(cover_to_doc(c)).vmap == c.vmap

    def test_map_must_be_mapping(self, c4: Graph):
        doc = {"total": graph_to_doc(c4), "base": graph_to_doc(c4), "map": ["w"]}
        with pytest.raises(DataLoadError, match="mapping"):
            parse_cover(doc)

    def test_voltages(self, loader):
        spec = loader.load_voltages(FIXTURES / "voltages" / "c4_n2.yaml")
        assert spec.n == 2
        with pytest.raises(DataLoadError, match="integer"):
            parse_voltages({"base": {"vertices": ["a"]}, "n": "two"})
        with pytest.raises(DataLoadError, match=r"\[a, b, t\]"):
            parse_voltages({"base": {"vertices": ["a"]}, "n": 2, "voltages": [["a"]]})


class TestGenerators:
    @pytest.mark.parametrize(
        "gen",
        [
            Inversion("w"),
            Transvection("w", "y", Side.RIGHT, -1),
            PartialConj("w", frozenset({"y"}), -1),
            Symmetry.from_dict({"w": "y", "x": "x", "y": "w", "z": "z"}),
        ],
    )
    def test_records_parse_back(self, c4: Graph, gen):
        assert parse_generator(generator_to_doc(gen), c4) == gen

    def test_inner_and_commutator_records(self, hex_cover):
        total = hex_cover.total
        inner = Inner(Word.parse(total, "x1 y1"), -1)
        doc = {"kind": "inner", "word": "x1 y1", "power": -1}
        assert generator_to_doc(inner) == doc
        assert parse_generator(generator_to_doc(inner), total) == inner
        ct = CommutatorTransvection("x1", "y1", "z1")
        assert parse_generator(generator_to_doc(ct), total) == ct

    def test_transvection_side_defaults_to_left(self, c4: Graph):
        doc = {"kind": "transvection", "target": "w", "multiplier": "y"}
        assert parse_generator(doc, c4) == Transvection("w", "y", Side.LEFT, 1)

    def test_unknown_kind(self, c4: Graph):
        with pytest.raises(DataLoadError, match="Unknown generator kind"):
            parse_generator({"kind": "twist"}, c4)

    def test_invalid_generator(self, c4: Graph):
        with pytest.raises(DataLoadError, match="Invalid transvection"):
            parse_generator(
                {"kind": "transvection", "target": "w", "multiplier": "x"}, c4
            )

    def test_automorphism_document_forms(self, c4: Graph):
        records = [{"kind": "inversion", "vertex": "w"}]
        as_list = parse_automorphism(records, c4)
        as_mapping = parse_automorphism({"generators": records, "verified": True}, c4)
        assert as_list == as_mapping == AutWord.of(c4, Inversion("w"))
        assert parse_automorphism({}, c4) == AutWord.identity(c4)
        with pytest.raises(DataLoadError):
            parse_automorphism({"generators": "w"}, c4)

    def test_verified_flag(self, c4: Graph):
        doc = automorphism_to_doc(AutWord.of(c4, Inversion("x")), verified=True)
        assert doc == {
            "generators": [{"kind": "inversion", "vertex": "x"}],
            "verified": True,
        }
        assert "verified" not in automorphism_to_doc(AutWord.identity(c4))


class TestFiles:
    def test_infer_format(self, tmp_path):
        assert infer_format(tmp_path / "a.yml") == "yaml"
        assert infer_format(tmp_path / "a.JSON") == "json"
        with pytest.raises(DataLoadError, match="extension"):
            infer_format(tmp_path / "a.txt")

    def test_missing_file(self, loader, tmp_path):
        with pytest.raises(DataLoadError, match="File not found"):
            loader.load_graph(tmp_path / "absent.yaml")

    def test_malformed_yaml(self, loader, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("vertices: [a, b\n", encoding="utf-8")
        with pytest.raises(DataLoadError, match="Error parsing"):
            loader.load_graph(path)

    def test_parse_errors_name_the_file(self, loader, tmp_path):
        path = tmp_path / "graph.json"
        path.write_text(json.dumps({"edges": []}), encoding="utf-8")
        with pytest.raises(DataLoadError, match="graph.json"):
            loader.load_graph(path)

    def test_write_and_reload(self, loader, c4: Graph, tmp_path):
        a = AutWord.of(c4, Transvection("w", "y"), Inversion("x"))
        for name in ("aut.yaml", "nested/aut.json"):
            path = loader.write_document(automorphism_to_doc(a), tmp_path / name)
            assert loader.load_automorphism(path, c4) == a

    def test_json_dump_is_sorted(self):
        expected = '{\n  "a": [\n    2\n  ],\n  "b": 1\n}\n'
        assert dumps({"b": 1, "a": [2]}, "json", 2) == expected
