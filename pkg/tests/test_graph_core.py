"""Tests for graphs, the link-star order, components and symmetries."""

import networkx as nx
import pytest
from hypothesis import given

from raaglift.graph_core import (
    ClassShape,
    Graph,
    GraphError,
    SymmetryCeilingError,
    above_set,
    adjacent_sets,
    compose_maps,
    conj_components,
    distance,
    extend_symmetries,
    graph_symmetries,
    invert_map,
    is_component_union,
    is_identity_map,
    is_symmetry,
    leq_linkstar,
    ls_class,
    order_vertices,
    strictly_above,
)
from tests.strategies import graphs


@pytest.fixture
def path3() -> Graph:
    """The path a - b - c."""
    return Graph.from_edges("abc", [("a", "b"), ("b", "c")])


class TestGraphConstruction:
    def test_rejects_self_loop(self):
        """A self-loop is not a simplicial edge."""
        with pytest.raises(GraphError, match="Self-loop"):
            Graph.from_edges("ab", [("a", "a")])

    def test_rejects_duplicate_edge(self):
        """The same edge listed twice, in either orientation, is rejected."""
        with pytest.raises(GraphError, match="Duplicate edge"):
            Graph.from_edges("ab", [("a", "b"), ("b", "a")])

    def test_rejects_unknown_endpoint(self):
        with pytest.raises(GraphError, match="unknown endpoints"):
            Graph.from_edges("ab", [("a", "c")])

    def test_rejects_duplicate_vertex(self):
        with pytest.raises(GraphError, match="Duplicate vertices"):
            Graph.from_edges(["a", "a"], [])

    def test_canonical_order_is_document_order(self, c4: Graph):
        """Sorting follows the order vertices were listed in."""
        assert c4.sort({"z", "w", "y"}) == ("w", "y", "z")
        assert c4.sorted_edges() == [("w", "x"), ("w", "z"), ("x", "y"), ("y", "z")]

    def test_isolated_vertices(self):
        g = Graph.from_edges("abc", [("a", "b")])
        assert g.isolated_vertices == ("c",)
        assert g.has_isolated_vertices

    def test_induced_keeps_order(self, c4: Graph):
        sub = c4.induced({"z", "x", "w"})
        assert sub.vertices == ("w", "x", "z")
        assert len(sub.edges) == 2


class TestLinkStarOrder:
    def test_opposite_corners_of_square_are_equivalent(self, c4: Graph):
        """lk(w) = {x, z} lies in st(y) and vice versa."""
        assert leq_linkstar(c4, "w", "y")
        assert leq_linkstar(c4, "y", "w")
        assert not leq_linkstar(c4, "w", "x")

    def test_leaf_is_strictly_below_its_neighbour(self, path3: Graph):
        """In a - b - c, the ends are equivalent and b is strictly above both."""
        assert leq_linkstar(path3, "a", "c")
        assert leq_linkstar(path3, "c", "a")
        assert strictly_above(path3, "b", "a")
        assert not strictly_above(path3, "a", "b")
        assert above_set(path3, "a") == {"a", "b", "c"}

    def test_unknown_vertex_raises(self, c4: Graph):
        with pytest.raises(GraphError):
            leq_linkstar(c4, "w", "q")

    def test_class_shapes(self, c4: Graph):
        """Square classes are discrete pairs, triangle classes are complete."""
        members, shape = ls_class(c4, "w")
        assert members == {"w", "y"}
        assert shape is ClassShape.DISCRETE
        k3 = Graph.from_edges("abc", [("a", "b"), ("b", "c"), ("a", "c")])
        members, shape = ls_class(k3, "a")
        assert members == {"a", "b", "c"}
        assert shape is ClassShape.COMPLETE

    def test_order_puts_strictly_larger_first(self):
        """The hub of a star comes before its leaves."""
        star = Graph.from_edges("lhm", [("h", "l"), ("h", "m")])
        order = order_vertices(star)
        assert order.index("h") < order.index("l")
        assert order.index("h") < order.index("m")

    @given(graphs())
    def test_classes_are_complete_or_discrete(self, g: Graph):
        """Every link-star class induces a clique or an edgeless graph."""
        for v in g.vertices:
            members, _ = ls_class(g, v)
            assert v in members

    @given(graphs())
    def test_order_respects_strict_relation(self, g: Graph):
        order = order_vertices(g)
        assert sorted(order) == sorted(g.vertices)
        position = {v: i for i, v in enumerate(order)}
        for u in g.vertices:
            for v in g.vertices:
                if strictly_above(g, u, v):
                    assert position[u] < position[v]


class TestComponents:
    def test_conj_components_of_square(self, c4: Graph):
        """Off st(w) only y remains."""
        assert conj_components(c4, "w") == [frozenset({"y"})]

    def test_components_ordered_by_least_vertex(self):
        g = Graph.from_edges("vabcd", [("v", "a"), ("b", "c")])
        comps = conj_components(g, "v")
        assert comps == [frozenset({"b", "c"}), frozenset({"d"})]

    def test_component_union(self):
        g = Graph.from_edges("vabcd", [("v", "a"), ("b", "c")])
        assert is_component_union(g, "v", {"b", "c", "d"})
        assert not is_component_union(g, "v", {"b"})
        assert not is_component_union(g, "v", {"a"})

    def test_adjacent_sets(self, c4: Graph):
        assert adjacent_sets(c4, {"w"}, {"x", "y"})
        assert not adjacent_sets(c4, {"w"}, {"y"})
        with pytest.raises(GraphError, match="not disjoint"):
            adjacent_sets(c4, {"w"}, {"w"})

    def test_distance(self, c4: Graph):
        assert distance(c4, "w", "y") == 2
        g = Graph.from_edges("ab", [])
        assert distance(g, "a", "b") is None


class TestSymmetries:
    def test_square_has_dihedral_symmetry_group(self, c4: Graph):
        symmetries = graph_symmetries(c4)
        assert len(symmetries) == 8
        assert is_identity_map(symmetries[0])

    def test_triangle_has_six(self):
        k3 = Graph.from_edges("abc", [("a", "b"), ("b", "c"), ("a", "c")])
        assert len(graph_symmetries(k3)) == 6

    def test_ceiling(self, c4: Graph):
        with pytest.raises(SymmetryCeilingError):
            graph_symmetries(c4, ceiling=3)

    def test_candidates_restrict_images(self, c4: Graph):
        fixed = {"w": ["w"], "x": ["x", "z"], "y": ["y"], "z": ["x", "z"]}
        found = list(extend_symmetries(c4, c4, fixed))
        assert len(found) == 2

    def test_map_helpers(self):
        rotate = {"a": "b", "b": "c", "c": "a"}
        assert is_identity_map(compose_maps(rotate, invert_map(rotate)))
        assert compose_maps(rotate, rotate) == {"a": "c", "b": "a", "c": "b"}

    @given(graphs(max_vertices=6))
    def test_count_matches_networkx(self, g: Graph):
        """The backtracking search finds every automorphism networkx finds."""
        nxg = g.to_networkx()
        matcher = nx.isomorphism.GraphMatcher(nxg, nxg)
        expected = sum(1 for _ in matcher.isomorphisms_iter())
        found = graph_symmetries(g)
        assert len(found) == expected
        assert all(is_symmetry(g, m) for m in found)
