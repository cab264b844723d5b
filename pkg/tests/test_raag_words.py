"""Tests for words, normal forms, cyclic reduction and centralisers."""

import pytest
from hypothesis import given

from raaglift.graph_core import Graph, leq_linkstar, star
from raaglift.raag_words import (
    BudgetExceededError,
    Letter,
    Word,
    WordError,
    bfs_oracle_equals,
    centralizer_decomposition,
    cyclic_reduce,
    equals,
    esupp,
    is_conjugate_to_generator,
    project,
    rank,
    reduce,
    signed_counts,
    supp,
    word_link,
)
from tests.strategies import graph_and_word


def _w(g: Graph, text: str) -> Word:
    return Word.parse(g, text)


class TestParsing:
    def test_powers_expand(self, c4: Graph):
        w = _w(c4, "x^2 y^-1")
        assert w.letters == (Letter("x", 1), Letter("x", 1), Letter("y", -1))
        assert w.format() == "x x y^-1"

    def test_unknown_vertex(self, c4: Graph):
        with pytest.raises(WordError):
            _w(c4, "w q")

    def test_bad_exponent(self, c4: Graph):
        with pytest.raises(WordError, match="exponent"):
            _w(c4, "w^two")

    def test_identity_prints_as_one(self, c4: Graph):
        assert str(Word.identity(c4)) == "1"

    def test_words_over_different_graphs_do_not_multiply(self, c4: Graph):
        other = Graph.from_edges("w", [])
        with pytest.raises(WordError, match="different ambient graphs"):
            _ = _w(c4, "w") * Word.generator(other, "w")


class TestNormalForm:
    def test_commuting_conjugation_cancels(self, c4: Graph):
        """w and x commute, so w x w^-1 is x."""
        assert reduce(_w(c4, "w x w^-1")) == _w(c4, "x")

    def test_non_commuting_conjugation_stays(self, c4: Graph):
        assert len(reduce(_w(c4, "w y w^-1"))) == 3

    def test_shuffle_to_cancel(self, c4: Graph):
        """x w x^-1 cancels through the commuting w."""
        assert not reduce(_w(c4, "x w x^-1 w^-1"))

    def test_normal_form_is_canonical(self, c4: Graph):
        assert reduce(_w(c4, "x w")) == reduce(_w(c4, "w x"))
        assert equals(_w(c4, "w x"), _w(c4, "x w"))
        assert not equals(_w(c4, "w y"), _w(c4, "y w"))

    def test_support(self, c4: Graph):
        assert supp(_w(c4, "w x w^-1")) == {"x"}
        assert esupp(_w(c4, "y w y^-1")) == {"w"}

    @given(graph_and_word())
    def test_reduce_is_idempotent_and_shortens(self, gw):
        _, w = gw
        r = reduce(w)
        assert reduce(r) == r
        assert len(r) <= len(w)
        assert equals(w, r)
        assert not reduce(w * w.inverse())

    @given(graph_and_word(max_length=6))
    def test_triviality_agrees_with_brute_force(self, gw):
        """A word is trivial exactly when shuffles and cancellations empty it."""
        g, w = gw
        assert bfs_oracle_equals(w, Word.identity(g), budget=6) == (not reduce(w))


class TestBruteForceOracle:
    def test_equal_words(self, c4: Graph):
        assert bfs_oracle_equals(_w(c4, "w x"), _w(c4, "x w"))

    def test_unequal_words(self, c4: Graph):
        assert not bfs_oracle_equals(_w(c4, "w y"), _w(c4, "y w"))

    def test_budget(self, c4: Graph):
        with pytest.raises(BudgetExceededError):
            bfs_oracle_equals(_w(c4, "w x y z"), _w(c4, "z y x w"), budget=6)


class TestCyclicReduction:
    def test_conjugate_of_generator(self, c4: Graph):
        split = cyclic_reduce(_w(c4, "x z x^-1"))
        assert split.conjugator == _w(c4, "x")
        assert split.core == _w(c4, "z")
        assert is_conjugate_to_generator(_w(c4, "x z x^-1"), "z")
        assert not is_conjugate_to_generator(_w(c4, "x z x^-1"), "x")

    def test_cyclically_reduced_word_has_empty_conjugator(self, c4: Graph):
        split = cyclic_reduce(_w(c4, "w y"))
        assert not split.conjugator
        assert len(split.core) == 2

    @given(graph_and_word())
    def test_recomposes(self, gw):
        _, w = gw
        split = cyclic_reduce(w)
        assert equals(split.conjugator * split.core * split.conjugator.inverse(), w)
        assert not cyclic_reduce(split.core).conjugator


class TestCentralizer:
    def test_link_of_generator(self, c4: Graph):
        assert word_link(_w(c4, "w")) == {"x", "z"}

    def test_power_of_primitive_word(self, c4: Graph):
        """(w y)^2 has a single primitive factor and commutes with x and z."""
        data = centralizer_decomposition(_w(c4, "w y w y"))
        assert data.factors == ((_w(c4, "w y"), 2),)
        assert data.link == {"x", "z"}
        assert rank(_w(c4, "w y w y")) == 3

    def test_commuting_letters_split(self, c4: Graph):
        data = centralizer_decomposition(_w(c4, "w x"))
        assert [k for _, k in data.factors] == [1, 1]
        assert rank(_w(c4, "w x")) == 2

    def test_trivial_word(self, c4: Graph):
        with pytest.raises(WordError):
            centralizer_decomposition(_w(c4, "w w^-1"))

    @given(graph_and_word())
    def test_factors_recompose_core(self, gw):
        g, w = gw
        core = cyclic_reduce(w).core
        if not core:
            return
        product = Word.identity(g)
        for root, k in centralizer_decomposition(w).factors:
            product = product * root.power(k)
        assert equals(product, core)

    @given(graph_and_word())
    def test_rank_is_bounded_by_every_star(self, gw):
        """Each support vertex has a star at least the rank; at equality it lies
        below the whole support."""
        g, w = gw
        core = cyclic_reduce(w).core
        if not core:
            return
        r = rank(core)
        support = supp(core)
        for v in support:
            assert len(star(g, v)) >= r
            if len(star(g, v)) == r:
                assert all(leq_linkstar(g, v, u) for u in support)


class TestCounting:
    def test_signed_counts(self, c4: Graph):
        counts = signed_counts(_w(c4, "w x w^-1 w^-1 y"))
        assert counts == {"w": -1, "x": 1, "y": 1, "z": 0}

    def test_project(self, c4: Graph):
        k1 = Graph.from_edges("a", [])
        projected = project(_w(c4, "w y^-1"), dict.fromkeys("wxyz", "a"), k1)
        assert projected == _w(k1, "a a^-1")
