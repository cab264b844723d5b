"""Words in a right-angled Artin group and the word problem.

Reduction uses the piling of Crisp, Godelle and Wiest: every vertex owns a
pile, a letter is pushed onto its own pile and leaves a blocking marker on the
piles of the generators it does not commute with. Cancellation happens when the
top of a letter's pile holds its inverse. Reading the piles back from the
bottom, always taking the first vertex (in canonical order) whose bottom entry
is a letter, gives the canonical normal form.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

import networkx as nx

from raaglift.graph_core import Graph, VertexSet

logger = logging.getLogger(__name__)

DEFAULT_BFS_BUDGET = 10


class WordError(ValueError):
    """Raised for malformed words or mismatched ambient graphs."""


class BudgetExceededError(Exception):
    """Raised when the brute-force oracle is asked to search too far."""


@dataclass(frozen=True, order=True)
class Letter:
    """A generator or its inverse."""

    vertex: str
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise WordError(f"Letter sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> Letter:
        return Letter(self.vertex, -self.sign)

    def __str__(self) -> str:
        return self.vertex if self.sign == 1 else f"{self.vertex}^-1"


@dataclass(frozen=True)
class Word:
    """A finite sequence of letters over an ambient graph (not necessarily reduced)."""

    graph: Graph = field(repr=False)
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for letter in self.letters:
            if letter.vertex not in self.graph:
                raise WordError(f"Letter {letter} is not a vertex of the ambient graph")

    @classmethod
    def identity(cls, graph: Graph) -> Word:
        return cls(graph, ())

    @classmethod
    def generator(cls, graph: Graph, v: str, sign: int = 1) -> Word:
        return cls(graph, (Letter(v, sign),))

    @classmethod
    def parse(cls, graph: Graph, text: str) -> Word:
        """Parse whitespace-separated tokens ``name``, ``name^-1`` or ``name^k``.

        Raises:
            WordError: On malformed tokens or unknown vertices
        """
        letters: list[Letter] = []
        for token in text.split():
            name, caret, exponent = token.rpartition("^")
            if not caret:
                name, k = token, 1
            else:
                try:
                    k = int(exponent)
                except ValueError as e:
                    raise WordError(f"Bad exponent in token {token!r}") from e
                if not name or k == 0:
                    raise WordError(f"Bad token {token!r}")
            sign = 1 if k > 0 else -1
            letters.extend(Letter(name, sign) for _ in range(abs(k)))
        return cls(graph, tuple(letters))

    def format(self) -> str:
        return " ".join(str(letter) for letter in self.letters)

    def __str__(self) -> str:
        return self.format() or "1"

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        _check_same_graph(self, other)
        return Word(self.graph, self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(self.graph, tuple(x.inverse() for x in reversed(self.letters)))

    def power(self, k: int) -> Word:
        base = self if k >= 0 else self.inverse()
        return Word(self.graph, base.letters * abs(k))

    @property
    def vertices(self) -> VertexSet:
        """Vertices occurring in the word as written."""
        return frozenset(x.vertex for x in self.letters)


@dataclass(frozen=True)
class CyclicDecomposition:
    """w = conjugator * core * conjugator^-1 with core cyclically reduced."""

    conjugator: Word
    core: Word


@dataclass(frozen=True)
class CentralizerData:
    """Primitive factors of a cyclically reduced word and the link of its support."""

    factors: tuple[tuple[Word, int], ...]
    link: VertexSet


def _check_same_graph(w1: Word, w2: Word) -> None:
    if w1.graph != w2.graph:
        raise WordError("Words live over different ambient graphs")


class _Piles:
    """Heap-of-pieces representation of a word."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.piles: dict[str, deque[int]] = {v: deque() for v in graph.vertices}
        self.size = 0

    def _blocked(self, v: str) -> list[str]:
        g = self.graph
        return [u for u in g.vertices if u != v and not g.commute(u, v)]

    def push(self, letter: Letter) -> None:
        v, e = letter.vertex, letter.sign
        pile = self.piles[v]
        if pile and pile[-1] == -e:
            pile.pop()
            for u in self._blocked(v):
                self.piles[u].pop()
            self.size -= 1
        else:
            pile.append(e)
            for u in self._blocked(v):
                self.piles[u].append(0)
            self.size += 1

    def strip_cyclic_pair(self) -> Letter | None:
        """Cancel a front-extractable letter against its back-extractable inverse."""
        for v in self.graph.vertices:
            pile = self.piles[v]
            if pile and pile[0] and pile[0] == -pile[-1]:
                front = Letter(v, pile[0])
                pile.popleft()
                pile.pop()
                for u in self._blocked(v):
                    self.piles[u].popleft()
                    self.piles[u].pop()
                self.size -= 2
                return front
        return None

    def drain(self) -> tuple[Letter, ...]:
        out: list[Letter] = []
        while self.size:
            for v in self.graph.vertices:
                pile = self.piles[v]
                if pile and pile[0]:
                    out.append(Letter(v, pile.popleft()))
                    for u in self._blocked(v):
                        self.piles[u].popleft()
                    self.size -= 1
                    break
            else:
                raise WordError("Corrupt pile state while reading normal form")
        return tuple(out)


def _pile(w: Word) -> _Piles:
    piles = _Piles(w.graph)
    for letter in w.letters:
        piles.push(letter)
    return piles


def reduce(w: Word) -> Word:
    """Canonical reduced normal form of w."""
    return Word(w.graph, _pile(w).drain())


def equals(w1: Word, w2: Word) -> bool:
    """Group equality of two words over the same graph."""
    _check_same_graph(w1, w2)
    return not reduce(w1 * w2.inverse())


def cyclic_reduce(w: Word) -> CyclicDecomposition:
    """Split w as conjugator * core * conjugator^-1 with a cyclically reduced core."""
    piles = _pile(w)
    stripped: list[Letter] = []
    while (letter := piles.strip_cyclic_pair()) is not None:
        stripped.append(letter)
    core = Word(w.graph, piles.drain())
    conjugator = reduce(Word(w.graph, tuple(stripped)))
    return CyclicDecomposition(conjugator=conjugator, core=core)


def supp(w: Word) -> VertexSet:
    return reduce(w).vertices


def esupp(w: Word) -> VertexSet:
    return cyclic_reduce(w).core.vertices


def word_link(w: Word) -> VertexSet:
    """Vertices outside esupp(w) adjacent to every vertex of esupp(w).

    The empty word has every vertex in its link.
    """
    es = esupp(w)
    g = w.graph
    return frozenset(
        v for v in g.vertices if v not in es and all(g.is_adjacent(v, u) for u in es)
    )


def _extractable_index(letters: list[Letter], graph: Graph, vertex: str) -> int | None:
    """Index of the first occurrence of vertex that can be shuffled to the front."""
    for i, letter in enumerate(letters):
        if letter.vertex == vertex:
            return i
        if not graph.is_adjacent(letter.vertex, vertex):
            return None
    return None


def _root_candidate(w: Word, d: int) -> Word | None:
    """Prefix of w carrying 1/d of every letter count, or None if there is none."""
    counts: dict[str, int] = {}
    for letter in w.letters:
        counts[letter.vertex] = counts.get(letter.vertex, 0) + 1
    if any(c % d for c in counts.values()):
        return None
    budget = {v: c // d for v, c in counts.items()}
    remaining = list(w.letters)
    taken: list[Letter] = []
    while any(budget.values()):
        for v in w.graph.sort(v for v, b in budget.items() if b):
            i = _extractable_index(remaining, w.graph, v)
            if i is not None:
                taken.append(remaining.pop(i))
                budget[v] -= 1
                break
        else:
            return None
    return Word(w.graph, tuple(taken))


def _primitive_root(w: Word) -> tuple[Word, int]:
    n = len(w)
    for d in sorted((d for d in range(1, n + 1) if n % d == 0), reverse=True):
        root = _root_candidate(w, d)
        if root is not None and equals(root.power(d), w):
            return reduce(root), d
    return reduce(w), 1


def centralizer_decomposition(w: Word) -> CentralizerData:
    """Split the cyclic core of w into commuting primitive powers.

    Raises:
        WordError: If w is trivial
    """
    core = cyclic_reduce(w).core
    if not core:
        raise WordError("Centralizer decomposition of the trivial element")
    g = core.graph
    support = g.sort(core.vertices)
    noncommuting = nx.Graph()
    noncommuting.add_nodes_from(support)
    noncommuting.add_edges_from(
        (a, b)
        for i, a in enumerate(support)
        for b in support[i + 1 :]
        if not g.is_adjacent(a, b)
    )
    parts = sorted(
        (frozenset(c) for c in nx.connected_components(noncommuting)),
        key=lambda c: min(g.index(v) for v in c),
    )
    factors = []
    for part in parts:
        subword = Word(g, tuple(x for x in core.letters if x.vertex in part))
        factors.append(_primitive_root(subword))
    return CentralizerData(factors=tuple(factors), link=word_link(core))


def rank(w: Word) -> int:
    """Rank of the abelianized centralizer: number of factors plus link size."""
    data = centralizer_decomposition(w)
    return len(data.factors) + len(data.link)


def is_conjugate_to_generator(w: Word, v: str) -> bool:
    w.graph.check_vertex(v)
    return cyclic_reduce(w).core.letters == (Letter(v, 1),)


def signed_counts(w: Word) -> dict[str, int]:
    """Exponent sum of every vertex of the ambient graph."""
    counts = dict.fromkeys(w.graph.vertices, 0)
    for letter in w.letters:
        counts[letter.vertex] += letter.sign
    return counts


def project(w: Word, vmap: Mapping[str, str], target: Graph) -> Word:
    """Relabel every letter of w along a vertex map into the target graph."""
    return Word(target, tuple(Letter(vmap[x.vertex], x.sign) for x in w.letters))


def _neighbours_by_move(word: tuple[Letter, ...], graph: Graph) -> Iterable[tuple]:
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        if a == b.inverse():
            yield word[:i] + word[i + 2 :]
        elif graph.is_adjacent(a.vertex, b.vertex):
            yield word[:i] + (b, a) + word[i + 2 :]


def bfs_oracle_equals(w1: Word, w2: Word, budget: int = DEFAULT_BFS_BUDGET) -> bool:
    """Brute-force equality by breadth-first search over shuffles and cancellations.

    Raises:
        BudgetExceededError: If the combined length exceeds the budget
    """
    _check_same_graph(w1, w2)
    start = (w1 * w2.inverse()).letters
    if len(start) > budget:
        raise BudgetExceededError(
            f"Combined length {len(start)} exceeds oracle budget {budget}"
        )
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        if not current:
            return True
        for nxt in _neighbours_by_move(current, w1.graph):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False
