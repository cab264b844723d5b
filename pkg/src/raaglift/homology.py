"""Action of automorphisms on first homology.

Matrices use columns as images: the column of a vertex holds the signed letter
counts of its image, so the matrix of ``compose(a, b)`` is ``M(b) @ M(a)``.
Total-graph matrices are taken over a deck basis, where every deck orbit is a
contiguous block and strictly larger vertices come first.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np

from raaglift.autos import (
    AutWord,
    Transvection,
    compose,
    image_map,
    symmetry_word,
)
from raaglift.covering import CoveringMap, lambda_plus
from raaglift.graph_core import (
    InternalInvariantError,
    VertexMap,
    leq_linkstar,
    strictly_above,
)
from raaglift.liftability import verify_lift
from raaglift.raag_words import Letter, Word, reduce, signed_counts

logger = logging.getLogger(__name__)


class HomologyError(ValueError):
    """Raised for basis mismatches and unsatisfiable basis constraints."""


@dataclass(frozen=True, eq=False)
class IntMatrix:
    """Square integer matrix with an ordered vertex basis."""

    basis: tuple[str, ...]
    data: np.ndarray

    def __post_init__(self):
        n = len(self.basis)
        if self.data.shape != (n, n):
            raise HomologyError(
                f"Matrix of shape {self.data.shape} does not match "
                f"a basis of {n} vertices"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.basis == other.basis and np.array_equal(self.data, other.data)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.basis != other.basis:
            raise HomologyError("Cannot multiply matrices over different bases")
        return IntMatrix(self.basis, self.data @ other.data)

    @property
    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        rows: list[list[int]] = self.data.tolist()
        n = len(rows)
        sign, previous = 1, 1
        for k in range(n - 1):
            if rows[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if rows[i][k]), None)
                if swap is None:
                    return 0
                rows[k], rows[swap] = rows[swap], rows[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    rows[i][j] = (
                        rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]
                    ) // previous
            previous = rows[k][k]
        return sign * rows[-1][-1] if n else 1

    @property
    def is_identity(self) -> bool:
        return np.array_equal(self.data, np.eye(len(self.basis), dtype=np.int64))

    def entry(self, row: str, column: str) -> int:
        return int(self.data[self.basis.index(row), self.basis.index(column)])

    def to_record(self) -> dict:
        return {"basis": list(self.basis), "rows": self.data.tolist()}


def _check_basis(vertices: tuple[str, ...], basis: tuple[str, ...]) -> None:
    if len(basis) != len(vertices) or set(basis) != set(vertices):
        raise HomologyError("Basis is not an ordering of the graph's vertices")


def abelianization_matrix(
    a: AutWord, basis: tuple[str, ...] | None = None
) -> IntMatrix:
    """Integer matrix of the action of a on the abelianization.

    Raises:
        HomologyError: If the basis is not an ordering of the vertices
        InternalInvariantError: If the determinant is not +1 or -1
    """
    basis = tuple(basis) if basis is not None else a.graph.vertices
    _check_basis(a.graph.vertices, basis)
    images = image_map(a)
    data = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for j, v in enumerate(basis):
        counts = signed_counts(images[v])
        for i, u in enumerate(basis):
            data[i, j] = counts[u]
    matrix = IntMatrix(basis, data)
    if abs(matrix.determinant) != 1:
        raise InternalInvariantError(
            f"Automorphism matrix has determinant {matrix.determinant}"
        )
    return matrix


def ia_check(a: AutWord) -> bool:
    """True if a acts trivially on the abelianization."""
    return abelianization_matrix(a).is_identity


@dataclass(frozen=True)
class DeckBasis:
    """Ordering of the total vertices by contiguous deck orbits.

    Attributes:
        order: Every total vertex, orbit by orbit
        blocks: The orbits in order
        labels: Base vertex under each orbit
    """

    order: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]
    labels: tuple[str, ...]

    def block_of(self, u: str) -> int:
        return next(i for i, block in enumerate(self.blocks) if u in block)


def deck_orbits(c: CoveringMap) -> list[tuple[str, ...]]:
    """Orbits of the deck group on total vertices, by least member."""
    seen: set[str] = set()
    orbits = []
    for u in c.total.vertices:
        if u in seen:
            continue
        orbit = c.total.sort({mu[u] for mu in c.deck.elements})
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def deck_basis(
    c: CoveringMap, prefer_first: tuple[str, str] | None = None
) -> DeckBasis:
    """Order deck orbits so strictly larger vertices come first, then expand them.

    Args:
        c: The covering map
        prefer_first: Optional pair (u, u2) whose orbits must appear in this order

    Raises:
        HomologyError: If the preferred pair is comparable, shares an orbit or
            contradicts the order
    """
    total = c.total
    orbits = deck_orbits(c)
    index = {u: i for i, orbit in enumerate(orbits) for u in orbit}
    dag = nx.DiGraph()
    dag.add_nodes_from(range(len(orbits)))
    for a in total.vertices:
        for b in total.vertices:
            if index[a] != index[b] and strictly_above(total, a, b):
                dag.add_edge(index[a], index[b])
    if prefer_first is not None:
        u, u2 = prefer_first
        total.check_vertices((u, u2))
        if leq_linkstar(total, u, u2) or leq_linkstar(total, u2, u):
            raise HomologyError(f"{u} and {u2} are comparable in the link-star order")
        if index[u] == index[u2]:
            raise HomologyError(f"{u} and {u2} lie in the same deck orbit")
        dag.add_edge(index[u], index[u2])
    try:
        ranked = list(
            nx.lexicographical_topological_sort(
                dag, key=lambda i: total.index(orbits[i][0])
            )
        )
    except nx.NetworkXUnfeasible as e:
        raise HomologyError(
            "Deck orbits admit no order satisfying the constraints"
        ) from e
    blocks = tuple(orbits[i] for i in ranked)
    return DeckBasis(
        order=tuple(u for block in blocks for u in block),
        blocks=blocks,
        labels=tuple(c.vmap[block[0]] for block in blocks),
    )


def sigma(c: CoveringMap, w: Word, basis: DeckBasis | None = None) -> np.ndarray:
    """Signed occurrence counts of a total word, orbit block after orbit block."""
    basis = basis or deck_basis(c)
    counts = signed_counts(Word(c.total, w.letters))
    return np.array([counts[u] for u in basis.order], dtype=np.int64)


def sigma_blocks(
    c: CoveringMap, w: Word, basis: DeckBasis | None = None
) -> dict[str, list[int]]:
    """The same counts split per orbit, keyed by the orbit's least member."""
    basis = basis or deck_basis(c)
    counts = signed_counts(Word(c.total, w.letters))
    return {block[0]: [counts[u] for u in block] for block in basis.blocks}


def is_blowup(big: IntMatrix, small: IntMatrix, basis: DeckBasis) -> bool:
    """True if big is a blow-up of small over the deck basis.

    Each block column of big has at most one non-zero entry, equal to the
    matching entry of small.

    Raises:
        HomologyError: If big is not over the deck basis or small not over its labels
    """
    if big.basis != basis.order:
        raise HomologyError("Total matrix is not expressed over the deck basis")
    if set(small.basis) != set(basis.labels):
        raise HomologyError("Base matrix basis does not match the deck basis labels")
    position = {u: i for i, u in enumerate(big.basis)}
    for col_label, col_block in zip(basis.labels, basis.blocks, strict=True):
        for row_label, row_block in zip(basis.labels, basis.blocks, strict=True):
            expected = small.entry(row_label, col_label)
            rows = [position[u] for u in row_block]
            for u in col_block:
                column = big.data[rows, position[u]]
                nonzero = np.count_nonzero(column)
                if nonzero > 1 or int(column.sum()) != expected:
                    return False
    return True


@dataclass(frozen=True)
class Exchange:
    """Replacement of the letter at a position of the original word by a fiber-mate."""

    position: int
    old: str
    new: str


@dataclass(frozen=True)
class ExchangeWitness:
    """Exchanges turning a word with trivial projection into a trivial word.

    Attributes:
        exchanges: The exchanges, in the order they were found
        words: The word after each exchange, starting with the input
    """

    exchanges: tuple[Exchange, ...]
    words: tuple[Word, ...]

    @property
    def final(self) -> Word:
        return self.words[-1]


def exchange_witness(c: CoveringMap, w: Word) -> ExchangeWitness:
    """Follow the cancellation of the projected word, exchanging mismatched preimages.

    The leftmost base letter whose inverse can be reached through commuting
    base letters is cancelled with it. When the two total letters differ, the
    later one is exchanged for the earlier one; in the augmented graph the
    letters in between then commute with it.

    Raises:
        HomologyError: If the projection of w is not trivial
        InternalInvariantError: If a step fails validation
    """
    plus = lambda_plus(c).graph
    if w.graph not in (c.total, plus):
        raise HomologyError("Word is not over the total graph or its augmentation")
    letters = list(w.letters)
    projected = Word(c.base, tuple(Letter(c.vmap[x.vertex], x.sign) for x in letters))
    if reduce(projected):
        raise HomologyError(f"Projection {projected} of the word is not trivial")

    pending = list(enumerate(letters))
    exchanges: list[Exchange] = []
    words = [Word(plus, tuple(letters))]
    while pending:
        pair = _leftmost_cancellation(c, pending)
        if pair is None:
            raise InternalInvariantError(
                "Trivial projection without a cancellable pair"
            )
        i, j = pair
        (_, first), (pos, second) = pending[i], pending[j]
        if first.vertex != second.vertex:
            exchange = Exchange(pos, second.vertex, first.vertex)
            exchanges.append(exchange)
            letters[pos] = Letter(first.vertex, second.sign)
            current = Word(plus, tuple(letters))
            image = tuple(Letter(c.vmap[x.vertex], x.sign) for x in letters)
            if Word(c.base, image) != projected:
                raise InternalInvariantError(
                    f"Exchange {exchange} changed the projection"
                )
            words.append(current)
            logger.debug(f"Exchanged {second.vertex} for {first.vertex} at {pos}")
        del pending[j]
        del pending[i]
    if reduce(words[-1]):
        raise InternalInvariantError(
            "Exchanged word is not trivial in the augmented group"
        )
    return ExchangeWitness(tuple(exchanges), tuple(words))


def _leftmost_cancellation(
    c: CoveringMap, pending: list[tuple[int, Letter]]
) -> tuple[int, int] | None:
    base = c.base
    for i, (_, x) in enumerate(pending):
        v = c.vmap[x.vertex]
        for j in range(i + 1, len(pending)):
            y = pending[j][1]
            u = c.vmap[y.vertex]
            if u == v and y.sign == -x.sign:
                return i, j
            if not base.commute(u, v):
                break
    return None


def fd_torelli_witness(
    c: CoveringMap, F: AutWord, must_be_fd: bool = True
) -> VertexMap | None:
    """The deck element mu such that F precomposed with mu acts trivially on homology.

    Args:
        c: The covering map
        F: A lift of the identity
        must_be_fd: Check that F lifts the identity first

    Returns:
        The unique such deck element, or None when there is none and the base
        has isolated vertices

    Raises:
        HomologyError: If F is checked and does not lift the identity
        InternalInvariantError: If the deck element is missing or not unique
    """
    if must_be_fd and not verify_lift(c, F, AutWord.identity(c.base)):
        raise HomologyError("Automorphism is not a lift of the identity")
    hits = [
        mu for mu in c.deck.elements if ia_check(compose(symmetry_word(c.total, mu), F))
    ]
    if len(hits) > 1:
        raise InternalInvariantError(f"{len(hits)} deck elements correct F on homology")
    if hits:
        return hits[0]
    if c.base.has_isolated_vertices:
        logger.warning(
            "No deck element corrects F on homology (isolated base vertices)"
        )
        return None
    raise InternalInvariantError("No deck element corrects F on homology")


@dataclass(frozen=True)
class BlockObstruction:
    """Homological obstruction to lifting the transvection of t by m.

    Attributes:
        obstructed: True if every candidate lift matrix leaves the block
            upper triangle
        pair: Fiber members of t and m used for the candidate
        basis: The deck basis the candidate is expressed over
        below_diagonal: Non-zero candidate entries below the block diagonal,
            as (row, column) pairs
        reason: Explanation of the outcome
    """

    obstructed: bool
    pair: tuple[str, str] | None
    basis: DeckBasis | None
    reason: str
    below_diagonal: tuple[tuple[str, str], ...] = ()


def candidate_lift_matrix(
    c: CoveringMap, basis: DeckBasis, t: str, m: str, pair: tuple[str, str]
) -> IntMatrix:
    """Blow-up of the transvection's matrix that sends u to u2 * u equivariantly.

    Column mu(u) carries the multiplier entry in row mu(u2) for every deck
    element mu; every other column is the identity.
    """
    u, u2 = pair
    small = abelianization_matrix(AutWord.of(c.base, Transvection(t, m)), basis.labels)
    position = {w: i for i, w in enumerate(basis.order)}
    data = np.eye(len(basis.order), dtype=np.int64)
    for mu in c.deck.elements:
        data[position[mu[u2]], position[mu[u]]] = small.entry(m, t)
    candidate = IntMatrix(basis.order, data)
    if not is_blowup(candidate, small, basis):
        raise InternalInvariantError("Candidate lift matrix is not a blow-up")
    return candidate


def below_block_diagonal(
    matrix: IntMatrix, basis: DeckBasis
) -> list[tuple[str, str]]:
    """Non-zero entries whose row orbit comes after their column orbit."""
    if matrix.basis != basis.order:
        raise HomologyError("Matrix is not expressed over the deck basis")
    block = {u: i for i, orbit in enumerate(basis.blocks) for u in orbit}
    rows, columns = np.nonzero(matrix.data)
    return [
        (basis.order[i], basis.order[j])
        for i, j in zip(rows.tolist(), columns.tolist(), strict=True)
        if block[basis.order[i]] > block[basis.order[j]]
    ]


def transvection_block_obstruction(c: CoveringMap, t: str, m: str) -> BlockObstruction:
    """Check whether the transvection of t by m is blocked on homology.

    A lift's matrix is a blow-up of the transvection's matrix, so the column
    of a fiber member u of t has one non-zero entry in the fiber of m. When
    some fiber member of m is comparable with u, that entry can sit where a
    product of transvections puts it and nothing is obstructed. Otherwise the
    fiber of t is placed before the fiber of m, the candidate lift matrix is
    built over that basis and its entries below the block diagonal are
    collected. Lifts of essential products of transvections, inversions and
    partial conjugations are block upper triangular, so any such entry
    obstructs the lift.

    Raises:
        AutomorphismError: If the transvection is not valid in the base graph
    """
    base, total = c.base, c.total
    base.check_vertices((t, m))
    if base.has_isolated_vertices:
        return BlockObstruction(False, None, None, "Base graph has isolated vertices")
    u = c.fibers[t][0]
    for u2 in c.fibers[m]:
        if leq_linkstar(total, u, u2) or leq_linkstar(total, u2, u):
            reason = f"{u} and {u2} are comparable in the link-star order"
            return BlockObstruction(False, (u, u2), None, reason)
    u2 = c.fibers[m][0]
    try:
        basis = deck_basis(c, prefer_first=(u, u2))
    except HomologyError as e:
        logger.debug(f"Cannot place {u} before {u2}: {e}")
        reason = f"The orbit of {u} cannot precede the orbit of {u2}"
        return BlockObstruction(False, (u, u2), None, reason)
    entries = below_block_diagonal(
        candidate_lift_matrix(c, basis, t, m, (u, u2)), basis
    )
    if entries:
        row, column = entries[0]
        reason = (
            f"Column of {column} has an entry in row {row}, "
            "below the block diagonal"
        )
    else:
        reason = "Candidate lift matrix is block upper triangular"
    return BlockObstruction(
        obstructed=bool(entries),
        pair=(u, u2),
        basis=basis,
        reason=reason,
        below_diagonal=tuple(entries),
    )
