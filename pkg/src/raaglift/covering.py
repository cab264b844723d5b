"""Covering maps of graphs.

A covering map sends the total graph onto the base graph, is simplicial and
restricts to a bijection on every link. This module houses the map itself,
fibers, the deck group, regularity, the covering suborder on base vertices,
the closure of component unions used to decide partial conjugations,
symmetry lifting, voltage-derived covers and the augmented total graph in
which fiber-mates and vertices over adjacent base vertices commute.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from raaglift.graph_core import (
    Graph,
    GraphError,
    InternalInvariantError,
    VertexMap,
    VertexSet,
    components,
    compose_maps,
    conj_components,
    extend_symmetries,
    is_component_union,
    is_identity_map,
    is_symmetry,
    leq_linkstar,
)
from raaglift.raag_words import Letter, Word, project
from raaglift.validators import CoverValidator, ValidationReport

logger = logging.getLogger(__name__)


class CoverError(ValueError):
    """Raised when a vertex map is not a covering map."""


class IrregularCoverError(Exception):
    """Raised when an operation needs a regular cover."""


class VoltageError(ValueError):
    """Raised for malformed voltage tables."""


@dataclass(frozen=True, eq=False)
class CoveringMap:
    """A vertex map from the total graph onto the base graph.

    Fibers, the deck group and the regularity flag are computed on first use
    and cached; the map is read-only afterwards.
    """

    total: Graph
    base: Graph
    vmap: Mapping[str, str]

    @classmethod
    def identity(cls, g: Graph) -> CoveringMap:
        return cls(g, g, {v: v for v in g.vertices})

    @cached_property
    def fibers(self) -> dict[str, tuple[str, ...]]:
        """Fiber of every base vertex, in canonical order of the total graph."""
        out: dict[str, list[str]] = {v: [] for v in self.base.vertices}
        for u in self.total.vertices:
            image = self.vmap.get(u)
            if image in out:
                out[image].append(u)
        return {v: tuple(us) for v, us in out.items()}

    def fiber(self, v: str) -> VertexSet:
        self.base.check_vertex(v)
        return frozenset(self.fibers[v])

    @property
    def degree(self) -> int:
        """Size of the largest fiber (the common size for a connected base)."""
        return max((len(f) for f in self.fibers.values()), default=0)

    @cached_property
    def deck(self) -> DeckGroup:
        candidates = {u: self.fibers[self.vmap[u]] for u in self.total.vertices}
        found = list(extend_symmetries(self.total, self.total, candidates))
        found.sort(
            key=lambda m: (
                not is_identity_map(m),
                tuple(self.total.index(m[u]) for u in self.total.vertices),
            )
        )
        logger.debug(f"Deck group of order {len(found)}")
        return DeckGroup(self.total, tuple(found))

    @cached_property
    def regular(self) -> bool:
        for v, fib in self.fibers.items():
            if not fib:
                continue
            reachable = {mu[fib[0]] for mu in self.deck.elements}
            if not set(fib) <= reachable:
                logger.debug(f"Deck group is not transitive on the fiber of {v}")
                return False
        return True

    def __repr__(self) -> str:
        return f"CoveringMap(total={self.total!r}, base={self.base!r})"


@dataclass(frozen=True, eq=False)
class DeckGroup:
    """Graph symmetries of the total graph commuting with the projection.

    Attributes:
        graph: The total graph
        elements: Deck maps, identity first, then in canonical order of images
    """

    graph: Graph
    elements: tuple[VertexMap, ...]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def find(self, mapping: Mapping[str, str]) -> int | None:
        """Index of a deck element, or None if the map is not one."""
        for i, mu in enumerate(self.elements):
            if mu == mapping:
                return i
        return None

    @cached_property
    def table(self) -> tuple[tuple[int, ...], ...]:
        """Closure table: ``table[i][j]`` indexes element i applied first, then j.

        Raises:
            InternalInvariantError: If the elements are not closed under composition
        """
        rows = []
        for a in self.elements:
            row = []
            for b in self.elements:
                k = self.find(compose_maps(a, b))
                if k is None:
                    raise InternalInvariantError(
                        "Deck group is not closed under composition"
                    )
                row.append(k)
            rows.append(tuple(row))
        return tuple(rows)

    def mapping_to(self, u: str, target: str) -> VertexMap | None:
        """First deck element sending u to target."""
        return next((mu for mu in self.elements if mu[u] == target), None)


@dataclass(frozen=True)
class VoltageSpec:
    """Cyclic voltage assignment on a base graph.

    Attributes:
        base: The base graph
        n: Order of the cyclic voltage group
        voltages: Triples (a, b, t): the edge a-b oriented a -> b carries t
    """

    base: Graph
    n: int
    voltages: tuple[tuple[str, str, int], ...] = field(default=())

    def normalized(self) -> dict[tuple[str, str], int]:
        """Voltage of every base edge oriented along canonical order.

        Raises:
            VoltageError: If n < 1 or an edge is unknown or repeated

        Edges without an entry carry voltage 0.
        """
        if self.n < 1:
            raise VoltageError(f"Voltage group order must be positive, got {self.n}")
        table: dict[tuple[str, str], int] = {}
        for a, b, t in self.voltages:
            if frozenset((a, b)) not in self.base.edges:
                raise VoltageError(f"Voltage on {a}-{b}, which is not a base edge")
            key = tuple(self.base.sort((a, b)))
            if key in table:
                raise VoltageError(f"Edge {a}-{b} carries more than one voltage")
            value = t if key == (a, b) else -t
            table[key] = value % self.n
        for a, b in self.base.sorted_edges():
            table.setdefault((a, b), 0)
        return table


def validate(
    c: CoveringMap, validator: CoverValidator | None = None
) -> ValidationReport:
    """Check every defining condition of a covering map, then the derived facts."""
    return (validator or CoverValidator()).validate_cover(c)


def require_valid(c: CoveringMap) -> CoveringMap:
    """Return c unchanged if it is a covering map.

    Raises:
        CoverError: Naming every violated condition with a witness
    """
    report = validate(c)
    if not report.passed:
        details = "; ".join(
            f"{i.category}: {i.message} (e.g. {i.examples[0]})" for i in report.errors
        )
        logger.error(f"Invalid covering map: {details}")
        raise CoverError(details)
    return c


def fiber(c: CoveringMap, v: str) -> VertexSet:
    return c.fiber(v)


def deck_group(c: CoveringMap) -> DeckGroup:
    return c.deck


def is_regular(c: CoveringMap) -> bool:
    return c.regular


def _require_regular(c: CoveringMap) -> None:
    if not c.regular:
        raise IrregularCoverError("Operation needs a regular covering map")


def leq_phi(c: CoveringMap, v: str, v2: str) -> bool:
    """True if every fiber member of v is below some fiber member of v2 upstairs."""
    c.base.check_vertices((v, v2))
    return all(
        any(leq_linkstar(c.total, u, u2) for u2 in c.fibers[v2]) for u in c.fibers[v]
    )


def above_phi(c: CoveringMap, v: str) -> VertexSet:
    """All base vertices m with v below m in the covering suborder."""
    return frozenset(m for m in c.base.vertices if leq_phi(c, v, m))


def phi_class(c: CoveringMap, v: str) -> VertexSet:
    """Equivalence class of v under the covering suborder.

    Raises:
        InternalInvariantError: If the class is neither complete nor edgeless
    """
    members = frozenset(
        m for m in c.base.vertices if leq_phi(c, v, m) and leq_phi(c, m, v)
    )
    k = len(members)
    inner = sum(1 for e in c.base.edges if e <= members)
    if inner not in (0, k * (k - 1) // 2):
        raise InternalInvariantError(
            f"Covering class of {v} is neither complete nor edgeless: "
            f"{c.base.sort(members)}"
        )
    return members


def phi_class_transposition(c: CoveringMap, v1: str, v2: str) -> VertexMap:
    """Base symmetry swapping two equivalent vertices and fixing the rest.

    Raises:
        CoverError: If v1 and v2 are not equivalent under the covering suborder
        InternalInvariantError: If the swap is not a graph symmetry
    """
    if v2 not in phi_class(c, v1):
        raise CoverError(f"{v1} and {v2} are not equivalent under the covering order")
    swap = {v: v for v in c.base.vertices}
    swap[v1], swap[v2] = v2, v1
    if not is_symmetry(c.base, swap):
        raise InternalInvariantError(f"Swapping {v1} and {v2} is not a graph symmetry")
    return swap


def complement_component(total: Graph, u: str, piece: Iterable[str]) -> VertexSet:
    """Component of the complement of st(u) containing a connected piece.

    Raises:
        InternalInvariantError: If the piece meets st(u) or spans two components
    """
    piece = frozenset(piece)
    hits = [comp for comp in conj_components(total, u) if comp & piece]
    if len(hits) != 1 or not piece <= hits[0]:
        raise InternalInvariantError(
            f"{total.sort(piece)} does not lie in one component off st({u})"
        )
    return hits[0]


@dataclass(frozen=True)
class BarComponent:
    """The closure data of one component B of the complement of st(v).

    Attributes:
        component: B
        lifted: The chosen component of the preimage of B
        around: For each fiber member u, the component off st(u) containing ``lifted``
        intersection: D, the intersection of every ``around`` set
        closure: The image of D
    """

    component: VertexSet
    lifted: VertexSet
    around: dict[str, VertexSet]
    intersection: VertexSet
    closure: VertexSet


def preimage(c: CoveringMap, vs: Iterable[str]) -> VertexSet:
    return frozenset(u for v in vs for u in c.fibers[v])


def bar_component(c: CoveringMap, v: str, b: Iterable[str]) -> BarComponent:
    """Closure of a single component of the complement of st(v).

    Raises:
        GraphError: If b is not a component of the complement of st(v)
        IrregularCoverError: If the cover is not regular
    """
    b = frozenset(b)
    if b not in conj_components(c.base, v):
        raise GraphError(f"{c.base.sort(b)} is not a component off st({v})")
    _require_regular(c)
    pre = preimage(c, b)
    lifted = components(c.total, pre)[0]
    around = {u: complement_component(c.total, u, lifted) for u in c.fibers[v]}
    d = frozenset.intersection(*around.values())
    closure = frozenset(c.vmap[u] for u in d)

    if _is_connected(c.base) and _is_connected(c.total):
        if not (pre <= d or any(comp == d for comp in around.values())):
            raise InternalInvariantError(
                f"Closure of {c.base.sort(b)} at {v}: the intersection is neither "
                f"the whole preimage nor a single complement component"
            )
    return BarComponent(b, lifted, around, d, closure)


def _is_connected(g: Graph) -> bool:
    return len(components(g, g.vertices)) <= 1


def bar(c: CoveringMap, v: str, comps: Iterable[str]) -> VertexSet:
    """Closure of a union of components of the complement of st(v).

    Raises:
        GraphError: If the set is not a union of such components
        IrregularCoverError: If the cover is not regular
    """
    comps = frozenset(comps)
    if not is_component_union(c.base, v, comps):
        raise GraphError(
            f"{c.base.sort(comps)} is not a union of components off st({v})"
        )
    result: set[str] = set()
    for b in conj_components(c.base, v):
        if b <= comps:
            result |= bar_component(c, v, b).closure
    return frozenset(result)


def closure_blocks(c: CoveringMap, v: str, comps: Iterable[str]) -> list[VertexSet]:
    """Distinct closures of the components making up a union, in canonical order."""
    comps = frozenset(comps)
    blocks: list[VertexSet] = []
    for b in conj_components(c.base, v):
        if b <= comps:
            closure = bar_component(c, v, b).closure
            if closure not in blocks:
                blocks.append(closure)
    return blocks


def lift_symmetry(c: CoveringMap, sigma: Mapping[str, str]) -> list[VertexMap]:
    """Every symmetry mu of the total graph covering sigma.

    Raises:
        CoverError: If sigma is not a symmetry of the base graph
    """
    if not is_symmetry(c.base, sigma):
        raise CoverError("Map to lift is not a symmetry of the base graph")
    candidates = {u: c.fibers[sigma[c.vmap[u]]] for u in c.total.vertices}
    found = list(extend_symmetries(c.total, c.total, candidates))
    logger.debug(f"Symmetry has {len(found)} lifts")
    return sorted(
        found, key=lambda m: tuple(c.total.index(m[u]) for u in c.total.vertices)
    )


def derived_cover(spec: VoltageSpec) -> CoveringMap:
    """Regular cover unrolled from a cyclic voltage assignment.

    Vertices are named ``"{vertex}.{g}"``; the edge a-b with voltage t joins
    ``a.g`` to ``b.(g + t)`` for every g.

    Raises:
        VoltageError: On an invalid voltage table
    """
    table = spec.normalized()
    n = spec.n
    names = {(v, g): f"{v}.{g}" for v in spec.base.vertices for g in range(n)}
    derived = set(names.values())
    if len(derived) != len(names) or derived & set(spec.base.vertices):
        raise VoltageError("Derived vertex names collide; rename the base vertices")
    edges = [
        (names[(a, g)], names[(b, (g + t) % n)])
        for (a, b), t in table.items()
        for g in range(n)
    ]
    total = Graph.from_edges(names.values(), edges)
    vmap = {name: v for (v, _), name in names.items()}
    logger.info(
        f"Derived cover of degree {n}: {len(total)} vertices, "
        f"{len(total.edges)} edges"
    )
    return CoveringMap(total, spec.base, vmap)


@dataclass(frozen=True)
class LambdaPlus:
    """The total graph with extra edges wherever the projected generators commute.

    Attributes:
        graph: The augmented graph on the total vertices
        alpha: Inclusion of total vertices (identity on names)
        beta: Projection to the base graph
    """

    graph: Graph
    alpha: dict[str, str]
    beta: dict[str, str]


def lambda_plus(c: CoveringMap) -> LambdaPlus:
    """Join every pair of total vertices whose images are equal or adjacent."""
    total = c.total
    edges = set(total.edges)
    for i, x in enumerate(total.vertices):
        for y in total.vertices[i + 1 :]:
            if c.base.commute(c.vmap[x], c.vmap[y]):
                edges.add(frozenset((x, y)))
    graph = Graph(total.vertices, frozenset(edges))
    return LambdaPlus(
        graph=graph,
        alpha={u: u for u in total.vertices},
        beta=dict(c.vmap),
    )


def project_word(c: CoveringMap, w: Word) -> Word:
    """Image of a total word in the base group, letter by letter."""
    return project(w, c.vmap, c.base)


def lift_word(c: CoveringMap, w: Word) -> Word:
    """A total word projecting onto w, using the least fiber member of each letter."""
    return Word(
        c.total, tuple(Letter(c.fibers[x.vertex][0], x.sign) for x in w.letters)
    )
