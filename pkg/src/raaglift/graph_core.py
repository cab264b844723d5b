"""Finite simplicial graphs and the link-star machinery.

A graph here is the defining object of a right-angled Artin group: vertices are
generators and edges record which generators commute. Subgraphs are always
induced, and the stored vertex order of a graph is the canonical order used to
sort every output and break every tie.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import networkx as nx

logger = logging.getLogger(__name__)

DEFAULT_SYMMETRY_CEILING = 24

VertexSet = frozenset[str]
VertexMap = dict[str, str]


class GraphError(ValueError):
    """Raised for malformed graphs, unknown vertices or invalid vertex sets."""


class SymmetryCeilingError(Exception):
    """Raised when a graph is too large for symmetry backtracking."""


class InternalInvariantError(Exception):
    """Raised when a fact guaranteed by the theory fails to hold."""


class ClassShape(Enum):
    """Shape of the induced subgraph on a link-star equivalence class."""

    COMPLETE = "complete"
    DISCRETE = "discrete"


@dataclass(frozen=True)
class Graph:
    """Finite simplicial graph with named vertices.

    Attributes:
        vertices: Vertex names in canonical order
        edges: Set of 2-element vertex sets
    """

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            seen: set[str] = set()
            dupes = [v for v in self.vertices if v in seen or seen.add(v)]
            raise GraphError(f"Duplicate vertices: {dupes}")
        known = set(self.vertices)
        for edge in self.edges:
            if len(edge) != 2:
                raise GraphError(f"Self-loop or malformed edge: {sorted(edge)}")
            unknown = edge - known
            if unknown:
                raise GraphError(f"Edge {sorted(edge)} has unknown endpoints {unknown}")

    @classmethod
    def from_edges(
        cls, vertices: Iterable[str], edges: Iterable[Iterable[str]]
    ) -> Graph:
        """Build a graph from a vertex list and an edge list.

        Args:
            vertices: Vertex names in canonical order
            edges: Pairs of vertex names

        Returns:
            The graph

        Raises:
            GraphError: On duplicate vertices, self-loops, duplicate edges or
                unknown endpoints
        """
        vertices = tuple(vertices)
        edge_set: set[frozenset[str]] = set()
        for pair in edges:
            pair = tuple(pair)
            if len(pair) != 2:
                raise GraphError(f"Edge {list(pair)} does not have two endpoints")
            a, b = pair
            if a == b:
                raise GraphError(f"Self-loop at {a}")
            edge = frozenset(pair)
            if edge in edge_set:
                raise GraphError(f"Duplicate edge {a}-{b}")
            edge_set.add(edge)
        return cls(vertices, frozenset(edge_set))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _adjacency(self) -> dict[str, frozenset[str]]:
        adjacency: dict[str, set[str]] = {v: set() for v in self.vertices}
        for edge in self.edges:
            a, b = tuple(edge)
            adjacency[a].add(b)
            adjacency[b].add(a)
        return {v: frozenset(ns) for v, ns in adjacency.items()}

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self.vertices)

    def check_vertex(self, v: str) -> None:
        """Raise GraphError if v is not a vertex."""
        if v not in self._index:
            raise GraphError(f"Unknown vertex: {v!r}")

    def check_vertices(self, vs: Iterable[str]) -> None:
        """Raise GraphError if any member of vs is not a vertex."""
        unknown = [v for v in vs if v not in self._index]
        if unknown:
            raise GraphError(f"Unknown vertices: {unknown}")

    def index(self, v: str) -> int:
        """Position of v in the canonical order."""
        self.check_vertex(v)
        return self._index[v]

    def neighbors(self, v: str) -> frozenset[str]:
        self.check_vertex(v)
        return self._adjacency[v]

    def is_adjacent(self, u: str, v: str) -> bool:
        return v in self.neighbors(u)

    def commute(self, u: str, v: str) -> bool:
        """True if the generators u and v commute (equal or adjacent)."""
        return u == v or self.is_adjacent(u, v)

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def sort(self, vs: Iterable[str]) -> tuple[str, ...]:
        """Sort vertices by canonical order."""
        return tuple(sorted(vs, key=self.index))

    def induced(self, vs: Iterable[str]) -> Graph:
        """Induced subgraph on vs, keeping canonical order."""
        keep = frozenset(vs)
        self.check_vertices(keep)
        return Graph(
            tuple(v for v in self.vertices if v in keep),
            frozenset(e for e in self.edges if e <= keep),
        )

    @cached_property
    def isolated_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if not self._adjacency[v])

    @property
    def has_isolated_vertices(self) -> bool:
        return bool(self.isolated_vertices)

    def sorted_edges(self) -> list[tuple[str, str]]:
        """Edges as ordered pairs, sorted by canonical order."""
        pairs = [tuple(self.sort(e)) for e in self.edges]
        return sorted(pairs, key=lambda p: (self._index[p[0]], self._index[p[1]]))

    def to_networkx(self) -> nx.Graph:
        nxg = nx.Graph()
        nxg.add_nodes_from(self.vertices)
        nxg.add_edges_from(tuple(e) for e in self.edges)
        return nxg

    def __repr__(self) -> str:
        return f"Graph(vertices={len(self.vertices)}, edges={len(self.edges)})"


def link(g: Graph, v: str) -> VertexSet:
    """Vertices adjacent to v."""
    return g.neighbors(v)


def star(g: Graph, v: str) -> VertexSet:
    """Link of v together with v itself."""
    return g.neighbors(v) | {v}


def leq_linkstar(g: Graph, u: str, v: str) -> bool:
    """Link-star preorder: u is below v iff lk(u) is contained in st(v)."""
    g.check_vertex(v)
    return link(g, u) <= star(g, v)


def ls_class(g: Graph, v: str) -> tuple[VertexSet, ClassShape]:
    """Equivalence class of v under the link-star preorder and its shape.

    Singleton classes report DISCRETE.

    Raises:
        GraphError: If v is unknown
        InternalInvariantError: If the class is neither complete nor edgeless
    """
    members = frozenset(
        u for u in g.vertices if leq_linkstar(g, u, v) and leq_linkstar(g, v, u)
    )
    k = len(members)
    inner_edges = sum(1 for e in g.edges if e <= members)
    if inner_edges == 0:
        return members, ClassShape.DISCRETE
    if inner_edges == k * (k - 1) // 2:
        return members, ClassShape.COMPLETE
    raise InternalInvariantError(
        f"Class of {v} induces neither a complete nor an edgeless subgraph: "
        f"{g.sort(members)}"
    )


def above_set(g: Graph, v: str) -> VertexSet:
    """All u with v below u in the link-star preorder."""
    return frozenset(u for u in g.vertices if leq_linkstar(g, v, u))


def strictly_above(g: Graph, u: str, v: str) -> bool:
    """True if u is strictly above v (v <= u but not u <= v)."""
    return leq_linkstar(g, v, u) and not leq_linkstar(g, u, v)


def order_vertices(g: Graph) -> list[str]:
    """Total order where every strictly greater vertex precedes the smaller one.

    Ties are broken by canonical order.
    """
    dag = nx.DiGraph()
    dag.add_nodes_from(g.vertices)
    for u in g.vertices:
        for v in g.vertices:
            if u != v and strictly_above(g, u, v):
                dag.add_edge(u, v)
    return list(nx.lexicographical_topological_sort(dag, key=g.index))


def components(g: Graph, s: Iterable[str]) -> list[VertexSet]:
    """Connected components of the induced subgraph on s.

    Returns:
        Components ordered by their least vertex in canonical order
    """
    s = frozenset(s)
    g.check_vertices(s)
    if not s:
        return []
    sub = g.to_networkx().subgraph(s)
    comps = [frozenset(c) for c in nx.connected_components(sub)]
    return sorted(comps, key=lambda c: min(g.index(v) for v in c))


def conj_components(g: Graph, v: str) -> list[VertexSet]:
    """Components of the complement of st(v)."""
    return components(g, set(g.vertices) - star(g, v))


def adjacent_sets(g: Graph, s1: Iterable[str], s2: Iterable[str]) -> bool:
    """True if some edge joins the disjoint vertex sets s1 and s2.

    Raises:
        GraphError: If the sets intersect or hold unknown vertices
    """
    s1, s2 = frozenset(s1), frozenset(s2)
    g.check_vertices(s1 | s2)
    if s1 & s2:
        raise GraphError(f"Vertex sets are not disjoint: {g.sort(s1 & s2)}")
    return any(g.neighbors(v) & s2 for v in s1)


def distance(g: Graph, u: str, v: str) -> int | None:
    """Edge distance between u and v, or None if they lie in different components."""
    g.check_vertices((u, v))
    try:
        return nx.shortest_path_length(g.to_networkx(), u, v)
    except nx.NetworkXNoPath:
        return None


def _search_order(g: Graph) -> list[str]:
    """Breadth-first order per component.

    Every vertex after the first of its component has an earlier neighbour.
    """
    order: list[str] = []
    seen: set[str] = set()
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in g.sort(g.neighbors(v) - seen):
                seen.add(w)
                queue.append(w)
    return order


def extend_symmetries(
    source: Graph,
    target: Graph,
    candidates: Mapping[str, Iterable[str]] | None = None,
) -> Iterator[VertexMap]:
    """Enumerate graph isomorphisms source -> target by backtracking.

    Vertices are assigned in breadth-first order; once a vertex has an assigned
    neighbour its image is drawn from the neighbours of that neighbour's image.

    Args:
        source: Domain graph
        target: Codomain graph
        candidates: Optional per-vertex allowed images (all vertices otherwise)

    Yields:
        Vertex bijections preserving adjacency and non-adjacency, in
        lexicographic order of images along the search order
    """
    if len(source) != len(target) or len(source.edges) != len(target.edges):
        return
    order = _search_order(source)
    allowed: dict[str, tuple[str, ...]] = {}
    for v in source.vertices:
        pool = target.vertices if candidates is None else candidates.get(v, ())
        allowed[v] = target.sort(
            w for w in pool if target.degree(w) == source.degree(v)
        )
        if not allowed[v]:
            return

    assignment: VertexMap = {}
    used: set[str] = set()

    def consistent(v: str, image: str) -> bool:
        for w, w_image in assignment.items():
            if source.is_adjacent(v, w) != target.is_adjacent(image, w_image):
                return False
        return True

    def backtrack(depth: int) -> Iterator[VertexMap]:
        if depth == len(order):
            yield dict(assignment)
            return
        v = order[depth]
        anchors = [w for w in source.neighbors(v) if w in assignment]
        if anchors:
            near = target.neighbors(assignment[anchors[0]])
            pool = [w for w in allowed[v] if w in near]
        else:
            pool = list(allowed[v])
        for image in pool:
            if image in used or not consistent(v, image):
                continue
            assignment[v] = image
            used.add(image)
            yield from backtrack(depth + 1)
            del assignment[v]
            used.discard(image)

    yield from backtrack(0)


def graph_symmetries(
    g: Graph, ceiling: int = DEFAULT_SYMMETRY_CEILING
) -> list[VertexMap]:
    """All adjacency-preserving vertex bijections of g.

    Candidates are pruned by degree and by the size of the link-star class.

    Raises:
        SymmetryCeilingError: If g has more vertices than the ceiling
    """
    if len(g) > ceiling:
        raise SymmetryCeilingError(
            f"Graph has {len(g)} vertices; symmetry search ceiling is {ceiling}"
        )
    class_size = {v: len(ls_class(g, v)[0]) for v in g.vertices}
    candidates = {
        v: [u for u in g.vertices if class_size[u] == class_size[v]]
        for v in g.vertices
    }
    found = list(extend_symmetries(g, g, candidates))
    logger.debug(f"Found {len(found)} symmetries of {g!r}")
    return sorted(found, key=lambda m: tuple(g.index(m[v]) for v in g.vertices))


def compose_maps(first: Mapping[str, str], second: Mapping[str, str]) -> VertexMap:
    """Vertex map applying first, then second."""
    return {v: second[first[v]] for v in first}


def invert_map(m: Mapping[str, str]) -> VertexMap:
    return {image: v for v, image in m.items()}


def is_identity_map(m: Mapping[str, str]) -> bool:
    return all(v == image for v, image in m.items())


def is_symmetry(g: Graph, m: Mapping[str, str]) -> bool:
    """True if m is a bijection of g's vertices preserving adjacency."""
    if set(m) != set(g.vertices) or set(m.values()) != set(g.vertices):
        return False
    return all(frozenset(m[v] for v in e) in g.edges for e in g.edges)


def is_component_union(g: Graph, v: str, c: Iterable[str]) -> bool:
    """True if c is a union of components of the complement of st(v)."""
    c = frozenset(c)
    if c & star(g, v):
        return False
    return all(comp <= c or not (comp & c) for comp in conj_components(g, v))
