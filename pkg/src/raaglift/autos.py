"""Automorphisms of right-angled Artin groups as words in elementary generators.

An ``AutWord`` lists generators in application order: ``AutWord(g, [a, b])``
applies ``a`` first and then ``b``. Everything is compared through image maps
(vertex -> normal form of its image), which determine an automorphism.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum

from raaglift.graph_core import (
    Graph,
    InternalInvariantError,
    above_set,
    conj_components,
    extend_symmetries,
    invert_map,
    is_component_union,
    is_identity_map,
    is_symmetry,
    link,
    order_vertices,
    star,
)
from raaglift.raag_words import (
    Letter,
    Word,
    cyclic_reduce,
    esupp,
    is_conjugate_to_generator,
    reduce,
    signed_counts,
    supp,
)

logger = logging.getLogger(__name__)


class AutomorphismError(ValueError):
    """Raised when a generator is not valid in its ambient graph."""


class DecompositionError(Exception):
    """Raised when a decomposition precondition or verification fails."""


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


ImageMap = dict[str, Word]


def _check_power(power: int) -> None:
    if power not in (1, -1):
        raise AutomorphismError(f"Generator power must be +1 or -1, got {power}")


@dataclass(frozen=True)
class Symmetry:
    """Automorphism induced by a graph symmetry."""

    mapping: tuple[tuple[str, str], ...]

    @classmethod
    def from_dict(cls, mapping: Mapping[str, str]) -> Symmetry:
        return cls(tuple(sorted(mapping.items())))

    @property
    def as_dict(self) -> dict[str, str]:
        return dict(self.mapping)

    def validate(self, g: Graph) -> None:
        if not is_symmetry(g, self.as_dict):
            raise AutomorphismError("Symmetry map is not a graph symmetry")

    def image(self, g: Graph, v: str) -> Word:
        return Word.generator(g, self.as_dict[v])

    def inverse(self) -> Symmetry:
        return Symmetry.from_dict(invert_map(self.as_dict))


@dataclass(frozen=True)
class Inversion:
    vertex: str

    def validate(self, g: Graph) -> None:
        g.check_vertex(self.vertex)

    def image(self, g: Graph, v: str) -> Word:
        return Word.generator(g, v, -1 if v == self.vertex else 1)

    def inverse(self) -> Inversion:
        return self


@dataclass(frozen=True)
class Transvection:
    """Multiply target by multiplier^power.

    Left: target -> multiplier^power * target.
    Right: target -> target * multiplier^power.
    """

    target: str
    multiplier: str
    side: Side = Side.LEFT
    power: int = 1

    def validate(self, g: Graph) -> None:
        _check_power(self.power)
        g.check_vertices((self.target, self.multiplier))
        if self.target == self.multiplier:
            raise AutomorphismError(f"Transvection of {self.target} by itself")
        if not link(g, self.target) <= star(g, self.multiplier):
            raise AutomorphismError(
                f"Transvection {self.target} by {self.multiplier}: "
                f"lk({self.target}) is not contained in st({self.multiplier})"
            )

    def image(self, g: Graph, v: str) -> Word:
        if v != self.target:
            return Word.generator(g, v)
        m = Word.generator(g, self.multiplier, self.power)
        t = Word.generator(g, v)
        return m * t if self.side is Side.LEFT else t * m

    def inverse(self) -> Transvection:
        return Transvection(self.target, self.multiplier, self.side, -self.power)


@dataclass(frozen=True)
class PartialConj:
    """Conjugates every vertex of the component union by vertex^power."""

    vertex: str
    component: frozenset[str]
    power: int = 1

    def validate(self, g: Graph) -> None:
        _check_power(self.power)
        g.check_vertex(self.vertex)
        g.check_vertices(self.component)
        if not self.component:
            raise AutomorphismError(f"Empty partial conjugation by {self.vertex}")
        if not is_component_union(g, self.vertex, self.component):
            raise AutomorphismError(
                f"{g.sort(self.component)} is not a union of components of "
                f"the complement of st({self.vertex})"
            )

    def image(self, g: Graph, v: str) -> Word:
        x = Word.generator(g, v)
        if v not in self.component:
            return x
        c = Word.generator(g, self.vertex, self.power)
        return c * x * c.inverse()

    def inverse(self) -> PartialConj:
        return PartialConj(self.vertex, self.component, -self.power)


@dataclass(frozen=True)
class Inner:
    """Conjugation x -> word^power * x * word^-power."""

    word: Word
    power: int = 1

    def validate(self, g: Graph) -> None:
        _check_power(self.power)
        if self.word.graph != g:
            raise AutomorphismError("Inner automorphism word lives over another graph")

    def image(self, g: Graph, v: str) -> Word:
        c = self.word.power(self.power)
        return c * Word.generator(g, v) * c.inverse()

    def inverse(self) -> Inner:
        return Inner(self.word, -self.power)


@dataclass(frozen=True)
class CommutatorTransvection:
    """x -> x[y, z] (power +1) or x -> x[y, z]^-1 (power -1).

    The commutator is [y, z] = y z y^-1 z^-1.
    """

    x: str
    y: str
    z: str
    power: int = 1

    def validate(self, g: Graph) -> None:
        _check_power(self.power)
        g.check_vertices((self.x, self.y, self.z))
        if self.x in (self.y, self.z):
            raise AutomorphismError(f"Commutator transvection of {self.x} by itself")
        if not link(g, self.x) <= star(g, self.y) & star(g, self.z):
            raise AutomorphismError(
                f"lk({self.x}) is not contained in st({self.y}) and st({self.z})"
            )

    def commutator(self, g: Graph) -> Word:
        y, z = Word.generator(g, self.y), Word.generator(g, self.z)
        c = y * z * y.inverse() * z.inverse()
        return c if self.power == 1 else c.inverse()

    def image(self, g: Graph, v: str) -> Word:
        x = Word.generator(g, v)
        return x * self.commutator(g) if v == self.x else x

    def inverse(self) -> CommutatorTransvection:
        return CommutatorTransvection(self.x, self.y, self.z, -self.power)


ElementaryAut = (
    Symmetry | Inversion | Transvection | PartialConj | Inner | CommutatorTransvection
)


@dataclass(frozen=True)
class AutWord:
    """Composition of elementary generators, applied left to right."""

    graph: Graph = field(repr=False)
    generators: tuple[ElementaryAut, ...] = ()

    def __post_init__(self):
        for gen in self.generators:
            gen.validate(self.graph)

    @classmethod
    def identity(cls, graph: Graph) -> AutWord:
        return cls(graph, ())

    @classmethod
    def of(cls, graph: Graph, *generators: ElementaryAut) -> AutWord:
        return cls(graph, tuple(generators))

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def _substitute(images: Mapping[str, Word], w: Word, g: Graph) -> Word:
    letters: list[Letter] = []
    for x in w.letters:
        image = images[x.vertex]
        letters.extend(image.letters if x.sign == 1 else image.inverse().letters)
    return reduce(Word(g, tuple(letters)))


def image_map(a: AutWord) -> ImageMap:
    """Normal form of the image of every vertex."""
    g = a.graph
    current = {v: Word.generator(g, v) for v in g.vertices}
    for gen in a.generators:
        gen_images = {v: gen.image(g, v) for v in g.vertices}
        current = {v: _substitute(gen_images, w, g) for v, w in current.items()}
    return current


def apply(a: AutWord, w: Word) -> Word:
    """Image of a word under the automorphism, reduced."""
    if w.graph != a.graph:
        raise AutomorphismError("Word and automorphism live over different graphs")
    return _substitute(image_map(a), w, a.graph)


def compose(a: AutWord, b: AutWord) -> AutWord:
    """The automorphism applying a first, then b."""
    if a.graph != b.graph:
        raise AutomorphismError("Cannot compose automorphisms of different graphs")
    return AutWord(a.graph, a.generators + b.generators)


def invert(a: AutWord) -> AutWord:
    return AutWord(a.graph, tuple(gen.inverse() for gen in reversed(a.generators)))


def same_automorphism(a: AutWord, b: AutWord) -> bool:
    return image_map(a) == image_map(b)


def is_identity(a: AutWord) -> bool:
    return all(w.letters == (Letter(v, 1),) for v, w in image_map(a).items())


def is_conjugating(a: AutWord) -> bool:
    return all(is_conjugate_to_generator(w, v) for v, w in image_map(a).items())


def is_essential(a: AutWord) -> bool:
    return all(v in esupp(w) for v, w in image_map(a).items())


def symmetry_word(g: Graph, mapping: Mapping[str, str]) -> AutWord:
    """AutWord of a single symmetry, empty for the identity map."""
    if is_identity_map(mapping):
        return AutWord.identity(g)
    return AutWord.of(g, Symmetry.from_dict(mapping))


def find_symmetry(a: AutWord) -> dict[str, str]:
    """Graph symmetry sigma with sigma(v) in esupp(a(v)) for every vertex.

    Precomposing a with sigma^-1 gives an essential automorphism.

    Raises:
        InternalInvariantError: If no such symmetry exists (a is not an automorphism)
    """
    g = a.graph
    images = image_map(a)
    candidates = {v: esupp(images[v]) for v in g.vertices}
    sigma = next(extend_symmetries(g, g, candidates), None)
    if sigma is None:
        raise InternalInvariantError("Input is not an automorphism: no symmetry found")
    essential = compose(symmetry_word(g, invert_map(sigma)), a)
    if not is_essential(essential):
        raise InternalInvariantError(
            "Symmetry extraction did not give an essential map"
        )
    return sigma


def leftmost_extractable(w: Word, letter: Letter) -> bool:
    """True if some occurrence of letter can be shuffled to the front of w."""
    for x in w.letters:
        if x == letter:
            return True
        if not w.graph.commute(x.vertex, letter.vertex) or x.vertex == letter.vertex:
            return False
    return False


def strip_leftmost(w: Word, letter: Letter) -> Word:
    """Remove the occurrence of letter that can be shuffled to the front.

    Raises:
        DecompositionError: If the letter is not extractable
    """
    for i, x in enumerate(w.letters):
        if x == letter:
            return Word(w.graph, w.letters[:i] + w.letters[i + 1 :])
        if not w.graph.commute(x.vertex, letter.vertex) or x.vertex == letter.vertex:
            break
    raise DecompositionError(f"{letter} is not extractable at the front of {w}")


def is_prefix(prefix: Word, w: Word) -> bool:
    """True if reduced w can be written reduced as prefix * rest."""
    p, full = reduce(prefix), reduce(w)
    return len(reduce(p.inverse() * full)) == len(full) - len(p)


def conjugating_words(a: AutWord) -> dict[str, Word]:
    """For a conjugating automorphism, the reduced w_v with a(v) = w_v v w_v^-1."""
    words = {}
    for v, image in image_map(a).items():
        decomposition = cyclic_reduce(image)
        if decomposition.core.letters != (Letter(v, 1),):
            raise DecompositionError(f"Image of {v} is not a conjugate of {v}")
        words[v] = decomposition.conjugator
    return words


@dataclass(frozen=True)
class LaurenceStep:
    """One partial conjugation of a conjugating automorphism's decomposition."""

    vertex: str
    component: frozenset[str]
    sign: int

    def generator(self) -> PartialConj:
        return PartialConj(self.vertex, self.component, self.sign)


def laurence_word(g: Graph, steps: Iterable[LaurenceStep]) -> AutWord:
    """Recompose a decomposition into an AutWord (application order)."""
    return AutWord(g, tuple(step.generator() for step in steps))


def _find_leftmost_pair(
    g: Graph, words: Mapping[str, Word]
) -> tuple[str, int, str] | None:
    for v1 in g.vertices:
        st1 = star(g, v1)
        for eps in (1, -1):
            head = words[v1] * Word.generator(g, v1, eps)
            for v2 in g.vertices:
                if v2 not in st1 and is_prefix(head, words[v2]):
                    return v1, eps, v2
    return None


def laurence_decompose(a: AutWord, maximal: bool = True) -> list[LaurenceStep]:
    """Write a conjugating automorphism as a product of partial conjugations.

    Each step finds a vertex v1 and sign eps such that w_{v1} v1^eps begins the
    conjugating word of some v2 outside st(v1), then peels the partial
    conjugation off. With ``maximal`` the conjugated set holds every vertex
    outside st(v1) whose conjugating word begins that way; otherwise only the
    component of v2.

    Returns:
        Steps such that ``laurence_word(graph, steps)`` equals a

    Raises:
        DecompositionError: If a is not conjugating or verification fails
    """
    g = a.graph
    if not is_conjugating(a):
        raise DecompositionError(
            "Laurence decomposition needs a conjugating automorphism"
        )
    steps: list[LaurenceStep] = []
    current = a
    words = conjugating_words(current)
    total = sum(len(w) for w in words.values())
    while total:
        pair = _find_leftmost_pair(g, words)
        if pair is None:
            raise InternalInvariantError(
                "No left-most pair in a non-trivial conjugating map"
            )
        v1, eps, v2 = pair
        head = words[v1] * Word.generator(g, v1, eps)
        if maximal:
            component = frozenset(
                v
                for v in g.vertices
                if v not in star(g, v1) and is_prefix(head, words[v])
            )
            if not is_component_union(g, v1, component):
                raise InternalInvariantError(
                    f"Maximal set for {v1} is not a union of components: "
                    f"{g.sort(component)}"
                )
        else:
            component = next(c for c in conj_components(g, v1) if v2 in c)
        step = LaurenceStep(v1, component, eps)
        current = compose(AutWord.of(g, step.generator().inverse()), current)
        words = conjugating_words(current)
        new_total = sum(len(w) for w in words.values())
        if new_total >= total:
            raise DecompositionError(
                f"Conjugator length did not decrease ({total} -> {new_total})"
            )
        logger.debug(f"Peeled P({v1}, {g.sort(component)}, {eps}); length {new_total}")
        steps.append(step)
        total = new_total
    if not same_automorphism(laurence_word(g, steps), a):
        raise DecompositionError("Laurence decomposition does not recompose the input")
    return steps


@dataclass(frozen=True)
class Stuck:
    """Peeling could not strip any end letter of the residue."""

    vertex: str
    residue: Word


def express_as_transvections(
    v: str, w: Word, allowed: Callable[[str], bool] | None = None
) -> AutWord | Stuck:
    """Automorphism fixing every vertex except v and sending v to w.

    Letters are peeled greedily from the left end (smallest vertex first), then
    from the right end; a residue v^-1 adds a final inversion.

    Args:
        v: The vertex to send to w
        w: Word whose support lies above v, with exponent sum of v equal to +1 or -1
        allowed: Predicate a multiplier must satisfy (all multipliers by default)

    Returns:
        The transvection word, or Stuck when no end letter can be peeled

    Raises:
        DecompositionError: On precondition violations or failed verification
    """
    g = w.graph
    target = reduce(w)
    if not supp(target) <= above_set(g, v):
        raise DecompositionError(
            f"Support of {target} is not above {v}: {g.sort(supp(target))}"
        )
    if abs(signed_counts(target)[v]) != 1:
        raise DecompositionError(f"Exponent sum of {v} in {target} is not +1 or -1")
    allowed = allowed or (lambda _m: True)

    letters = list(target.letters)
    generators: list[ElementaryAut] = []
    while not (len(letters) == 1 and letters[0].vertex == v):
        peeled = _peel(g, v, letters, allowed, Side.LEFT) or _peel(
            g, v, letters, allowed, Side.RIGHT
        )
        if peeled is None:
            logger.debug(f"Peeling stuck for {v} at residue {Word(g, tuple(letters))}")
            return Stuck(v, Word(g, tuple(letters)))
        generators.append(peeled)
    if letters[0].sign == -1:
        generators.append(Inversion(v))

    result = AutWord(g, tuple(generators))
    expected = {u: Word.generator(g, u) for u in g.vertices}
    expected[v] = target
    if image_map(result) != expected:
        raise DecompositionError(f"Peeled transvections do not send {v} to {target}")
    return result


def _peel(
    g: Graph,
    v: str,
    letters: list[Letter],
    allowed: Callable[[str], bool],
    side: Side,
) -> Transvection | None:
    sequence = letters if side is Side.LEFT else letters[::-1]
    for a in g.sort({x.vertex for x in letters} - {v}):
        if not allowed(a):
            continue
        for i, x in enumerate(sequence):
            if x.vertex == a:
                index = i if side is Side.LEFT else len(letters) - 1 - i
                letter = letters.pop(index)
                return Transvection(v, a, side, letter.sign)
            if not g.is_adjacent(x.vertex, a):
                break
    return None


@dataclass(frozen=True)
class GHDecomposition:
    """a = compose(h, g): h (symmetries, inversions, transvections) first, then g."""

    g: AutWord
    h: AutWord
    symmetry: dict[str, str]
    h_cyclically_reduced: bool


def decompose_gh(a: AutWord) -> GHDecomposition:
    """Split an automorphism into a conjugating part and a transvection part.

    Vertices are handled in order. Each is precomposed with transvections
    sending it to the cyclically reduced core of its preimage, so its image
    becomes a conjugate of itself while later vertices keep their images.

    Raises:
        DecompositionError: If peeling gets stuck, an image of h is not
            cyclically reduced or verification fails
    """
    graph = a.graph
    sigma = find_symmetry(a)
    tau = invert_map(sigma)
    current = compose(symmetry_word(graph, tau), a)
    h_part: tuple[ElementaryAut, ...] = ()
    for v in order_vertices(graph):
        image = image_map(current)[v]
        conjugator = cyclic_reduce(image).conjugator
        corrected = compose(current, AutWord.of(graph, Inner(conjugator, -1)))
        # Only the core is peeled; its conjugator stays inside g.
        preimage = cyclic_reduce(image_map(invert(corrected))[v]).core
        if not supp(preimage) <= above_set(graph, v):
            raise DecompositionError(
                f"Cannot peel {v}: preimage {preimage} leaves the vertices above {v}"
            )
        peeled = express_as_transvections(
            v, preimage, above_set(graph, v).__contains__
        )
        if isinstance(peeled, Stuck):
            raise DecompositionError(
                f"Transvection peeling stuck at {v} with residue {peeled.residue}"
            )
        current = compose(peeled, current)
        h_part = peeled.generators + h_part

    g_word = current
    h_word = invert(compose(AutWord(graph, h_part), symmetry_word(graph, tau)))
    if not is_conjugating(g_word):
        raise DecompositionError(
            "Conjugating part of the decomposition is not conjugating"
        )
    if not same_automorphism(compose(h_word, g_word), a):
        raise DecompositionError("g and h do not recompose the input")
    for v, w in image_map(h_word).items():
        if len(cyclic_reduce(w).core) != len(w):
            raise DecompositionError(
                f"Transvection part sends {v} to {w}, which is not cyclically reduced"
            )
    return GHDecomposition(
        g=g_word, h=h_word, symmetry=sigma, h_cyclically_reduced=True
    )