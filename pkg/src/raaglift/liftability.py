"""Liftability of automorphisms along a regular covering map.

Every elementary generator has its own criterion and an explicit lift. A
general automorphism is decided by peeling it into a symmetry, transvections,
inversions, inner automorphisms and a conjugating remainder, deciding each
piece and lifting the pieces one by one. Every lift handed out has been
checked against the projection.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from typing import Any

from raaglift.autos import (
    AutomorphismError,
    AutWord,
    CommutatorTransvection,
    DecompositionError,
    ElementaryAut,
    ImageMap,
    Inner,
    Inversion,
    PartialConj,
    Side,
    Stuck,
    Symmetry,
    Transvection,
    compose,
    express_as_transvections,
    find_symmetry,
    image_map,
    invert,
    is_conjugating,
    is_essential,
    laurence_decompose,
    same_automorphism,
    symmetry_word,
)
from raaglift.covering import (
    CoverError,
    CoveringMap,
    IrregularCoverError,
    bar,
    closure_blocks,
    complement_component,
    lift_symmetry,
    lift_word,
    leq_phi,
    preimage,
    project_word,
)
from raaglift.graph_core import (
    InternalInvariantError,
    VertexMap,
    components,
    conj_components,
    invert_map,
    is_identity_map,
    leq_linkstar,
    link,
    order_vertices,
    star,
)
from raaglift.raag_words import Word, cyclic_reduce, reduce, supp

logger = logging.getLogger(__name__)


class VerificationError(Exception):
    """Raised when a constructed lift does not cover the automorphism it should."""


class Verdict(Enum):
    LIFTABLE = "liftable"
    NOT_LIFTABLE = "not_liftable"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LiftResult:
    """Outcome of a liftability question.

    Attributes:
        verdict: Liftable, NotLiftable or Unknown
        lift: Automorphism of the total group covering the input (Liftable only)
        verified: Whether the lift passed verification (always True when Liftable)
        witness: Reason the input cannot lift (NotLiftable only)
        diagnostic: Why no definite answer was reached (Unknown only)
        certificate: Elementary base generators recomposing the input, each liftable
    """

    verdict: Verdict
    lift: AutWord | None = None
    verified: bool = False
    witness: str | None = None
    diagnostic: str | None = None
    certificate: tuple[ElementaryAut, ...] = ()

    @classmethod
    def not_liftable(cls, witness: str) -> LiftResult:
        return cls(Verdict.NOT_LIFTABLE, witness=witness)

    @classmethod
    def unknown(cls, diagnostic: str) -> LiftResult:
        logger.warning(f"Liftability unknown: {diagnostic}")
        return cls(Verdict.UNKNOWN, diagnostic=diagnostic)

    @property
    def is_liftable(self) -> bool:
        return self.verdict is Verdict.LIFTABLE

    def to_record(self) -> dict[str, Any]:
        record: dict[str, Any] = {
            "verdict": self.verdict.value,
            "verified": self.verified,
        }
        if self.witness is not None:
            record["witness"] = self.witness
        if self.diagnostic is not None:
            record["diagnostic"] = self.diagnostic
        return record


def verify_lift(c: CoveringMap, F: AutWord, f: AutWord) -> bool:
    """True if F(u) projects to f(p(u)) for every total vertex u.

    Raises:
        AutomorphismError: If F or f lives over the wrong graph
    """
    if F.graph != c.total or f.graph != c.base:
        raise AutomorphismError(
            "Lift must act on the total graph and f on the base graph"
        )
    upstairs = image_map(F)
    downstairs = image_map(f)
    for u, w in upstairs.items():
        if reduce(project_word(c, w)) != downstairs[c.vmap[u]]:
            expected = downstairs[c.vmap[u]]
            logger.debug(f"Lift fails at {u}: {w} does not project to {expected}")
            return False
    return True


def _verified(
    c: CoveringMap,
    F: AutWord,
    f: AutWord,
    certificate: tuple[ElementaryAut, ...] = (),
) -> LiftResult:
    if not verify_lift(c, F, f):
        logger.error("Constructed lift failed verification")
        raise VerificationError("Constructed lift does not cover the automorphism")
    return LiftResult(Verdict.LIFTABLE, lift=F, verified=True, certificate=certificate)


def _refuse(c: CoveringMap, witness: str) -> LiftResult:
    """NotLiftable without isolated base vertices, Unknown otherwise."""
    if c.base.has_isolated_vertices:
        return LiftResult.unknown(f"{witness} (base has isolated vertices)")
    return LiftResult.not_liftable(witness)


def lift_inversion(c: CoveringMap, v: str) -> LiftResult:
    """The product of the inversions of every fiber member."""
    c.base.check_vertex(v)
    F = AutWord(c.total, tuple(Inversion(u) for u in c.fibers[v]))
    f = AutWord.of(c.base, Inversion(v))
    return _verified(c, F, f, (Inversion(v),))


def lift_transvection(
    c: CoveringMap, t: str, m: str, side: Side = Side.LEFT, power: int = 1
) -> LiftResult:
    """Lift of the transvection of t by m.

    Each fiber member of t is transvected by the unique fiber member of m
    above it. Liftable exactly when t is below m in the covering order.

    Raises:
        AutomorphismError: If lk(t) is not contained in st(m)
    """
    generator = Transvection(t, m, side, power)
    f = AutWord.of(c.base, generator)
    if not leq_phi(c, t, m):
        return _refuse(c, f"{t} is not below {m} in the covering order")
    lifted = []
    for u in c.fibers[t]:
        above = [u2 for u2 in c.fibers[m] if leq_linkstar(c.total, u, u2)]
        if len(above) > 1 and c.total.degree(u):
            raise InternalInvariantError(
                f"Non-isolated {u} lies below several fiber members of {m}: {above}"
            )
        lifted.append(Transvection(u, above[0], side, power))
    return _verified(c, AutWord(c.total, tuple(lifted)), f, (generator,))


def lift_inner(c: CoveringMap, g: Word, power: int = 1) -> AutWord:
    """Conjugation by a letter-wise preimage of g."""
    return AutWord.of(c.total, Inner(lift_word(c, g), power))


def lift_symmetry_aut(c: CoveringMap, sigma: Mapping[str, str]) -> LiftResult:
    """Liftable iff some symmetry of the total graph covers sigma."""
    f = symmetry_word(c.base, sigma)
    lifts = lift_symmetry(c, sigma)
    if not lifts:
        return LiftResult.not_liftable(
            f"No symmetry of the total graph covers {dict(sorted(sigma.items()))}"
        )
    certificate = () if is_identity_map(sigma) else (Symmetry.from_dict(sigma),)
    return _verified(c, symmetry_word(c.total, lifts[0]), f, certificate)


def _closed_block_lift(
    c: CoveringMap, v: str, block: frozenset[str]
) -> list[ElementaryAut]:
    """Generators of a lift of the partial conjugation of a closure block by v."""
    total, base = c.total, c.base
    fib = c.fibers[v]
    representative = next(b for b in conj_components(base, v) if b <= block)
    home = next(comp for comp in components(base, base.vertices) if v in comp)
    if not representative & home:
        return [PartialConj(fib[0], preimage(c, block))]

    lifted_rep = preimage(c, representative)
    generators: list[ElementaryAut] = []
    for piece in components(total, total.vertices):
        hubs = [u for u in fib if u in piece]
        if not hubs:
            continue
        lifted = components(total, lifted_rep & piece)[0]
        around = {u: complement_component(total, u, lifted) for u in hubs}
        d = frozenset.intersection(*around.values())
        single = next((u for u in hubs if around[u] == d), None)
        if single is not None:
            for hub in hubs:
                mu = c.deck.mapping_to(single, hub)
                if mu is None:
                    raise IrregularCoverError(
                        f"No deck element sends {single} to {hub}"
                    )
                generators.append(PartialConj(hub, frozenset(mu[x] for x in d)))
        else:
            z = hubs[0]
            rest = piece - star(total, z)
            correction = [PartialConj(z, rest, -1)] * (len(hubs) - 1) if rest else []
            generators.extend(correction)
            generators.extend(PartialConj(u, around[u]) for u in hubs)
    return generators


def lift_partial_conj(
    c: CoveringMap, v: str, comps: Iterable[str], power: int = 1
) -> LiftResult:
    """Lift of the partial conjugation of a component union by v.

    Liftable exactly when the union equals its closure. The lift handles each
    closure block separately. Within a component of the total graph either
    the intersection D equals one complement component, and then every deck
    translate of D is conjugated by the matching fiber member, or every fiber
    member conjugates its own complement component and extra conjugations by
    one fiber member cancel the surplus.

    Raises:
        AutomorphismError: If comps is not a union of components off st(v)
        IrregularCoverError: If the cover is not regular
    """
    comps = frozenset(comps)
    generator = PartialConj(v, comps, power)
    f = AutWord.of(c.base, generator)
    closure = bar(c, v, comps)
    if closure != comps:
        return _refuse(
            c,
            f"Closure of {list(c.base.sort(comps))} at {v} is "
            f"{list(c.base.sort(closure))}",
        )
    generators: list[ElementaryAut] = []
    for block in closure_blocks(c, v, comps):
        generators.extend(_closed_block_lift(c, v, block))
    F = AutWord(c.total, tuple(generators))
    if power == -1:
        F = invert(F)
    return _verified(c, F, f, (generator,))


def lift_generator(c: CoveringMap, gen: ElementaryAut) -> LiftResult:
    """Decide and lift a single elementary generator of the base group."""
    match gen:
        case Symmetry():
            return lift_symmetry_aut(c, gen.as_dict)
        case Inversion():
            return lift_inversion(c, gen.vertex)
        case Transvection():
            return lift_transvection(c, gen.target, gen.multiplier, gen.side, gen.power)
        case PartialConj():
            return lift_partial_conj(c, gen.vertex, gen.component, gen.power)
        case Inner():
            F = lift_inner(c, gen.word, gen.power)
            return _verified(c, F, AutWord.of(c.base, gen), (gen,))
        case CommutatorTransvection():
            return decide_liftable(c, AutWord.of(c.base, gen))
    raise AutomorphismError(f"Unsupported generator {gen!r}")


def lift_certificate(c: CoveringMap, certificate: Iterable[ElementaryAut]) -> AutWord:
    """Compose the lifts of liftable generators, in application order.

    Raises:
        VerificationError: If a generator does not lift
    """
    generators: list[ElementaryAut] = []
    for gen in certificate:
        result = lift_generator(c, gen)
        if not result.is_liftable:
            raise VerificationError(f"Certificate generator {gen!r} does not lift")
        generators.extend(result.lift.generators)
    return AutWord(c.total, tuple(generators))


def essentialize_lift(c: CoveringMap, F: AutWord, f: AutWord) -> VertexMap | None:
    """Deck element mu such that F precomposed with mu is essential.

    Returns:
        The first such deck element, or None when the base has isolated
        vertices and no deck element works

    Raises:
        AutomorphismError: If f is not essential
        VerificationError: If F is not a lift of f
        InternalInvariantError: If no deck element works over a base without
            isolated vertices
    """
    if not is_essential(f):
        raise AutomorphismError("Essentialization needs an essential base automorphism")
    if not verify_lift(c, F, f):
        raise VerificationError("F is not a lift of f")
    for mu in c.deck.elements:
        if is_essential(compose(symmetry_word(c.total, mu), F)):
            return mu
    if c.base.has_isolated_vertices:
        logger.warning(
            "No deck element essentializes the lift (isolated base vertices)"
        )
        return None
    raise InternalInvariantError("No deck element makes the lift essential")


def decide_liftable_conjugating(c: CoveringMap, f: AutWord) -> LiftResult:
    """Decide a conjugating automorphism through its maximal partial-conjugation word.

    Raises:
        AutomorphismError: If f is not conjugating
        IrregularCoverError: If the cover is not regular
    """
    if f.graph != c.base:
        raise AutomorphismError("Automorphism does not act on the base graph")
    if not is_conjugating(f):
        raise AutomorphismError("Automorphism is not conjugating")
    if not c.regular:
        raise IrregularCoverError("Liftability is decided over regular covers only")
    steps = laurence_decompose(f, maximal=True)
    generators: list[ElementaryAut] = []
    for step in steps:
        result = lift_partial_conj(c, step.vertex, step.component, step.sign)
        if not result.is_liftable:
            logger.info(f"Partial conjugation by {step.vertex} does not lift")
            return result
        generators.extend(result.lift.generators)
    certificate = tuple(step.generator() for step in steps)
    return _verified(c, AutWord(c.total, tuple(generators)), f, certificate)


def conjugating_lift(c: CoveringMap, f: AutWord) -> AutWord:
    """A conjugating lift of a liftable conjugating automorphism.

    Raises:
        AutomorphismError: If f is not conjugating or not liftable
    """
    result = decide_liftable_conjugating(c, f)
    if not result.is_liftable:
        raise AutomorphismError(
            f"Automorphism is not liftable: {result.witness or result.diagnostic}"
        )
    if not is_conjugating(result.lift):
        raise InternalInvariantError(
            "Lift of a conjugating automorphism is not conjugating"
        )
    return result.lift


def decide_liftable(c: CoveringMap, f: AutWord) -> LiftResult:
    """Decide whether f lifts and produce a verified lift with its certificate.

    The symmetry part of f is split off and lifted first. Then, for each vertex
    in order, the cyclically reduced core of its image must lie above the vertex
    in the covering order. The vertex is precomposed with liftable transvections
    sending it to the core of its preimage, which makes its image a conjugate
    of itself and leaves later vertices untouched. The conjugating remainder is
    decided by its partial conjugations.

    Raises:
        AutomorphismError: If f does not act on the base graph
        IrregularCoverError: If the cover is not regular
    """
    if f.graph != c.base:
        raise AutomorphismError("Automorphism does not act on the base graph")
    if not c.regular:
        raise IrregularCoverError("Liftability is decided over regular covers only")
    base = c.base
    sigma = find_symmetry(f)
    symmetry = lift_symmetry_aut(c, sigma)
    if not symmetry.is_liftable:
        return symmetry

    current = compose(symmetry_word(base, invert_map(sigma)), f)
    peeled: list[AutWord] = []
    for v in order_vertices(base):
        split = cyclic_reduce(image_map(current)[v])
        allowed = frozenset(m for m in base.vertices if leq_phi(c, v, m))
        outside = supp(split.core) - allowed
        if outside:
            return _refuse(
                c,
                f"Image of {v} involves {list(base.sort(outside))}, "
                f"not above {v} in the covering order",
            )
        corrected = current
        if split.conjugator:
            corrected = compose(current, AutWord.of(base, Inner(split.conjugator, -1)))
        preimage = cyclic_reduce(image_map(invert(corrected))[v]).core
        try:
            transvections = express_as_transvections(
                v, preimage, allowed.__contains__
            )
        except DecompositionError as e:
            return LiftResult.unknown(f"Cannot peel the preimage of {v}: {e}")
        if isinstance(transvections, Stuck):
            return LiftResult.unknown(
                f"Peeling stuck at {v} with residue {transvections.residue}"
            )
        current = compose(transvections, current)
        peeled.append(transvections)

    if not is_conjugating(current):
        raise InternalInvariantError("Remainder after peeling is not conjugating")
    remainder = decide_liftable_conjugating(c, current)
    if not remainder.is_liftable:
        return remainder

    certificate: tuple[ElementaryAut, ...] = symmetry.certificate
    for transvections in peeled:
        certificate += invert(transvections).generators
    certificate += remainder.certificate
    if not same_automorphism(AutWord(base, certificate), f):
        raise InternalInvariantError("Certificate does not recompose the automorphism")
    logger.debug(f"Certificate of {len(certificate)} liftable generators")
    return _verified(c, lift_certificate(c, certificate), f, certificate)


def commutator_transvection_fd_reason(
    c: CoveringMap, x: str, y: str, z: str
) -> str | None:
    """Why the commutator transvection of x by [y, z] is not a lift of the identity.

    Returns:
        None when it is one, otherwise the first failing condition
    """
    total = c.total
    total.check_vertices((x, y, z))
    if len({x, y, z}) < 3:
        return "x, y and z must be distinct"
    if not link(total, x) <= star(total, y) & star(total, z):
        return f"lk({x}) is not contained in st({y}) and st({z})"
    if total.is_adjacent(y, z):
        return f"{y} and {z} commute in the total graph, so the generator is trivial"
    if not c.base.commute(c.vmap[y], c.vmap[z]):
        return f"Images of {y} and {z} do not commute in the base graph"
    return None


def commutator_transvection_in_fd(c: CoveringMap, x: str, y: str, z: str) -> bool:
    """True if the commutator transvection is a non-trivial lift of the identity."""
    reason = commutator_transvection_fd_reason(c, x, y, z)
    if reason is not None:
        logger.debug(f"Commutator transvection ({x}, {y}, {z}) rejected: {reason}")
        return False
    F = AutWord.of(c.total, CommutatorTransvection(x, y, z))
    if not verify_lift(c, F, AutWord.identity(c.base)):
        raise InternalInvariantError(
            f"Commutator transvection ({x}, {y}, {z}) does not lift the identity"
        )
    return True


def project_automorphism(c: CoveringMap, F: AutWord) -> ImageMap:
    """Base images induced by a fiber-preserving automorphism of the total group.

    Raises:
        VerificationError: If fiber-mates project to different images
    """
    images = image_map(F)
    induced: ImageMap = {}
    for v in c.base.vertices:
        projected = {reduce(project_word(c, images[u])) for u in c.fibers[v]}
        if len(projected) != 1:
            raise VerificationError(
                f"Fiber of {v} projects to {len(projected)} different images; "
                f"the automorphism is not fiber-preserving"
            )
        induced[v] = projected.pop()
    return induced


def kernel_inner(c: CoveringMap, k: Word) -> AutWord:
    """Conjugation by a total word with trivial projection, a lift of the identity.

    Raises:
        AutomorphismError: If k projects to a non-trivial element
    """
    if reduce(project_word(c, k)):
        raise AutomorphismError(f"{k} does not project to the identity")
    return AutWord.of(c.total, Inner(k))


def deck_automorphism(c: CoveringMap, mu: Mapping[str, str]) -> AutWord:
    """A deck transformation as an automorphism of the total group.

    Raises:
        CoverError: If mu is not a deck transformation
    """
    if c.deck.find(mu) is None:
        raise CoverError("Map is not a deck transformation")
    return symmetry_word(c.total, mu)
