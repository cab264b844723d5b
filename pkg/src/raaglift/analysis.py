"""Liftability of every elementary generator of the base group of a cover.

Tabulates inversions, transvections, partial conjugations of components and
of their closures, and base symmetries, each with its verdict.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

import polars as pl

from raaglift.covering import CoveringMap, IrregularCoverError, bar
from raaglift.graph_core import (
    DEFAULT_SYMMETRY_CEILING,
    conj_components,
    graph_symmetries,
    is_identity_map,
    leq_linkstar,
)
from raaglift.homology import transvection_block_obstruction
from raaglift.liftability import (
    LiftResult,
    Verdict,
    lift_inversion,
    lift_partial_conj,
    lift_symmetry_aut,
    lift_transvection,
)

logger = logging.getLogger(__name__)

KINDS = ("inversion", "transvection", "partial_conj", "symmetry")


@dataclass
class GeneratorVerdict:
    """Verdict on one elementary base generator."""

    kind: str
    label: str
    verdict: Verdict
    fields: dict[str, Any] = field(default_factory=dict)
    detail: str | None = None

    @classmethod
    def from_result(
        cls, kind: str, label: str, result: LiftResult, **fields: Any
    ) -> GeneratorVerdict:
        detail = result.witness or result.diagnostic
        return cls(kind, label, result.verdict, fields, detail)

    @property
    def liftable(self) -> bool:
        return self.verdict is Verdict.LIFTABLE

    def to_record(self) -> dict[str, Any]:
        record = {"kind": self.kind, "verdict": self.verdict.value, **self.fields}
        if self.detail is not None:
            record["detail"] = self.detail
        return record


@dataclass
class CoverAnalysis:
    """All generator verdicts of one regular cover."""

    rows: list[GeneratorVerdict] = field(default_factory=list)

    def of_kind(self, kind: str) -> list[GeneratorVerdict]:
        return [r for r in self.rows if r.kind == kind]

    def find(self, label: str) -> GeneratorVerdict | None:
        return next((r for r in self.rows if r.label == label), None)

    def counts(self) -> dict[str, int]:
        """Generator and liftable counts per kind."""
        plural = {
            "inversion": "inversions",
            "transvection": "transvections",
            "partial_conj": "partial_conjugations",
            "symmetry": "symmetries",
        }
        out: dict[str, int] = {}
        for kind in KINDS:
            rows = self.of_kind(kind)
            out[plural[kind]] = len(rows)
            if kind != "inversion":
                out[f"liftable_{plural[kind]}"] = sum(r.liftable for r in rows)
        return out

    @property
    def all_liftable(self) -> bool:
        return all(r.liftable for r in self.rows)

    def to_frame(self) -> pl.DataFrame:
        return pl.DataFrame(
            {
                "kind": [r.kind for r in self.rows],
                "generator": [r.label for r in self.rows],
                "verdict": [r.verdict.value for r in self.rows],
                "detail": [r.detail or "" for r in self.rows],
            },
            schema={
                "kind": pl.Utf8,
                "generator": pl.Utf8,
                "verdict": pl.Utf8,
                "detail": pl.Utf8,
            },
        )

    def to_records(self) -> list[dict[str, Any]]:
        return [r.to_record() for r in self.rows]


def _set_label(c: CoveringMap, vs) -> str:
    return "{" + ", ".join(c.base.sort(vs)) + "}"


def analyze_cover(
    c: CoveringMap, symmetry_ceiling: int = DEFAULT_SYMMETRY_CEILING
) -> CoverAnalysis:
    """Decide every elementary generator of the base group.

    Transvections are listed for every ordered pair t, m with lk(t) inside
    st(m). Partial conjugations are listed for every single component off a
    star, with its closure, and for every closure that is larger than the
    component it came from. Symmetries exclude the identity.

    Raises:
        IrregularCoverError: If the cover is not regular
        SymmetryCeilingError: If the base graph is too large for symmetry search
    """
    if not c.regular:
        raise IrregularCoverError("Liftability is decided over regular covers only")
    base = c.base
    analysis = CoverAnalysis()

    for v in base.vertices:
        analysis.rows.append(
            GeneratorVerdict.from_result(
                "inversion", f"I({v})", lift_inversion(c, v), vertex=v
            )
        )

    for t in base.vertices:
        for m in base.vertices:
            if t == m or not leq_linkstar(base, t, m):
                continue
            row = GeneratorVerdict.from_result(
                "transvection",
                f"T({t}, {m})",
                lift_transvection(c, t, m),
                target=t,
                multiplier=m,
            )
            if row.verdict is Verdict.NOT_LIFTABLE:
                obstruction = transvection_block_obstruction(c, t, m)
                row.fields["block_obstruction"] = obstruction.obstructed
            analysis.rows.append(row)

    for v in base.vertices:
        closures: list[frozenset[str]] = []
        for b in conj_components(base, v):
            closure = bar(c, v, b)
            analysis.rows.append(
                GeneratorVerdict.from_result(
                    "partial_conj",
                    f"P({v}, {_set_label(c, b)})",
                    lift_partial_conj(c, v, b),
                    vertex=v,
                    component=list(base.sort(b)),
                    closure=list(base.sort(closure)),
                )
            )
            if closure != b and closure not in closures:
                closures.append(closure)
        for closure in closures:
            analysis.rows.append(
                GeneratorVerdict.from_result(
                    "partial_conj",
                    f"P({v}, {_set_label(c, closure)})",
                    lift_partial_conj(c, v, closure),
                    vertex=v,
                    component=list(base.sort(closure)),
                    closure=list(base.sort(bar(c, v, closure))),
                )
            )

    for sigma in graph_symmetries(base, symmetry_ceiling):
        if is_identity_map(sigma):
            continue
        moved = {v: sigma[v] for v in base.vertices if sigma[v] != v}
        label = "S(" + ", ".join(f"{v}->{w}" for v, w in moved.items()) + ")"
        analysis.rows.append(
            GeneratorVerdict.from_result(
                "symmetry", label, lift_symmetry_aut(c, sigma), map=dict(sigma)
            )
        )

    logger.info(
        f"Analysed {len(analysis.rows)} generators: "
        f"{sum(r.liftable for r in analysis.rows)} liftable"
    )
    return analysis
