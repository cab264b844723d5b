"""Census of cyclic voltage covers of a base graph.

Every voltage assignment on the edges outside a spanning forest is unrolled
into a derived cover, up to rescaling by units of the voltage group, and each
cover is analysed generator by generator. Covers are independent, so the
analyses may run in a process pool; the merged table does not depend on the
number of workers.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from math import gcd
from typing import Any

import networkx as nx
import polars as pl

from raaglift.analysis import analyze_cover
from raaglift.covering import VoltageSpec, derived_cover
from raaglift.graph_core import DEFAULT_SYMMETRY_CEILING, Graph, components

logger = logging.getLogger(__name__)

CENSUS_SCHEMA = {
    "n": pl.Int64,
    "voltages": pl.Utf8,
    "vertices": pl.Int64,
    "edges": pl.Int64,
    "components": pl.Int64,
    "deck_order": pl.Int64,
    "regular": pl.Boolean,
    "inversions": pl.Int64,
    "transvections": pl.Int64,
    "liftable_transvections": pl.Int64,
    "partial_conjugations": pl.Int64,
    "liftable_partial_conjugations": pl.Int64,
    "symmetries": pl.Int64,
    "liftable_symmetries": pl.Int64,
}


class CensusLimitError(Exception):
    """Raised when a census would analyse more covers than allowed."""


def cotree_edges(base: Graph) -> tuple[list[tuple[str, str]], list[tuple[str, str]]]:
    """Split the base edges into a spanning forest and the remaining edges.

    Edges are scanned in canonical order; the forest is the greedy one.
    """
    forest = nx.utils.UnionFind(base.vertices)
    tree, rest = [], []
    for a, b in base.sorted_edges():
        if forest[a] == forest[b]:
            rest.append((a, b))
        else:
            forest.union(a, b)
            tree.append((a, b))
    return tree, rest


def _canonical(values: tuple[int, ...], n: int) -> bool:
    """True if no unit multiple of the assignment is lexicographically smaller."""
    for unit in range(2, n):
        if gcd(unit, n) == 1 and tuple(unit * t % n for t in values) < values:
            return False
    return True


def enumerate_voltages(base: Graph, n: int) -> Iterator[VoltageSpec]:
    """Voltage assignments in Z/n up to unit rescaling, tree edges carrying 0.

    Assignments come out in lexicographic order of the cotree voltages.
    """
    if n < 1:
        raise ValueError(f"Voltage group order must be positive, got {n}")
    _, rest = cotree_edges(base)
    for values in product(range(n), repeat=len(rest)):
        if not _canonical(values, n):
            continue
        yield VoltageSpec(
            base, n, tuple((a, b, t) for (a, b), t in zip(rest, values, strict=True))
        )


def format_voltages(spec: VoltageSpec) -> str:
    """Compact text of the non-zero voltages, e.g. ``z-w:1``."""
    parts = [f"{a}-{b}:{t}" for (a, b), t in spec.normalized().items() if t]
    return " ".join(parts) or "0"


def census_row(
    spec: VoltageSpec, symmetry_ceiling: int = DEFAULT_SYMMETRY_CEILING
) -> dict[str, Any]:
    """Analyse one derived cover into a census row."""
    c = derived_cover(spec)
    row: dict[str, Any] = {
        "n": spec.n,
        "voltages": format_voltages(spec),
        "vertices": len(c.total),
        "edges": len(c.total.edges),
        "components": len(components(c.total, c.total.vertices)),
        "deck_order": c.deck.order,
        "regular": c.regular,
    }
    counts = dict.fromkeys(list(CENSUS_SCHEMA)[7:], 0)
    if c.regular:
        counts.update(analyze_cover(c, symmetry_ceiling).counts())
    else:
        logger.warning(f"Derived cover {row['voltages']} (n={spec.n}) is not regular")
    row.update(counts)
    return row


def _row_task(args: tuple[VoltageSpec, int]) -> dict[str, Any]:
    spec, ceiling = args
    return census_row(spec, ceiling)


def run_census(
    base: Graph,
    max_n: int,
    jobs: int = 1,
    min_n: int = 1,
    max_covers: int = 500,
    symmetry_ceiling: int = DEFAULT_SYMMETRY_CEILING,
) -> pl.DataFrame:
    """Analyse every derived cover of degree min_n..max_n.

    Args:
        base: The base graph
        max_n: Largest voltage group order
        jobs: Worker processes (1 runs in-process)
        min_n: Smallest voltage group order; 1 contributes the identity cover
        max_covers: Ceiling on the number of covers
        symmetry_ceiling: Vertex ceiling for base symmetry search

    Returns:
        One row per cover, sorted by (n, voltages)

    Raises:
        CensusLimitError: If more than max_covers covers would be analysed
    """
    specs = [
        spec
        for n in range(max(min_n, 1), max_n + 1)
        for spec in enumerate_voltages(base, n)
    ]
    if len(specs) > max_covers:
        msg = f"Census needs {len(specs)} covers, above the ceiling of {max_covers}"
        logger.error(msg)
        raise CensusLimitError(msg)
    logger.info(f"Census of {len(specs)} covers with {jobs} worker(s)")

    tasks = [(spec, symmetry_ceiling) for spec in specs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_row_task, tasks))
    else:
        rows = [_row_task(task) for task in tasks]

    return pl.DataFrame(rows, schema=CENSUS_SCHEMA).sort(["n", "voltages"])
