"""Validation of graph covering maps.

Checks that a vertex map between two graphs is a covering map, names every
violated condition with witnesses, and generates validation reports.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import TYPE_CHECKING, Any

from raaglift.graph_core import distance

if TYPE_CHECKING:
    from raaglift.config import Config
    from raaglift.covering import CoveringMap

logger = logging.getLogger(__name__)


@dataclass
class ValidationIssue:
    """Represents a single validation issue."""

    severity: str  # 'error', 'warning', 'info'
    category: str  # Name of the violated condition
    message: str  # Description
    count: int = 0  # Number of offending vertices or edges
    examples: list[dict[str, Any]] = field(default_factory=list)  # Witnesses


@dataclass
class ValidationReport:
    """Validation report for a covering map."""

    total_vertices: int
    total_edges: int
    issues: list[ValidationIssue] = field(default_factory=list)
    passed: bool = True  # Overall validation status

    def add_issue(self, issue: ValidationIssue):
        """Add a validation issue to the report."""
        self.issues.append(issue)
        if issue.severity == "error":
            self.passed = False

    @property
    def errors(self) -> list[ValidationIssue]:
        return [i for i in self.issues if i.severity == "error"]

    def get_summary(self) -> dict[str, Any]:
        """Get a summary of the validation report."""
        return {
            "total_vertices": self.total_vertices,
            "total_edges": self.total_edges,
            "passed": self.passed,
            "error_count": len(self.errors),
            "warning_count": sum(1 for i in self.issues if i.severity == "warning"),
            "info_count": sum(1 for i in self.issues if i.severity == "info"),
            "issues": [
                {
                    "severity": i.severity,
                    "category": i.category,
                    "message": i.message,
                    "count": i.count,
                    "examples": i.examples,
                }
                for i in self.issues
            ],
        }

    def print_report(self):
        """Print a formatted validation report to the console."""
        print("\n" + "=" * 80)
        print("COVERING MAP VALIDATION REPORT")
        print("=" * 80)
        print(
            f"\nTotal graph: {self.total_vertices} vertices, "
            f"{self.total_edges} edges"
        )
        print(f"Overall Status: {'[OK] PASSED' if self.passed else '[X] FAILED'}")

        if not self.issues:
            print("\n[OK] No validation issues found")
            return

        markers = {"error": "[X]", "warning": "[!]", "info": "[i]"}
        titles = {"error": "ERRORS", "warning": "WARNINGS", "info": "INFORMATION"}
        for severity in ("error", "warning", "info"):
            group = [i for i in self.issues if i.severity == severity]
            if not group:
                continue
            print(f"\n{'=' * 80}")
            print(f"{titles[severity]} ({len(group)})")
            print("=" * 80)
            for issue in group:
                print(f"\n{markers[severity]} {issue.category}")
                print(f"  {issue.message}")
                print(f"  Count: {issue.count}")
                for example in issue.examples:
                    print(f"    e.g. {example}")

        print("\n" + "=" * 80 + "\n")


class CoverValidator:
    """Validates that a vertex map is a graph covering map.

    Performs the defining checks:
    - Map defined on every total vertex with base-vertex values
    - Simpliciality (edges go to edges)
    - Vertex and edge surjectivity
    - Local bijectivity on links

    and then the derived sanity checks:
    - Distinct fiber-mates are at distance at least 3
    - Isolated vertices map to isolated vertices
    """

    def __init__(self, config: Config | None = None):
        """Initialise the validator.

        Args:
            config: Configuration object. If None, built-in defaults are used.
        """
        self.max_examples = config.get("validation.max_examples", 3) if config else 3

    def validate_cover(self, c: CoveringMap) -> ValidationReport:
        """Validate a covering map.

        Args:
            c: Covering map to check

        Returns:
            ValidationReport naming each violated condition with witnesses
        """
        logger.info(
            f"Validating cover of {len(c.base)} base vertices by "
            f"{len(c.total)} total vertices"
        )
        report = ValidationReport(
            total_vertices=len(c.total), total_edges=len(c.total.edges)
        )

        self._check_domain(c, report)
        if not report.passed:
            return report
        self._check_simplicial(c, report)
        self._check_surjective(c, report)
        self._check_local_bijectivity(c, report)
        if report.passed:
            self._check_fiber_distance(c, report)
            self._check_isolated(c, report)

        logger.info(
            f"Validation complete: {len(report.errors)} errors, "
            f"{len(report.issues) - len(report.errors)} other issues"
        )
        return report

    def _add(
        self,
        report: ValidationReport,
        category: str,
        message: str,
        witnesses: list[dict[str, Any]],
        severity: str = "error",
    ):
        if witnesses:
            report.add_issue(
                ValidationIssue(
                    severity=severity,
                    category=category,
                    message=message,
                    count=len(witnesses),
                    examples=witnesses[: self.max_examples],
                )
            )

    def _check_domain(self, c: CoveringMap, report: ValidationReport):
        """Check the map is defined exactly on the total vertices with base values."""
        missing = [{"vertex": u} for u in c.total.vertices if u not in c.vmap]
        extra = [{"vertex": u} for u in c.vmap if u not in c.total]
        bad_values = [
            {"vertex": u, "image": v} for u, v in c.vmap.items() if v not in c.base
        ]
        self._add(report, "Map Domain", "Total vertices without an image", missing)
        self._add(report, "Map Domain", "Map keys that are not total vertices", extra)
        self._add(
            report, "Map Codomain", "Images that are not base vertices", bad_values
        )

    def _check_simplicial(self, c: CoveringMap, report: ValidationReport):
        """Check every edge of the total graph maps to an edge of the base graph."""
        collapsed, broken = [], []
        for a, b in c.total.sorted_edges():
            x, y = c.vmap[a], c.vmap[b]
            if x == y:
                collapsed.append({"edge": [a, b], "image": x})
            elif not c.base.is_adjacent(x, y):
                broken.append({"edge": [a, b], "image": [x, y]})
        self._add(report, "Not Simplicial", "Edges collapsed to a vertex", collapsed)
        self._add(report, "Not Simplicial", "Edges sent to non-edges", broken)

    def _check_surjective(self, c: CoveringMap, report: ValidationReport):
        """Check every base vertex and base edge is hit."""
        hit_vertices = set(c.vmap.values())
        missed_vertices = [
            {"vertex": v} for v in c.base.vertices if v not in hit_vertices
        ]
        hit_edges = {frozenset(c.vmap[u] for u in e) for e in c.total.edges}
        missed_edges = [
            {"edge": list(e)}
            for e in c.base.sorted_edges()
            if frozenset(e) not in hit_edges
        ]
        self._add(
            report, "Not Surjective", "Base vertices with empty fiber", missed_vertices
        )
        self._add(report, "Not Surjective", "Base edges with no preimage", missed_edges)

    def _check_local_bijectivity(self, c: CoveringMap, report: ValidationReport):
        """Check the map restricted to each link is a bijection onto the image link."""
        witnesses = []
        for u in c.total.vertices:
            images = [c.vmap[w] for w in c.total.sort(c.total.neighbors(u))]
            target = c.base.neighbors(c.vmap[u])
            if len(set(images)) != len(images) or set(images) != target:
                witnesses.append(
                    {
                        "vertex": u,
                        "link_image": images,
                        "expected": list(c.base.sort(target)),
                    }
                )
        self._add(
            report, "Not Locally Bijective", "Links not mapped bijectively", witnesses
        )

    def _check_fiber_distance(self, c: CoveringMap, report: ValidationReport):
        """Distinct fiber-mates must be at distance at least 3."""
        witnesses = []
        for v in c.base.vertices:
            for u1, u2 in combinations(c.fiber(v), 2):
                d = distance(c.total, u1, u2)
                if d is not None and d < 3:
                    witnesses.append({"pair": [u1, u2], "distance": d})
        self._add(
            report,
            "Fiber Distance",
            "Fiber-mates closer than distance 3 (impossible for a covering)",
            witnesses,
        )

    def _check_isolated(self, c: CoveringMap, report: ValidationReport):
        """Isolated total vertices map to isolated base vertices."""
        witnesses = [
            {"vertex": u, "image": c.vmap[u]}
            for u in c.total.isolated_vertices
            if c.base.degree(c.vmap[u])
        ]
        self._add(
            report,
            "Isolated Vertices",
            "Isolated vertex over a non-isolated one",
            witnesses,
        )
        if c.base.has_isolated_vertices:
            report.add_issue(
                ValidationIssue(
                    severity="info",
                    category="Isolated Base Vertices",
                    message=(
                        "Base graph has isolated vertices; necessity-based verdicts "
                        "degrade to Unknown"
                    ),
                    count=len(c.base.isolated_vertices),
                    examples=[{"vertex": v} for v in c.base.isolated_vertices][
                        : self.max_examples
                    ],
                )
            )
