"""Command implementations behind the console scripts.

Each ``cmd_*`` function loads its documents, runs the library and returns a
``CommandResult``: a JSON-ready record, human summary lines, tables and an
exit code. Exceptions are mapped onto the exit-code contract by
``run_command``.
"""

from __future__ import annotations

import logging
import sys
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path
from typing import Any

import polars as pl

from raaglift.analysis import analyze_cover
from raaglift.autos import (
    AutomorphismError,
    AutWord,
    DecompositionError,
    compose,
    decompose_gh,
    is_conjugating,
    laurence_decompose,
    laurence_word,
    same_automorphism,
    symmetry_word,
)
from raaglift.census import CensusLimitError, run_census
from raaglift.config import Config
from raaglift.covering import (
    CoverError,
    CoveringMap,
    IrregularCoverError,
    VoltageError,
    require_valid,
)
from raaglift.data_loader import (
    DataLoadError,
    DocumentLoader,
    automorphism_to_doc,
    dumps,
    generator_to_doc,
)
from raaglift.graph_core import (
    GraphError,
    InternalInvariantError,
    SymmetryCeilingError,
)
from raaglift.homology import HomologyError, abelianization_matrix, fd_torelli_witness
from raaglift.liftability import (
    Verdict,
    VerificationError,
    decide_liftable,
    project_automorphism,
    verify_lift,
)
from raaglift.raag_words import BudgetExceededError, WordError
from raaglift.validators import CoverValidator

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    OK = 0
    LOAD_ERROR = 1
    INVALID_COVER = 2
    NOT_LIFTABLE = 3
    UNKNOWN = 4
    FAILURE = 5


VERDICT_EXIT = {
    Verdict.LIFTABLE: ExitCode.OK,
    Verdict.NOT_LIFTABLE: ExitCode.NOT_LIFTABLE,
    Verdict.UNKNOWN: ExitCode.UNKNOWN,
}


@dataclass
class CommandResult:
    """Outcome of one command."""

    command: str
    exit_code: ExitCode
    record: dict[str, Any] = field(default_factory=dict)
    summary: list[str] = field(default_factory=list)
    tables: dict[str, pl.DataFrame] = field(default_factory=dict)

    def to_record(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "exit_code": int(self.exit_code),
            **self.record,
        }

    def render(self, format: str = "human", indent: int = 2) -> str:
        """Render as byte-stable JSON or as a human report."""
        if format == "json":
            return dumps(self.to_record(), "json", indent)
        lines = ["=" * 80, self.command.upper().replace("_", " "), "=" * 80]
        lines.extend(self.summary)
        with pl.Config(
            tbl_rows=-1, tbl_cols=-1, fmt_str_lengths=120, tbl_width_chars=200
        ):
            for title, df in self.tables.items():
                lines.extend(["", title, str(df)])
        lines.append("=" * 80)
        return "\n".join(lines) + "\n"


def _failure(command: str, code: ExitCode, error: Exception) -> CommandResult:
    return CommandResult(
        command,
        code,
        {"error": str(error), "error_type": type(error).__name__},
        [f"[X] {type(error).__name__}: {error}"],
    )


def run_command(command: str, body: Callable[[], CommandResult]) -> CommandResult:
    """Run a command body, mapping exceptions to exit codes."""
    try:
        return body()
    except (CoverError, IrregularCoverError) as e:
        logger.error(f"{command}: invalid cover: {e}")
        return _failure(command, ExitCode.INVALID_COVER, e)
    except (
        DataLoadError,
        GraphError,
        WordError,
        AutomorphismError,
        VoltageError,
        HomologyError,
        SymmetryCeilingError,
        BudgetExceededError,
        CensusLimitError,
    ) as e:
        logger.error(f"{command}: {e}")
        return _failure(command, ExitCode.LOAD_ERROR, e)
    except (VerificationError, DecompositionError, InternalInvariantError) as e:
        logger.error(f"{command}: internal failure: {e}")
        return _failure(command, ExitCode.FAILURE, e)


def _cover_facts(c: CoveringMap) -> dict[str, Any]:
    return {
        "degree": c.degree,
        "deck_order": c.deck.order,
        "regular": c.regular,
        "fibers": {v: list(c.fibers[v]) for v in c.base.vertices},
    }


def _cover_line(c: CoveringMap) -> str:
    kind = "regular" if c.regular else "irregular"
    return f"{kind}, degree {c.degree}, deck order {c.deck.order}"


def _regular_cover(loader: DocumentLoader, cover_path: str | Path) -> CoveringMap:
    c = require_valid(loader.load_cover(cover_path))
    if not c.regular:
        raise IrregularCoverError("Cover is not regular")
    return c


def cmd_validate(cover_path: str | Path, config: Config | None = None) -> CommandResult:
    """Validate a cover file and report fibers, deck order and regularity."""
    config = config or Config()

    def body() -> CommandResult:
        c = DocumentLoader(config).load_cover(cover_path)
        report = CoverValidator(config).validate_cover(c)
        record: dict[str, Any] = {
            "input": str(cover_path),
            "valid": report.passed,
            "validation": report.get_summary(),
        }
        if not report.passed:
            summary = ["[X] Not a covering map"] + [
                f"  {i.category}: {i.message} (e.g. {i.examples[0]})"
                for i in report.errors
            ]
            return CommandResult("validate", ExitCode.INVALID_COVER, record, summary)
        record.update(_cover_facts(c))
        fibers = pl.DataFrame(
            {
                "base": list(c.base.vertices),
                "fiber": [", ".join(c.fibers[v]) for v in c.base.vertices],
            }
        )
        return CommandResult(
            "validate",
            ExitCode.OK,
            record,
            [f"[OK] {_cover_line(c)}"],
            {"Fibers": fibers},
        )

    return run_command("validate", body)


def cmd_analyze(cover_path: str | Path, config: Config | None = None) -> CommandResult:
    """Tabulate the liftability of every elementary base generator."""
    config = config or Config()

    def body() -> CommandResult:
        c = _regular_cover(DocumentLoader(config), cover_path)
        analysis = analyze_cover(c, config.symmetry_ceiling)
        counts = analysis.counts()
        record = {
            "input": str(cover_path),
            **_cover_facts(c),
            "generators": analysis.to_records(),
            "counts": counts,
            "all_liftable": analysis.all_liftable,
        }
        closures = analysis.of_kind("partial_conj")
        bar_table = pl.DataFrame(
            {
                "vertex": [r.fields["vertex"] for r in closures],
                "components": [", ".join(r.fields["component"]) for r in closures],
                "closure": [", ".join(r.fields["closure"]) for r in closures],
            },
            schema={"vertex": pl.Utf8, "components": pl.Utf8, "closure": pl.Utf8},
        )
        summary = [_cover_line(c)] + [f"{k}: {v}" for k, v in counts.items()]
        if analysis.all_liftable:
            summary.append("[OK] Every elementary generator is liftable")
        return CommandResult(
            "analyze",
            ExitCode.OK,
            record,
            summary,
            {"Generators": analysis.to_frame(), "Closures": bar_table},
        )

    return run_command("analyze", body)


def cmd_lift(
    cover_path: str | Path,
    automorphism_path: str | Path,
    config: Config | None = None,
    lift_path: str | Path | None = None,
) -> CommandResult:
    """Decide liftability of a base automorphism and emit its verified lift."""
    config = config or Config()

    def body() -> CommandResult:
        loader = DocumentLoader(config)
        c = _regular_cover(loader, cover_path)
        f = loader.load_automorphism(automorphism_path, c.base)
        result = decide_liftable(c, f)
        record: dict[str, Any] = {
            "input": {
                "cover": str(cover_path),
                "automorphism": str(automorphism_path),
            },
            **result.to_record(),
        }
        summary = [f"Verdict: {result.verdict.value}"]
        if result.is_liftable:
            lift_doc = automorphism_to_doc(result.lift, verified=True)
            record["lift"] = lift_doc
            record["certificate"] = [generator_to_doc(g) for g in result.certificate]
            summary.append(
                f"[OK] Verified lift of {len(result.lift)} generators "
                f"from a certificate of {len(result.certificate)}"
            )
            if lift_path is not None:
                loader.write_document(lift_doc, lift_path)
                summary.append(f"Lift written to {lift_path}")
        else:
            summary.append(f"[X] {result.witness or result.diagnostic}")
        return CommandResult("lift", VERDICT_EXIT[result.verdict], record, summary)

    return run_command("lift", body)


def cmd_decompose(
    graph_path: str | Path, automorphism_path: str | Path, config: Config | None = None
) -> CommandResult:
    """Partial conjugation word of a conjugating automorphism, or its (g, h) split."""
    config = config or Config()

    def body() -> CommandResult:
        loader = DocumentLoader(config)
        g = loader.load_graph(graph_path)
        a = loader.load_automorphism(automorphism_path, g)
        record: dict[str, Any] = {
            "input": {
                "graph": str(graph_path),
                "automorphism": str(automorphism_path),
            },
            "conjugating": is_conjugating(a),
        }
        if record["conjugating"]:
            steps = laurence_decompose(a)
            word = laurence_word(g, steps)
            if not same_automorphism(word, a):
                raise DecompositionError("Partial conjugation word does not recompose")
            record["steps"] = [
                {
                    "vertex": s.vertex,
                    "component": list(g.sort(s.component)),
                    "sign": s.sign,
                }
                for s in steps
            ]
            record["word"] = automorphism_to_doc(word)
            summary = [f"Conjugating: {len(steps)} partial conjugations"] + [
                f"  P({s.vertex}, {{{', '.join(g.sort(s.component))}}})^{s.sign}"
                for s in steps
            ]
        else:
            split = decompose_gh(a)
            if not same_automorphism(compose(split.h, split.g), a):
                raise DecompositionError("g and h do not recompose the input")
            if not is_conjugating(split.g):
                raise DecompositionError("g is not conjugating")
            record["g"] = automorphism_to_doc(split.g)
            record["h"] = automorphism_to_doc(split.h)
            record["symmetry"] = {v: split.symmetry[v] for v in g.vertices}
            record["h_cyclically_reduced"] = split.h_cyclically_reduced
            summary = [
                f"h: {len(split.h)} generators (symmetry, inversions, transvections)",
                f"g: {len(split.g)} generators (conjugating)",
            ]
        return CommandResult("decompose", ExitCode.OK, record, summary)

    return run_command("decompose", body)


def cmd_identity_lifts(
    cover_path: str | Path, automorphism_path: str | Path, config: Config | None = None
) -> CommandResult:
    """Check membership of a total automorphism among the lifts of the identity."""
    config = config or Config()

    def body() -> CommandResult:
        loader = DocumentLoader(config)
        c = _regular_cover(loader, cover_path)
        F = loader.load_automorphism(automorphism_path, c.total)
        member = verify_lift(c, F, AutWord.identity(c.base))
        record: dict[str, Any] = {
            "input": {
                "cover": str(cover_path),
                "automorphism": str(automorphism_path),
            },
            "member": member,
        }
        try:
            induced = project_automorphism(c, F)
            record["induced"] = {v: induced[v].format() for v in c.base.vertices}
        except VerificationError:
            record["induced"] = None
        if not member:
            return CommandResult(
                "identity_lifts",
                ExitCode.NOT_LIFTABLE,
                record,
                ["[X] Not a lift of the identity"],
            )

        matrix = abelianization_matrix(F)
        mu = fd_torelli_witness(c, F, must_be_fd=False)
        record["ia"] = matrix.is_identity
        record["matrix"] = matrix.to_record()
        record["mu"] = None if mu is None else {u: mu[u] for u in c.total.vertices}
        summary = [
            "[OK] Lift of the identity",
            f"Acts trivially on homology: {matrix.is_identity}",
        ]
        if mu is not None:
            corrected = abelianization_matrix(compose(symmetry_word(c.total, mu), F))
            record["mu_is_identity"] = all(mu[u] == u for u in mu)
            record["corrected_ia"] = corrected.is_identity
            moved = {u: w for u, w in mu.items() if u != w}
            summary.append(f"Deck correction: {moved or 'identity'}")
        basis = list(matrix.basis)
        columns = {col: matrix.data[:, j].tolist() for j, col in enumerate(basis)}
        table = pl.DataFrame({"basis": basis, **columns})
        return CommandResult(
            "identity_lifts", ExitCode.OK, record, summary, {"Homology matrix": table}
        )

    return run_command("identity_lifts", body)


def cmd_census(
    base_path: str | Path,
    config: Config | None = None,
    max_n: int | None = None,
    jobs: int | None = None,
    min_n: int | None = None,
) -> CommandResult:
    """Analyse every cyclic voltage cover of a base graph up to degree max_n."""
    config = config or Config()

    def body() -> CommandResult:
        base = DocumentLoader(config).load_graph(base_path)
        df = run_census(
            base,
            max_n=max_n if max_n is not None else config.census_max_n,
            jobs=jobs if jobs is not None else config.census_jobs,
            min_n=min_n if min_n is not None else config.census_min_n,
            max_covers=config.census_max_covers,
            symmetry_ceiling=config.symmetry_ceiling,
        )
        record = {"input": str(base_path), "rows": df.to_dicts()}
        return CommandResult(
            "census",
            ExitCode.OK,
            record,
            [f"{len(df)} covers analysed"],
            {"Census": df},
        )

    return run_command("census", body)


def emit(
    result: CommandResult,
    config: Config,
    format: str | None = None,
    output: str | Path | None = None,
) -> int:
    """Print or write a rendered result and return its exit code."""
    text = result.render(format or config.output_format, config.json_indent)
    if output is None:
        sys.stdout.write(text)
    else:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {result.command} report to {path}")
    return int(result.exit_code)
