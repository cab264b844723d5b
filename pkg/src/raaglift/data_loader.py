"""Loading and writing graph, cover, automorphism and voltage documents.

Documents are YAML or JSON mappings:

- graph: ``{vertices: [...], edges: [[a, b], ...]}``
- cover: ``{total: <graph>, base: <graph>, map: {total vertex: base vertex}}``
- automorphism: a list of generator records, or ``{generators: [...]}``
  optionally carrying ``verified``
- voltages: ``{base: <graph>, n: int, voltages: [[a, b, t], ...]}``
"""

from __future__ import annotations

import json
import logging
from collections.abc import Mapping
from pathlib import Path
from typing import Any, Literal

import yaml

from raaglift.autos import (
    AutomorphismError,
    AutWord,
    CommutatorTransvection,
    ElementaryAut,
    Inner,
    Inversion,
    PartialConj,
    Side,
    Symmetry,
    Transvection,
)
from raaglift.config import Config
from raaglift.covering import CoveringMap, VoltageSpec
from raaglift.graph_core import Graph, GraphError
from raaglift.raag_words import Word, WordError

logger = logging.getLogger(__name__)

DocFormat = Literal["yaml", "json"]


class DataLoadError(Exception):
    """Raised when a document cannot be read or parsed."""


def _require(doc: Any, key: str, what: str) -> Any:
    if not isinstance(doc, Mapping):
        raise DataLoadError(
            f"{what} document must be a mapping, got {type(doc).__name__}"
        )
    if key not in doc:
        raise DataLoadError(f"{what} document is missing '{key}'")
    return doc[key]


def parse_graph(doc: Any) -> Graph:
    """Build a graph from a ``{vertices, edges}`` document.

    Raises:
        DataLoadError: On missing keys, non-string names or graph errors
    """
    vertices = _require(doc, "vertices", "Graph")
    edges = doc.get("edges") or []
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise DataLoadError("Graph 'vertices' must be a list of strings")
    if not isinstance(edges, list):
        raise DataLoadError("Graph 'edges' must be a list of pairs")
    try:
        return Graph.from_edges(vertices, edges)
    except (GraphError, TypeError, ValueError) as e:
        raise DataLoadError(f"Invalid graph: {e}") from e


def graph_to_doc(g: Graph) -> dict[str, Any]:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.sorted_edges()]}


def parse_cover(doc: Any) -> CoveringMap:
    """Build a (not yet validated) covering map from a cover document.

    Raises:
        DataLoadError: On missing keys or malformed graphs
    """
    total = parse_graph(_require(doc, "total", "Cover"))
    base = parse_graph(_require(doc, "base", "Cover"))
    vmap = _require(doc, "map", "Cover")
    if not isinstance(vmap, Mapping):
        raise DataLoadError("Cover 'map' must be a mapping of total to base vertices")
    return CoveringMap(total, base, {str(k): str(v) for k, v in vmap.items()})


def cover_to_doc(c: CoveringMap) -> dict[str, Any]:
    return {
        "total": graph_to_doc(c.total),
        "base": graph_to_doc(c.base),
        "map": {u: c.vmap[u] for u in c.total.vertices},
    }


def parse_voltages(doc: Any) -> VoltageSpec:
    """Build a voltage assignment from a voltage document.

    Raises:
        DataLoadError: On missing keys or malformed entries
    """
    base = parse_graph(_require(doc, "base", "Voltage"))
    n = _require(doc, "n", "Voltage")
    if not isinstance(n, int) or isinstance(n, bool):
        raise DataLoadError(f"Voltage 'n' must be an integer, got {n!r}")
    triples = []
    for entry in doc.get("voltages") or []:
        if not isinstance(entry, list) or len(entry) != 3:
            raise DataLoadError(f"Voltage entry {entry!r} is not [a, b, t]")
        a, b, t = entry
        if not isinstance(t, int):
            raise DataLoadError(f"Voltage on {a}-{b} must be an integer, got {t!r}")
        triples.append((str(a), str(b), t))
    return VoltageSpec(base, n, tuple(triples))


def parse_generator(doc: Any, g: Graph) -> ElementaryAut:
    """Build one elementary generator over g from its record.

    Raises:
        DataLoadError: On unknown kinds, missing fields or invalid generators
    """
    kind = _require(doc, "kind", "Generator")
    power = doc.get("power", 1)
    try:
        match kind:
            case "symmetry":
                mapping = _require(doc, "map", "Symmetry")
                gen: ElementaryAut = Symmetry.from_dict(mapping)
            case "inversion":
                gen = Inversion(_require(doc, "vertex", "Inversion"))
            case "transvection":
                gen = Transvection(
                    _require(doc, "target", "Transvection"),
                    _require(doc, "multiplier", "Transvection"),
                    Side(doc.get("side", "left")),
                    power,
                )
            case "partial_conj":
                gen = PartialConj(
                    _require(doc, "vertex", "Partial conjugation"),
                    frozenset(
                        _require(doc, "component_vertices", "Partial conjugation")
                    ),
                    power,
                )
            case "inner":
                gen = Inner(Word.parse(g, str(_require(doc, "word", "Inner"))), power)
            case "commutator_transvection":
                gen = CommutatorTransvection(
                    _require(doc, "x", "Commutator transvection"),
                    _require(doc, "y", "Commutator transvection"),
                    _require(doc, "z", "Commutator transvection"),
                    power,
                )
            case _:
                raise DataLoadError(f"Unknown generator kind {kind!r}")
        gen.validate(g)
    except DataLoadError:
        raise
    except (
        AutomorphismError, GraphError, WordError, AttributeError, TypeError, ValueError
    ) as e:
        raise DataLoadError(f"Invalid {kind} generator: {e}") from e
    return gen


def generator_to_doc(gen: ElementaryAut) -> dict[str, Any]:
    match gen:
        case Symmetry():
            return {"kind": "symmetry", "map": gen.as_dict}
        case Inversion():
            return {"kind": "inversion", "vertex": gen.vertex}
        case Transvection():
            return {
                "kind": "transvection",
                "target": gen.target,
                "multiplier": gen.multiplier,
                "side": gen.side.value,
                "power": gen.power,
            }
        case PartialConj():
            return {
                "kind": "partial_conj",
                "vertex": gen.vertex,
                "component_vertices": sorted(gen.component),
                "power": gen.power,
            }
        case Inner():
            return {"kind": "inner", "word": gen.word.format(), "power": gen.power}
        case CommutatorTransvection():
            return {
                "kind": "commutator_transvection",
                "x": gen.x,
                "y": gen.y,
                "z": gen.z,
                "power": gen.power,
            }
    raise TypeError(f"Not an elementary generator: {gen!r}")


def parse_automorphism(doc: Any, g: Graph) -> AutWord:
    """Build an automorphism word over g from a generator list document."""
    records = doc.get("generators") if isinstance(doc, Mapping) else doc
    if records is None:
        records = []
    if not isinstance(records, list):
        raise DataLoadError("Automorphism document must be a list of generator records")
    return AutWord(g, tuple(parse_generator(r, g) for r in records))


def automorphism_to_doc(a: AutWord, verified: bool | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"generators": [generator_to_doc(gen) for gen in a]}
    if verified is not None:
        doc["verified"] = verified
    return doc


def infer_format(path: Path) -> DocFormat:
    suffix = path.suffix.lower()
    if suffix in (".yaml", ".yml"):
        return "yaml"
    if suffix == ".json":
        return "json"
    raise DataLoadError(f"Cannot infer format from extension: {path.suffix}")


def dumps(doc: Any, format: DocFormat = "json", indent: int = 2) -> str:
    """Serialise a document; JSON output has sorted keys and is byte-stable."""
    if format == "json":
        return json.dumps(doc, indent=indent, sort_keys=True) + "\n"
    return yaml.safe_dump(doc, sort_keys=True, default_flow_style=None)


class DocumentLoader:
    """Reads and writes raaglift documents from YAML or JSON files."""

    def __init__(self, config: Config | None = None):
        """Initialise the loader.

        Args:
            config: Configuration object. If None, loads from default location.
        """
        self.config = config or Config()

    def load_document(self, file_path: str | Path) -> Any:
        """Read a YAML or JSON file.

        Raises:
            DataLoadError: If the file is missing, unreadable or malformed
        """
        file_path = Path(file_path)
        if not file_path.exists():
            msg = f"File not found: {file_path}"
            logger.error(msg)
            raise DataLoadError(msg)

        format = infer_format(file_path)
        logger.info(f"Loading {format.upper()} document from {file_path}")
        try:
            with open(file_path, encoding="utf-8") as f:
                if format == "json":
                    return json.load(f)
                return yaml.safe_load(f)
        except Exception as e:
            msg = f"Error parsing {file_path}: {e}"
            logger.error(msg)
            raise DataLoadError(msg) from e

    def _parse(self, file_path: str | Path, parser, *args) -> Any:
        doc = self.load_document(file_path)
        try:
            return parser(doc, *args)
        except DataLoadError as e:
            msg = f"{file_path}: {e}"
            logger.error(msg)
            raise DataLoadError(msg) from e

    def load_graph(self, file_path: str | Path) -> Graph:
        return self._parse(file_path, parse_graph)

    def load_cover(self, file_path: str | Path) -> CoveringMap:
        cover = self._parse(file_path, parse_cover)
        logger.info(
            f"Loaded cover: {len(cover.total)} total vertices over "
            f"{len(cover.base)} base vertices"
        )
        return cover

    def load_automorphism(self, file_path: str | Path, g: Graph) -> AutWord:
        a = self._parse(file_path, parse_automorphism, g)
        logger.info(f"Loaded automorphism of {len(a)} generators")
        return a

    def load_voltages(self, file_path: str | Path) -> VoltageSpec:
        return self._parse(file_path, parse_voltages)

    def write_document(
        self, doc: Any, file_path: str | Path, format: DocFormat | None = None
    ) -> Path:
        """Write a document, inferring the format from the extension if not given.

        Raises:
            DataLoadError: If the file cannot be written
        """
        file_path = Path(file_path)
        format = format or infer_format(file_path)
        try:
            file_path.parent.mkdir(parents=True, exist_ok=True)
            file_path.write_text(
                dumps(doc, format, self.config.json_indent), encoding="utf-8"
            )
        except OSError as e:
            msg = f"Error writing {file_path}: {e}"
            logger.error(msg)
            raise DataLoadError(msg) from e
        logger.info(f"Wrote {format.upper()} document to {file_path}")
        return file_path
