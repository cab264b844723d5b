"""Decompose an automorphism into elementary generators.

Conjugating automorphisms become a word in partial conjugations; any other
automorphism is split into a conjugating part g and a part h built from a
symmetry, inversions and transvections.

Usage:
    python scripts/decompose_automorphism.py fixtures/graphs/c4.yaml \\
        fixtures/automorphisms/c4_conjugating.yaml
"""

import argparse
import logging

from raaglift.commands import cmd_decompose, emit
from raaglift.config import Config


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        description="Decompose a RAAG automorphism",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("graph", help="Graph document (YAML or JSON)")
    parser.add_argument("automorphism", help="Automorphism document over the graph")
    parser.add_argument("--format", choices=["human", "json"], help="Output format")
    parser.add_argument("--output", help="Write the report here instead of stdout")
    parser.add_argument("--config", help="Path to settings.yaml")

    args = parser.parse_args(argv)
    config = Config(args.config)
    logging.basicConfig(level=config.log_level, format=config.log_format)

    result = cmd_decompose(args.graph, args.automorphism, config)
    return emit(result, config, args.format, args.output)


if __name__ == "__main__":
    raise SystemExit(main())
