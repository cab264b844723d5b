"""Census of cyclic voltage covers of a base graph.

Usage:
    python scripts/run_census.py fixtures/graphs/c4.yaml --max-degree 2
    python scripts/run_census.py fixtures/graphs/k3.yaml --max-degree 3 --jobs 4
"""

import argparse
import logging

from raaglift.commands import cmd_census, emit
from raaglift.config import Config


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        description="Analyse every cyclic voltage cover up to a given degree",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("base", help="Base graph document (YAML or JSON)")
    parser.add_argument("--max-degree", type=int, help="Largest voltage group order")
    parser.add_argument("--min-degree", type=int, help="Smallest voltage group order")
    parser.add_argument("--jobs", type=int, help="Worker processes")
    parser.add_argument("--format", choices=["human", "json"], help="Output format")
    parser.add_argument("--output", help="Write the report here instead of stdout")
    parser.add_argument("--config", help="Path to settings.yaml")

    args = parser.parse_args(argv)
    config = Config(args.config)
    logging.basicConfig(level=config.log_level, format=config.log_format)

    result = cmd_census(
        args.base,
        config,
        max_n=args.max_degree,
        jobs=args.jobs,
        min_n=args.min_degree,
    )
    return emit(result, config, args.format, args.output)


if __name__ == "__main__":
    raise SystemExit(main())
