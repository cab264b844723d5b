"""Validate a covering map file.

Usage:
    python scripts/validate_cover.py fixtures/covers/c8.yaml
    python scripts/validate_cover.py fixtures/covers/c8.yaml --format json
"""

import argparse
import logging

from raaglift.commands import cmd_validate, emit
from raaglift.config import Config


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        description="Check that a vertex map is a covering map",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("cover", help="Cover document (YAML or JSON)")
    parser.add_argument("--format", choices=["human", "json"], help="Output format")
    parser.add_argument("--output", help="Write the report here instead of stdout")
    parser.add_argument("--config", help="Path to settings.yaml")

    args = parser.parse_args(argv)
    config = Config(args.config)
    logging.basicConfig(level=config.log_level, format=config.log_format)

    return emit(cmd_validate(args.cover, config), config, args.format, args.output)


if __name__ == "__main__":
    raise SystemExit(main())
