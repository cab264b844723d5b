"""Decide whether a base automorphism lifts and write its verified lift.

Exit codes: 0 liftable, 3 not liftable, 4 unknown, 2 invalid cover,
1 unreadable input, 5 verification failure.

Usage:
    python scripts/lift_automorphism.py fixtures/covers/c8.yaml \\
        fixtures/automorphisms/c8_partial_conj.yaml --lift-output lift.yaml
"""

import argparse
import logging

from raaglift.commands import cmd_lift, emit
from raaglift.config import Config


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        description="Lift an automorphism of the base group along a regular cover",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("cover", help="Cover document (YAML or JSON)")
    parser.add_argument("automorphism", help="Automorphism document over the base")
    parser.add_argument(
        "--lift-output", help="Write the lift (automorphism document) to this file"
    )
    parser.add_argument("--format", choices=["human", "json"], help="Output format")
    parser.add_argument("--output", help="Write the report here instead of stdout")
    parser.add_argument("--config", help="Path to settings.yaml")

    args = parser.parse_args(argv)
    config = Config(args.config)
    logging.basicConfig(level=config.log_level, format=config.log_format)

    result = cmd_lift(args.cover, args.automorphism, config, args.lift_output)
    return emit(result, config, args.format, args.output)


if __name__ == "__main__":
    raise SystemExit(main())
