"""Check whether an automorphism of the total group lifts the identity.

On membership, reports the homology matrix and the deck element that makes
it act trivially on homology. Exit code 3 when it is not a lift of the
identity.

Usage:
    python scripts/identity_lifts.py fixtures/covers/hex.yaml \\
        fixtures/automorphisms/hex_commutator.yaml
"""

import argparse
import logging

from raaglift.commands import cmd_identity_lifts, emit
from raaglift.config import Config


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        description="Test membership among the lifts of the identity",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("cover", help="Cover document (YAML or JSON)")
    parser.add_argument(
        "automorphism", help="Automorphism document over the total graph"
    )
    parser.add_argument("--format", choices=["human", "json"], help="Output format")
    parser.add_argument("--output", help="Write the report here instead of stdout")
    parser.add_argument("--config", help="Path to settings.yaml")

    args = parser.parse_args(argv)
    config = Config(args.config)
    logging.basicConfig(level=config.log_level, format=config.log_format)

    result = cmd_identity_lifts(args.cover, args.automorphism, config)
    return emit(result, config, args.format, args.output)


if __name__ == "__main__":
    raise SystemExit(main())
