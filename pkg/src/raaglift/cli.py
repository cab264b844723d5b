"""CLI entry points for raaglift."""

import importlib.util
import sys
from pathlib import Path

SCRIPTS_DIR = Path(__file__).resolve().parents[2] / "scripts"


def _import_script(name: str):
    """Import a script module by file path."""
    script_path = SCRIPTS_DIR / f"{name}.py"
    spec = importlib.util.spec_from_file_location(name, script_path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main_validate() -> None:
    """Cover validation entry point (raaglift-validate)."""
    sys.exit(_import_script("validate_cover").main())


def main_analyze() -> None:
    """Generator liftability report entry point (raaglift-analyze)."""
    sys.exit(_import_script("analyze_cover").main())


def main_lift() -> None:
    """Automorphism lifting entry point (raaglift-lift)."""
    sys.exit(_import_script("lift_automorphism").main())


def main_decompose() -> None:
    """Automorphism decomposition entry point (raaglift-decompose)."""
    sys.exit(_import_script("decompose_automorphism").main())


def main_identity_lifts() -> None:
    """Lifts-of-the-identity entry point (raaglift-identity-lifts)."""
    sys.exit(_import_script("identity_lifts").main())


def main_census() -> None:
    """Voltage cover census entry point (raaglift-census)."""
    sys.exit(_import_script("run_census").main())
