"""Configuration management for raaglift."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml

DEFAULT_SETTINGS = Path(__file__).resolve().parents[2] / "config" / "settings.yaml"
DEFAULT_LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Config:
    """Settings from ``config/settings.yaml`` behind typed accessors.

    Keys missing from the file fall back to built-in defaults, so a settings
    file only needs the values it changes.
    """

    def __init__(self, config_path: str | Path | None = None):
        """Load settings.

        Args:
            config_path: Settings file. Defaults to the project's
                ``config/settings.yaml``.

        Raises:
            FileNotFoundError: If the settings file does not exist
        """
        path = DEFAULT_SETTINGS if config_path is None else Path(config_path)
        if not path.is_file():
            raise FileNotFoundError(f"Settings file not found: {path}")
        self._settings: dict[str, Any] = (
            yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        )
        self.config_path = path
        self.project_root = path.parent.parent

    # Search limits

    @property
    def symmetry_ceiling(self) -> int:
        """Largest vertex count for which symmetries are enumerated."""
        return self.get("limits.symmetry_ceiling", 24)

    @property
    def bfs_budget(self) -> int:
        return self.get("limits.bfs_budget", 10)

    # Census

    @property
    def census_min_n(self) -> int:
        return self.get("census.min_n", 1)

    @property
    def census_max_n(self) -> int:
        return self.get("census.max_n", 2)

    @property
    def census_jobs(self) -> int:
        """Worker processes; census output does not depend on it."""
        return self.get("census.jobs", 1)

    @property
    def census_max_covers(self) -> int:
        """Resource ceiling on the number of covers one census may analyse."""
        return self.get("census.max_covers", 500)

    # Output and logging

    @property
    def output_format(self) -> str:
        return self.get("output.format", "human")

    @property
    def json_indent(self) -> int:
        return self.get("output.json_indent", 2)

    @property
    def log_level(self) -> str:
        return self.get("logging.level", "INFO")

    @property
    def log_format(self) -> str:
        return self.get("logging.format", DEFAULT_LOG_FORMAT)

    @property
    def fixtures_path(self) -> Path:
        return self.project_root / self.get("paths.fixtures", "fixtures")

    def get(self, key: str, default: Any = None) -> Any:
        """Look up a dot-separated key.

        Example:
            >>> config.get("census.max_n")
            2
        """
        node: Any = self._settings
        for part in key.split("."):
            if not isinstance(node, dict) or node.get(part) is None:
                return default
            node = node[part]
        return node

    def __repr__(self) -> str:
        return f"Config({str(self.config_path)!r})"
