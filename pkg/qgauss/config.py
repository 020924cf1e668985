"""Configuration helpers for qgauss runs."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Tuple

import yaml

PACKAGE_DEFAULT_PATH = "defaults/config.yaml"


@dataclass(slots=True)
class Config:
    """Merged view of the packaged defaults and an optional overlay file."""

    data: Dict[str, Any]
    sources: Tuple[str, ...] = ()

    @classmethod
    def load(cls, path: Path | str | None = None) -> "Config":
        """Load the packaged defaults, overlaid with ``path`` when given."""
        data, sources = load_layered_config(path)
        return cls(data=data, sources=tuple(sources))

    def get(self, key: str, default: Any | None = None) -> Any:
        return self.data.get(key, default)

    def section(self, key: str) -> Dict[str, Any]:
        value = self.data.get(key)
        return value if isinstance(value, dict) else {}


def load_package_config() -> Config:
    """Load only the defaults bundled with the package."""
    return Config(data=_load_package_defaults(), sources=("package:" + PACKAGE_DEFAULT_PATH,))


def load_layered_config(path: Path | str | None = None) -> Tuple[Dict[str, Any], List[str]]:
    """Return the effective configuration and the sources applied.

    Only two layers exist: the bundled defaults and an explicit file passed on
    the command line. Recorded command lines therefore reproduce a run.
    """
    sources: List[str] = []
    data: Dict[str, Any] = {}

    package_defaults = _load_package_defaults()
    if package_defaults:
        data = package_defaults
        sources.append("package:" + PACKAGE_DEFAULT_PATH)

    if path is not None:
        overlay_path = Path(path)
        if not overlay_path.is_file():
            raise FileNotFoundError(overlay_path)
        overlay = _load_yaml(overlay_path)
        if overlay:
            data = _deep_merge(data, overlay)
        sources.append(str(overlay_path))

    return data, sources


def _load_package_defaults() -> Dict[str, Any]:
    try:
        resource = resources.files("qgauss").joinpath(PACKAGE_DEFAULT_PATH)
    except (FileNotFoundError, ModuleNotFoundError):  # pragma: no cover - packaging guard
        return {}
    if not resource.is_file():  # pragma: no cover - packaging guard
        return {}
    with resource.open("r", encoding="utf-8") as handle:
        loaded = yaml.safe_load(handle) or {}
    return loaded if isinstance(loaded, dict) else {}


def _load_yaml(path: Path) -> Dict[str, Any]:
    with path.open("r", encoding="utf-8") as handle:
        loaded = yaml.safe_load(handle) or {}
    return loaded if isinstance(loaded, dict) else {}


def _deep_merge(base: Dict[str, Any], overlay: Dict[str, Any]) -> Dict[str, Any]:
    merged: Dict[str, Any] = {**base}
    for key, value in overlay.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged
