"""Bundled instance documents (the two worked examples and a few edge cases)."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path


def path(name: str) -> Path:
    return Path(str(resources.files(__name__) / f"{name}.json"))


def load(name: str) -> dict:
    return json.loads(path(name).read_text(encoding="utf-8"))


def names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files(__name__).iterdir() if p.name.endswith(".json"))
