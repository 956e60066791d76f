"""Service configuration: JSON file plus environment overrides.

Environment variables win over the file; both are optional. Recognized
variables all carry the ``DWASSIST_`` prefix: CORPUS_DIR,
MIN_SIMILARITY, MIN_NODES, MAX_CANDIDATES, HOST, PORT.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .errors import ParseError
from .matching import MatchThresholds

ENV_PREFIX = "DWASSIST_"


@dataclass(frozen=True)
class ServiceConfig:
    corpus_dir: Path | None = None
    thresholds: MatchThresholds = MatchThresholds()
    host: str = "127.0.0.1"
    port: int = 8765


_FILE_KEYS = {"corpus_dir", "min_similarity", "min_nodes", "max_candidates", "host", "port"}


def load_config(
    path: Path | str | None = None, env: Mapping[str, str] | None = None
) -> ServiceConfig:
    """Assemble the effective configuration.

    Raises ParseError for unreadable files, unknown keys, or values of
    the wrong type.
    """
    values: dict = {}
    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
        try:
            loaded = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", location=str(path)) from None
        if not isinstance(loaded, dict):
            raise ParseError("config must be a JSON object", location=str(path))
        unknown = set(loaded) - _FILE_KEYS
        if unknown:
            raise ParseError(
                f"unknown config keys: {sorted(unknown)}", location=str(path)
            )
        values.update(loaded)
    environment = os.environ if env is None else env
    for key in ("corpus_dir", "host"):
        raw = environment.get(ENV_PREFIX + key.upper())
        if raw is not None:
            values[key] = raw
    for key, convert in (
        ("min_similarity", float),
        ("min_nodes", int),
        ("max_candidates", int),
        ("port", int),
    ):
        raw = environment.get(ENV_PREFIX + key.upper())
        if raw is not None:
            try:
                values[key] = convert(raw)
            except ValueError:
                raise ParseError(
                    f"{ENV_PREFIX + key.upper()} must be {convert.__name__}, got {raw!r}",
                    location="environment",
                ) from None
    try:
        thresholds = MatchThresholds(
            min_similarity=float(values.get("min_similarity", 0.6)),
            min_nodes=int(values.get("min_nodes", 3)),
            max_candidates=int(values.get("max_candidates", 5)),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad threshold value: {exc}", location=str(path or "config")) from None
    corpus_dir = values.get("corpus_dir")
    return ServiceConfig(
        corpus_dir=Path(corpus_dir) if corpus_dir else None,
        thresholds=thresholds,
        host=str(values.get("host", "127.0.0.1")),
        port=int(values.get("port", 8765)),
    )
