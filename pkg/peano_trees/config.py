# peano_trees/config.py
from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv

# Load .env from project root
load_dotenv()


def _get_env(name: str, default: str = "") -> str:
    return os.getenv(name, default).strip()


def _get_env_int(name: str, default: int) -> int:
    raw = _get_env(name, str(default))
    try:
        return int(raw)
    except ValueError:
        return default


# -------------------------
# Pipeline defaults (CLI flags and API bodies override these)
# -------------------------
# Sample grid granularity k: i/(k+1) for i = 1..k on every edge
DEFAULT_GRID: int = _get_env_int("PEANO_GRID", 3)

DEFAULT_METRIC: str = _get_env("PEANO_METRIC", "canonical")

# Empty means "lexicographically least cut point"
DEFAULT_SEED: str = _get_env("PEANO_SEED", "")

DEFAULT_FORMAT: str = _get_env("PEANO_FORMAT", "dot")
DEFAULT_VERIFY: str = _get_env("PEANO_VERIFY", "off")

# Depth for non-nesting searches on line maps and dyadic windows
ACTION_SEARCH_BOUND: int = _get_env_int("PEANO_ACTION_BOUND", 3)


# -------------------------
# Service
# -------------------------
ARTIFACT_CACHE_TTL_SECONDS: int = _get_env_int("PEANO_CACHE_TTL_SECONDS", 300)

CORPUS_DIR: Path = Path(_get_env("PEANO_CORPUS_DIR", str(Path(__file__).parent / "corpus")))

DEBUG: bool = _get_env("PEANO_DEBUG", "0") == "1"


def validate_config() -> None:
    if DEFAULT_GRID < 1:
        raise RuntimeError("PEANO_GRID must be >= 1")

    if DEFAULT_METRIC not in {"canonical", "geometric"}:
        raise RuntimeError("PEANO_METRIC must be 'canonical' or 'geometric'")

    if DEFAULT_FORMAT not in {"dot", "text"}:
        raise RuntimeError("PEANO_FORMAT must be 'dot' or 'text'")

    if DEFAULT_VERIFY not in {"off", "lemmas", "full"}:
        raise RuntimeError("PEANO_VERIFY must be one of off, lemmas, full")

    if ACTION_SEARCH_BOUND < 1:
        raise RuntimeError("PEANO_ACTION_BOUND must be positive")

    # TTL validation
    if ARTIFACT_CACHE_TTL_SECONDS <= 0:
        raise RuntimeError("PEANO_CACHE_TTL_SECONDS must be positive")

    if not CORPUS_DIR.is_dir():
        raise RuntimeError(f"PEANO_CORPUS_DIR does not exist: {CORPUS_DIR}")
