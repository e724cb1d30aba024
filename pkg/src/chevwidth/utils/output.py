# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Writers for chevwidth artifacts and the structure-constant cache.

JSON documents are written with sorted keys and two-space indentation so
that equal results give byte-identical files; record streams go to JSONL
with orjsonl, and tables to CSV with polars.

Cached constants tables live at ``<cache_dir>/constants-<label>.json``
next to the SHA-256 hash of their rows. A table whose hash does not match
is rebuilt; a table whose hash matches is used as is.
"""

import logging
import pathlib
import sys
from typing import Any, Iterable

import orjson
import orjsonl
import polars as pl

from chevwidth.algebra.liealg import (
    StructureConstants,
    build_chevalley_basis,
    build_structure_constants,
)
from chevwidth.algebra.roots import RootSystem

logger = logging.getLogger(__name__)

JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_NON_STR_KEYS


def to_json(data: Any) -> bytes:
    return orjson.dumps(data, option=JSON_OPTIONS) + b"\n"


def write_json(data: Any, path: pathlib.Path | None = None):
    """Write a JSON document to ``path``, or to stdout."""
    payload = to_json(data)
    if path is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(payload)


def write_records(records: Iterable[dict], path: pathlib.Path):
    """Write one JSON record per line."""
    path.parent.mkdir(parents=True, exist_ok=True)
    orjsonl.save(path, records)


def write_table(table: pl.DataFrame, path: pathlib.Path | None = None):
    """Write a table as CSV to ``path``, or to stdout."""
    if path is None:
        sys.stdout.write(table.write_csv())
        sys.stdout.flush()
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        table.write_csv(path)


def failure_report(invariant: str, failures: list) -> dict:
    """Document written when a verification fails."""
    return {"status": "failed", "invariant": invariant, "failures": failures}


# structure-constant cache


def constants_cache_path(cache_dir: pathlib.Path, system: RootSystem) -> pathlib.Path:
    return pathlib.Path(cache_dir) / f"constants-{system.label}.json"


def save_constants(constants: StructureConstants, cache_dir: pathlib.Path) -> pathlib.Path:
    path = constants_cache_path(cache_dir, constants.system)
    write_json(
        {
            "system": constants.system.label,
            "hash": constants.content_hash(),
            "rows": constants.rows(),
        },
        path,
    )
    return path


def load_constants(
    system: RootSystem, cache_dir: pathlib.Path | None, disable_progress: bool = True
) -> StructureConstants:
    """Constants for ``system`` from the cache, rebuilding and rewriting the
    cache when the file is missing, unreadable or fails its hash check."""
    if cache_dir is not None:
        path = constants_cache_path(cache_dir, system)
        if path.exists():
            try:
                cached = orjson.loads(path.read_bytes())
                constants = StructureConstants.from_rows(system, cached["rows"])
                if constants.content_hash() == cached["hash"]:
                    logger.info(f"Using cached constants from {path}")
                    return constants
                logger.warning(f"Hash mismatch for {path}; rebuilding constants")
            except (orjson.JSONDecodeError, KeyError, TypeError) as err:
                logger.warning(f"Cannot read {path} ({err}); rebuilding constants")
        else:
            logger.info(f"No cached constants at {path}")
    constants = build_structure_constants(build_chevalley_basis(system), disable_progress)
    if cache_dir is not None:
        save_constants(constants, cache_dir)
    return constants
