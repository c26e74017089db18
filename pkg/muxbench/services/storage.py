"""
Result file I/O: CSV tables and JSON documents written atomically.
"""
import csv
import hashlib
import io
import json
import os
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Union

import structlog

from muxbench.utils.error_handlers import DegenerateInputError, StorageError

logger = structlog.get_logger()

PathLike = Union[str, Path]


def _atomic_write(path: Path, text: str) -> Path:
    tmp = path.with_name(path.name + ".tmp")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(tmp, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except OSError as e:
        raise StorageError(f"Cannot write {path}: {e}", path=str(path))
    logger.debug("Wrote file", path=str(path), bytes=len(text))
    return path


def render_csv(columns: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def write_csv(path: PathLike, columns: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> Path:
    """Write rows in the given column order."""
    return _atomic_write(Path(path), render_csv(columns, rows))


def read_csv(path: PathLike) -> List[Dict[str, str]]:
    """Read a CSV file with a header row; an empty table is an error."""
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
    except OSError as e:
        raise StorageError(f"Cannot read {path}: {e}", path=str(path))
    if not rows:
        raise DegenerateInputError(f"{path} contains no data rows")
    return rows


def write_json(path: PathLike, document: Any) -> Path:
    return _atomic_write(Path(path), json.dumps(document, indent=2, sort_keys=True) + "\n")


def write_text(path: PathLike, text: str) -> Path:
    return _atomic_write(Path(path), text)


def sha256_file(path: PathLike) -> str:
    digest = hashlib.sha256()
    try:
        with open(path, "rb") as f:
            for block in iter(lambda: f.read(65536), b""):
                digest.update(block)
    except OSError as e:
        raise StorageError(f"Cannot hash {path}: {e}", path=str(path))
    return digest.hexdigest()
