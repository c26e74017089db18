"""
Run manifests written next to every command's outputs.
"""
import json
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Union

import structlog
from pydantic import ValidationError as PydanticValidationError

from muxbench import __version__
from muxbench.models.manifest import RunManifest
from muxbench.services.storage import sha256_file, write_json
from muxbench.utils.error_handlers import StorageError, ValidationError

logger = structlog.get_logger()


def manifest_path(out_dir: Union[str, Path], command: str) -> Path:
    return Path(out_dir) / f"{command}.manifest.json"


def build_manifest(
    command: str,
    parameters: Dict[str, Any],
    seeds: Sequence[int] = (),
    inputs: Iterable[Union[str, Path]] = (),
    outputs: Iterable[Union[str, Path]] = (),
) -> RunManifest:
    """Manifest with a content hash of every input file."""
    return RunManifest(
        command=command,
        version=__version__,
        parameters=parameters,
        seeds=list(seeds),
        inputs={str(p): sha256_file(p) for p in inputs},
        outputs=sorted(Path(p).name for p in outputs),
    )


def write_manifest(out_dir: Union[str, Path], manifest: RunManifest) -> Path:
    path = manifest_path(out_dir, manifest.command)
    write_json(path, manifest.model_dump(mode="json"))
    logger.info("Wrote run manifest", path=str(path), outputs=len(manifest.outputs))
    return path


def load_manifest(path: Union[str, Path]) -> RunManifest:
    """Read and validate a manifest file."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise StorageError(f"Cannot read manifest: {e}", path=str(path))
    except json.JSONDecodeError as e:
        raise ValidationError(f"Manifest {path} is not valid JSON: {e}", field="manifest")
    try:
        return RunManifest.model_validate(raw)
    except PydanticValidationError as e:
        raise ValidationError(f"Manifest {path} failed validation: {e}", field="manifest")


def find_manifest(output: Union[str, Path], command: Optional[str] = None) -> Optional[Path]:
    """The manifest in an output's directory that lists it, if any."""
    output = Path(output)
    candidates = [manifest_path(output.parent, command)] if command else sorted(output.parent.glob("*.manifest.json"))
    for candidate in candidates:
        if candidate.exists() and output.name in load_manifest(candidate).outputs:
            return candidate
    return None
