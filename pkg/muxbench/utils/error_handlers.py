"""
Error hierarchy and error handling utilities for muxbench.

Every error carries a machine-readable code and the process exit code the CLI
returns for it: 2 for invalid input, 3 for pipeline inconsistencies, 4 for I/O.
"""
import traceback
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional

import structlog

logger = structlog.get_logger()

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_PIPELINE = 3
EXIT_IO = 4


class MuxBenchError(Exception):
    """Base exception for muxbench errors."""

    def __init__(self, message: str, code: str = "MUXBENCH_ERROR", exit_code: int = EXIT_INTERNAL):
        self.message = message
        self.code = code
        self.exit_code = exit_code
        super().__init__(message)


class ValidationError(MuxBenchError):
    """Input validation errors."""

    def __init__(self, message: str, field: Optional[str] = None, code: str = "VALIDATION_ERROR"):
        self.field = field
        super().__init__(message, code, EXIT_VALIDATION)


class ParseError(ValidationError):
    """Syntax errors in circuit text, with the offending position."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})", code="PARSE_ERROR")


class UnsupportedConstructError(ValidationError):
    """Well-formed input that uses a construct outside the supported subset."""

    def __init__(self, token: str, line: int):
        self.token = token
        self.line = line
        super().__init__(
            f"Unsupported construct '{token}' on line {line}", code="UNSUPPORTED_CONSTRUCT"
        )


class UnsupportedGateError(ValidationError):
    """A gate with no decomposition into the target native set."""

    def __init__(self, gate: str, target: str):
        self.gate = gate
        self.target = target
        super().__init__(
            f"Gate '{gate}' has no decomposition for hardware '{target}'", code="UNSUPPORTED_GATE"
        )


class CapacityError(ValidationError):
    """Circuit does not fit on the device."""

    def __init__(self, message: str):
        super().__init__(message, code="CAPACITY_ERROR")


class DegenerateInputError(ValidationError):
    """Input that is well-formed but carries no usable information."""

    def __init__(self, message: str, code: str = "DEGENERATE_INPUT"):
        super().__init__(message, code=code)


class DegenerateFitError(DegenerateInputError):
    """Model fit with no informative points."""

    def __init__(self, message: str):
        super().__init__(message, code="DEGENERATE_FIT")


class StructuralError(MuxBenchError):
    """Malformed internal structure such as a cyclic dependency graph."""

    def __init__(self, message: str):
        super().__init__(message, "STRUCTURAL_ERROR", EXIT_PIPELINE)


class PipelineInconsistencyError(MuxBenchError):
    """Compilation stages produced durations that violate their ordering."""

    def __init__(self, message: str, stage: Optional[str] = None):
        self.stage = stage
        super().__init__(message, "PIPELINE_INCONSISTENCY", EXIT_PIPELINE)


class StorageError(MuxBenchError):
    """File read/write errors."""

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        super().__init__(message, "IO_ERROR", EXIT_IO)


@contextmanager
def error_context(operation: str, **context: Any) -> Iterator[None]:
    """Log any exception raised inside the block with ``context``, then re-raise."""
    try:
        yield
    except MuxBenchError as e:
        logger.error(f"{operation} failed", code=e.code, exc_message=e.message, **context)
        raise
    except Exception as e:
        logger.error(f"{operation} failed", exc_type=type(e).__name__, exc_message=str(e), **context)
        raise


# attributes copied into the error envelope when a subclass sets them
DETAIL_FIELDS = ("field", "line", "column", "token", "gate", "target", "stage", "path")


def format_error_response(error: Exception) -> Dict[str, Any]:
    """Error envelope {"error": {"code", "message", "type", ...details}}."""
    if not isinstance(error, MuxBenchError):
        return {"error": {"code": "UNKNOWN_ERROR", "message": str(error), "type": type(error).__name__}}

    body: Dict[str, Any] = {"code": error.code, "message": error.message, "type": type(error).__name__}
    for name in DETAIL_FIELDS:
        value = getattr(error, name, None)
        if value is not None:
            body[name] = value
    return {"error": body}


def handle_cli_error(error: Exception, debug: bool = False) -> int:
    """Log the error envelope and return the process exit code."""
    envelope = format_error_response(error)["error"]
    if isinstance(error, MuxBenchError):
        logger.error("Command failed", exit_code=error.exit_code, error=envelope)
        return error.exit_code

    logger.error("Unhandled exception", traceback=traceback.format_exc() if debug else None, error=envelope)
    return EXIT_INTERNAL
