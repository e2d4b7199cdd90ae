from datetime import datetime
from typing import Any, Dict, Optional, Tuple

from pydantic import ValidationError

from exact_arith.errors import TopoRecError

OK_EXIT = 0
ERROR_EXIT = 1
USAGE_EXIT = 2


class UsageError(ValueError):
    """Flags that are inconsistent with each other or with the command."""


def error_payload(code: str, message: str, *, details: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    return {
        "error": {
            "code": code,
            "message": message,
            "details": details or {},
            "timestamp": datetime.utcnow().isoformat() + "Z",
        }
    }


def map_exception(e: Exception) -> Tuple[int, Dict[str, Any]]:
    msg = str(e) if e else ""

    # Bad flags or unreadable input files
    if isinstance(e, UsageError):
        return USAGE_EXIT, error_payload("USAGE_ERROR", msg or "Invalid arguments")
    if isinstance(e, FileNotFoundError):
        return USAGE_EXIT, error_payload("FILE_NOT_FOUND", msg, details={"path": str(e.filename)})

    # Domain errors carry their own code
    if isinstance(e, TopoRecError):
        return ERROR_EXIT, error_payload(e.code, e.message, details={k: str(v) for k, v in e.details.items()})

    # Malformed documents
    if isinstance(e, ValidationError):
        return ERROR_EXIT, error_payload("INVALID_DOCUMENT", "Document failed validation",
                                         details={"errors": str(e.errors())})
    if isinstance(e, ValueError):
        return ERROR_EXIT, error_payload("VALIDATION_ERROR", msg or "Invalid input")

    # Default internal
    return ERROR_EXIT, error_payload("INTERNAL_ERROR", msg or "Internal error")
