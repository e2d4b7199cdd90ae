"""
Error hierarchy shared by every package.

Each error carries a stable machine code that the CLI copies into the
structured error payload.
"""

from typing import Any, Dict, Optional


class TopoRecError(Exception):
    """Base class for all domain errors."""

    code = "TOPOREC_ERROR"

    def __init__(self, message: str = "", details: Optional[Dict[str, Any]] = None):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.details = details or {}


# exact arithmetic

class DivisionByZero(TopoRecError):
    code = "DIVISION_BY_ZERO"


class FieldMismatch(TopoRecError):
    code = "FIELD_MISMATCH"


class PoleAtPoint(TopoRecError):
    code = "POLE_AT_POINT"


class OddParity(TopoRecError):
    code = "ODD_PARITY"


class WindowExceeded(TopoRecError):
    """A truncated series was read beyond its validity window."""

    code = "WINDOW_EXCEEDED"


# curves

class NotRegular(TopoRecError):
    code = "NOT_REGULAR"


class BranchpointNotInField(TopoRecError):
    code = "BRANCHPOINT_NOT_IN_FIELD"


class CoincidentBranchpoints(TopoRecError):
    code = "COINCIDENT_BRANCHPOINTS"


class BranchpointAtInfinity(TopoRecError):
    code = "BRANCHPOINT_AT_INFINITY"


class InsufficientOrder(TopoRecError):
    code = "INSUFFICIENT_ORDER"


class TransformUnsupported(TopoRecError):
    code = "TRANSFORM_UNSUPPORTED"


# forms

class ResiduePresent(TopoRecError):
    code = "RESIDUE_PRESENT"


class DivergentAtInfinity(TopoRecError):
    code = "DIVERGENT_AT_INFINITY"


class NonQuadraticX(TopoRecError):
    code = "NON_QUADRATIC_X"


# recursion

class MultiBranchpoint(TopoRecError):
    code = "MULTI_BRANCHPOINT"


class NotNormalized(TopoRecError):
    code = "NOT_NORMALIZED"


class ResidualNotPolynomial(TopoRecError):
    code = "RESIDUAL_NOT_POLYNOMIAL"


# catalog

class U0NotZero(TopoRecError):
    code = "U0_NOT_ZERO"


class SingularSystem(TopoRecError):
    code = "SINGULAR_SYSTEM"


class IdentityFailed(TopoRecError):
    code = "IDENTITY_FAILED"


class UnknownFamily(TopoRecError):
    code = "UNKNOWN_FAMILY"


# cli

class UnknownSuite(TopoRecError):
    code = "UNKNOWN_SUITE"
