"""Genus-zero spectral curves: validation, branch data and transforms"""

from .classify import Regular, Singular, classify_branchpoint
from .curve import (
    DEFAULT_LOCAL_ORDER,
    BranchData,
    CurveData,
    LogTerm,
    SpectralCurve,
    find_branchpoints,
    validate_curve,
)
from .local import involution_series, local_y_and_phi, solve_involution
from .spec_io import CurveSpec, build_curve, curve_to_json, curve_to_spec, dump_curve, load_curve
from .transforms import (
    AddRofX,
    MobiusX,
    NegateY,
    ScaleXY,
    ScaleY,
    SwapXY,
    TransformSpec,
    apply_transform,
    inverse_transform,
    transform_data,
)

__all__ = [
    "AddRofX",
    "BranchData",
    "CurveData",
    "CurveSpec",
    "DEFAULT_LOCAL_ORDER",
    "LogTerm",
    "MobiusX",
    "NegateY",
    "Regular",
    "ScaleXY",
    "ScaleY",
    "Singular",
    "SpectralCurve",
    "SwapXY",
    "TransformSpec",
    "apply_transform",
    "build_curve",
    "classify_branchpoint",
    "curve_to_json",
    "curve_to_spec",
    "dump_curve",
    "find_branchpoints",
    "involution_series",
    "inverse_transform",
    "load_curve",
    "local_y_and_phi",
    "solve_involution",
    "transform_data",
    "validate_curve",
]
