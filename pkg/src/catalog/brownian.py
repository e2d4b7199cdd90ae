"""Gaussian matrix in an external field: x = z + sum_i eps_i / (z - a_i), y = z."""

import logging
from typing import Any, Sequence, Union

import sympy

from exact_arith import CoeffField, UniRatFunc
from exact_arith.errors import BranchpointNotInField, NotRegular
from spectral_curve import CurveData, SpectralCurve, validate_curve

logger = logging.getLogger(__name__)

Z = sympy.Symbol("z")


def gaussian_external_data(eps: Sequence[Any], a: Sequence[Any]) -> CurveData:
    """Curve data before any branchpoint analysis."""
    F = CoeffField("Q")
    if len(eps) != len(a):
        raise ValueError(f"{len(eps)} weights for {len(a)} eigenvalues")
    points = [sympy.Rational(v) for v in a]
    if len(set(points)) != len(points):
        raise ValueError("external eigenvalues must be distinct")
    weights = [sympy.Rational(v) for v in eps]
    x = UniRatFunc.from_expr(F, Z + sum((w / (Z - p) for w, p in zip(weights, points)), sympy.Integer(0)), Z)
    y = UniRatFunc.identity(F)
    meta = {"eps": ",".join(str(w) for w in weights), "a": ",".join(str(p) for p in points)}
    return CurveData.rational(x, y, meta)


def make_gaussian_external(eps: Sequence[Any], a: Sequence[Any]) -> Union[SpectralCurve, CurveData]:
    """
    Build the curve, validated when its branchpoints are rational and simple.

    Otherwise the unvalidated data is returned; classify_branchpoint still
    works on it at supplied candidate points.

    Args:
        eps: group weights n_i / N
        a: distinct eigenvalues of the external matrix

    Returns:
        SpectralCurve or CurveData
    """
    data = gaussian_external_data(eps, a)
    try:
        return validate_curve(data)
    except (BranchpointNotInField, NotRegular) as e:
        logger.info(f"external-field curve kept as data: {e.message}")
        return data
