"""
Symplectic transformations of spectral curves.

Each transform maps (x, y) to a new pair with dx ^ dy preserved up to sign;
the recursion output is invariant (or transforms homogeneously) under them.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from exact_arith import UniRatFunc
from exact_arith.errors import DivisionByZero, NotRegular, TransformUnsupported

from .curve import CurveData, LogTerm, SpectralCurve, validate_curve

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AddRofX:
    """y -> y + R(x)."""

    R: UniRatFunc


@dataclass(frozen=True)
class ScaleY:
    """y -> lam * y."""

    lam: Any


@dataclass(frozen=True)
class ScaleXY:
    """x -> x / lam, y -> lam * y."""

    lam: Any


@dataclass(frozen=True)
class MobiusX:
    """x -> (a x + b)/(c x + d), y -> (c x + d)^2 y / (ad - bc)."""

    a: Any
    b: Any
    c: Any
    d: Any


@dataclass(frozen=True)
class NegateY:
    pass


@dataclass(frozen=True)
class SwapXY:
    pass


TransformSpec = Union[AddRofX, ScaleY, ScaleXY, MobiusX, NegateY, SwapXY]


def _scaled(data: CurveData, x: UniRatFunc, factor: Any) -> CurveData:
    """Same curve with x replaced and y multiplied by a constant."""
    if data.is_rational:
        return CurveData.rational(x, data.y.scale(factor), data.meta)
    logs = [LogTerm(t.coeff * factor, t.arg) for t in data.logs]
    return CurveData.log_type(x, data.dy.scale(factor), logs, data.meta)


def transform_data(data: CurveData, t: TransformSpec) -> CurveData:
    """Apply a transform to unvalidated curve data."""
    F = data.field
    K = data.domain

    if isinstance(t, AddRofX):
        shift = t.R.compose(data.x)
        if data.is_rational:
            return CurveData.rational(data.x, data.y + shift, data.meta)
        return CurveData.log_type(data.x, data.dy + shift.derivative(), data.logs, data.meta)

    if isinstance(t, (ScaleY, ScaleXY)):
        lam = F.convert(t.lam)
        if not lam:
            raise DivisionByZero("scaling by zero")
        x = data.x if isinstance(t, ScaleY) else data.x.scale(F.inverse(lam))
        return _scaled(data, x, lam)

    if isinstance(t, NegateY):
        return _scaled(data, data.x, -K.one)

    if isinstance(t, MobiusX):
        a, b, c, d = (F.convert(v) for v in (t.a, t.b, t.c, t.d))
        det = a * d - b * c
        if not det:
            raise DivisionByZero("Mobius transform with ad - bc = 0")
        x = (data.x.scale(a) + b) / (data.x.scale(c) + d)
        if not c:
            return _scaled(data, x, F.div(d * d, det))
        if not data.is_rational:
            raise TransformUnsupported("MobiusX with c != 0 needs a rational y")
        factor = (data.x.scale(c) + d) ** 2
        return CurveData.rational(x, (factor * data.y).scale(F.inverse(det)), data.meta)

    if isinstance(t, SwapXY):
        if not data.is_rational:
            raise TransformUnsupported("SwapXY needs a rational y")
        return CurveData.rational(data.y, data.x, data.meta)

    raise TransformUnsupported(f"unknown transform {t!r}")


def apply_transform(curve: SpectralCurve, t: TransformSpec) -> SpectralCurve:
    """
    Transform a validated curve and validate the result.

    Branchpoint order is kept whenever x keeps its critical points, so
    correlators of the two curves are directly comparable.

    Args:
        curve: the input curve
        t: the transform

    Returns:
        A new validated curve
    """
    data = transform_data(curve.data, t)
    keep = None if isinstance(t, SwapXY) else list(curve.branchpoints)
    try:
        result = validate_curve(data, keep)
    except NotRegular:
        logger.warning(f"{type(t).__name__} produced a singular curve")
        raise
    logger.info(f"Applied {type(t).__name__}: x = {result.x}")
    return result


def inverse_transform(t: TransformSpec) -> TransformSpec:
    """The transform undoing ``t``."""
    if isinstance(t, AddRofX):
        return AddRofX(-t.R)
    if isinstance(t, ScaleY):
        return ScaleY(_reciprocal(t.lam))
    if isinstance(t, ScaleXY):
        return ScaleXY(_reciprocal(t.lam))
    if isinstance(t, MobiusX):
        return MobiusX(t.d, -t.b, -t.c, t.a)
    if isinstance(t, (NegateY, SwapXY)):
        return t
    raise TransformUnsupported(f"unknown transform {t!r}")


def _reciprocal(lam: Any) -> Any:
    if isinstance(lam, (int, Fraction)):
        if not lam:
            raise DivisionByZero("scaling by zero")
        return 1 / Fraction(lam)
    return 1 / lam
