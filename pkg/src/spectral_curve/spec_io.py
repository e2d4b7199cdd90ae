"""
Curve-spec documents.

A curve spec is JSON of the form
``{"field": "Qu", "x": {"num": [...], "den": [...]}, "y": {...}, "params": {"name": "gamma"}}``
with every number a "p/q" string (or a {num, den} / coefficient-list
object for field elements carrying the parameter). Rational functions may
also be given as expression strings such as ``"gamma*(z + 1/z)"``.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from exact_arith import CoeffField, UniRatFunc
from exact_arith.errors import FieldMismatch

from .curve import CurveData, LogTerm, SpectralCurve, validate_curve

logger = logging.getLogger(__name__)

Coefficient = Union[str, int, Dict[str, List[str]], List[str]]


class RatFuncDoc(BaseModel):
    """Rational function by coefficient arrays, lowest degree first."""

    num: List[Coefficient]
    den: List[Coefficient] = Field(default_factory=lambda: ["1/1"])


class LogTermDoc(BaseModel):
    coeff: Coefficient
    arg: Union[str, RatFuncDoc]


class DyDoc(RatFuncDoc):
    """dy/dz plus the logarithmic terms of y."""

    num: List[Coefficient] = Field(default_factory=list)
    expr: Optional[str] = None
    logs: List[LogTermDoc] = Field(default_factory=list)


class CurveSpec(BaseModel):
    """Serialized spectral curve."""

    field: str = "Q"
    x: Union[str, RatFuncDoc]
    y: Optional[Union[str, RatFuncDoc]] = None
    dy: Optional[DyDoc] = None
    branchpoints: Optional[List[Coefficient]] = None
    params: Dict[str, str] = Field(default_factory=dict)

    @field_validator("field")
    @classmethod
    def known_field(cls, v: str) -> str:
        if v not in ("Q", "Qu", "Qp"):
            raise ValueError(f"unknown field tag {v!r}")
        return v

    @model_validator(mode="after")
    def one_y(self) -> "CurveSpec":
        if (self.y is None) == (self.dy is None):
            raise ValueError("exactly one of 'y' and 'dy' must be given")
        return self

    def coeff_field(self) -> CoeffField:
        return CoeffField(self.field, self.params.get("name"))


def _ratfunc(F: CoeffField, doc: Union[str, RatFuncDoc]) -> UniRatFunc:
    if isinstance(doc, str):
        return UniRatFunc.from_expr(F, doc)
    return UniRatFunc.from_coeffs(F, doc.num, doc.den)


def _dy_ratfunc(F: CoeffField, doc: DyDoc) -> UniRatFunc:
    if doc.expr is not None:
        return UniRatFunc.from_expr(F, doc.expr)
    if not doc.num:
        return UniRatFunc.constant(F, F.zero)
    return UniRatFunc.from_coeffs(F, doc.num, doc.den)


def curve_data_from_spec(spec: CurveSpec) -> CurveData:
    """Decode a spec into unvalidated curve data."""
    F = spec.coeff_field()
    try:
        x = _ratfunc(F, spec.x)
        meta = {k: v for k, v in spec.params.items() if k != "name"}
        if spec.y is not None:
            return CurveData.rational(x, _ratfunc(F, spec.y), meta)
        logs = [LogTerm(F.convert(t.coeff), _ratfunc(F, t.arg)) for t in spec.dy.logs]
        return CurveData.log_type(x, _dy_ratfunc(F, spec.dy), logs, meta)
    except (ValueError, TypeError) as e:
        raise FieldMismatch(f"malformed curve spec: {e}") from e


def build_curve(spec: Union[CurveSpec, Dict[str, Any], str]) -> SpectralCurve:
    """
    Build and validate a curve from a spec document.

    Args:
        spec: a CurveSpec, its dict form, or a JSON string

    Returns:
        The validated curve with branch data at the default order
    """
    if isinstance(spec, str):
        spec = CurveSpec.model_validate_json(spec)
    elif isinstance(spec, dict):
        spec = CurveSpec.model_validate(spec)
    data = curve_data_from_spec(spec)
    return validate_curve(data, spec.branchpoints)


def load_curve(path: Union[str, Path]) -> SpectralCurve:
    """Read a curve-spec JSON file and build it."""
    text = Path(path).read_text()
    logger.debug(f"loading curve spec {path}")
    return build_curve(text)


def curve_to_spec(curve: Union[SpectralCurve, CurveData]) -> CurveSpec:
    """Serialize a curve; ``build_curve`` of the result gives an equal curve."""
    data = curve.data if isinstance(curve, SpectralCurve) else curve
    F = data.field
    params = dict(data.meta)
    if F.param:
        params["name"] = F.param
    doc: Dict[str, Any] = {"field": F.tag, "x": data.x.to_json(), "params": params}
    if data.is_rational:
        doc["y"] = data.y.to_json()
    else:
        dy = data.dy.to_json()
        dy["logs"] = [{"coeff": F.to_json(t.coeff), "arg": t.arg.to_json()} for t in data.logs]
        doc["dy"] = dy
    if isinstance(curve, SpectralCurve):
        doc["branchpoints"] = [F.to_json(a) for a in curve.branchpoints]
    return CurveSpec.model_validate(doc)


def curve_to_json(curve: Union[SpectralCurve, CurveData]) -> str:
    return curve_to_spec(curve).model_dump_json(exclude_none=True)


def dump_curve(curve: SpectralCurve, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(json.loads(curve_to_json(curve)), indent=2) + "\n")
