"""
Family documents and dispatch.

A FamilySpec names a catalog family and carries its parameters as "p/q"
strings, e.g. ``{"family": "quadrangulation", "t4": "1/1", "mode": "formal-gamma"}``.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, field_validator

from exact_arith.errors import UnknownFamily
from spectral_curve import CurveData

from .brownian import make_gaussian_external
from .kontsevich import make_airy, make_kontsevich, make_weil_petersson
from .maps import make_ising_quartic, make_one_cut_map_curve, make_quadrangulation
from .minimal import make_minimal_p2, make_pure_gravity
from .plancherel import make_plancherel, make_q_plancherel

logger = logging.getLogger(__name__)


class FamilySpec(BaseModel):
    """Catalog family plus parameters; unused fields are ignored by the builder."""

    model_config = ConfigDict(extra="forbid")

    family: str
    times: List[str] = []
    order: int = 3
    alpha: Optional[str] = None
    gamma: str = "gamma"
    t4: Optional[str] = None
    mode: str = "fixed-t4"
    t2: str = "0"
    tt2: str = "0"
    tt4: str = "0"
    u: str = "1"
    u1: str = "0"
    tbar: List[str] = []
    z0: str = "2"
    p: int = 1
    eps: List[str] = []
    a: List[str] = []
    branchpoints: Optional[List[str]] = None

    @field_validator("alpha", "gamma", "t4", "t2", "tt2", "tt4", "u", "u1", "z0", mode="before")
    @classmethod
    def numbers_as_text(cls, v: Any) -> Any:
        return str(v) if isinstance(v, (int, Fraction)) and not isinstance(v, bool) else v

    @field_validator("times", "tbar", "eps", "a", "branchpoints", mode="before")
    @classmethod
    def lists_as_text(cls, v: Any) -> Any:
        if isinstance(v, (list, tuple)):
            return [str(c) if isinstance(c, (int, Fraction)) else c for c in v]
        return v


@dataclass
class CatalogEntry:
    """Constructor output: the curve (or curve data) and everything derived on the way."""

    family: str
    curve: Any
    derived: Dict[str, str] = field(default_factory=dict)
    extras: Dict[str, Any] = field(default_factory=dict)


def _derived(curve: Any) -> Dict[str, str]:
    data = curve if isinstance(curve, CurveData) else getattr(curve, "data", None)
    return dict(data.meta) if data is not None else {}


def _kontsevich(spec: FamilySpec) -> CatalogEntry:
    curve = make_kontsevich(spec.times)
    return CatalogEntry(spec.family, curve, _derived(curve))


def _one_cut(spec: FamilySpec) -> CatalogEntry:
    curve, t = make_one_cut_map_curve(spec.alpha, spec.gamma, spec.times)
    return CatalogEntry(spec.family, curve, _derived(curve), {"t": t})


def _quadrangulation(spec: FamilySpec) -> CatalogEntry:
    curve, t = make_quadrangulation(spec.t4, spec.mode, spec.gamma)
    return CatalogEntry(spec.family, curve, _derived(curve), {"t": t})


def _ising(spec: FamilySpec) -> CatalogEntry:
    gamma = "1" if spec.gamma == "gamma" else spec.gamma
    curve, t = make_ising_quartic(spec.t2, spec.tt2, spec.t4 or "0", spec.tt4, gamma, spec.branchpoints)
    return CatalogEntry(spec.family, curve, _derived(curve), {"t": t})


def _q_plancherel(spec: FamilySpec) -> CatalogEntry:
    curve, mirror, report = make_q_plancherel(spec.z0, spec.p)
    return CatalogEntry(spec.family, curve, dict(curve.meta), {"mirror": mirror, "identities": report})


def _minimal(spec: FamilySpec) -> CatalogEntry:
    curve = make_minimal_p2(spec.u, spec.tbar) if spec.tbar else make_pure_gravity(spec.u)
    return CatalogEntry(spec.family, curve, _derived(curve))


def _simple(build: Callable[[FamilySpec], Any]) -> Callable[[FamilySpec], CatalogEntry]:
    def run(spec: FamilySpec) -> CatalogEntry:
        curve = build(spec)
        return CatalogEntry(spec.family, curve, _derived(curve))

    return run


FAMILIES: Dict[str, Callable[[FamilySpec], CatalogEntry]] = {
    "airy": _simple(lambda s: make_airy()),
    "minimal32": _minimal,
    "kontsevich": _kontsevich,
    "one-cut-map": _one_cut,
    "quadrangulation": _quadrangulation,
    "ising-quartic": _ising,
    "weil-petersson": _simple(lambda s: make_weil_petersson(s.order)),
    "plancherel-trivial": _simple(lambda s: make_plancherel(0)),
    "plancherel-t2": _simple(lambda s: make_plancherel(s.u1)),
    "q-plancherel": _q_plancherel,
    "gaussian-external": _simple(lambda s: make_gaussian_external(s.eps, s.a)),
}


def load_family_spec(source: Union[FamilySpec, Dict[str, Any], str, Path]) -> FamilySpec:
    """Accept a model, a dict, a JSON string or a path to a JSON file."""
    if isinstance(source, FamilySpec):
        return source
    if isinstance(source, dict):
        doc = source
    elif isinstance(source, Path) or not str(source).lstrip().startswith("{"):
        doc = json.loads(Path(source).read_text())
    else:
        doc = json.loads(source)
    _known(doc.get("family"))
    return FamilySpec.model_validate(doc)


def _known(family: Any) -> None:
    if family not in FAMILIES:
        raise UnknownFamily(f"unknown family {family!r}", {"known": sorted(FAMILIES)})


def make_family(spec: Union[FamilySpec, Dict[str, Any], str, Path]) -> CatalogEntry:
    """
    Build a catalog curve from its family document.

    Raises:
        UnknownFamily: for a tag outside the catalog
    """
    spec = load_family_spec(spec)
    _known(spec.family)
    entry = FAMILIES[spec.family](spec)
    logger.info(f"Built family {spec.family}: {entry.derived}")
    return entry
