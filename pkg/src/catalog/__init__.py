"""Constructors for the application curves"""

from .brownian import gaussian_external_data, make_gaussian_external
from .families import FAMILIES, CatalogEntry, FamilySpec, load_family_spec, make_family
from .kontsevich import (
    WittenKontsevichPair,
    kontsevich_data,
    make_airy,
    make_kontsevich,
    make_weil_petersson,
    weil_petersson_times,
    witten_kontsevich_pair,
)
from .maps import (
    QUADRANGULATION_MODES,
    IsingParameters,
    ising_parameters,
    make_ising_quartic,
    make_one_cut_map_curve,
    make_quadrangulation,
    quadrangulation_counts,
    quadrangulation_gamma_sq_series,
)
from .minimal import make_minimal_p2, make_pure_gravity
from .plancherel import IdentityReport, LogCurve, LogExpr, make_plancherel, make_q_plancherel

__all__ = [
    "CatalogEntry",
    "FAMILIES",
    "FamilySpec",
    "IdentityReport",
    "IsingParameters",
    "LogCurve",
    "LogExpr",
    "QUADRANGULATION_MODES",
    "WittenKontsevichPair",
    "gaussian_external_data",
    "ising_parameters",
    "kontsevich_data",
    "load_family_spec",
    "make_airy",
    "make_family",
    "make_gaussian_external",
    "make_ising_quartic",
    "make_kontsevich",
    "make_minimal_p2",
    "make_one_cut_map_curve",
    "make_plancherel",
    "make_pure_gravity",
    "make_q_plancherel",
    "make_quadrangulation",
    "make_weil_petersson",
    "quadrangulation_counts",
    "quadrangulation_gamma_sq_series",
    "weil_petersson_times",
    "witten_kontsevich_pair",
]
