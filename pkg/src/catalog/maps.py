"""
Spectral curves of map enumeration problems.

One-cut curves are parametrized by (alpha, gamma) with the face weight t
derived, so the branchpoints stay at z = +-1 and every coefficient lies in
Q(gamma). Counts in t come out at the end through the gamma^2 series.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple, Union

import sympy

from exact_arith import CoeffField, LaurentSeries, UniRatFunc, poly_roots_in_field, series_reversion
from exact_arith.errors import SingularSystem, U0NotZero
from forms import CountTable, count_table, residue_at_infinity_with_weight
from recursion import engine_for
from spectral_curve import CurveData, SpectralCurve, validate_curve

logger = logging.getLogger(__name__)

Z = sympy.Symbol("z")
QUADRANGULATION_MODES = ("fixed-t4", "t-one")
_MODE_ALIASES = {"formal-gamma": "fixed-t4"}


def _field_for(gamma: Any, field: Optional[CoeffField]) -> Tuple[CoeffField, Any]:
    """A string gamma is a formal parameter of Q(gamma); anything else is a rational."""
    if isinstance(gamma, str) and gamma.isidentifier():
        F = field or CoeffField("Qu", gamma)
        return F, F.gen()
    F = field or CoeffField("Q")
    return F, F.convert(gamma)


def _times(tks: Union[Mapping[int, Any], Sequence[Any]]) -> Dict[int, Any]:
    if isinstance(tks, Mapping):
        out = {int(k): v for k, v in tks.items()}
    else:
        out = {k + 3: v for k, v in enumerate(tks)}
    for k in out:
        if k < 3:
            raise ValueError(f"potential times start at t_3, got t_{k}")
    return out


def _laurent_coefficients(expr: sympy.Expr, depth: int) -> Dict[int, sympy.Expr]:
    poly = sympy.Poly(sympy.expand(expr * Z ** depth), Z)
    return {j - depth: c for (j,), c in poly.as_dict().items()}


def _solve_alpha(u0: sympy.Expr, alpha: sympy.Symbol, F: CoeffField) -> Any:
    """A root of u_0(alpha) = 0 in the field, the one of least size over Q."""
    u0 = sympy.expand(u0)
    if u0 == 0:
        return F.zero
    poly = sympy.Poly(u0, alpha)
    if poly.degree() == 0:
        raise U0NotZero(f"u_0 = {u0} does not depend on alpha", {"u0": str(u0)})
    coeffs = [F.convert(sympy.cancel(c)) for c in reversed(poly.all_coeffs())]
    roots = [r for r, _ in poly_roots_in_field(coeffs, F).roots]
    if not roots:
        raise U0NotZero("u_0 = 0 has no solution for alpha in the field", {"u0": str(u0)})
    if F.tag == "Q":
        roots.sort(key=lambda r: (abs(r), r))
    return roots[0]


def make_one_cut_map_curve(alpha: Any, gamma: Any, tks: Union[Mapping[int, Any], Sequence[Any]],
                           field: Optional[CoeffField] = None) -> Tuple[SpectralCurve, Any]:
    """
    Curve of the one-matrix model with V'(x) = x - sum_k t_k x^(k-1).

    Expanding V'(alpha + gamma (z + 1/z)) = sum_k u_k (z^k + z^-k) gives
    x = alpha + gamma (z + 1/z), y = -sum_{k>=1} u_k z^-k and t = gamma u_1.

    Args:
        alpha: center of the cut, or None to solve u_0 = 0 for it
        gamma: half-width; a name such as "gamma" makes it formal
        tks: [t_3, t_4, ...] or {k: t_k}
        field: override for the coefficient field

    Returns:
        (curve, t) with branchpoints at z = +-1

    Raises:
        U0NotZero: when u_0 does not vanish
    """
    F, g = _field_for(gamma, field)
    times = {k: F.convert(v) for k, v in _times(tks).items() if F.convert(v)}
    a_sym = sympy.Dummy("alpha")
    g_expr = F.to_sympy(g)
    X = a_sym + g_expr * (Z + 1 / Z)
    v_prime = X - sum((F.to_sympy(t) * X ** (k - 1) for k, t in times.items()), sympy.Integer(0))
    depth = max((k - 1 for k in times), default=1)
    c = _laurent_coefficients(v_prime, depth)

    if alpha is None:
        a = _solve_alpha(c.get(0, sympy.Integer(0)), a_sym, F)
    else:
        a = F.convert(alpha)
    a_expr = F.to_sympy(a)
    u = {k: sympy.cancel(c.get(k, sympy.Integer(0)).subs(a_sym, a_expr)) for k in range(depth + 1)}
    if u[0] != 0:
        raise U0NotZero(f"u_0 = {u[0]} at alpha = {a_expr}", {"u0": str(u[0]), "alpha": str(a_expr)})

    x = UniRatFunc.from_expr(F, a_expr + g_expr * (Z + 1 / Z), Z)
    y = UniRatFunc.from_expr(F, -sum((u[k] / Z ** k for k in range(1, depth + 1)), sympy.Integer(0)), Z)
    t = F.convert(sympy.cancel(g_expr * u[1]))

    meta = {"alpha": F.to_str(a), "t": F.to_str(t)}
    meta.update({f"u{k}": str(u[k]) for k in range(1, depth + 1) if u[k] != 0})
    meta.update({f"t{k}": F.to_str(v) for k, v in sorted(times.items())})
    curve = validate_curve(CurveData.rational(x, y, meta), [1, -1])
    logger.info(f"One-cut curve: x = {x}, y = {y}, t = {F.to_str(t)}")
    return curve, t


def make_quadrangulation(t4: Any = None, mode: str = "fixed-t4",
                         gamma: Any = "gamma") -> Tuple[SpectralCurve, Any]:
    """
    Quadrangulation curve, V'(x) = x - t_4 x^3.

    Args:
        t4: the face weight (fixed-t4 mode)
        mode: "fixed-t4" derives t = gamma^2 - 3 t_4 gamma^4; "t-one" sets
            t = 1 and derives t_4 = (gamma^2 - 1) / (3 gamma^4)
        gamma: formal name or rational value

    Returns:
        (curve, t)
    """
    mode = _MODE_ALIASES.get(mode, mode)
    if mode not in QUADRANGULATION_MODES:
        raise ValueError(f"unknown quadrangulation mode {mode!r}, expected one of {QUADRANGULATION_MODES}")
    F, g = _field_for(gamma, None)
    if mode == "fixed-t4":
        if t4 is None:
            raise ValueError("fixed-t4 mode needs t4")
        weight = F.convert(t4)
    else:
        g2 = g * g
        weight = F.div(g2 - F.one, F.convert(3) * g2 * g2)
    curve, t = make_one_cut_map_curve(0, gamma, {4: weight}, F)
    curve.data.meta["mode"] = mode
    return curve, t


def quadrangulation_gamma_sq_series(t4: Any, order: int) -> LaurentSeries:
    """gamma^2 = t + 3 t_4 t^2 + 18 t_4^2 t^3 + ... from t = gamma^2 - 3 t_4 gamma^4."""
    F = CoeffField("Q")
    w = F.convert(t4)
    return series_reversion(F.domain, [F.one, -3 * w], order)


def quadrangulation_counts(t4: Any, genus: int, perimeters: Sequence[int], entries: int,
                           config: Optional[Dict[str, Any]] = None) -> CountTable:
    """
    Rooted quadrangulation counts with boundaries of the given perimeters.

    Args:
        t4: nonzero face weight
        genus: genus of the maps
        perimeters: boundary lengths, one per marked face
        entries: number of table entries (unmarked faces 0..entries-1)
        config: engine settings

    Returns:
        CountTable; genus 0 with perimeters [4] at t4 = 1 gives [2, 9, 54, 378, ...]
    """
    F = CoeffField("Q")
    weight = F.convert(t4)
    if not weight:
        raise ValueError("counts need a nonzero face weight")
    if not perimeters:
        raise ValueError("at least one perimeter is needed")
    curve, _ = make_quadrangulation(t4)
    form = engine_for(curve, config).omega(genus, len(perimeters))
    residue = residue_at_infinity_with_weight(form, list(perimeters), curve)
    depth = 2 + 2 * entries + sum(perimeters)
    gamma_sq = quadrangulation_gamma_sq_series(weight, depth)
    return count_table(residue, curve.field, gamma_sq, weight, genus, perimeters, entries)


@dataclass(frozen=True)
class IsingParameters:
    """Coefficients of x = gamma z + alpha1/z + alpha3/z^3, y = gamma/z + beta1 z + beta3 z^3."""

    gamma: Any
    alpha1: Any
    alpha3: Any
    beta1: Any
    beta3: Any
    t: Any


def ising_parameters(t2: Any, tt2: Any, t4: Any, tt4: Any, gamma: Any,
                     field: Optional[CoeffField] = None) -> IsingParameters:
    """
    Solve the quartic two-matrix model relations for a given gamma.

    Raises:
        SingularSystem: when 1 - 9 t_4 tt_4 gamma^4 = 0
    """
    F = field or CoeffField("Q")
    t2, tt2, t4, tt4, g = (F.convert(v) for v in (t2, tt2, t4, tt4, gamma))
    g2 = g * g
    det = F.one - 9 * t4 * tt4 * g2 * g2
    if not det:
        raise SingularSystem("1 - 9 t4 tt4 gamma^4 vanishes", {"gamma": F.to_str(g)})
    alpha3 = -tt4 * g2 * g
    beta3 = -t4 * g2 * g
    alpha1 = F.div(tt2 * g - 3 * tt4 * t2 * g2 * g, det)
    beta1 = t2 * g - 3 * t4 * g2 * alpha1
    t = alpha1 * beta1 + 3 * alpha3 * beta3 - g2
    return IsingParameters(g, alpha1, alpha3, beta1, beta3, t)


def make_ising_quartic(t2: Any, tt2: Any, t4: Any, tt4: Any, gamma: Any,
                       branchpoints: Optional[Sequence[Any]] = None) -> Tuple[SpectralCurve, Any]:
    """
    Quartic Ising curve at rational couplings and gamma.

    Args:
        t2, tt2, t4, tt4: couplings of the two matrices
        gamma: leading coefficient of x
        branchpoints: explicit branchpoints; discovered in Q when None

    Returns:
        (curve, t)

    Raises:
        SingularSystem: for a degenerate linear system
        BranchpointNotInField: when dx has irrational zeros and none are supplied
    """
    F = CoeffField("Q")
    p = ising_parameters(t2, tt2, t4, tt4, gamma, F)
    x = UniRatFunc.from_coeffs(F, [p.alpha3, 0, p.alpha1, 0, p.gamma], [0, 0, 0, 1])
    y = UniRatFunc.from_coeffs(F, [p.gamma, 0, p.beta1, 0, p.beta3], [0, 1])
    meta = {name: F.to_str(getattr(p, name)) for name in ("alpha1", "alpha3", "beta1", "beta3", "t")}
    curve = validate_curve(CurveData.rational(x, y, meta), branchpoints)
    logger.info(f"Ising curve: x = {x}, y = {y}, t = {F.to_str(p.t)}")
    return curve, p.t
