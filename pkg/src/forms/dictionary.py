"""
Intersection numbers and volumes from Kontsevich-type correlators.

On a curve x = z^2 with times t_3, t_5, ... the correlators, in the
sign convention where omega_3^(0) = -1/(2 - t_3) prod dz_i/z_i^2, are the
Laplace transforms of kappa-dressed psi-class intersection numbers:

    coefficient of prod dz_i / z_i^{2 d_i + 2}
        = 2^{-(3g-3+n)} (t_3 - 2)^{2-2g-n} prod (2 d_i + 1)!/d_i!  <kappa-psi>_g

and the volume polynomial collects coefficient * prod L_i^{2 d_i}/(2 d_i + 1)!.
"""

import logging
from dataclasses import dataclass, field
from math import factorial
from typing import Any, Dict, List, Mapping, Optional, Tuple

import sympy

from exact_arith import LaurentSeries, UniRatFunc
from exact_arith.errors import NonQuadraticX, TopoRecError

from .poleform import PoleForm

logger = logging.getLogger(__name__)


@dataclass
class VolumePolynomial:
    """V_{g,n}(L_1..L_n) stored as (d_1..d_n) -> coefficient of prod L_i^{2 d_i}."""

    g: int
    n: int
    field: Any
    coeffs: Dict[Tuple[int, ...], Any] = field(default_factory=dict)

    def as_expr(self) -> sympy.Expr:
        Ls = sympy.symbols(f"L1:{self.n + 1}") if self.n else ()
        total = sympy.Integer(0)
        for ds, c in sorted(self.coeffs.items()):
            term = self.field.to_sympy(c)
            for L, d in zip(Ls, ds):
                term *= L ** (2 * d)
            total += term
        return sympy.expand(total)

    def coefficient(self, ds: Tuple[int, ...]) -> Any:
        return self.coeffs.get(tuple(ds), self.field.zero)


def _check_quadratic(curve) -> None:
    if len(curve.branchpoints) != 1 or curve.branchpoints[0]:
        raise NonQuadraticX("dictionary needs a single branchpoint at z = 0")
    x = curve.x
    expected = x.evaluate(curve.field.zero)
    z = UniRatFunc.identity(curve.field)
    if x != z * z + expected:
        raise NonQuadraticX(f"x = {x} is not z^2 + const")


def _half_orders(form: PoleForm) -> Dict[Tuple[int, ...], Any]:
    out: Dict[Tuple[int, ...], Any] = {}
    for key, c in form.terms.items():
        ds = []
        for j, k in key:
            if k % 2:
                raise TopoRecError(f"odd pole order {k} on a z^2 curve", {"k": k})
            ds.append(k // 2 - 1)
        out[tuple(ds)] = c
    return out


def laplace_volume_dictionary(form: PoleForm, curve) -> VolumePolynomial:
    """
    Volume polynomial of a correlator given in the paper9 convention.

    Args:
        form: omega_n^(g) with the (-1)^n factor applied
        curve: the x = z^2 curve it was computed on

    Returns:
        V_{g,n} with coefficients in the curve's field
    """
    _check_quadratic(curve)
    K = curve.domain
    coeffs = {}
    for ds, c in _half_orders(form).items():
        denom = 1
        for d in ds:
            denom *= factorial(2 * d + 1)
        coeffs[ds] = K.exquo(c, K.convert(denom))
    vol = VolumePolynomial(form.g, form.n, curve.field, coeffs)
    logger.debug(f"V_({form.g},{form.n}) = {vol.as_expr()}")
    return vol


def intersection_numbers(form: PoleForm, t3: Any, field) -> Dict[Tuple[int, ...], Any]:
    """
    Kappa-dressed intersection numbers by psi exponents (d_1..d_n).

    Returns coefficient * 2^{3g-3+n} (t_3 - 2)^{2g-2+n} / prod (2 d_i + 1)!/d_i!
    for each pole pattern of ``form`` (paper9 convention).
    """
    K = field.domain
    g, n = form.g, form.n
    t3 = field.convert(t3)
    scale = K.convert(2 ** (3 * g - 3 + n)) * (t3 - K.convert(2)) ** (2 * g - 2 + n)
    out = {}
    for ds, c in _half_orders(form).items():
        denom = 1
        for d in ds:
            denom *= factorial(2 * d + 1) // factorial(d)
        out[ds] = K.exquo(c * scale, K.convert(denom))
    return out


def kappa_times(times: Mapping[int, Any], order: int, field) -> List[Any]:
    """
    Kappa couplings t~_1..t~_order from -ln(1 - f(z)).

    f(z) = sum_{a>=1} (2a+1)!/a! * t_{2a+3}/(2 - t_3) z^a.

    Args:
        times: index k -> t_k (missing times are zero)
        order: number of couplings
        field: coefficient field of the times
    """
    K = field.domain
    t3 = field.convert(times.get(3, 0))
    lead = K.convert(2) - t3
    if not lead:
        raise TopoRecError("t_3 = 2 makes the kappa couplings singular")
    f_terms = {}
    for a in range(1, order + 1):
        t = field.convert(times.get(2 * a + 3, 0))
        if t:
            f_terms[a] = K.exquo(K.convert(factorial(2 * a + 1) // factorial(a)) * t, lead)
    f = LaurentSeries.from_dict(K, f_terms).truncate(order)
    log_series = LaurentSeries.zero(K, order)
    power = LaurentSeries.constant(K, K.one)
    for m in range(1, order + 1):
        power = power.mul(f, order)
        log_series = log_series + power.scale(K.exquo(K.one, K.convert(m)))
    return [log_series.coefficient(b) for b in range(1, order + 1)]


def kappa_one(volumes: VolumePolynomial, t3: Any, tilde_t1: Any, field) -> Optional[Any]:
    """<kappa_1> on M_{1,1} from the constant term of V_{1,1}."""
    if (volumes.g, volumes.n) != (1, 1):
        raise ValueError("kappa_one reads V_{1,1}")
    K = field.domain
    c0 = volumes.coefficient((0,))
    t3 = field.convert(t3)
    tilde_t1 = field.convert(tilde_t1)
    if not tilde_t1:
        return None
    # 2^{d} (t3 - 2)^{2g-2+n} V = t~_1 <kappa_1> at d_1 = 0
    return K.exquo(K.convert(2) * (t3 - K.convert(2)) * c0, tilde_t1)
