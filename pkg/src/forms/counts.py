"""
Generating-function coefficients read off at x = infinity.

For a correlator W_n dx_1...dx_n the counts are

    T_{l_1..l_n} = (-1)^n Res_{x_i -> inf} prod x_i^{l_i} W_n dx_i

evaluated on the physical sheet z -> infinity of the rational
parametrization, with w = 1/z as local coordinate there.
"""

import logging
from typing import Any, Dict, List, Sequence, Tuple, Union

from pydantic import BaseModel

from exact_arith import CoeffField, LaurentSeries, laurent_expand_at_infinity, series_substitute_even
from exact_arith.errors import DivergentAtInfinity

from .poleform import PoleForm, UnstableForm

logger = logging.getLogger(__name__)


class CountTable(BaseModel):
    """Weighted map counts by number of unmarked faces, starting at zero."""

    genus: int
    perimeters: List[int]
    face_degree: int = 4
    counts: List[str]


def x_at_infinity(x, order: int) -> LaurentSeries:
    """x(1/w) near w = 0; x must have a pole at z = infinity."""
    X = laurent_expand_at_infinity(x, order)
    if X.is_zero or X.low >= 0:
        raise DivergentAtInfinity("x is finite at z = infinity", {"x": str(x)})
    return X


def _residue_weight(X_powers: Dict[int, LaurentSeries], l: int, a: Any, k: int, K) -> Any:
    """Res_{z->inf} x(z)^l dz/(z-a)^k = -[w^1] X^l w^k (1 - a w)^-k."""
    Xl = X_powers[l]
    need = 1 - k - Xl.low
    if need < 0:
        return K.zero
    geom = LaurentSeries(K, 0, [K.one, -a]).inverse(need).power(k, need)
    return -Xl.shift(k).mul(geom, 1).coefficient(1)


def _powers(x, weights: Sequence[int]) -> Dict[int, LaurentSeries]:
    top = max(weights) if weights else 0
    X = x_at_infinity(x, top + 4)
    return {l: X.power(l, 2) for l in set(weights)}


def residue_at_infinity_with_weight(form: Union[PoleForm, UnstableForm], weights: Sequence[int], curve) -> Any:
    """
    The count T^(g)_{l_1..l_n} of a correlator.

    Args:
        form: a stable PoleForm or an unstable marker
        weights: exponents l_i, one per slot
        curve: the spectral curve the form belongs to

    Returns:
        The count as a field element
    """
    K = curve.domain
    if len(weights) != form.n:
        raise ValueError(f"{form.n} weights needed, got {len(weights)}")

    if isinstance(form, UnstableForm):
        if form.kind == "one-zero":
            return _one_zero_count(curve, weights[0])
        return _annulus_count(curve, weights[0], weights[1])

    X_powers = _powers(curve.x, weights)
    points = curve.branchpoints
    cache: Dict[Tuple[int, int, int], Any] = {}
    total = K.zero
    for key, c in form.terms.items():
        term = c
        for l, (j, k) in zip(weights, key):
            idx = (l, j, k)
            if idx not in cache:
                cache[idx] = _residue_weight(X_powers, l, points[j], k, K)
            term = term * cache[idx]
            if not term:
                break
        total += term
    if form.n % 2:
        total = -total
    logger.debug(f"count (g={form.g}, weights={list(weights)}) = {curve.field.to_str(total)}")
    return total


def _one_zero_count(curve, l: int) -> Any:
    """T_l^(0) = Res_{x->inf} x^l y dx."""
    if not curve.is_rational:
        raise DivergentAtInfinity("y is not rational at z = infinity")
    x, y = curve.x, curve.y
    dx = x.derivative()
    poles = [max(-laurent_expand_at_infinity(f, 0).low, 0) for f in (x, y, dx)]
    order = 2 + (l + 1) * poles[0] + poles[1] + poles[2]
    X = x_at_infinity(x, order)
    Y = laurent_expand_at_infinity(y, order)
    Xp = laurent_expand_at_infinity(dx, order)
    integrand = X.power(l, order).mul(Y, order).mul(Xp, order)
    return -integrand.coefficient(1)


def _annulus_count(curve, l1: int, l2: int) -> Any:
    """
    T_{l1,l2}^(0) from the Bergman kernel, expanded with z2 nearer to infinity.

    The subtracted 1/(x1 - x2)^2 term has no iterated residue in this order.
    """
    K = curve.domain
    X = x_at_infinity(curve.x, l1 + l2 + 4)
    X1 = X.power(l1, l1 + l2 + 2)
    X2 = X.power(l2, 1)
    total = K.zero
    for m in range(0, max(-X2.low, 0)):
        inner = -X2.coefficient(-m - 1)
        outer = -X1.coefficient(m + 1)
        total += K.convert(m + 1) * inner * outer
    return total


def count_table(residue: Any, field: CoeffField, gamma_sq: LaurentSeries, face_weight: Any, genus: int,
                perimeters: Sequence[int], entries: int, face_degree: int = 4) -> CountTable:
    """
    Turn a count in Q(gamma) into map numbers by unmarked face count.

    Entry m reads the coefficient of t^v with v = 2 - 2g + e - m - k vertices,
    e = (face_degree * m + sum(perimeters)) / 2 edges and k marked faces,
    divided by face_weight^m.

    Args:
        residue: T^(g)_{l_1..l_k} as an element of ``field``
        field: Q(gamma) field of the residue
        gamma_sq: gamma^2 as a power series in t
        face_weight: the weight t_4 (or t_d) of an unmarked face
        genus: g
        perimeters: l_1..l_k
        entries: number of entries, m = 0..entries-1

    Returns:
        The count table
    """
    K = gamma_sq.domain
    k = len(perimeters)
    total_l = sum(perimeters)

    def vertices(m: int) -> Union[int, None]:
        twice_edges = face_degree * m + total_l
        if twice_edges % 2:
            return None
        return 2 - 2 * genus + twice_edges // 2 - m - k

    top = max((v for v in (vertices(m) for m in range(entries)) if v is not None), default=0)
    series = series_substitute_even(residue, field, gamma_sq, max(top, 0))
    counts: List[str] = []
    weight = K.one
    for m in range(entries):
        v = vertices(m)
        value = K.zero if v is None or v < 0 else K.exquo(series.coefficient(v), weight)
        counts.append(str(K.to_sympy(value)))
        weight = weight * face_weight
    logger.info(f"count table g={genus} perimeters={list(perimeters)}: {counts}")
    return CountTable(genus=genus, perimeters=list(perimeters), face_degree=face_degree, counts=counts)
