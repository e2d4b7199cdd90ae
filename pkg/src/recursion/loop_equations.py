"""
Loop equations of the one-cut matrix model as a check on engine output.

With W_n^(g) = omega_n^(g) / prod dx_i (and the Bergman kernel shifted by
1/(x_1 - x_2)^2 for (0, 2)), every (g, n) must satisfy

    sum_{h, J} W^(h)(x1, J) W^(g-h)(x1, L\\J) + W^(g-1)(x1, x1, L)
      + sum_j d/dx_j [(W^(g)(x1, L\\j) - W^(g)(L)) / (x1 - x_j)]
      = V'(x1) W^(g)(x1, L) - P^(g)(x1; L)

for a polynomial P^(g) in x1. The residual P is rebuilt exactly in a flat
rational function field over the curve parameters and z_1..z_n, then
peeled into powers of x1 = alpha + gamma (z1 + 1/z1).
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ

from exact_arith import UniRatFunc
from exact_arith.errors import ResidualNotPolynomial, TopoRecError
from forms import PoleForm, UnstableForm

from .engine import engine_for

logger = logging.getLogger(__name__)

X_SYMBOL = sympy.Symbol("x")


class FlatField:
    """
    Q(params, z_1..z_n) with the curve functions lifted into it.

    Args:
        curve: the curve whose parameters become generators
        variables: point symbols z_1..z_n
    """

    def __init__(self, curve, variables: Sequence[sympy.Symbol]):
        self.curve = curve
        params = list(curve.field.symbols)
        self.variables = tuple(variables)
        gens = params + [v for v in self.variables if v not in params]
        self.domain = QQ.frac_field(*gens) if gens else QQ
        self._xs = [curve.x]
        for _ in range(3):
            self._xs.append(self._xs[-1].derivative())
        self._x: Dict[Tuple[int, sympy.Expr], Any] = {}

    def lift(self, expr: Any):
        return self.domain.from_sympy(sympy.sympify(expr))

    def lift_coeff(self, c: Any):
        return self.lift(self.curve.field.to_sympy(c))

    def ratfunc_at(self, f: UniRatFunc, z: sympy.Expr):
        return self.lift(sympy.cancel(f.to_expr(z)))

    def x_derivative(self, k: int, z: sympy.Expr):
        """x^(k)(z), k = 0..3."""
        key = (k, z)
        if key not in self._x:
            self._x[key] = self.ratfunc_at(self._xs[k], z)
        return self._x[key]

    def gen(self, z: sympy.Symbol):
        return self.lift(z)


def _one_zero(flat: FlatField, z):
    if not flat.curve.is_rational:
        raise TopoRecError("loop equations need a rational y")
    return -flat.ratfunc_at(flat.curve.y, z)


def _bergman(flat: FlatField, z1, z2):
    K = flat.domain
    if z1 == z2:
        xp = flat.x_derivative(1, z1)
        xpp = flat.x_derivative(2, z1)
        xppp = flat.x_derivative(3, z1)
        four, six = K.convert(4), K.convert(6)
        return (xpp * xpp / (four * xp * xp) - xppp / (six * xp)) / (xp * xp)
    gap = flat.lift(z1) - flat.lift(z2)
    dx = flat.x_derivative(0, z1) - flat.x_derivative(0, z2)
    return K.one / (gap * gap * flat.x_derivative(1, z1) * flat.x_derivative(1, z2)) - K.one / (dx * dx)


def _stable(flat: FlatField, form: PoleForm, zs: Sequence[sympy.Expr]):
    K = flat.domain
    pts = [flat.lift_coeff(a) for a in flat.curve.branchpoints]
    inverse: Dict[Tuple[int, int], Any] = {}

    def factor(i: int, j: int):
        if (i, j) not in inverse:
            inverse[(i, j)] = K.one / (flat.lift(zs[i]) - pts[j])
        return inverse[(i, j)]

    total = K.zero
    for key, c in form.sorted_terms():
        term = flat.lift_coeff(c)
        for i, (j, k) in enumerate(key):
            term = term * factor(i, j) ** k
        total += term
    for z in zs:
        total = total / flat.x_derivative(1, z)
    return total


def wn_function(form: Union[PoleForm, UnstableForm], zs: Sequence[sympy.Expr], curve,
                flat: Optional[FlatField] = None):
    """
    W_n^(g)(x(z_1), .., x(z_n)) as an element of a flat field.

    Repeated entries of ``zs`` evaluate on the diagonal; the (0, 2)
    correlator takes its regularized diagonal value there.

    Args:
        form: a correlator (stable or unstable marker)
        zs: one symbol (or rational value) per slot
        curve: the curve the correlator belongs to
        flat: field to evaluate in, built from ``zs`` when omitted

    Returns:
        Element of ``flat.domain``
    """
    zs = [sympy.sympify(z) for z in zs]
    if flat is None:
        flat = FlatField(curve, tuple(sorted({s for z in zs for s in z.free_symbols}, key=str)))
    if len(zs) != form.n:
        raise ValueError(f"{len(zs)} points for an n={form.n} correlator")
    if isinstance(form, UnstableForm):
        if form.kind == "one-zero":
            return _one_zero(flat, zs[0])
        return _bergman(flat, zs[0], zs[1])
    return _stable(flat, form, zs)


@dataclass
class LoopResidual:
    """P_n^(g)(x1; z_2..z_n) as coefficients of x1^0, x1^1, ..."""

    g: int
    n: int
    coefficients: List[sympy.Expr]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def as_expr(self, x: sympy.Symbol = X_SYMBOL) -> sympy.Expr:
        return sum((c * x ** i for i, c in enumerate(self.coefficients)), sympy.Integer(0))

    def to_strings(self) -> List[str]:
        return [str(c) for c in self.coefficients]


def one_cut_parameters(curve) -> Tuple[Any, Any]:
    """(alpha, gamma) of x = alpha + gamma (z + 1/z)."""
    x = curve.x
    K = curve.domain
    num, den = x.num, x.den
    if den != [K.one, K.zero] or len(num) != 3 or num[0] != num[2] or not num[0]:
        raise TopoRecError(f"x = {x} is not alpha + gamma (z + 1/z)")
    return num[1], num[0]


def _peel(residual_expr: sympy.Expr, z1: sympy.Symbol, alpha: sympy.Expr, gamma: sympy.Expr) -> List[sympy.Expr]:
    num, den = sympy.fraction(sympy.cancel(residual_expr))
    den_poly = sympy.Poly(den, z1)
    if len(den_poly.terms()) != 1:
        raise ResidualNotPolynomial("residual has poles away from z1 = 0, infinity", {"denominator": str(den)})
    (shift,), den_c = den_poly.terms()[0]
    laurent: Dict[int, sympy.Expr] = {}
    for (e,), c in sympy.Poly(num, z1).terms():
        laurent[e - shift] = sympy.cancel(c / den_c)

    top = max((abs(e) for e in laurent), default=0)
    for e in range(1, top + 1):
        if sympy.cancel(laurent.get(e, 0) - laurent.get(-e, 0)) != 0:
            raise ResidualNotPolynomial(f"residual is not invariant under z1 -> 1/z1 at z1^{e}")

    # symmetric Laurent polynomial -> polynomial in w = z1 + 1/z1
    in_w: Dict[int, sympy.Expr] = {}
    for q in range(top, -1, -1):
        b = laurent.get(q, sympy.Integer(0))
        if b == 0:
            continue
        in_w[q] = b
        for i in range(q + 1):
            e = q - 2 * i
            laurent[e] = sympy.cancel(laurent.get(e, 0) - comb(q, i) * b)

    w = (X_SYMBOL - alpha) / gamma
    poly = sympy.Poly(sympy.expand(sum((b * w ** q for q, b in in_w.items()), sympy.Integer(0))), X_SYMBOL)
    coeffs = [sympy.cancel(c) for c in reversed(poly.all_coeffs())] if in_w else []
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def loop_equation_check(curve, v_prime: Union[UniRatFunc, Sequence[Any]], g: int, n: int,
                        config: Optional[Dict[str, Any]] = None) -> LoopResidual:
    """
    Verify the (g, n) loop equation on a one-cut curve and return P_n^(g).

    Args:
        curve: curve from the one-cut constructor, x = alpha + gamma (z + 1/z)
        v_prime: V'(x) as a polynomial UniRatFunc or coefficients lowest first
        g: genus
        n: number of points

    Returns:
        The residual polynomial in x1

    Raises:
        ResidualNotPolynomial: the remainder is not a polynomial of the allowed degree
    """
    if isinstance(v_prime, UniRatFunc):
        if not v_prime.is_polynomial:
            raise TopoRecError("V' must be a polynomial")
        vp = v_prime.numerator_low_first()
    else:
        vp = [curve.field.convert(c) for c in v_prime]
    alpha, gamma = one_cut_parameters(curve)

    zs = sympy.symbols(f"z1:{n + 1}")
    z1, L = zs[0], tuple(zs[1:])
    flat = FlatField(curve, tuple(zs))
    K = flat.domain
    engine = engine_for(curve, config)

    def W(h: int, points: Tuple[sympy.Symbol, ...]):
        return wn_function(engine.omega(h, len(points)), points, curve, flat)

    lhs = K.zero
    for h in range(g + 1):
        for size in range(len(L) + 1):
            for J in combinations(L, size):
                rest = tuple(p for p in L if p not in J)
                lhs += W(h, (z1,) + J) * W(g - h, (z1,) + rest)
    if g >= 1:
        lhs += W(g - 1, (z1, z1) + L)
    x1 = flat.x_derivative(0, z1)
    for zj in L:
        others = tuple(p for p in L if p != zj)
        quotient = (W(g, (z1,) + others) - W(g, L)) / (x1 - flat.x_derivative(0, zj))
        lhs += quotient.diff(flat.gen(zj)) / flat.x_derivative(1, zj)

    vx = K.zero
    for c in reversed(vp):
        vx = vx * x1 + flat.lift_coeff(c)
    residual = vx * W(g, (z1,) + L) - lhs

    F = curve.field
    coeffs = _peel(K.to_sympy(residual), z1, F.to_sympy(alpha), F.to_sympy(gamma))
    bound = len(vp) - 2 if (g, n) == (0, 1) else len(vp) - 3
    if len(coeffs) - 1 > bound:
        raise ResidualNotPolynomial(f"residual of degree {len(coeffs) - 1} exceeds {bound}",
                                    {"g": g, "n": n, "degree": len(coeffs) - 1})
    logger.info(f"loop equation ({g},{n}) holds: P has degree {len(coeffs) - 1}")
    return LoopResidual(g, n, coeffs)
