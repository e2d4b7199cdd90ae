"""
Univariate rational functions over an exact coefficient field.

Numerators and denominators are dense coefficient lists, highest degree
first, manipulated with sympy's dense ``dup_*`` routines.
"""

import logging
from typing import Any, List, Optional, Sequence

import sympy
from sympy.polys.densearith import dup_add, dup_mul, dup_mul_ground, dup_neg, dup_sub
from sympy.polys.densebasic import dup_degree, dup_strip
from sympy.polys.densetools import dup_diff, dup_eval, dup_shift
from sympy.polys.euclidtools import dup_cancel
from sympy.polys.polyerrors import ExactQuotientFailed

from .errors import DivisionByZero, PoleAtPoint
from .fields import CoeffField
from .series import LaurentSeries

logger = logging.getLogger(__name__)

VARIABLE = sympy.Symbol("z")


class UniRatFunc:
    """
    Reduced ratio num/den of dense polynomials in z with a monic denominator.

    Args:
        field: coefficient field
        num: numerator coefficients, highest degree first
        den: denominator coefficients, highest degree first (default 1)
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, field: CoeffField, num: Sequence, den: Optional[Sequence] = None):
        K = field.domain
        num = dup_strip(list(num))
        den = dup_strip(list(den)) if den is not None else [K.one]
        if not den:
            raise DivisionByZero("rational function with zero denominator")
        if not num:
            den = [K.one]
        else:
            num, den = dup_cancel(num, den, K)
        lc = den[0]
        if lc != K.one:
            try:
                num = [K.exquo(c, lc) for c in num]
                den = [K.exquo(c, lc) for c in den]
            except ExactQuotientFailed:
                pass
        self.field = field
        self.num = num
        self.den = den

    # constructors

    @classmethod
    def from_coeffs(cls, field: CoeffField, num_low_first: Sequence[Any],
                    den_low_first: Optional[Sequence[Any]] = None) -> "UniRatFunc":
        """Build from coefficient arrays given lowest degree first."""
        num = [field.convert(c) for c in reversed(list(num_low_first))]
        den = None
        if den_low_first is not None:
            den = [field.convert(c) for c in reversed(list(den_low_first))]
        return cls(field, num, den)

    @classmethod
    def from_expr(cls, field: CoeffField, expr: Any, var: sympy.Symbol = VARIABLE) -> "UniRatFunc":
        """Build from a sympy expression (or string) rational in ``var``."""
        if isinstance(expr, str):
            names = {var.name: var}
            names.update({s.name: s for s in field.symbols})
            expr = sympy.sympify(expr, locals=names)
        num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
        K = field.domain
        num_c = [K.from_sympy(c) for c in sympy.Poly(num, var).all_coeffs()]
        den_c = [K.from_sympy(c) for c in sympy.Poly(den, var).all_coeffs()]
        return cls(field, num_c, den_c)

    @classmethod
    def constant(cls, field: CoeffField, value) -> "UniRatFunc":
        return cls(field, [value])

    @classmethod
    def identity(cls, field: CoeffField) -> "UniRatFunc":
        return cls(field, [field.one, field.zero])

    # conversion

    def to_expr(self, var: sympy.Symbol = VARIABLE) -> sympy.Expr:
        K = self.field.domain
        num = sum((K.to_sympy(c) * var ** i for i, c in enumerate(reversed(self.num))), sympy.Integer(0))
        den = sum((K.to_sympy(c) * var ** i for i, c in enumerate(reversed(self.den))), sympy.Integer(0))
        return num / den

    def to_json(self) -> dict:
        return {
            "num": [self.field.to_json(c) for c in reversed(self.num)] or [self.field.to_json(self.field.zero)],
            "den": [self.field.to_json(c) for c in reversed(self.den)],
        }

    def __str__(self) -> str:
        return str(self.to_expr())

    def __repr__(self) -> str:
        return f"UniRatFunc({self.to_expr()})"

    # predicates

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_polynomial(self) -> bool:
        return dup_degree(self.den) == 0

    def degrees(self):
        return dup_degree(self.num), dup_degree(self.den)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniRatFunc):
            return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash(str(self.to_expr()))

    # arithmetic

    def _lift(self, other: Any) -> "UniRatFunc":
        if isinstance(other, UniRatFunc):
            return other
        return UniRatFunc.constant(self.field, self.field.convert(other))

    def __add__(self, other: Any) -> "UniRatFunc":
        o = self._lift(other)
        K = self.field.domain
        num = dup_add(dup_mul(self.num, o.den, K), dup_mul(o.num, self.den, K), K)
        return UniRatFunc(self.field, num, dup_mul(self.den, o.den, K))

    __radd__ = __add__

    def __neg__(self) -> "UniRatFunc":
        return UniRatFunc(self.field, dup_neg(self.num, self.field.domain), self.den)

    def __sub__(self, other: Any) -> "UniRatFunc":
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> "UniRatFunc":
        return self._lift(other) - self

    def __mul__(self, other: Any) -> "UniRatFunc":
        o = self._lift(other)
        K = self.field.domain
        return UniRatFunc(self.field, dup_mul(self.num, o.num, K), dup_mul(self.den, o.den, K))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "UniRatFunc":
        o = self._lift(other)
        if o.is_zero:
            raise DivisionByZero("division by the zero rational function")
        K = self.field.domain
        return UniRatFunc(self.field, dup_mul(self.num, o.den, K), dup_mul(self.den, o.num, K))

    def __rtruediv__(self, other: Any) -> "UniRatFunc":
        return self._lift(other) / self

    def __pow__(self, k: int) -> "UniRatFunc":
        if k < 0:
            return UniRatFunc.constant(self.field, self.field.one) / (self ** (-k))
        result = UniRatFunc.constant(self.field, self.field.one)
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c) -> "UniRatFunc":
        return UniRatFunc(self.field, dup_mul_ground(self.num, c, self.field.domain), self.den)

    def derivative(self) -> "UniRatFunc":
        K = self.field.domain
        num = dup_sub(dup_mul(dup_diff(self.num, 1, K), self.den, K),
                      dup_mul(self.num, dup_diff(self.den, 1, K), K), K)
        return UniRatFunc(self.field, num, dup_mul(self.den, self.den, K))

    def compose(self, inner: "UniRatFunc") -> "UniRatFunc":
        """self(inner(z))."""
        def horner(coeffs: List) -> UniRatFunc:
            acc = UniRatFunc.constant(self.field, self.field.zero)
            for c in coeffs:
                acc = acc * inner + UniRatFunc.constant(self.field, c)
            return acc

        return horner(self.num) / horner(self.den)

    def reciprocal_variable(self) -> "UniRatFunc":
        """f(1/w) as a rational function of w."""
        if self.is_zero:
            return self
        K = self.field.domain
        dn, dd = dup_degree(self.num), dup_degree(self.den)
        num = list(reversed(self.num))
        den = list(reversed(self.den))
        if dd >= dn:
            num = num + [K.zero] * (dd - dn)
        else:
            den = den + [K.zero] * (dn - dd)
        return UniRatFunc(self.field, num, den)

    def evaluate(self, z0) -> Any:
        K = self.field.domain
        den = dup_eval(self.den, z0, K)
        if not den:
            raise PoleAtPoint(f"{self} has a pole at z = {K.to_sympy(z0)}")
        return self.field.div(dup_eval(self.num, z0, K), den)

    def pole_order_at(self, z0) -> int:
        """Order of the pole at z0 (0 when regular)."""
        K = self.field.domain
        return _zero_order(dup_shift(self.den, z0, K)) - _zero_order(dup_shift(self.num, z0, K))

    def numerator_low_first(self) -> List:
        return list(reversed(self.num))


def _zero_order(coeffs: List) -> int:
    """Multiplicity of the root 0 of a dense polynomial (highest first)."""
    k = 0
    for c in reversed(coeffs):
        if c:
            return k
        k += 1
    return k


def _series_of_dense(K, coeffs: List, low: int = 0) -> LaurentSeries:
    return LaurentSeries(K, low, list(reversed(coeffs)))


def ratfunc_eval(f: UniRatFunc, z0) -> Any:
    """Exact value f(z0); raises PoleAtPoint when the denominator vanishes."""
    return f.evaluate(z0)


def laurent_expand(f: UniRatFunc, center, order: int) -> LaurentSeries:
    """
    Laurent expansion of f at ``center`` in s = z - center.

    Args:
        f: rational function
        center: expansion point (field element)
        order: highest exponent to produce

    Returns:
        Series valid through s^order
    """
    K = f.field.domain
    num = _series_of_dense(K, dup_shift(f.num, center, K))
    den = _series_of_dense(K, dup_shift(f.den, center, K))
    return num.div(den, order)


def laurent_expand_at_infinity(f: UniRatFunc, order: int) -> LaurentSeries:
    """Laurent expansion of f(1/w) at w = 0, valid through w^order."""
    K = f.field.domain
    shift = dup_degree(f.den) - dup_degree(f.num)
    num = LaurentSeries(K, shift, list(f.num))
    den = LaurentSeries(K, 0, list(f.den))
    return num.div(den, order)


def ratfunc_compose_series(f: UniRatFunc, center, inner: LaurentSeries, order: int) -> LaurentSeries:
    """
    Evaluate f(center + inner(s)) as a series, for inner with positive valuation.

    Raises PoleAtPoint when f has a pole at ``center``.
    """
    K = f.field.domain

    def horner(coeffs: List) -> LaurentSeries:
        acc = LaurentSeries.zero(K)
        for c in coeffs:
            acc = acc.mul(inner, order) + LaurentSeries.constant(K, c)
        return acc

    num = horner(dup_shift(f.num, center, K))
    den = horner(dup_shift(f.den, center, K))
    if not den.is_zero and den.low > 0:
        raise PoleAtPoint(f"{f} has a pole at z = {K.to_sympy(center)}")
    return num.div(den, order)
