"""
Truncated Laurent series with tracked validity windows.

A series stores coefficients for exponents ``low .. low+len-1`` and a
``valid`` order: coefficients with exponent <= valid are trusted, anything
above is unknown. Reading an unknown coefficient raises ``WindowExceeded``.
Exact series (polynomials, monomials) carry ``valid == EXACT``.
"""

import logging
import sys
from typing import Callable, List, Optional, Sequence

import sympy

from .errors import DivisionByZero, OddParity, ResiduePresent, WindowExceeded

logger = logging.getLogger(__name__)

EXACT = sys.maxsize


def _valid(v: int) -> int:
    return EXACT if v >= EXACT // 2 else v


class LaurentSeries:
    """
    Immutable truncated Laurent series in a local variable s.

    Args:
        domain: sympy domain of the coefficients
        low: exponent of coeffs[0]
        coeffs: coefficient list
        valid: highest trusted exponent (EXACT for finite expansions)
    """

    __slots__ = ("domain", "low", "coeffs", "valid")

    def __init__(self, domain, low: int, coeffs: Sequence, valid: int = EXACT):
        valid = _valid(valid)
        coeffs = list(coeffs)
        if valid != EXACT:
            del coeffs[max(valid - low + 1, 0):]
        start = 0
        while start < len(coeffs) and not coeffs[start]:
            start += 1
        end = len(coeffs)
        while end > start and not coeffs[end - 1]:
            end -= 1
        coeffs = coeffs[start:end]
        if coeffs:
            low += start
        else:
            low = 0 if valid == EXACT else valid + 1
        self.domain = domain
        self.low = low
        self.coeffs = coeffs
        self.valid = valid

    # constructors

    @classmethod
    def zero(cls, domain, valid: int = EXACT) -> "LaurentSeries":
        return cls(domain, 0, [], valid)

    @classmethod
    def monomial(cls, domain, exponent: int, coeff=None) -> "LaurentSeries":
        return cls(domain, exponent, [domain.one if coeff is None else coeff])

    @classmethod
    def constant(cls, domain, coeff) -> "LaurentSeries":
        return cls(domain, 0, [coeff])

    @classmethod
    def from_dict(cls, domain, terms: dict, valid: int = EXACT) -> "LaurentSeries":
        if not terms:
            return cls.zero(domain, valid)
        low, high = min(terms), max(terms)
        return cls(domain, low, [terms.get(e, domain.zero) for e in range(low, high + 1)], valid)

    # inspection

    @property
    def is_exact(self) -> bool:
        return self.valid == EXACT

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def top(self) -> int:
        """Highest stored exponent."""
        return self.low + len(self.coeffs) - 1

    def coefficient(self, exponent: int):
        if exponent > self.valid:
            raise WindowExceeded(
                f"coefficient s^{exponent} requested beyond validity s^{self.valid}",
                {"exponent": exponent, "valid": self.valid},
            )
        idx = exponent - self.low
        if 0 <= idx < len(self.coeffs):
            return self.coeffs[idx]
        return self.domain.zero

    def leading(self):
        if not self.coeffs:
            raise DivisionByZero("zero series has no leading coefficient")
        return self.coeffs[0]

    def terms(self):
        """(exponent, coefficient) pairs with nonzero coefficient."""
        return [(self.low + i, c) for i, c in enumerate(self.coeffs) if c]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.low, self.coeffs, self.valid) == (other.low, other.coeffs, other.valid)

    def __repr__(self) -> str:
        body = " + ".join(f"({self.domain.to_sympy(c)})*s^{e}" for e, c in self.terms()) or "0"
        tail = "" if self.is_exact else f" + O(s^{self.valid + 1})"
        return f"LaurentSeries({body}{tail})"

    # window handling

    def truncate(self, order: int) -> "LaurentSeries":
        return LaurentSeries(self.domain, self.low, self.coeffs, min(self.valid, order))

    def as_exact(self) -> "LaurentSeries":
        """Treat the stored coefficients as a finite expansion."""
        return LaurentSeries(self.domain, self.low, self.coeffs, EXACT)

    # arithmetic

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        valid = min(self.valid, other.valid)
        if self.is_zero and other.is_zero:
            return LaurentSeries.zero(self.domain, valid)
        if self.is_zero:
            return LaurentSeries(self.domain, other.low, other.coeffs, valid)
        if other.is_zero:
            return LaurentSeries(self.domain, self.low, self.coeffs, valid)
        low = min(self.low, other.low)
        high = max(self.top, other.top)
        if valid != EXACT:
            high = min(high, valid)
        out = [self.domain.zero] * max(high - low + 1, 0)
        for i, c in enumerate(self.coeffs):
            e = self.low + i
            if e <= high:
                out[e - low] += c
        for i, c in enumerate(other.coeffs):
            e = other.low + i
            if e <= high:
                out[e - low] += c
        return LaurentSeries(self.domain, low, out, valid)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.domain, self.low, [-c for c in self.coeffs], self.valid)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def scale(self, factor) -> "LaurentSeries":
        if not factor:
            return LaurentSeries.zero(self.domain, self.valid)
        return LaurentSeries(self.domain, self.low, [c * factor for c in self.coeffs], self.valid)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by s^k."""
        return LaurentSeries(self.domain, self.low + k, self.coeffs, _valid(self.valid + k))

    def mul(self, other: "LaurentSeries", order: Optional[int] = None) -> "LaurentSeries":
        if (self.is_zero and self.is_exact) or (other.is_zero and other.is_exact):
            return LaurentSeries.zero(self.domain)
        low = self.low + other.low
        valid = min(_valid(self.valid + other.low), _valid(other.valid + self.low))
        if order is not None:
            valid = min(valid, order)
        high = self.top + other.top
        if valid != EXACT:
            high = min(high, valid)
        if self.is_zero or other.is_zero or high < low:
            return LaurentSeries.zero(self.domain, valid)
        n = high - low + 1
        out = [self.domain.zero] * n
        b = other.coeffs
        for i, ca in enumerate(self.coeffs):
            if i >= n:
                break
            if not ca:
                continue
            for j in range(min(len(b), n - i)):
                cb = b[j]
                if cb:
                    out[i + j] += ca * cb
        return LaurentSeries(self.domain, low, out, valid)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self.mul(other)

    def inverse(self, order: Optional[int] = None) -> "LaurentSeries":
        """Multiplicative inverse up to exponent ``order`` (required when exact)."""
        if self.is_zero:
            raise DivisionByZero("inverse of a zero series")
        K = self.domain
        low = -self.low
        valid = EXACT if self.is_exact else _valid(self.valid - 2 * self.low)
        if order is not None:
            valid = min(valid, order)
        if valid == EXACT:
            if len(self.coeffs) == 1:
                return LaurentSeries(K, low, [K.exquo(K.one, self.coeffs[0])])
            raise ValueError("an order is required to invert a non-monomial exact series")
        n = valid - low + 1
        if n <= 0:
            return LaurentSeries.zero(K, valid)
        a = self.coeffs
        inv0 = K.exquo(K.one, a[0])
        out = [inv0]
        for k in range(1, n):
            acc = K.zero
            for i in range(1, min(k, len(a) - 1) + 1):
                if a[i]:
                    acc += a[i] * out[k - i]
            out.append(-acc * inv0)
        return LaurentSeries(K, low, out, valid)

    def div(self, other: "LaurentSeries", order: Optional[int] = None) -> "LaurentSeries":
        """Quotient self/other up to exponent ``order``."""
        if other.is_zero:
            raise DivisionByZero("division by a zero series")
        inv_order = None
        if order is not None:
            inv_order = order - self.low
        elif other.is_exact and len(other.coeffs) > 1:
            if self.is_exact:
                raise ValueError("an order is required to divide exact series")
            inv_order = self.valid - self.low - other.low
        return self.mul(other.inverse(inv_order), order)

    def power(self, k: int, order: Optional[int] = None) -> "LaurentSeries":
        if k < 0:
            base_order = None if order is None else order + (-k - 1) * self.low
            return self.inverse(base_order).power(-k, order)
        result = LaurentSeries.constant(self.domain, self.domain.one)
        if k == 0:
            return result
        # each further factor with a pole lowers the trusted order by -low
        inner = None if order is None else order + (k - 1) * max(0, -self.low)
        for _ in range(k):
            result = result.mul(self, inner)
        return result if order is None else result.truncate(order)

    def derivative(self) -> "LaurentSeries":
        K = self.domain
        out = {}
        for e, c in self.terms():
            if e:
                out[e - 1] = c * K.convert(e)
        return LaurentSeries.from_dict(K, out, _valid(self.valid - 1))

    def integrate(self) -> "LaurentSeries":
        """Termwise antiderivative with zero constant term."""
        K = self.domain
        out = {}
        for e, c in self.terms():
            if e == -1:
                raise ResiduePresent("cannot integrate an s^-1 term", {"coefficient": str(K.to_sympy(c))})
            out[e + 1] = K.exquo(c, K.convert(e + 1))
        return LaurentSeries.from_dict(K, out, _valid(self.valid + 1))

    def compose(self, inner: "LaurentSeries", order: Optional[int] = None) -> "LaurentSeries":
        """self(inner(s)) for a power series self and inner with positive valuation."""
        K = self.domain
        if self.low < 0:
            raise ValueError("composition needs a power series on the outside")
        if not inner.is_zero and inner.low < 1:
            raise ValueError("inner series must vanish at s = 0")
        if self.is_zero:
            return LaurentSeries.zero(K, self.valid)
        result = LaurentSeries.constant(K, self.coefficient(self.top))
        for e in range(self.top - 1, -1, -1):
            result = result.mul(inner, order) + LaurentSeries.constant(K, self.coefficient(e))
        if not self.is_exact:
            inner_low = inner.low if not inner.is_zero else inner.valid + 1
            result = result.truncate((self.valid + 1) * inner_low - 1)
        return result

    def map_coeffs(self, fn: Callable) -> "LaurentSeries":
        return LaurentSeries(self.domain, self.low, [fn(c) for c in self.coeffs], self.valid)


def series_reversion(domain, relation: Sequence, order: int) -> LaurentSeries:
    """
    Invert t = c1*G + c2*G^2 + ... as a power series G(t).

    Args:
        domain: coefficient domain
        relation: [c1, c2, ...]; c1 must be nonzero
        order: highest exponent of t to produce

    Returns:
        G(t) valid through t^order
    """
    K = domain
    c1 = relation[0]
    if not c1:
        raise DivisionByZero("reversion needs a nonzero linear coefficient")
    inv_c1 = K.exquo(K.one, c1)
    t = LaurentSeries.monomial(K, 1)
    g = t.scale(inv_c1).truncate(order)
    # each pass fixes one more coefficient
    for _ in range(order):
        rest = LaurentSeries.zero(K)
        power = g
        for ck in relation[1:]:
            power = power.mul(g, order)
            if ck:
                rest = rest + power.scale(ck)
        g = (t - rest).scale(inv_c1).truncate(order).as_exact()
    return g.truncate(order)


def series_substitute_even(v, field, gamma_sq: LaurentSeries, order: int) -> LaurentSeries:
    """
    Substitute a series for gamma^2 into an element of Q(gamma) even in gamma.

    Args:
        v: element of ``field`` (a Q(u) field whose parameter plays gamma)
        field: the CoeffField of v
        gamma_sq: power series in t for gamma^2
        order: highest exponent of t to produce

    Returns:
        The power series v(gamma(t)) valid through t^order
    """
    g = field.symbol
    expr = sympy.cancel(field.to_sympy(v))
    num, den = sympy.fraction(expr)
    if sympy.expand(num.subs(g, -g) * den - num * den.subs(g, -g)) != 0:
        raise OddParity("element is not even in the parameter", {"value": str(expr)})
    num_p = sympy.Poly(num, g)
    den_p = sympy.Poly(den, g)
    if num_p.degree() >= 0 and num_p.as_dict() and all(m[0] % 2 for m in num_p.as_dict()):
        num_p = sympy.Poly(sympy.expand(num / g), g)
        den_p = sympy.Poly(sympy.expand(den / g), g)
    K = gamma_sq.domain

    def in_gamma_sq(poly) -> LaurentSeries:
        coeffs = {}
        for (e,), c in poly.as_dict().items():
            if e % 2:
                raise OddParity("odd power survived parity reduction")
            coeffs[e // 2] = K.from_sympy(c)
        result = LaurentSeries.zero(K)
        power = LaurentSeries.constant(K, K.one)
        for k in range(max(coeffs) + 1 if coeffs else 0):
            if k:
                power = power.mul(gamma_sq, order + den_p.degree() + 1)
            if coeffs.get(k):
                result = result + power.scale(coeffs[k])
        return result

    n_series = in_gamma_sq(num_p)
    d_series = in_gamma_sq(den_p)
    logger.debug(f"substituting gamma^2 series into {expr}")
    return n_series.div(d_series, order)


def coefficients_list(series: LaurentSeries, start: int, stop: int) -> List:
    """Coefficients for exponents start..stop inclusive."""
    return [series.coefficient(e) for e in range(start, stop + 1)]
