"""
Exact coefficient fields.

Three instances are supported: the rationals Q, univariate rational functions
Q(u) in one formal parameter, and polynomials Q[p] in a formal symbol (p
stands for pi squared). Values are sympy domain elements; ``FieldElem`` wraps
one together with its field for the public arithmetic surface.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

import sympy
from sympy import QQ, Rational, Symbol
from sympy.polys.polyerrors import CoercionFailed, ExactQuotientFailed

from .errors import DivisionByZero, FieldMismatch

logger = logging.getLogger(__name__)

FIELD_TAGS = ("Q", "Qu", "Qp")
_DEFAULT_PARAM = {"Qu": "u", "Qp": "p"}


class CoeffField:
    """
    One of the three exact coefficient fields.

    Args:
        tag: "Q", "Qu" or "Qp"
        param: name of the formal parameter (ignored for "Q")
    """

    def __init__(self, tag: str = "Q", param: Optional[str] = None):
        if tag not in FIELD_TAGS:
            raise FieldMismatch(f"Unknown field tag {tag!r}", {"tag": tag})
        self.tag = tag
        self.param = None if tag == "Q" else (param or _DEFAULT_PARAM[tag])
        self.symbol = Symbol(self.param) if self.param else None

        if tag == "Q":
            self.domain = QQ
        elif tag == "Qu":
            self.domain = QQ.frac_field(self.symbol)
        else:
            self.domain = QQ.poly_ring(self.symbol)

    # identity

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoeffField) and (self.tag, self.param) == (other.tag, other.param)

    def __hash__(self) -> int:
        return hash((self.tag, self.param))

    def __repr__(self) -> str:
        if self.tag == "Q":
            return "CoeffField('Q')"
        return f"CoeffField({self.tag!r}, {self.param!r})"

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    @property
    def symbols(self) -> List[Symbol]:
        return [self.symbol] if self.symbol is not None else []

    def gen(self):
        """The formal parameter as a field element."""
        if self.symbol is None:
            raise FieldMismatch("Q has no formal parameter")
        return self.domain.from_sympy(self.symbol)

    # conversion

    def convert(self, value: Any):
        """Convert ints, Fractions, "p/q" strings, sympy expressions or dicts."""
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldMismatch(f"{value.field!r} element used in {self!r}")
            return value.value
        if isinstance(value, bool):
            raise FieldMismatch("booleans are not field elements")
        if isinstance(value, int):
            return self.domain.convert(value)
        if self.domain.of_type(value):
            return value
        if isinstance(value, Fraction):
            return self.domain.from_sympy(Rational(value.numerator, value.denominator))
        if isinstance(value, dict):
            return self._from_dict(value)
        if isinstance(value, (list, tuple)):
            if self.symbol is None:
                raise FieldMismatch("Q elements are serialized as 'p/q' strings")
            return self.convert(sum((Rational(str(c)) * self.symbol ** i for i, c in enumerate(value)),
                                    sympy.Integer(0)))
        if isinstance(value, str):
            value = sympy.sympify(value, locals={self.param: self.symbol} if self.param else None)
        try:
            return self.domain.from_sympy(sympy.sympify(value))
        except (CoercionFailed, TypeError, sympy.SympifyError) as e:
            raise FieldMismatch(f"{value!r} is not an element of {self!r}", {"value": str(value)}) from e

    def _from_dict(self, doc: Dict[str, Any]):
        if self.symbol is None:
            raise FieldMismatch("Q elements are serialized as 'p/q' strings")
        u = self.symbol
        num = sum((Rational(str(c)) * u ** i for i, c in enumerate(doc.get("num", []))), sympy.Integer(0))
        den = sum((Rational(str(c)) * u ** i for i, c in enumerate(doc.get("den", ["1"]))), sympy.Integer(0))
        return self.div(self.convert(num), self.convert(den))

    def to_sympy(self, value) -> sympy.Expr:
        return self.domain.to_sympy(value)

    def to_str(self, value) -> str:
        """Human readable form, e.g. '5/6' or '-1/(8748*E**2)'."""
        return str(self.to_sympy(value))

    def to_json(self, value) -> Union[str, Dict[str, List[str]], List[str]]:
        """Wire form: "p/q" for Q, {num, den} for Q(u), coefficient list for Q[p]."""
        if self.tag == "Q":
            return format_rational(value)
        if self.tag == "Qp":
            poly = sympy.Poly(self.to_sympy(value), self.symbol)
            return [format_rational(Rational(c)) for c in poly.all_coeffs()[::-1]]
        num, den = sympy.fraction(sympy.cancel(self.to_sympy(value)))
        den_poly = sympy.Poly(den, self.symbol)
        lc = den_poly.LC()
        den_c = [format_rational(Rational(c) / lc) for c in den_poly.all_coeffs()[::-1]]
        num_c = [format_rational(Rational(c) / lc) for c in sympy.Poly(num, self.symbol).all_coeffs()[::-1]]
        return {"num": num_c, "den": den_c}

    # arithmetic on raw domain elements

    def div(self, a, b):
        if not b:
            raise DivisionByZero("division by zero", {"field": self.tag})
        try:
            return self.domain.exquo(a, b)
        except ExactQuotientFailed as e:
            raise FieldMismatch(f"quotient leaves {self!r}", {"field": self.tag}) from e

    def inverse(self, a):
        return self.div(self.one, a)

    def is_rational(self, value) -> bool:
        """True when the element is a plain rational constant."""
        return self.to_sympy(value).is_Rational


def format_rational(value: Any) -> str:
    """Serialize a rational as a reduced "p/q" string with q > 0."""
    r = Rational(str(value)) if not isinstance(value, Rational) else value
    return f"{r.p}/{r.q}"


def parse_rational(text: Any):
    """Parse "p/q", ints or Fractions into a QQ element."""
    return CoeffField("Q").convert(text)


@dataclass(frozen=True)
class FieldElem:
    """A field element tagged with its field; mixing fields is an error."""

    field: CoeffField
    value: Any

    @classmethod
    def of(cls, field: CoeffField, value: Any) -> "FieldElem":
        return cls(field, field.convert(value))

    def _check(self, other: "FieldElem") -> None:
        if not isinstance(other, FieldElem) or other.field != self.field:
            raise FieldMismatch(
                f"cannot combine {self.field!r} with {getattr(other, 'field', type(other).__name__)!r}"
            )

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.field, self.value + other.value)

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.field, self.value - other.value)

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.field, self.value * other.value)

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.field, self.field.div(self.value, other.value))

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.field, -self.value)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.field, str(self.value)))

    def __str__(self) -> str:
        return self.field.to_str(self.value)


def field_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """
    Exact arithmetic on two tagged elements.

    Args:
        a: left operand
        b: right operand
        op: "add", "sub", "mul" or "div"

    Returns:
        The canonical result in the common field
    """
    ops = {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
    }
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op]()
