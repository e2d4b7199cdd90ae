"""Roots of univariate polynomials that lie in the coefficient field."""

import logging
from dataclasses import dataclass, field
from typing import Any, List, Sequence, Tuple

import sympy
from sympy.polys.polyerrors import CoercionFailed

from .fields import CoeffField

logger = logging.getLogger(__name__)


@dataclass
class RootReport:
    """Roots found in the field plus the degree left unfactored."""

    roots: List[Tuple[Any, int]] = field(default_factory=list)
    remainder_degree: int = 0


def poly_roots_in_field(coeffs: Sequence[Any], cfield: CoeffField) -> RootReport:
    """
    Roots of a polynomial expressible in its coefficient field.

    Linear factors are extracted from a factorization over Q of the
    denominator-cleared polynomial in (z, parameter); every other factor
    contributes to the remainder degree.

    Args:
        coeffs: coefficients, lowest degree first (field elements)
        cfield: the coefficient field

    Returns:
        RootReport with (root, multiplicity) pairs
    """
    z = sympy.Dummy("z")
    expr = sympy.Add(*[cfield.to_sympy(c) * z ** i for i, c in enumerate(coeffs)])
    num, _ = sympy.fraction(sympy.together(expr))
    num = sympy.expand(num)
    if num == 0:
        raise ValueError("poly_roots_in_field needs a nonzero polynomial")

    gens = [z] + cfield.symbols
    _, factors = sympy.factor_list(num, *gens)
    report = RootReport()
    for factor, mult in factors:
        degree = sympy.degree(factor, z)
        if degree == 0:
            continue
        if degree == 1:
            c1 = factor.coeff(z, 1)
            c0 = factor.coeff(z, 0)
            try:
                root = cfield.domain.from_sympy(sympy.cancel(-c0 / c1))
            except (CoercionFailed, ValueError):
                report.remainder_degree += mult
                continue
            report.roots.append((root, int(mult)))
        else:
            report.remainder_degree += int(degree) * int(mult)

    report.roots.sort(key=lambda rm: sympy.default_sort_key(cfield.to_sympy(rm[0])))
    logger.debug(f"roots of {num}: {[cfield.to_str(r) for r, _ in report.roots]}, "
                 f"remainder degree {report.remainder_degree}")
    return report
