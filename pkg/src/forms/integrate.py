"""Closed-form integration of correlators between two points."""

import logging
from typing import Any, Dict, Hashable, Optional, Sequence

import sympy

from exact_arith.errors import ResiduePresent

from .poleform import PoleForm

logger = logging.getLogger(__name__)


def primitive_between(a: sympy.Expr, k: int, lower: sympy.Expr, upper: sympy.Expr) -> sympy.Expr:
    """Integral of dz/(z-a)^k from lower to upper, k >= 2."""
    if k < 2:
        raise ResiduePresent(f"pole of order {k} has a logarithmic primitive")
    return ((lower - a) ** (1 - k) - (upper - a) ** (1 - k)) / (k - 1)


def integrate_form(f: PoleForm, branchpoints: Sequence[Any], lower: sympy.Expr, upper: sympy.Expr,
                   slots: Optional[Sequence[Hashable]] = None,
                   variables: Optional[Dict[Hashable, sympy.Symbol]] = None) -> sympy.Expr:
    """
    Integrate chosen slots of a correlator from ``lower`` to ``upper``.

    Args:
        f: the correlator
        branchpoints: branchpoint locations (field elements)
        lower: lower endpoint (symbol or number)
        upper: upper endpoint
        slots: slots to integrate, all by default
        variables: symbols for the slots left as densities

    Returns:
        A sympy expression, rational in the endpoints and remaining variables
    """
    F = f.field
    slots = list(f.slots) if slots is None else list(slots)
    rest = [lab for lab in f.slots if lab not in slots]
    variables = dict(variables or {})
    for lab in rest:
        variables.setdefault(lab, sympy.Symbol(f"z{lab}"))
    pts = [F.to_sympy(a) for a in branchpoints]
    cache: Dict[tuple, sympy.Expr] = {}

    total = sympy.Integer(0)
    for key, c in f.sorted_terms():
        term = F.to_sympy(c)
        for lab, (j, k) in zip(f.slots, key):
            if lab in slots:
                if (j, k) not in cache:
                    cache[(j, k)] = primitive_between(pts[j], k, lower, upper)
                term = term * cache[(j, k)]
            else:
                term = term / (variables[lab] - pts[j]) ** k
        total += term
    logger.debug(f"integrated {len(slots)} slot(s) of {f!r}")
    return total
