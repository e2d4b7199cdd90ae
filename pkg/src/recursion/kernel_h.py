"""
The formal kernel H(z1, z2) to first subleading order in 1/N:

    H = exp(-N int_{z2}^{z1} y dx) / E(z1, z2)
        * [1 + N^-1 (int omega_1^(1) + 1/6 int int int omega_3^(0)) + O(N^-2)]

with the prime form E(z1, z2) = (z1 - z2) / sqrt(dz1 dz2).
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import sympy

from forms import integrate_form

from .engine import engine_for

logger = logging.getLogger(__name__)

Z1, Z2 = sympy.symbols("z1 z2")
N = sympy.Symbol("N")
PRIME_FORM_HALF_DIFFERENTIALS = "sqrt(dz1*dz2)"


@dataclass
class KernelExpansion:
    """Truncated expansion of H(z1, z2); corrections[k-1] multiplies N^-k."""

    order: int
    prefactor: sympy.Expr
    prime_form_denominator: sympy.Expr
    corrections: List[sympy.Expr] = field(default_factory=list)

    def as_expr(self) -> sympy.Expr:
        """exp(prefactor) / (z1 - z2) * (1 + sum N^-k correction_k), half-differentials stripped."""
        series = sympy.Integer(1) + sum((c * N ** -(k + 1) for k, c in enumerate(self.corrections)),
                                        sympy.Integer(0))
        return sympy.exp(self.prefactor) / self.prime_form_denominator * series

    def to_dict(self) -> Dict[str, Any]:
        return {
            "order": self.order,
            "prefactor": str(self.prefactor),
            "prime_form": f"({self.prime_form_denominator})/{PRIME_FORM_HALF_DIFFERENTIALS}",
            "corrections": [str(c) for c in self.corrections],
        }


def _action(curve) -> sympy.Expr:
    """-N int_{z2}^{z1} y dx; left unevaluated for log-type y."""
    z = sympy.Symbol("z")
    dx = curve.x.derivative().to_expr(z)
    if curve.is_rational:
        primitive = sympy.integrate(sympy.cancel(curve.y.to_expr(z) * dx), z)
        return sympy.expand(-N * (primitive.subs(z, Z1) - primitive.subs(z, Z2)))
    return -N * sympy.Integral(sympy.Symbol("y") * dx, (z, Z2, Z1))


def kernel_h_expansion(curve, order: int = 1, config: Optional[Dict[str, Any]] = None) -> KernelExpansion:
    """
    Expansion record of the kernel H.

    Args:
        curve: validated curve
        order: 0 (leading term only) or 1

    Returns:
        KernelExpansion with exact rational corrections in z1, z2
    """
    if order not in (0, 1):
        raise ValueError(f"kernel expansion is available to order 0 or 1, got {order}")
    corrections: List[sympy.Expr] = []
    if order == 1:
        engine = engine_for(curve, config)
        bps = curve.branchpoints
        one_loop = integrate_form(engine.omega(1, 1), bps, Z2, Z1)
        three_point = integrate_form(engine.omega(0, 3), bps, Z2, Z1)
        corrections.append(sympy.factor(sympy.cancel(one_loop + three_point / 6)))
        logger.info(f"kernel correction at N^-1: {corrections[0]}")
    return KernelExpansion(order, _action(curve), Z1 - Z2, corrections)
