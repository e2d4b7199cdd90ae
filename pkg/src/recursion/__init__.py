"""Residue recursion, symplectic invariants, loop equations and the kernel expansion"""

from .calculus import Z, ZBAR, LocalCalculus
from .engine import (
    Correlator,
    Engine,
    compute_fg,
    compute_omega,
    dilaton_reduce,
    engine_for,
    f1_log_argument,
    tau_b_derivative,
)
from .kernel_h import KernelExpansion, kernel_h_expansion
from .loop_equations import FlatField, LoopResidual, loop_equation_check, one_cut_parameters, wn_function

__all__ = [
    "Correlator",
    "Engine",
    "FlatField",
    "KernelExpansion",
    "LocalCalculus",
    "LoopResidual",
    "Z",
    "ZBAR",
    "compute_fg",
    "compute_omega",
    "dilaton_reduce",
    "engine_for",
    "f1_log_argument",
    "kernel_h_expansion",
    "loop_equation_check",
    "one_cut_parameters",
    "tau_b_derivative",
    "wn_function",
]
