"""Correlator storage, local expansion, integration and count extraction"""

from .counts import CountTable, count_table, residue_at_infinity_with_weight, x_at_infinity
from .dictionary import (
    VolumePolynomial,
    intersection_numbers,
    kappa_one,
    kappa_times,
    laplace_volume_dictionary,
)
from .expansion import FormSeries, PoleFactorCache, expand_slots, poleform_local_expand
from .integrate import integrate_form, primitive_between
from .poleform import (
    PoleForm,
    PoleFormDoc,
    UnstableForm,
    assert_symmetric,
    forms_sum,
    poleform_from_ratfunc,
    poleform_to_ratfunc,
)

__all__ = [
    "CountTable",
    "FormSeries",
    "PoleFactorCache",
    "PoleForm",
    "PoleFormDoc",
    "UnstableForm",
    "VolumePolynomial",
    "assert_symmetric",
    "count_table",
    "expand_slots",
    "forms_sum",
    "integrate_form",
    "intersection_numbers",
    "kappa_one",
    "kappa_times",
    "laplace_volume_dictionary",
    "poleform_from_ratfunc",
    "poleform_local_expand",
    "poleform_to_ratfunc",
    "primitive_between",
    "residue_at_infinity_with_weight",
    "x_at_infinity",
]
