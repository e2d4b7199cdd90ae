"""
Correlators in the partial-fraction basis at branchpoints.

A stable correlator is stored as

    sum over keys of coeff * prod_i dz_i / (z_i - a_{j_i})^{k_i}

where a key holds one (j_i, k_i) pair per slot. Slot labels are kept
explicitly so that partially contracted forms (diagram weights, residues)
can carry arbitrary variable names.
"""

import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

import sympy
from pydantic import BaseModel, Field

from exact_arith import CoeffField, UniRatFunc, laurent_expand
from exact_arith.errors import FieldMismatch, PoleAtPoint, ResiduePresent, TopoRecError

logger = logging.getLogger(__name__)

Pole = Tuple[int, int]
Key = Tuple[Pole, ...]


class PoleForm:
    """
    Exact stable n-form with poles only at branchpoints.

    Args:
        field: coefficient field
        g: genus
        terms: key -> coefficient, zero coefficients dropped
        slots: slot labels, default 0..n-1
    """

    __slots__ = ("field", "g", "slots", "terms")

    def __init__(self, field: CoeffField, g: int, terms: Dict[Key, Any],
                 slots: Optional[Sequence[Hashable]] = None):
        self.field = field
        self.g = g
        n = len(next(iter(terms))) if terms else (len(slots) if slots is not None else 0)
        self.slots: Tuple[Hashable, ...] = tuple(slots) if slots is not None else tuple(range(n))
        self.terms: Dict[Key, Any] = {k: v for k, v in terms.items() if v}
        for key in self.terms:
            if len(key) != len(self.slots):
                raise ValueError(f"key {key} does not match slots {self.slots}")

    @classmethod
    def zero(cls, field: CoeffField, g: int, slots: Sequence[Hashable]) -> "PoleForm":
        return cls(field, g, {}, slots)

    @property
    def n(self) -> int:
        return len(self.slots)

    @property
    def domain(self):
        return self.field.domain

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"PoleForm(g={self.g}, n={self.n}, {len(self.terms)} terms)"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PoleForm):
            return NotImplemented
        if self.field != other.field or set(self.slots) != set(other.slots):
            return False
        if self.slots != other.slots:
            other = other.reorder(self.slots)
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("PoleForm is not hashable")

    # linear structure

    def __add__(self, other: "PoleForm") -> "PoleForm":
        if other.slots != self.slots:
            other = other.reorder(self.slots)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, self.domain.zero) + c
        return PoleForm(self.field, self.g, out, self.slots)

    def __neg__(self) -> "PoleForm":
        return self.scale(-self.domain.one)

    def __sub__(self, other: "PoleForm") -> "PoleForm":
        return self + (-other)

    def scale(self, c: Any) -> "PoleForm":
        if not c:
            return PoleForm.zero(self.field, self.g, self.slots)
        return PoleForm(self.field, self.g, {k: v * c for k, v in self.terms.items()}, self.slots)

    def tensor(self, other: "PoleForm") -> "PoleForm":
        """Product of forms in disjoint variables."""
        if set(self.slots) & set(other.slots):
            raise ValueError("tensor product needs disjoint slot labels")
        out: Dict[Key, Any] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out[k1 + k2] = c1 * c2
        return PoleForm(self.field, self.g + other.g, out, self.slots + other.slots)

    # slot bookkeeping

    def reorder(self, slots: Sequence[Hashable]) -> "PoleForm":
        """Same form with slots listed in a new order."""
        slots = tuple(slots)
        if sorted(map(repr, slots)) != sorted(map(repr, self.slots)):
            raise ValueError(f"cannot reorder {self.slots} as {slots}")
        idx = [self.slots.index(s) for s in slots]
        terms = {tuple(key[i] for i in idx): c for key, c in self.terms.items()}
        return PoleForm(self.field, self.g, terms, slots)

    def relabel(self, slots: Sequence[Hashable]) -> "PoleForm":
        """Rename slots positionally."""
        if len(slots) != self.n:
            raise ValueError("relabel needs one label per slot")
        return PoleForm(self.field, self.g, self.terms, slots)

    def with_genus(self, g: int) -> "PoleForm":
        return PoleForm(self.field, g, self.terms, self.slots)

    # invariants

    def is_symmetric(self) -> bool:
        """Invariance of the term map under every slot permutation."""
        for key, c in self.terms.items():
            for i in range(self.n - 1):
                if key[i] == key[i + 1]:
                    continue
                swapped = key[:i] + (key[i + 1], key[i]) + key[i + 2:]
                if self.terms.get(swapped) != c:
                    return False
        return True

    def is_symmetric_exhaustive(self) -> bool:
        for key, c in self.terms.items():
            for perm in permutations(range(self.n)):
                if self.terms.get(tuple(key[i] for i in perm)) != c:
                    return False
        return True

    def max_pole_order(self) -> int:
        return max((k for key in self.terms for _, k in key), default=0)

    def min_pole_order(self) -> int:
        return min((k for key in self.terms for _, k in key), default=0)

    def convention(self, name: str) -> "PoleForm":
        """'engine' returns self; 'paper9' applies the (-1)^n factor."""
        if name == "engine":
            return self
        if name == "paper9":
            return self.scale(self.domain.convert((-1) ** self.n))
        raise ValueError(f"unknown convention {name!r}")

    def sorted_terms(self) -> List[Tuple[Key, Any]]:
        return sorted(self.terms.items())

    # conversion

    def to_doc(self) -> "PoleFormDoc":
        F = self.field
        return PoleFormDoc(
            field=F.tag,
            param=F.param,
            g=self.g,
            n=self.n,
            terms=[
                PoleTermDoc(poles=[PoleDoc(bp=j, k=k) for j, k in key], coeff=F.to_json(c))
                for key, c in self.sorted_terms()
            ],
        )

    def to_json(self) -> str:
        return self.to_doc().model_dump_json(exclude_none=True)

    @classmethod
    def from_doc(cls, doc: Union["PoleFormDoc", Dict[str, Any], str]) -> "PoleForm":
        if isinstance(doc, str):
            doc = PoleFormDoc.model_validate_json(doc)
        elif isinstance(doc, dict):
            doc = PoleFormDoc.model_validate(doc)
        F = CoeffField(doc.field, doc.param)
        terms: Dict[Key, Any] = {}
        for t in doc.terms:
            if len(t.poles) != doc.n:
                raise FieldMismatch(f"term with {len(t.poles)} poles in an n={doc.n} form")
            key = tuple((p.bp, p.k) for p in t.poles)
            terms[key] = terms.get(key, F.zero) + F.convert(t.coeff)
        return cls(F, doc.g, terms, tuple(range(doc.n)))

    def to_expr(self, branchpoints: Sequence[Any], variables: Optional[Sequence[sympy.Symbol]] = None) -> sympy.Expr:
        """Density (dz's stripped) as a sympy expression in z1..zn."""
        F = self.field
        if variables is None:
            variables = sympy.symbols(f"z1:{self.n + 1}") if self.n else ()
        pts = [F.to_sympy(a) for a in branchpoints]
        total = sympy.Integer(0)
        for key, c in self.sorted_terms():
            term = F.to_sympy(c)
            for (j, k), z in zip(key, variables):
                term = term / (z - pts[j]) ** k
            total += term
        return total


class PoleDoc(BaseModel):
    bp: int
    k: int


class PoleTermDoc(BaseModel):
    poles: List[PoleDoc]
    coeff: Union[str, Dict[str, List[str]], List[str]]


class PoleFormDoc(BaseModel):
    """Wire form of a PoleForm."""

    field: str = "Q"
    param: Optional[str] = None
    g: int
    n: int
    terms: List[PoleTermDoc] = Field(default_factory=list)


@dataclass(frozen=True)
class UnstableForm:
    """
    Marker for the unstable correlators.

    ``kind`` is "one-zero" for -y dx and "bergman" for dz1 dz2 / (z1 - z2)^2.
    """

    kind: str
    curve: Any = None

    @property
    def g(self) -> int:
        return 0

    @property
    def n(self) -> int:
        return 1 if self.kind == "one-zero" else 2


def poleform_to_ratfunc(f: PoleForm, branchpoints: Sequence[Any], slot: int = 0
                        ) -> Union[UniRatFunc, Dict[Key, UniRatFunc]]:
    """
    Collect the partial fractions of one slot into rational functions.

    For n = 1 the single density (dz stripped) is returned. Otherwise the
    result maps each pole key of the remaining slots to the density of ``slot``.
    """
    F = f.field
    one = UniRatFunc.constant(F, F.one)
    z = UniRatFunc.identity(F)
    factors: Dict[Pole, UniRatFunc] = {}

    def factor(pole: Pole) -> UniRatFunc:
        if pole not in factors:
            j, k = pole
            factors[pole] = one / (z - branchpoints[j]) ** k
        return factors[pole]

    grouped: Dict[Key, UniRatFunc] = {}
    for key, c in f.sorted_terms():
        rest = key[:slot] + key[slot + 1:]
        term = factor(key[slot]).scale(c)
        grouped[rest] = grouped[rest] + term if rest in grouped else term
    if f.n == 1:
        return grouped.get((), UniRatFunc.constant(F, F.zero))
    return grouped


def poleform_from_ratfunc(density: UniRatFunc, branchpoints: Sequence[Any], g: int = 0) -> PoleForm:
    """
    Partial-fraction decomposition of a one-form density at branchpoints.

    Raises ResiduePresent on a simple-pole term, PoleAtPoint when the
    density has poles elsewhere or a polynomial part.
    """
    F = density.field
    terms: Dict[Key, Any] = {}
    for j, a in enumerate(branchpoints):
        order = density.pole_order_at(a)
        if order <= 0:
            continue
        principal = laurent_expand(density, a, -1)
        if principal.coefficient(-1):
            raise ResiduePresent(f"simple pole at z = {F.to_str(a)}")
        for e, c in principal.terms():
            terms[((j, -e),)] = c
    form = PoleForm(F, g, terms, (0,))
    rebuilt = poleform_to_ratfunc(form, branchpoints)
    if rebuilt != density:
        raise PoleAtPoint("density has poles away from the branchpoints")
    return form


def assert_symmetric(f: PoleForm, exhaustive_up_to: int = 4) -> None:
    ok = f.is_symmetric_exhaustive() if f.n <= exhaustive_up_to else f.is_symmetric()
    if not ok:
        raise TopoRecError(f"correlator (g={f.g}, n={f.n}) is not symmetric", {"g": f.g, "n": f.n})


def forms_sum(forms: Iterable[PoleForm]) -> Optional[PoleForm]:
    total = None
    for f in forms:
        total = f if total is None else total + f
    return total
