"""Pretty and JSON renderings of command results."""

import json
from typing import Any, Dict, List, Optional, Sequence

import sympy

from diagrams import RecursionGraph, mirror_classes, to_text
from forms import CountTable, PoleForm, UnstableForm
from recursion import KernelExpansion

FORMATS = ("pretty", "json")
CONVENTIONS = ("engine", "paper9")


def _dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def _differentials(n: int) -> str:
    return " ".join(f"dz{i}" for i in range(1, n + 1))


def format_omega(form: Any, curve, fmt: str = "pretty", convention: str = "engine") -> str:
    """A correlator; stable forms print as their density times dz1..dzn."""
    if isinstance(form, UnstableForm):
        text = "-y dx" if form.kind == "one-zero" else "dz1 dz2 / (z1 - z2)^2"
        if fmt == "json":
            return _dumps({"g": 0, "n": form.n, "kind": form.kind, "form": text})
        return f"omega_{form.n}^(0) = {text}"
    form = form.convention(convention)
    if fmt == "json":
        return form.to_json()
    expr = sympy.factor(form.to_expr(curve.branchpoints))
    return f"omega_{form.n}^({form.g}) = ({expr}) {_differentials(form.n)}"


def format_value(label: str, value: Any, field, fmt: str = "pretty", extra: Optional[Dict[str, Any]] = None) -> str:
    """A single field element; pretty output is the bare value."""
    if fmt == "json":
        doc = {"name": label, "value": field.to_json(value), "field": field.tag}
        doc.update(extra or {})
        return _dumps(doc)
    return field.to_str(value)


def format_counts(table: CountTable, fmt: str = "pretty") -> str:
    if fmt == "json":
        return table.model_dump_json()
    return f"[{', '.join(table.counts)}]"


def format_graphs(graphs: Sequence[RecursionGraph], count_only: bool = False, fmt: str = "pretty",
                  weights: Optional[PoleForm] = None, curve=None) -> str:
    """Graph listing; with ``weights`` the summed weight is appended."""
    if count_only:
        return _dumps({"count": len(graphs)}) if fmt == "json" else str(len(graphs))
    classes = mirror_classes(graphs)
    if fmt == "json":
        doc: Dict[str, Any] = {
            "count": len(graphs),
            "graphs": [to_text(g) for g in graphs],
            "mirror_classes": [{"representative": to_text(g), "multiplicity": m} for g, m in classes],
        }
        if weights is not None:
            doc["weight_sum"] = json.loads(weights.to_json())
        return _dumps(doc)
    lines = [f"{len(graphs)} graph(s)"]
    lines += [f"  {to_text(g)}" for g in graphs]
    lines.append("mirror classes:")
    lines += [f"  {m} x {to_text(g)}" for g, m in classes]
    if weights is not None:
        lines.append(format_omega(weights, curve))
    return "\n".join(lines)


def format_kernel(expansion: KernelExpansion, fmt: str = "pretty") -> str:
    if fmt == "json":
        return _dumps(expansion.to_dict())
    lines = [
        f"H(z1, z2) = exp({expansion.prefactor}) / E(z1, z2) * (1 + ...)",
        f"E(z1, z2) = {expansion.to_dict()['prime_form']}",
    ]
    for k, c in enumerate(expansion.corrections, start=1):
        lines.append(f"N^-{k}: {c}")
    return "\n".join(lines)


def format_curve(doc: Dict[str, Any], fmt: str = "pretty") -> str:
    """Render a curve description built by the curve-show command."""
    if fmt == "json":
        return _dumps(doc)
    lines: List[str] = []
    for key in ("family", "field", "param", "x", "y", "dy", "logs"):
        if key in doc:
            lines.append(f"{key}: {doc[key]}")
    for name, value in sorted(doc.get("derived", {}).items()):
        lines.append(f"  {name} = {value}")
    for bp in doc.get("branchpoints", []):
        lines.append(f"branchpoint {bp['index']}: z = {bp['z']} ({bp['kind']}"
                     + (f", p={bp['p']}, q={bp['q']})" if bp["kind"] == "singular" else ")"))
    for name, ok in sorted(doc.get("identities", {}).items()):
        lines.append(f"identity {name}: {'ok' if ok else 'FAILED'}")
    return "\n".join(lines)


def format_report(report, fmt: str = "pretty") -> str:
    if fmt == "json":
        return report.model_dump_json(exclude_none=True)
    marks = {"pass": "✅", "fail": "❌", "skip": "⏭️"}
    lines = [f"Suite {report.suite}"]
    for c in report.checks:
        line = f"{marks.get(c.status, '?')} {c.id}"
        if c.status == "fail":
            line += f"\n    expected: {c.expected}\n    got:      {c.got}"
        elif c.status == "skip":
            line += f" ({c.got})"
        if c.elapsed is not None:
            line += f" [{c.elapsed:.2f}s]"
        lines.append(line)
    passed = sum(c.status == "pass" for c in report.checks)
    lines.append("=" * 60)
    lines.append(f"{passed}/{len(report.checks)} passed" + ("" if report.passed else " - FAILED"))
    return "\n".join(lines)
