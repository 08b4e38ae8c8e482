"""Canonical formatter.

One fixed rendering per model: two-space indentation, elements grouped by
kind order then declaration order, relationships in active voice sorted
by (source id, target id), nested business models last in declaration
order. Formatting is idempotent and the output reparses to an equivalent
model.
"""
from __future__ import annotations

from ..model import BusinessModel, Element, Enterprise

_INDENT = "  "


def format_enterprise(enterprise: Enterprise) -> str:
    lines: list[str] = []
    if not enterprise.business_models:
        return f'enterprise {_quote(enterprise.name)} {{}}\n'
    lines.append(f"enterprise {_quote(enterprise.name)} {{")
    for bm in enterprise.business_models:
        _format_bm(bm, 1, lines)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _format_bm(bm: BusinessModel, depth: int, lines: list[str]) -> None:
    pad = _INDENT * depth
    if not bm.elements and not bm.relationships and not bm.business_models:
        lines.append(f"{pad}business_model {_quote(bm.name)} {{}}")
        return
    lines.append(f"{pad}business_model {_quote(bm.name)} {{")
    for element in sorted(bm.elements, key=lambda e: e.kind.index):
        _format_element(element, depth + 1, lines)
    for rel in sorted(bm.relationships, key=lambda r: (r.source, r.target)):
        line = f"{_INDENT * (depth + 1)}{rel.source} {rel.kind.value} {rel.target}"
        if rel.label is not None:
            line += f", {_quote(rel.label)}"
        lines.append(line)
    for nested in bm.business_models:
        _format_bm(nested, depth + 1, lines)
    lines.append(f"{pad}}}")


def _format_element(element: Element, depth: int, lines: list[str]) -> None:
    pad = _INDENT * depth
    head = f"{pad}{element.kind.keyword} {element.id}"
    if element.name != element.id:
        head += f" {_quote(element.name)}"
    if element.description is None and element.vrin is None and not element.children:
        lines.append(head)
        return
    lines.append(head + " {")
    inner = _INDENT * (depth + 1)
    if element.description is not None:
        lines.append(f"{inner}desc {_quote(element.description)}")
    if element.vrin is not None:
        flags = " ".join("true" if f else "false" for f in element.vrin.as_list())
        lines.append(f"{inner}vrin {flags}")
    for child in element.children:
        _format_element(child, depth + 1, lines)
    lines.append(f"{pad}}}")


def _quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'
