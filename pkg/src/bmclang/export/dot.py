"""Graphviz DOT export for one business model.

One cluster per superkind that has elements, nodes labelled with the
display name and kind abbreviation, edge styling by relationship kind:
supports solid, determines bold with a filled arrowhead, affects dashed.
Output ordering is canonical, so rendering is byte-stable.
"""
from __future__ import annotations

from ..model import BusinessModel, RelationshipKind, SuperKind, taxonomy

_EDGE_ATTRS = {
    RelationshipKind.SUPPORTS: 'style=solid',
    RelationshipKind.DETERMINES: 'style=bold, arrowhead=normal',
    RelationshipKind.AFFECTS: 'style=dashed',
}


def to_dot(bm: BusinessModel) -> str:
    lines = [f"digraph {_quote(bm.name)} {{"]
    lines.append('  rankdir=LR;')
    lines.append('  node [shape=box];')
    elements = [e for top in sorted(bm.elements, key=lambda e: e.kind.index)
                for e in top.walk()]
    for superkind in SuperKind:
        members = [e for e in elements if taxonomy(e.kind)[0] is superkind]
        if not members:
            continue
        lines.append(f'  subgraph "cluster_{superkind.value}" {{')
        lines.append(f'    label={_quote(superkind.label)};')
        for element in members:
            label = f'"{_escape(element.name)}\\n({element.kind.abbrev})"'
            lines.append(f'    {_quote(element.id)} [label={label}];')
        lines.append('  }')
    for rel in sorted(bm.relationships, key=lambda r: (r.source, r.target)):
        attrs = _EDGE_ATTRS[rel.kind]
        if rel.label is not None:
            attrs += f', label={_quote(rel.label)}'
        lines.append(f'  {_quote(rel.source)} -> {_quote(rel.target)} [{attrs}];')
    lines.append('}')
    return "\n".join(lines) + "\n"


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


def _quote(text: str) -> str:
    return f'"{_escape(text)}"'
