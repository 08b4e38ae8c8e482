"""Nine-block canvas layout and SVG rendering.

Fixed 1200x800 canvas. The top region (640 tall) holds five 240-wide
columns: key partnerships | key activities over key resources | value
proposition | customer relationships over channels | customer segments.
The bottom row (160 tall) splits into cost structure (left half) and
revenue streams (right half).

Elements stack top-down in declaration order inside their kind's block,
spilling into a second column on overflow; anything past that is clipped
behind an ellipsis marker. Edges are straight lines between element
rectangle midpoints, styled like the DOT export (supports solid,
determines bold with a filled arrowhead, affects dashed).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape, quoteattr

from ..model import BusinessModel, ElementKind, RelationshipKind

CANVAS_W = 1200
CANVAS_H = 800
TOP_H = 640
BOTTOM_H = 160
COL_W = 240

LABEL_H = 24
PAD = 8
ITEM_H = 36
ITEM_GAP = 6

BLOCK_TITLES = {
    ElementKind.KEY_RESOURCE: "Key Resources",
    ElementKind.KEY_ACTIVITY: "Key Activities",
    ElementKind.KEY_PARTNERSHIP: "Key Partnerships",
    ElementKind.CUSTOMER_SEGMENT: "Customer Segments",
    ElementKind.VALUE_PROPOSITION: "Value Proposition",
    ElementKind.CHANNEL: "Channels",
    ElementKind.CUSTOMER_RELATIONSHIP: "Customer Relationships",
    ElementKind.REVENUE_STREAM: "Revenue Streams",
    ElementKind.COST_STRUCTURE: "Cost Structure",
}


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float

    @property
    def cx(self) -> float:
        return self.x + self.w / 2

    @property
    def cy(self) -> float:
        return self.y + self.h / 2

    def contains(self, other: Rect) -> bool:
        return (
            other.x >= self.x
            and other.y >= self.y
            and other.x + other.w <= self.x + self.w
            and other.y + other.h <= self.y + self.h
        )


@dataclass(frozen=True)
class EdgePath:
    source: str
    target: str
    kind: RelationshipKind
    points: tuple[tuple[float, float], ...]
    label: str | None = None


@dataclass
class CanvasGeometry:
    width: int
    height: int
    blocks: dict[ElementKind, Rect]
    elements: dict[str, Rect] = field(default_factory=dict)
    edges: list[EdgePath] = field(default_factory=list)
    clipped: dict[ElementKind, int] = field(default_factory=dict)


def block_rects() -> dict[ElementKind, Rect]:
    half = TOP_H / 2
    return {
        ElementKind.KEY_PARTNERSHIP: Rect(0, 0, COL_W, TOP_H),
        ElementKind.KEY_ACTIVITY: Rect(COL_W, 0, COL_W, half),
        ElementKind.KEY_RESOURCE: Rect(COL_W, half, COL_W, half),
        ElementKind.VALUE_PROPOSITION: Rect(2 * COL_W, 0, COL_W, TOP_H),
        ElementKind.CUSTOMER_RELATIONSHIP: Rect(3 * COL_W, 0, COL_W, half),
        ElementKind.CHANNEL: Rect(3 * COL_W, half, COL_W, half),
        ElementKind.CUSTOMER_SEGMENT: Rect(4 * COL_W, 0, COL_W, TOP_H),
        ElementKind.COST_STRUCTURE: Rect(0, TOP_H, CANVAS_W / 2, BOTTOM_H),
        ElementKind.REVENUE_STREAM: Rect(CANVAS_W / 2, TOP_H, CANVAS_W / 2, BOTTOM_H),
    }


def layout_canvas(bm: BusinessModel) -> CanvasGeometry:
    geometry = CanvasGeometry(CANVAS_W, CANVAS_H, block_rects())
    by_kind: dict[ElementKind, list] = {kind: [] for kind in ElementKind}
    for element in bm.iter_elements():
        by_kind[element.kind].append(element)

    for kind, members in by_kind.items():
        block = geometry.blocks[kind]
        inner = Rect(
            block.x + PAD,
            block.y + LABEL_H + PAD,
            block.w - 2 * PAD,
            block.h - LABEL_H - 2 * PAD,
        )
        per_column = max(1, int((inner.h + ITEM_GAP) // (ITEM_H + ITEM_GAP)))
        if len(members) <= per_column:
            columns, col_w = 1, inner.w
        else:
            columns, col_w = 2, (inner.w - PAD) / 2
        capacity = columns * per_column
        visible = members
        marker_slot = None
        if len(members) > capacity:
            visible = members[: capacity - 1]
            marker_slot = capacity - 1
            geometry.clipped[kind] = len(members) - len(visible)
        for slot, element in enumerate(visible):
            geometry.elements[element.id] = _slot_rect(inner, slot, per_column, col_w)
        if marker_slot is not None:
            marker = _slot_rect(inner, marker_slot, per_column, col_w)
            # clipped elements anchor their edges at the ellipsis marker
            for element in members[len(visible):]:
                geometry.elements[element.id] = marker

    for rel in bm.relationships:
        src = geometry.elements.get(rel.source)
        dst = geometry.elements.get(rel.target)
        if src is None or dst is None:
            continue  # unresolved edges are a validator concern
        geometry.edges.append(EdgePath(
            rel.source, rel.target, rel.kind,
            ((src.cx, src.cy), (dst.cx, dst.cy)), rel.label,
        ))
    return geometry


def _slot_rect(inner: Rect, slot: int, per_column: int, col_w: float) -> Rect:
    column, row = divmod(slot, per_column)
    x = inner.x + column * (col_w + PAD)
    y = inner.y + row * (ITEM_H + ITEM_GAP)
    return Rect(x, y, col_w, ITEM_H)


_STROKES = {
    RelationshipKind.SUPPORTS: 'stroke-width="1.5"',
    RelationshipKind.DETERMINES: 'stroke-width="3"',
    RelationshipKind.AFFECTS: 'stroke-width="1.5" stroke-dasharray="6 4"',
}


def to_svg(bm: BusinessModel) -> str:
    geometry = layout_canvas(bm)
    kind_of = {e.id: e.kind for e in bm.iter_elements()}
    name_of = {e.id: e.name for e in bm.iter_elements()}
    clipped_ids = _clipped_ids(geometry, bm)

    out: list[str] = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS_W}" '
        f'height="{CANVAS_H}" viewBox="0 0 {CANVAS_W} {CANVAS_H}" '
        f'font-family="sans-serif">'
    )
    out.append('<defs>')
    out.append(
        '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" '
        'markerWidth="7" markerHeight="7" orient="auto-start-reverse">'
        '<path d="M 0 0 L 10 5 L 0 10 z"/></marker>'
    )
    out.append('</defs>')
    out.append(f'<rect x="0" y="0" width="{CANVAS_W}" height="{CANVAS_H}" '
               'fill="white" stroke="none"/>')

    for kind in ElementKind:
        block = geometry.blocks[kind]
        out.append(f'<g data-block={quoteattr(kind.keyword)}>')
        out.append(
            f'<rect x="{_n(block.x)}" y="{_n(block.y)}" width="{_n(block.w)}" '
            f'height="{_n(block.h)}" fill="none" stroke="black"/>'
        )
        out.append(
            f'<text x="{_n(block.x + 6)}" y="{_n(block.y + 16)}" font-size="12" '
            f'font-weight="bold">{escape(BLOCK_TITLES[kind])}</text>'
        )
        out.append('</g>')

    for element_id, rect in geometry.elements.items():
        if element_id in clipped_ids:
            continue
        kind = kind_of[element_id]
        out.append(
            f'<g data-kind={quoteattr(kind.keyword)} data-id={quoteattr(element_id)}>'
        )
        out.append(
            f'<rect x="{_n(rect.x)}" y="{_n(rect.y)}" width="{_n(rect.w)}" '
            f'height="{_n(rect.h)}" fill="#f2f2f2" stroke="black" rx="4"/>'
        )
        label = _fit(name_of[element_id], rect.w)
        out.append(
            f'<text x="{_n(rect.cx)}" y="{_n(rect.cy + 4)}" font-size="12" '
            f'text-anchor="middle">{escape(label)}</text>'
        )
        out.append('</g>')

    for kind, count in sorted(geometry.clipped.items(), key=lambda kv: kv[0].index):
        first_clipped = next(
            eid for eid in geometry.elements
            if kind_of[eid] is kind and eid in clipped_ids
        )
        rect = geometry.elements[first_clipped]
        out.append(f'<g data-clipped={quoteattr(kind.keyword)}>')
        out.append(
            f'<rect x="{_n(rect.x)}" y="{_n(rect.y)}" width="{_n(rect.w)}" '
            f'height="{_n(rect.h)}" fill="none" stroke="black" '
            'stroke-dasharray="2 2" rx="4"/>'
        )
        out.append(
            f'<text x="{_n(rect.cx)}" y="{_n(rect.cy + 4)}" font-size="12" '
            f'text-anchor="middle">&#8230; {count} more</text>'
        )
        out.append('</g>')

    for edge in geometry.edges:
        (x1, y1), (x2, y2) = edge.points[0], edge.points[-1]
        stroke = _STROKES[edge.kind]
        if (x1, y1) == (x2, y2):
            out.append(
                f'<path data-rule={quoteattr(edge.kind.value)} '
                f'd="M {_n(x1)} {_n(y1)} c 24 -28, -24 -28, 0 0" fill="none" '
                f'stroke="black" {stroke} marker-end="url(#arrow)"/>'
            )
            continue
        out.append(
            f'<line data-rule={quoteattr(edge.kind.value)} x1="{_n(x1)}" '
            f'y1="{_n(y1)}" x2="{_n(x2)}" y2="{_n(y2)}" stroke="black" {stroke} '
            'marker-end="url(#arrow)"/>'
        )

    out.append('</svg>')
    return "\n".join(out) + "\n"


def _clipped_ids(geometry: CanvasGeometry, bm: BusinessModel) -> set[str]:
    """Ids that share the ellipsis marker slot instead of an own rectangle."""
    if not geometry.clipped:
        return set()
    ids: set[str] = set()
    by_kind: dict[ElementKind, list] = {}
    for element in bm.iter_elements():
        by_kind.setdefault(element.kind, []).append(element)
    for kind, count in geometry.clipped.items():
        for element in by_kind[kind][-count:]:
            ids.add(element.id)
    return ids


def _fit(name: str, width: float) -> str:
    limit = max(3, int(width // 7))
    if len(name) <= limit:
        return name
    return name[: limit - 1] + "…"


def _n(value: float) -> str:
    """Trim trailing zeros so coordinates render stably."""
    if value == int(value):
        return str(int(value))
    return f"{value:.1f}"
