/** Nine-block board rendering.
 *
 * The geometry mirrors the SVG emitter (1200x800 canvas, 640/160 split,
 * 240-unit columns) so a downloaded SVG looks like the on-screen board,
 * and edge styling uses the same kind mapping: supports solid,
 * determines bold, affects dashed.
 */

import { KINDS, allElements } from "./model.js";
import type { StudioState } from "./studio.js";
import type { ElementKindName, RelationshipKindName } from "./types.js";

export const CANVAS_W = 1200;
export const CANVAS_H = 800;

interface Block {
  kind: ElementKindName;
  x: number;
  y: number;
  w: number;
  h: number;
}

export const BLOCKS: Block[] = [
  { kind: "key_partnership", x: 0, y: 0, w: 240, h: 640 },
  { kind: "key_activity", x: 240, y: 0, w: 240, h: 320 },
  { kind: "key_resource", x: 240, y: 320, w: 240, h: 320 },
  { kind: "value_proposition", x: 480, y: 0, w: 240, h: 640 },
  { kind: "customer_relationship", x: 720, y: 0, w: 240, h: 320 },
  { kind: "channel", x: 720, y: 320, w: 240, h: 320 },
  { kind: "customer_segment", x: 960, y: 0, w: 240, h: 640 },
  { kind: "cost_structure", x: 0, y: 640, w: 600, h: 160 },
  { kind: "revenue_stream", x: 600, y: 640, w: 600, h: 160 },
];

const LABEL_H = 24;
const PAD = 8;
const ITEM_H = 36;
const ITEM_GAP = 6;

const STROKES: Record<RelationshipKindName, { width: number; dash: string }> = {
  supports: { width: 1.5, dash: "" },
  determines: { width: 3, dash: "" },
  affects: { width: 1.5, dash: "6 4" },
};

export interface BoardHandlers {
  onBlockClick(kind: ElementKindName): void;
  onElementClick(id: string, event: MouseEvent): void;
  onElementHover(id: string | null): void;
}

interface Placed {
  id: string;
  x: number;
  y: number;
  w: number;
  h: number;
}

export function placeElements(state: StudioState): Map<string, Placed> {
  const placed = new Map<string, Placed>();
  const bm = state.model.enterprise.business_models[0];
  for (const block of BLOCKS) {
    const members = allElements(bm).filter((el) => el.kind === block.kind);
    const innerH = block.h - LABEL_H - 2 * PAD;
    const perColumn = Math.max(1, Math.floor((innerH + ITEM_GAP) / (ITEM_H + ITEM_GAP)));
    const columns = members.length > perColumn ? 2 : 1;
    const colW = columns === 1 ? block.w - 2 * PAD : (block.w - 3 * PAD) / 2;
    members.forEach((element, slot) => {
      const column = Math.floor(slot / perColumn);
      const row = slot % perColumn;
      if (column > 1) return; // clipped; board scrolls are a non-goal
      placed.set(element.id, {
        id: element.id,
        x: block.x + PAD + column * (colW + PAD),
        y: block.y + LABEL_H + PAD + row * (ITEM_H + ITEM_GAP),
        w: colW,
        h: ITEM_H,
      });
    });
  }
  return placed;
}

export function renderBoard(
  root: HTMLElement,
  state: StudioState,
  handlers: BoardHandlers,
): void {
  root.innerHTML = "";
  root.classList.add("board");
  root.style.width = `${CANVAS_W}px`;
  root.style.height = `${CANVAS_H}px`;

  const bm = state.model.enterprise.business_models[0];
  const placed = placeElements(state);

  for (const block of BLOCKS) {
    const info = KINDS.find((k) => k.kind === block.kind)!;
    const div = document.createElement("div");
    div.className = "block";
    div.dataset.block = block.kind;
    div.style.left = `${block.x}px`;
    div.style.top = `${block.y}px`;
    div.style.width = `${block.w}px`;
    div.style.height = `${block.h}px`;
    const label = document.createElement("div");
    label.className = "block-label";
    label.textContent = `${info.title} (${info.abbrev})`;
    div.appendChild(label);
    div.addEventListener("click", (event) => {
      if (event.target === div || event.target === label) {
        handlers.onBlockClick(block.kind);
      }
    });
    root.appendChild(div);
  }

  // edge overlay under the element nodes
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.classList.add("edges");
  svg.setAttribute("width", String(CANVAS_W));
  svg.setAttribute("height", String(CANVAS_H));
  svg.innerHTML =
    '<defs><marker id="board-arrow" viewBox="0 0 10 10" refX="9" refY="5" ' +
    'markerWidth="7" markerHeight="7" orient="auto-start-reverse">' +
    '<path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>';
  for (const rel of bm.relationships) {
    const from = placed.get(rel.source);
    const to = placed.get(rel.target);
    if (!from || !to) continue;
    const stroke = STROKES[rel.kind];
    let edge: SVGElement;
    if (rel.source === rel.target) {
      edge = document.createElementNS("http://www.w3.org/2000/svg", "path");
      const cx = from.x + from.w / 2;
      const cy = from.y + from.h / 2;
      edge.setAttribute("d", `M ${cx} ${cy} c 24 -28, -24 -28, 0 0`);
      edge.setAttribute("fill", "none");
    } else {
      edge = document.createElementNS("http://www.w3.org/2000/svg", "line");
      edge.setAttribute("x1", String(from.x + from.w / 2));
      edge.setAttribute("y1", String(from.y + from.h / 2));
      edge.setAttribute("x2", String(to.x + to.w / 2));
      edge.setAttribute("y2", String(to.y + to.h / 2));
    }
    edge.dataset.rule = rel.kind;
    edge.setAttribute("stroke", "#333");
    edge.setAttribute("stroke-width", String(stroke.width));
    if (stroke.dash) edge.setAttribute("stroke-dasharray", stroke.dash);
    edge.setAttribute("marker-end", "url(#board-arrow)");
    svg.appendChild(edge);
  }
  root.appendChild(svg);

  for (const element of allElements(bm)) {
    const box = placed.get(element.id);
    if (!box) continue;
    const node = document.createElement("div");
    node.className = "element";
    node.dataset.kind = element.kind;
    node.dataset.id = element.id;
    if (state.selection === element.id) node.classList.add("selected");
    if (state.pendingEdge?.sourceId === element.id) node.classList.add("edge-source");
    node.style.left = `${box.x}px`;
    node.style.top = `${box.y}px`;
    node.style.width = `${box.w}px`;
    node.style.height = `${box.h}px`;
    node.textContent = element.name;
    node.title = element.id;
    node.addEventListener("click", (event) => {
      event.stopPropagation();
      handlers.onElementClick(element.id, event);
    });
    node.addEventListener("mouseenter", () => handlers.onElementHover(element.id));
    node.addEventListener("mouseleave", () => handlers.onElementHover(null));
    root.appendChild(node);
  }

  if (state.pendingEdge?.hoverHint) {
    const hint = document.createElement("div");
    hint.className = "hover-hint";
    hint.textContent = state.pendingEdge.hoverHint;
    root.appendChild(hint);
  }
}
