/** Pure helpers over the canonical model JSON.
 *
 * The studio never decides relationship legality itself; that stays on
 * the service. These helpers only build structurally sound documents:
 * well-formed generated ids, no duplicate ids, no duplicate ordered
 * edge pairs.
 */

import type {
  BusinessModelJson,
  ElementJson,
  ElementKindName,
  ModelJson,
  RelationshipKindName,
} from "./types.js";

export interface KindInfo {
  kind: ElementKindName;
  abbrev: string;
  title: string;
  tier: "KE" | "VE" | "PE";
}

/** The nine kinds in canonical order, grouped for the three-tier palette. */
export const KINDS: KindInfo[] = [
  { kind: "key_resource", abbrev: "KR", title: "Key Resources", tier: "KE" },
  { kind: "key_activity", abbrev: "KA", title: "Key Activities", tier: "KE" },
  { kind: "key_partnership", abbrev: "KP", title: "Key Partnerships", tier: "KE" },
  { kind: "customer_segment", abbrev: "CS", title: "Customer Segments", tier: "VE" },
  { kind: "value_proposition", abbrev: "VP", title: "Value Proposition", tier: "VE" },
  { kind: "channel", abbrev: "CH", title: "Channels", tier: "VE" },
  {
    kind: "customer_relationship",
    abbrev: "CR",
    title: "Customer Relationships",
    tier: "VE",
  },
  { kind: "revenue_stream", abbrev: "R$", title: "Revenue Streams", tier: "PE" },
  { kind: "cost_structure", abbrev: "C$", title: "Cost Structure", tier: "PE" },
];

export const KIND_INFO = new Map(KINDS.map((info) => [info.kind, info]));

export function emptyModel(enterprise = "Untitled", bm = "Canvas"): ModelJson {
  return {
    format: "bmc-model",
    version: 1,
    enterprise: {
      name: enterprise,
      business_models: [{ name: bm, elements: [], relationships: [] }],
    },
  };
}

/** The studio edits the first business model of the document. */
export function activeBm(model: ModelJson): BusinessModelJson {
  return model.enterprise.business_models[0];
}

export function allElements(bm: BusinessModelJson): ElementJson[] {
  const out: ElementJson[] = [];
  const visit = (element: ElementJson) => {
    out.push(element);
    for (const child of element.children ?? []) visit(child);
  };
  for (const element of bm.elements) visit(element);
  return out;
}

export function findElement(bm: BusinessModelJson, id: string): ElementJson | null {
  return allElements(bm).find((element) => element.id === id) ?? null;
}

/** Generate a fresh well-formed id: kr_1, kr_2, ... */
export function generateId(bm: BusinessModelJson, kind: ElementKindName): string {
  const prefix = KIND_INFO.get(kind)!.abbrev.replace("$", "s").toLowerCase();
  const taken = new Set(allElements(bm).map((element) => element.id));
  let n = 1;
  while (taken.has(`${prefix}_${n}`)) n += 1;
  return `${prefix}_${n}`;
}

export function addElement(
  bm: BusinessModelJson,
  kind: ElementKindName,
  name?: string,
): ElementJson {
  const id = generateId(bm, kind);
  const element: ElementJson = {
    id,
    kind,
    name: name ?? defaultName(bm, kind),
  };
  bm.elements.push(element);
  return element;
}

function defaultName(bm: BusinessModelJson, kind: ElementKindName): string {
  const base = KIND_INFO.get(kind)!.title.replace(/s$/, "");
  const count = allElements(bm).filter((element) => element.kind === kind).length;
  return count === 0 ? base : `${base} ${count + 1}`;
}

export function hasEdge(bm: BusinessModelJson, source: string, target: string): boolean {
  return bm.relationships.some(
    (rel) => rel.source === source && rel.target === target,
  );
}

export function addEdge(
  bm: BusinessModelJson,
  source: string,
  target: string,
  kind: RelationshipKindName,
): void {
  bm.relationships.push({ source, target, kind });
}

export function removeElement(bm: BusinessModelJson, id: string): void {
  const prune = (list: ElementJson[]): ElementJson[] =>
    list
      .filter((element) => element.id !== id)
      .map((element) =>
        element.children
          ? { ...element, children: prune(element.children) }
          : element,
      );
  bm.elements = prune(bm.elements);
  bm.relationships = bm.relationships.filter(
    (rel) => rel.source !== id && rel.target !== id,
  );
}

export function cloneModel(model: ModelJson): ModelJson {
  return JSON.parse(JSON.stringify(model)) as ModelJson;
}

// --- DSL writer -------------------------------------------------------------

function quote(text: string): string {
  return `"${text.replace(/\\/g, "\\\\").replace(/"/g, '\\"').replace(/\n/g, "\\n")}"`;
}

function elementToDsl(element: ElementJson, indent: string, lines: string[]): void {
  let head = `${indent}${element.kind} ${element.id}`;
  if (element.name !== element.id) head += ` ${quote(element.name)}`;
  const hasBody =
    element.desc !== undefined ||
    element.vrin !== undefined ||
    (element.children?.length ?? 0) > 0;
  if (!hasBody) {
    lines.push(head);
    return;
  }
  lines.push(`${head} {`);
  if (element.desc !== undefined) lines.push(`${indent}  desc ${quote(element.desc)}`);
  if (element.vrin) lines.push(`${indent}  vrin ${element.vrin.join(" ")}`);
  for (const child of element.children ?? []) {
    elementToDsl(child, `${indent}  `, lines);
  }
  lines.push(`${indent}}`);
}

function bmToDsl(bm: BusinessModelJson, indent: string, lines: string[]): void {
  lines.push(`${indent}business_model ${quote(bm.name)} {`);
  for (const element of bm.elements) elementToDsl(element, `${indent}  `, lines);
  for (const rel of bm.relationships) {
    let line = `${indent}  ${rel.source} ${rel.kind} ${rel.target}`;
    if (rel.label !== undefined) line += `, ${quote(rel.label)}`;
    lines.push(line);
  }
  for (const nested of bm.business_models ?? []) {
    bmToDsl(nested, `${indent}  `, lines);
  }
  lines.push(`${indent}}`);
}

/** Plain (not necessarily canonical) DSL text; the format endpoint
 * canonicalises it on export. */
export function toDsl(model: ModelJson): string {
  const lines: string[] = [`enterprise ${quote(model.enterprise.name)} {`];
  for (const bm of model.enterprise.business_models) bmToDsl(bm, "  ", lines);
  lines.push("}");
  return lines.join("\n") + "\n";
}
