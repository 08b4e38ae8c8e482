/** Studio state machine.
 *
 * All rule knowledge lives server-side: edge commits ask /infer, the
 * diagnostics panel mirrors the latest /validate response for the
 * current model, and the matrix is fetched once for instant hover
 * hints. The store therefore cannot build a model the validator
 * rejects: ids are generated well-formed and unique, duplicate ordered
 * pairs are refused locally, and edge kinds come from the service.
 */

import { ApiClient } from "./api.js";
import {
  KIND_INFO,
  activeBm,
  addEdge,
  addElement,
  cloneModel,
  emptyModel,
  findElement,
  hasEdge,
  toDsl,
} from "./model.js";
import type {
  Diagnostic,
  ElementJson,
  ElementKindName,
  MatrixEntry,
  ModelJson,
  RelationshipKindName,
} from "./types.js";

export interface Refusal {
  sourceId: string;
  targetId: string;
  /** Kind of the edge the policy stores for this pair, reversed. */
  reverseKind: RelationshipKindName;
  message: string;
}

export interface PendingEdge {
  sourceId: string;
  hoverTargetId: string | null;
  /** Instant verdict from the cached matrix for the hovered pair. */
  hoverHint: string | null;
}

export type EdgeOutcome =
  | { outcome: "created"; kind: RelationshipKindName }
  | { outcome: "refused"; refusal: Refusal }
  | { outcome: "duplicate" }
  | { outcome: "cancelled" };

export interface StudioState {
  model: ModelJson;
  selection: string | null;
  pendingEdge: PendingEdge | null;
  refusal: Refusal | null;
  diagnostics: Diagnostic[];
  ok: boolean;
  dirty: boolean;
  banner: string | null;
}

type Listener = (state: StudioState) => void;

export class StudioStore {
  readonly state: StudioState;
  private matrixHints = new Map<string, MatrixEntry>();
  private listeners: Listener[] = [];
  private validateSeq = 0;

  constructor(private readonly api: ApiClient) {
    this.state = {
      model: emptyModel(),
      selection: null,
      pendingEdge: null,
      refusal: null,
      diagnostics: [],
      ok: true,
      dirty: false,
      banner: null,
    };
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  /** Fetch the policy matrix once for hover hints; /infer stays the
   * authority on commit. */
  async init(): Promise<void> {
    try {
      const entries = await this.api.matrix();
      this.matrixHints = new Map(
        entries.map((entry) => [`${entry.src}->${entry.dst}`, entry]),
      );
      this.state.banner = null;
    } catch {
      this.state.banner = "validation service unreachable";
    }
    this.emit();
  }

  hintFor(srcAbbrev: string, dstAbbrev: string): MatrixEntry | null {
    return this.matrixHints.get(`${srcAbbrev}->${dstAbbrev}`) ?? null;
  }

  // -- element gestures ------------------------------------------------

  /** Create an element of the palette kind. The element lands in its
   * kind's block no matter where the click happened; ids are generated
   * and deduplicated. */
  paletteCreate(kind: ElementKindName, name?: string): ElementJson {
    const element = addElement(activeBm(this.state.model), kind, name);
    this.state.dirty = true;
    this.state.selection = element.id;
    this.emit();
    void this.revalidate();
    return element;
  }

  rename(id: string, name: string): void {
    const element = findElement(activeBm(this.state.model), id);
    if (!element || !name) return;
    element.name = name;
    this.state.dirty = true;
    this.emit();
    void this.revalidate();
  }

  select(id: string | null): void {
    this.state.selection = id;
    this.emit();
  }

  // -- edge gestures -----------------------------------------------------

  beginEdge(sourceId: string): void {
    if (!findElement(activeBm(this.state.model), sourceId)) return;
    this.state.pendingEdge = { sourceId, hoverTargetId: null, hoverHint: null };
    this.state.refusal = null;
    this.emit();
  }

  hoverTarget(targetId: string | null): void {
    const pending = this.state.pendingEdge;
    if (!pending) return;
    pending.hoverTargetId = targetId;
    pending.hoverHint = null;
    if (targetId) {
      const bm = activeBm(this.state.model);
      const source = findElement(bm, pending.sourceId);
      const target = findElement(bm, targetId);
      if (source && target) {
        if (source.id === target.id) {
          pending.hoverHint = "supports (self)";
        } else {
          const hint = this.hintFor(abbrevOf(source), abbrevOf(target));
          if (hint) {
            pending.hoverHint =
              hint.entry === "required"
                ? hint.kind
                : `reverse-only (${hint.kind})`;
          }
        }
      }
    }
    this.emit();
  }

  cancelEdge(): void {
    this.state.pendingEdge = null;
    this.emit();
  }

  /** Commit the pending edge gesture onto a target element.
   *
   * Same element: a supports self-loop, no service round trip needed.
   * Otherwise /infer decides: required pairs get exactly the required
   * kind (no chooser ever appears); reverse-only pairs produce a
   * refusal popover offering the reversed edge.
   */
  async commitEdge(targetId: string): Promise<EdgeOutcome> {
    const pending = this.state.pendingEdge;
    if (!pending) return { outcome: "cancelled" };
    const bm = activeBm(this.state.model);
    const source = findElement(bm, pending.sourceId);
    const target = findElement(bm, targetId);
    this.state.pendingEdge = null;
    if (!source || !target) {
      this.emit();
      return { outcome: "cancelled" };
    }
    if (hasEdge(bm, source.id, target.id)) {
      this.state.banner = `${source.name} and ${target.name} are already connected this way`;
      this.emit();
      return { outcome: "duplicate" };
    }
    if (source.id === target.id) {
      this.finishEdge(bm, source.id, target.id, "supports");
      return { outcome: "created", kind: "supports" };
    }
    let verdict;
    try {
      verdict = await this.api.infer(abbrevOf(source), abbrevOf(target));
    } catch {
      this.state.banner = "validation service unreachable";
      this.emit();
      return { outcome: "cancelled" };
    }
    if (verdict.entry === "required") {
      this.finishEdge(bm, source.id, target.id, verdict.kind);
      return { outcome: "created", kind: verdict.kind };
    }
    const refusal: Refusal = {
      sourceId: source.id,
      targetId: target.id,
      reverseKind: verdict.kind,
      message: `reverse: ${target.name} ${verdict.kind} ${source.name}`,
    };
    this.state.refusal = refusal;
    this.emit();
    return { outcome: "refused", refusal };
  }

  private finishEdge(
    bm: ReturnType<typeof activeBm>,
    source: string,
    target: string,
    kind: RelationshipKindName,
  ): void {
    addEdge(bm, source, target, kind);
    this.state.dirty = true;
    this.state.banner = null;
    this.emit();
    void this.revalidate();
  }

  /** Accept the refusal popover's offer: draw the edge the way the
   * policy stores it. */
  acceptReversal(): EdgeOutcome {
    const refusal = this.state.refusal;
    if (!refusal) return { outcome: "cancelled" };
    this.state.refusal = null;
    const bm = activeBm(this.state.model);
    if (hasEdge(bm, refusal.targetId, refusal.sourceId)) {
      this.emit();
      return { outcome: "duplicate" };
    }
    this.finishEdge(bm, refusal.targetId, refusal.sourceId, refusal.reverseKind);
    return { outcome: "created", kind: refusal.reverseKind };
  }

  dismissRefusal(): void {
    this.state.refusal = null;
    this.emit();
  }

  // -- import / export ---------------------------------------------------

  /** Import DSL or JSON text. The model is replaced only when the
   * service echoes a valid model back; failures land in the
   * diagnostics panel and leave the canvas untouched. */
  async importText(source: "dsl" | "json", text: string): Promise<boolean> {
    let response;
    try {
      response = await this.api.validate(source, text);
    } catch {
      this.state.banner = "validation service unreachable";
      this.emit();
      return false;
    }
    this.state.diagnostics = response.diagnostics;
    this.state.ok = response.ok;
    if (response.ok && response.model) {
      this.state.model = response.model;
      this.state.selection = null;
      this.state.pendingEdge = null;
      this.state.refusal = null;
      this.state.dirty = false;
    }
    this.emit();
    return response.ok;
  }

  exportJson(): string {
    return JSON.stringify(this.state.model, null, 2) + "\n";
  }

  async exportDsl(): Promise<string> {
    const draft = toDsl(this.state.model);
    try {
      const response = await this.api.format(draft);
      if (response.ok && response.text) return response.text;
    } catch {
      this.state.banner = "validation service unreachable";
      this.emit();
    }
    return draft;
  }

  exportSvg(): Promise<string> {
    const bm = activeBm(this.state.model);
    return this.api.render("json", this.exportJson(), "svg", bm.name);
  }

  // -- diagnostics -------------------------------------------------------

  /** Refresh the diagnostics panel. Responses for superseded edits are
   * discarded by sequence number. */
  async revalidate(): Promise<void> {
    const seq = ++this.validateSeq;
    let response;
    try {
      response = await this.api.validate("json", this.exportJson());
    } catch {
      this.state.banner = "validation service unreachable";
      this.emit();
      return;
    }
    if (seq !== this.validateSeq) return; // stale
    this.state.diagnostics = response.diagnostics;
    this.state.ok = response.ok;
    this.state.banner = null;
    this.emit();
  }

  snapshot(): ModelJson {
    return cloneModel(this.state.model);
  }
}

function abbrevOf(element: ElementJson): string {
  return KIND_INFO.get(element.kind)!.abbrev;
}
