/** Studio bootstrap: palette, board, diagnostics panel, import/export. */

import { ApiClient } from "./api.js";
import { renderBoard } from "./board.js";
import { KINDS } from "./model.js";
import { StudioStore } from "./studio.js";
import type { ElementKindName } from "./types.js";

const TIERS: Record<string, string> = {
  KE: "Key Elements",
  VE: "Value Elements",
  PE: "Performance Elements",
};

function apiBase(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("api") ?? "http://127.0.0.1:8765";
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function download(filename: string, text: string, type: string): void {
  const blob = new Blob([text], { type });
  const url = URL.createObjectURL(blob);
  const a = el("a");
  a.href = url;
  a.download = filename;
  a.click();
  URL.revokeObjectURL(url);
}

export function startStudio(root: HTMLElement): StudioStore {
  const store = new StudioStore(new ApiClient(apiBase()));
  let paletteKind: ElementKindName = "key_resource";

  root.innerHTML = "";
  const layout = el("div", "studio");
  const sidebar = el("div", "sidebar");
  const boardHost = el("div", "board-host");
  const board = el("div");
  boardHost.appendChild(board);
  layout.append(sidebar, boardHost);
  root.appendChild(layout);

  // palette: three tiers of element kinds
  const palette = el("div", "palette");
  sidebar.appendChild(el("h2", undefined, "Palette"));
  for (const tier of ["KE", "VE", "PE"]) {
    palette.appendChild(el("h3", "tier", TIERS[tier]));
    for (const info of KINDS.filter((k) => k.tier === tier)) {
      const button = el("button", "palette-kind", `${info.title} (${info.abbrev})`);
      button.dataset.kind = info.kind;
      button.addEventListener("click", () => {
        paletteKind = info.kind;
        palette
          .querySelectorAll(".palette-kind")
          .forEach((b) => b.classList.toggle("active", b === button));
      });
      palette.appendChild(button);
    }
  }
  sidebar.appendChild(palette);
  sidebar.appendChild(
    el("p", "help",
       "Pick a kind, then click the board to add an element. Click an " +
       "element, then another, to draw a relationship; the kind is " +
       "inferred and illegal directions are refused."),
  );

  // toolbar
  const toolbar = el("div", "toolbar");
  const importButton = el("button", undefined, "Import…");
  const exportJson = el("button", undefined, "JSON");
  const exportDsl = el("button", undefined, "DSL");
  const exportSvg = el("button", undefined, "SVG");
  toolbar.append(importButton, el("span", "label", "export:"),
                 exportJson, exportDsl, exportSvg);
  sidebar.appendChild(toolbar);

  const importBox = el("textarea", "import-box") as HTMLTextAreaElement;
  importBox.placeholder = "Paste model text (.bmc or JSON), then press Load";
  const importLoad = el("button", undefined, "Load");
  importBox.style.display = "none";
  importLoad.style.display = "none";
  sidebar.append(importBox, importLoad);

  const banner = el("div", "banner");
  const popover = el("div", "refusal");
  const diagnosticsPanel = el("div", "diagnostics");
  sidebar.append(banner, popover, el("h2", undefined, "Diagnostics"), diagnosticsPanel);

  importButton.addEventListener("click", () => {
    const visible = importBox.style.display !== "none";
    importBox.style.display = visible ? "none" : "block";
    importLoad.style.display = visible ? "none" : "block";
  });
  importLoad.addEventListener("click", () => {
    const text = importBox.value;
    const source = text.trimStart().startsWith("{") ? "json" : "dsl";
    void store.importText(source, text);
  });
  exportJson.addEventListener("click", () =>
    download("model.json", store.exportJson(), "application/json"),
  );
  exportDsl.addEventListener("click", () => {
    void store.exportDsl().then((text) =>
      download("model.bmc", text, "text/plain"),
    );
  });
  exportSvg.addEventListener("click", () => {
    void store.exportSvg().then((text) =>
      download("model.svg", text, "image/svg+xml"),
    );
  });

  const handlers = {
    onBlockClick: (kind: ElementKindName) => {
      // elements always land in their own kind's block; the palette
      // decides what gets created, not the clicked block
      void kind;
      store.paletteCreate(paletteKind);
    },
    onElementClick: (id: string) => {
      if (store.state.pendingEdge) {
        void store.commitEdge(id);
      } else if (store.state.selection === id) {
        store.beginEdge(id);
      } else {
        store.select(id);
      }
    },
    onElementHover: (id: string | null) => {
      if (store.state.pendingEdge) store.hoverTarget(id);
    },
  };

  store.onChange((state) => {
    renderBoard(board, state, handlers);
    banner.textContent = state.banner ?? "";
    banner.style.display = state.banner ? "block" : "none";

    popover.innerHTML = "";
    if (state.refusal) {
      popover.style.display = "block";
      popover.appendChild(
        el("p", undefined,
           "That direction is not allowed. " + state.refusal.message),
      );
      const accept = el("button", undefined,
                        `reverse this edge (${state.refusal.reverseKind})`);
      accept.addEventListener("click", () => store.acceptReversal());
      const dismiss = el("button", undefined, "cancel");
      dismiss.addEventListener("click", () => store.dismissRefusal());
      popover.append(accept, dismiss);
    } else {
      popover.style.display = "none";
    }

    diagnosticsPanel.innerHTML = "";
    if (!state.diagnostics.length) {
      diagnosticsPanel.appendChild(el("p", "quiet", "no findings"));
    }
    for (const diag of state.diagnostics) {
      const row = el("div", `diag ${diag.severity}`);
      const head = diag.rule ? `${diag.code} [${diag.rule}]` : diag.code;
      row.appendChild(el("strong", undefined, head));
      row.appendChild(el("span", undefined, ` ${diag.message}`));
      if (diag.hint) row.appendChild(el("div", "hint", diag.hint));
      diagnosticsPanel.appendChild(row);
    }
  });

  void store.init().then(() => store.revalidate());
  return store;
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root) startStudio(root);
}
