/** Browser entry point: wires the session to the DOM and the keyboard. */

import { ApiClient } from "./api.js";
import { actionForKey } from "./keymap.js";
import { ReviewSession } from "./session.js";
import { isRelation } from "./types.js";
import { renderApp } from "./view.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

// same origin by default; ?api=http://host:port reaches a service elsewhere
const apiBase = new URLSearchParams(window.location.search).get("api") ?? "";
const session = new ReviewSession(new ApiClient(apiBase));

function paint(): void {
  root!.innerHTML = renderApp(session);
}

async function run(task: () => Promise<unknown>): Promise<void> {
  try {
    await task();
  } catch (err) {
    session.lastError = err instanceof Error ? err.message : String(err);
  }
  paint();
}

async function downloadExport(): Promise<void> {
  const text = await session.exportText();
  // the blob carries the server's bytes untouched
  const blob = new Blob([text], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = "alignment-review.json";
  a.click();
  URL.revokeObjectURL(url);
}

function pairOf(el: HTMLElement): { source: number; target: number } {
  return { source: Number(el.dataset.source), target: Number(el.dataset.target) };
}

root.addEventListener("click", (event) => {
  const el = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (!el || !(el instanceof HTMLButtonElement || el.tagName === "LI")) return;
  const entryId = session.detail?.id;
  switch (el.dataset.action) {
    case "retry":
      void run(() => session.load());
      break;
    case "export":
      void run(() => downloadExport());
      break;
    case "open-entry":
      void run(() => session.open(Number(el.dataset.entryId)));
      break;
    case "accept": {
      if (entryId === undefined) break;
      const { source, target } = pairOf(el);
      const select = root!.querySelector<HTMLSelectElement>(
        `select[data-source="${source}"][data-target="${target}"]`,
      );
      const relation = select && isRelation(select.value) ? select.value : "exact";
      void run(() =>
        session.decide(entryId, { source, target, relation, accepted: relation !== "none" }),
      );
      break;
    }
    case "reject": {
      if (entryId === undefined) break;
      const { source, target } = pairOf(el);
      void run(() => session.decide(entryId, { source, target, relation: "none", accepted: false }));
      break;
    }
  }
});

// dropdown change posts the relabel straight away
root.addEventListener("change", (event) => {
  const el = event.target as HTMLSelectElement;
  if (el.dataset.action !== "relabel" || session.detail === null) return;
  const value = el.value;
  if (!isRelation(value)) return;
  const { source, target } = pairOf(el);
  void run(() =>
    session.decide(session.detail!.id, { source, target, relation: value, accepted: value !== "none" }),
  );
});

document.addEventListener("keydown", (event) => {
  const target = event.target as HTMLElement;
  if (["SELECT", "INPUT", "TEXTAREA"].includes(target.tagName)) return;
  if (event.ctrlKey || event.altKey || event.metaKey) return;
  const action = actionForKey(event.key);
  if (!action || session.status !== "ready") return;
  event.preventDefault();
  switch (action.kind) {
    case "accept":
      void run(() => session.acceptCurrent());
      break;
    case "reject":
      void run(() => session.rejectCurrent());
      break;
    case "relabel":
      void run(() => session.relabelCurrent(action.relation));
      break;
    case "move":
      session.moveCursor(action.step);
      paint();
      break;
    case "entry":
      void run(() => session.openByStep(action.step));
      break;
    case "export":
      if (session.canExport) void run(() => downloadExport());
      break;
  }
});

paint();
void run(() => session.load());
