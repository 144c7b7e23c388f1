/** HTML renderers. Every function returns markup as a string so the view
 * layer stays testable without a browser; main.ts owns the DOM. */

import type { ReviewSession } from "./session.js";
import type { Candidate, EntryDetail, EntrySummary } from "./types.js";
import { RELATIONS } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

export function formatScore(score: number | null): string {
  return score === null ? "-" : score.toFixed(4);
}

export function renderEntryList(entries: readonly EntrySummary[], currentId: number | null): string {
  const rows = entries
    .map((e) => {
      const cells = e.n_left * e.n_right;
      const classes = ["entry-row"];
      if (e.id === currentId) classes.push("active");
      if (cells > 0 && e.n_decided >= cells) classes.push("done");
      return (
        `<li class="${classes.join(" ")}" data-action="open-entry" data-entry-id="${e.id}">` +
        `<span class="lemma">${escapeHtml(e.lemma)}</span>` +
        `<span class="pos">${escapeHtml(e.pos)}</span>` +
        `<span class="progress">${e.n_decided}/${cells}</span>` +
        `</li>`
      );
    })
    .join("");
  return `<ul class="entries">${rows}</ul>`;
}

function senseColumn(side: "L" | "R", senses: EntryDetail["left_senses"]): string {
  const items = senses
    .map((sense, i) => {
      const id = sense.external_id ? ` <span class="ext">${escapeHtml(sense.external_id)}</span>` : "";
      return `<li><span class="tag">${side}${i + 1}</span>${id} ${escapeHtml(sense.text)}</li>`;
    })
    .join("");
  return `<ol class="senses">${items}</ol>`;
}

export function decisionBadge(c: Candidate): string {
  if (c.decided) {
    return c.decided.accepted
      ? `<span class="badge accepted">${escapeHtml(c.decided.relation)}</span>`
      : `<span class="badge rejected">rejected</span>`;
  }
  if (c.relation) return `<span class="badge proposed">${escapeHtml(c.relation)}</span>`;
  return `<span class="badge open">unreviewed</span>`;
}

function relationSelect(c: Candidate): string {
  const selected = c.decided?.accepted ? c.decided.relation : (c.relation ?? "exact");
  const options = RELATIONS.map(
    (r) => `<option value="${r}"${r === selected ? " selected" : ""}>${r}</option>`,
  ).join("");
  return (
    `<select class="relation" data-action="relabel" data-source="${c.source}" data-target="${c.target}">` +
    options +
    `</select>`
  );
}

export function renderCandidates(ordered: readonly Candidate[], cursor: number): string {
  const rows = ordered
    .map((c, i) => {
      const classes = ["candidate"];
      if (i === cursor) classes.push("cursor");
      if (c.decided) classes.push(c.decided.accepted ? "decided" : "struck");
      const pair = `L${c.source + 1} &#8594; R${c.target + 1}`;
      return (
        `<tr class="${classes.join(" ")}" data-row="${i}">` +
        `<td class="pair">${pair}</td>` +
        `<td class="score">${formatScore(c.score)}</td>` +
        `<td>${decisionBadge(c)}</td>` +
        `<td>${relationSelect(c)}</td>` +
        `<td class="buttons">` +
        `<button data-action="accept" data-source="${c.source}" data-target="${c.target}">accept</button>` +
        `<button data-action="reject" data-source="${c.source}" data-target="${c.target}">reject</button>` +
        `</td></tr>`
      );
    })
    .join("");
  return (
    `<table class="grid"><thead><tr>` +
    `<th>pair</th><th>score</th><th>state</th><th>relation</th><th></th>` +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

export function renderEntryPanel(detail: EntryDetail, ordered: readonly Candidate[], cursor: number): string {
  return (
    `<section class="entry-panel">` +
    `<h2>${escapeHtml(detail.lemma)} <span class="pos">${escapeHtml(detail.pos)}</span></h2>` +
    `<div class="columns">` +
    `<div class="col">${senseColumn("L", detail.left_senses)}</div>` +
    `<div class="col">${senseColumn("R", detail.right_senses)}</div>` +
    `</div>` +
    renderCandidates(ordered, cursor) +
    `</section>`
  );
}

export function renderBanner(session: ReviewSession): string {
  const parts: string[] = [];
  if (session.lastError) {
    parts.push(
      `<div class="banner error">${escapeHtml(session.lastError)} ` +
        `<button data-action="retry">retry</button></div>`,
    );
  }
  if (session.pending.length > 0) {
    parts.push(`<div class="banner pending">${session.pending.length} decision(s) queued offline</div>`);
  }
  if (session.conflict) {
    parts.push(`<div class="banner conflict">entries changed outside this session, view refreshed</div>`);
  }
  return parts.join("");
}

export function renderExportControl(canExport: boolean): string {
  const disabled = canExport ? "" : " disabled";
  return `<button class="export" data-action="export"${disabled}>export decisions</button>`;
}

const HOTKEYS = "a accept / x reject / 1-5 relabel / j k pair / n p entry / e export";

export function renderApp(session: ReviewSession): string {
  if (session.status === "loading") {
    return `<div class="screen">loading entries&hellip;</div>`;
  }
  if (session.status === "error") {
    return `<div class="screen">${renderBanner(session)}</div>`;
  }
  if (session.status === "empty") {
    return (
      `<div class="screen empty">${renderBanner(session)}` +
      `<p>The service holds no entries. Run an alignment and serve its output.</p></div>`
    );
  }
  const detail = session.detail;
  const panel = detail
    ? renderEntryPanel(detail, session.orderedCandidates(), session.cursor)
    : "";
  return (
    renderBanner(session) +
    `<div class="layout">` +
    `<aside>${renderEntryList(session.entries, detail?.id ?? null)}${renderExportControl(session.canExport)}</aside>` +
    `<main>${panel}</main>` +
    `</div>` +
    `<footer class="hotkeys">${HOTKEYS}</footer>`
  );
}
