/**
 * Pure renderers: service data in, markup strings out. Every piece of
 * text shown to the user comes from a response field; the only local
 * vocabulary is the sentence verbs and static chrome.
 */

import { layoutDraft } from "./layout";
import type { CanvasState, SuggestionCard } from "./state";
import { isStale } from "./state";
import type { SchemaDraft, Violation } from "./types";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export function renderCanvas(draft: SchemaDraft): string {
  const layout = layoutDraft(draft);
  const parts: string[] = [
    `<svg class="canvas" viewBox="0 0 ${layout.width} ${layout.height}" ` +
      `width="${layout.width}" height="${layout.height}">`,
  ];
  for (const edge of layout.edges) {
    const dash = edge.snowflake ? ' stroke-dasharray="6 3"' : "";
    parts.push(
      `<line class="link" x1="${edge.x1}" y1="${edge.y1}" x2="${edge.x2}" ` +
        `y2="${edge.y2}"${dash}><title>${escapeHtml(edge.label)}</title></line>`,
    );
  }
  for (const box of layout.boxes) {
    parts.push(`<g class="table ${box.role}" transform="translate(${box.x},${box.y})">`);
    parts.push(`<rect width="${box.width}" height="${box.height}" rx="4"></rect>`);
    parts.push(`<text class="title" x="8" y="18">${escapeHtml(box.name)}</text>`);
    let y = 26;
    for (const key of box.keys) {
      y += 20;
      parts.push(`<text class="field key" x="8" y="${y}">${escapeHtml(key)} (key)</text>`);
    }
    for (const attribute of box.attributes) {
      y += 20;
      parts.push(`<text class="field" x="8" y="${y}">${escapeHtml(attribute)}</text>`);
    }
    parts.push("</g>");
  }
  parts.push("</svg>");
  return parts.join("");
}

export function renderHeader(canvas: CanvasState): string {
  const domain = canvas.draft.domain ? escapeHtml(canvas.draft.domain) : "(no domain)";
  const model = canvas.draft.model ? escapeHtml(canvas.draft.model) : "(no model)";
  return (
    `<span class="session">${escapeHtml(canvas.sessionId)}</span> ` +
    `<span class="domain">${domain}</span> / <span class="model">${model}</span> ` +
    `<span class="status">${canvas.status}</span>`
  );
}

export function renderViolations(violations: Violation[]): string {
  if (violations.length === 0) return "";
  const items = violations
    .map(
      (v) =>
        `<li class="violation" data-code="${escapeHtml(v.code)}">` +
        `${escapeHtml(v.message)}</li>`,
    )
    .join("");
  return `<ul class="violations">${items}</ul>`;
}

export function renderCard(card: SuggestionCard, canvas: CanvasState): string {
  const stale = isStale(card, canvas);
  const note = card.guidance ? `<p class="note">${escapeHtml(card.guidance.note)}</p>` : "";
  const buttons = stale
    ? '<button class="accept" disabled>accept</button>'
    : '<button class="accept">accept</button>';
  return (
    `<div class="card ${card.kind}${stale ? " stale" : ""}" ` +
    `data-score="${card.proposal.score}">` +
    `<p class="sentence">${escapeHtml(card.sentence)}</p>${note}` +
    `${buttons}<button class="dismiss">dismiss</button></div>`
  );
}

export function renderSuggestionPanel(cards: SuggestionCard[], canvas: CanvasState): string {
  if (cards.length === 0) {
    return '<p class="no-advice">No advice for this step.</p>';
  }
  return cards.map((card) => renderCard(card, canvas)).join("");
}
