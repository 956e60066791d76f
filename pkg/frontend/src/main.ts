/**
 * Browser bootstrap: wires the controller to the page. All markup
 * comes from the pure renderers; this file only handles DOM events
 * and the name prompt.
 */

import { HttpServiceClient, ServiceError } from "./api";
import { SessionController } from "./controller";
import { renderCanvas, renderHeader, renderSuggestionPanel, renderViolations } from "./render";
import type { SuggestionCard } from "./state";
import type { EventRequest, ProcessToken } from "./types";

const PROCESSES: ProcessToken[] = [
  "select_domain",
  "select_model",
  "create_fact_table",
  "add_fact_key",
  "add_fact_attribute",
  "create_dimension_table",
  "add_dimension_key",
  "add_dimension_attribute",
  "add_link",
];

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function setup(): void {
  const client = new HttpServiceClient("");
  const controller = new SessionController(client);
  let cards: SuggestionCard[] = [];

  const canvasHost = el<HTMLDivElement>("canvas");
  const headerHost = el<HTMLDivElement>("header");
  const panelHost = el<HTMLDivElement>("panel");
  const bannerHost = el<HTMLDivElement>("banner");
  const processInput = el<HTMLSelectElement>("process");
  const labelInput = el<HTMLInputElement>("label");
  const contextInput = el<HTMLInputElement>("context");

  for (const token of PROCESSES) {
    const option = document.createElement("option");
    option.value = token;
    option.textContent = token;
    processInput.appendChild(option);
  }

  function repaint(): void {
    if (!controller.isOpen) return;
    const canvas = controller.canvas;
    cards = controller.cards();
    headerHost.innerHTML = renderHeader(canvas);
    canvasHost.innerHTML = renderCanvas(canvas.draft);
    panelHost.innerHTML = renderSuggestionPanel(cards, canvas);
    panelHost.querySelectorAll<HTMLButtonElement>(".card .accept").forEach((button, index) => {
      button.addEventListener("click", () => void accept(cards[index]));
    });
    panelHost.querySelectorAll<HTMLButtonElement>(".card .dismiss").forEach((button) => {
      button.addEventListener("click", () => {
        const card = button.closest(".card");
        if (card) card.remove();
      });
    });
  }

  function showError(message: string): void {
    bannerHost.innerHTML = `<p class="error">${message} <button id="retry">dismiss</button></p>`;
    const retry = document.getElementById("retry");
    if (retry) retry.addEventListener("click", () => (bannerHost.innerHTML = ""));
  }

  async function perform(event: EventRequest): Promise<void> {
    try {
      const outcome = await controller.performAction(event);
      if (outcome.status === "rejected") {
        bannerHost.innerHTML = renderViolations(outcome.violations);
      } else {
        bannerHost.innerHTML = "";
        repaint();
      }
    } catch (error) {
      const reason = error instanceof ServiceError ? error.message : "network failure, retry";
      showError(reason);
    }
  }

  async function accept(card: SuggestionCard): Promise<void> {
    const outcome = await controller.acceptSuggestion(card, async (current) => {
      const label = window.prompt("Name for this step:", current.proposal.suggested_label);
      if (label === null || label.trim() === "") return null;
      const needsContext =
        current.guidance !== null &&
        current.guidance.required_context !== null &&
        current.proposal.process !== "add_link";
      const context = needsContext ? window.prompt("Inside which element?", "") : null;
      return { label: label.trim(), context: context ? context.trim() : null };
    });
    if (outcome.status === "rejected") {
      bannerHost.innerHTML = renderViolations(outcome.violations);
    } else if (outcome.status === "applied") {
      bannerHost.innerHTML = "";
      repaint();
    }
  }

  el<HTMLFormElement>("action-form").addEventListener("submit", (submit) => {
    submit.preventDefault();
    if (!controller.isOpen) return;
    const context = contextInput.value.trim();
    void perform({
      process: processInput.value as ProcessToken,
      label: labelInput.value.trim(),
      context: context === "" ? null : context,
    });
    labelInput.value = "";
  });

  el<HTMLFormElement>("open-form").addEventListener("submit", (submit) => {
    submit.preventDefault();
    const user = el<HTMLInputElement>("user").value.trim();
    if (user === "") return;
    void controller
      .open(user)
      .then(() => repaint())
      .catch(() => showError("could not open a session"));
  });

  el<HTMLButtonElement>("complete").addEventListener("click", () => {
    if (!controller.isOpen) return;
    void controller
      .complete()
      .then((corpusId) => showError(`stored as ${corpusId}`))
      .catch((error) =>
        showError(error instanceof ServiceError ? error.message : "network failure, retry"),
      );
  });
}

document.addEventListener("DOMContentLoaded", setup);
