/**
 * Session controller: owns the canvas state and talks to the service.
 *
 * Rules it enforces:
 * - one request in flight per session; clicks queue in arrival order
 * - an applied action re-fetches state, so the canvas never drifts
 *   from render(get_state)
 * - a rejected action changes nothing and surfaces its violations
 * - suggestion cards go stale the moment any later action applies,
 *   checked when the accept actually runs, not when it was clicked
 */

import type { ServiceClient } from "./api";
import type { CanvasState, SuggestionCard } from "./state";
import { cardsFrom, projectCanvas } from "./state";
import type { EventRequest, Violation } from "./types";

export type ActionOutcome =
  | { status: "applied"; canvas: CanvasState }
  | { status: "rejected"; violations: Violation[] };

export type AcceptOutcome = ActionOutcome | { status: "stale" } | { status: "cancelled" };

/** Supplies the real name (and context) for an accepted proposal. */
export type NamePrompt = (
  card: SuggestionCard,
) => Promise<{ label: string; context: string | null } | null>;

export class SessionController {
  private canvasState: CanvasState | null = null;
  private version = 0;
  private chain: Promise<unknown> = Promise.resolve();

  constructor(private readonly client: ServiceClient) {}

  get canvas(): CanvasState {
    if (!this.canvasState) throw new Error("no session open");
    return this.canvasState;
  }

  get isOpen(): boolean {
    return this.canvasState !== null;
  }

  /** Serialize jobs: each waits for the previous one, even after failures. */
  private enqueue<T>(job: () => Promise<T>): Promise<T> {
    const run = this.chain.then(job, job);
    this.chain = run.catch(() => undefined);
    return run;
  }

  private async refresh(): Promise<CanvasState> {
    const state = await this.client.getState(this.canvas.sessionId);
    this.canvasState = projectCanvas(state, this.version, this.canvas.selected);
    return this.canvasState;
  }

  private async postAndRefresh(event: EventRequest): Promise<ActionOutcome> {
    const result = await this.client.postEvent(this.canvas.sessionId, event);
    if (!result.applied) {
      return { status: "rejected", violations: result.validation.violations };
    }
    this.version += 1;
    const canvas = await this.refresh();
    return { status: "applied", canvas };
  }

  open(user: string, session: string | null = null): Promise<CanvasState> {
    return this.enqueue(async () => {
      const created = await this.client.createSession(user, session);
      const state = await this.client.getState(created.session);
      this.version = 0;
      this.canvasState = projectCanvas(state, this.version);
      return this.canvasState;
    });
  }

  performAction(event: EventRequest): Promise<ActionOutcome> {
    return this.enqueue(() => this.postAndRefresh(event));
  }

  /** Cards for the current suggestion, pinned to the current version. */
  cards(): SuggestionCard[] {
    return cardsFrom(this.canvas);
  }

  acceptSuggestion(card: SuggestionCard, prompt: NamePrompt): Promise<AcceptOutcome> {
    return this.enqueue(async () => {
      if (card.version !== this.version) return { status: "stale" as const };
      const named = await prompt(card);
      if (named === null) return { status: "cancelled" as const };
      return this.postAndRefresh({
        process: card.proposal.process,
        object: card.proposal.object,
        label: named.label,
        context: named.context,
      });
    });
  }

  select(element: string | null): void {
    if (this.canvasState) this.canvasState = { ...this.canvasState, selected: element };
  }

  complete(): Promise<string> {
    return this.enqueue(async () => {
      const done = await this.client.complete(this.canvas.sessionId);
      await this.refresh();
      return done.corpus_id;
    });
  }
}
