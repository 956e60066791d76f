/**
 * Canvas state is a pure projection of the service's session state.
 * The UI adds only interaction bookkeeping: which element is selected
 * and a version counter used to mark suggestion cards stale.
 */

import type {
  Guidance,
  LinearStep,
  Proposal,
  SchemaDraft,
  SessionStateResponse,
  SessionStatus,
  Suggestion,
} from "./types";

export type CanvasState = {
  sessionId: string;
  user: string;
  status: SessionStatus;
  draft: SchemaDraft;
  steps: LinearStep[];
  suggestion: Suggestion;
  corpusId: string | null;
  selected: string | null;
  version: number;
};

export type SuggestionCard = {
  proposal: Proposal;
  guidance: Guidance | null;
  kind: Suggestion["kind"];
  sentence: string;
  version: number;
};

const VERBS: Record<string, string> = {
  select_domain: "select the domain",
  select_model: "select the model",
  create_fact_table: "create a fact table",
  add_fact_key: "add a fact key",
  add_fact_attribute: "add a fact attribute",
  create_dimension_table: "create a dimension table",
  add_dimension_key: "add a dimension key",
  add_dimension_attribute: "add a dimension attribute",
  add_link: "add a link",
};

export function projectCanvas(
  state: SessionStateResponse,
  version: number,
  selected: string | null = null,
): CanvasState {
  return {
    sessionId: state.session,
    user: state.user,
    status: state.status,
    draft: state.draft,
    steps: state.steps,
    suggestion: state.suggestion,
    corpusId: state.corpus_id,
    selected,
    version,
  };
}

/** One human sentence per proposal, built from response fields only. */
export function describeProposal(proposal: Proposal): string {
  const verb = VERBS[proposal.process] ?? proposal.process;
  return `Next: ${verb} "${proposal.suggested_label}"`;
}

/** One card per proposal, in the service's order, pinned to a version. */
export function cardsFrom(canvas: CanvasState): SuggestionCard[] {
  return canvas.suggestion.proposals.map((proposal) => ({
    proposal,
    guidance: canvas.suggestion.guidance,
    kind: canvas.suggestion.kind,
    sentence: describeProposal(proposal),
    version: canvas.version,
  }));
}

export function isStale(card: SuggestionCard, canvas: CanvasState): boolean {
  return card.version !== canvas.version;
}
