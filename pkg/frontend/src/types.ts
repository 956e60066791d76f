/**
 * Service payload types, mirroring the assistant's HTTP JSON exactly.
 * Nothing here is computed client-side; these shapes are what the
 * endpoints return.
 */

export type ProcessToken =
  | "select_domain"
  | "select_model"
  | "create_fact_table"
  | "add_fact_key"
  | "add_fact_attribute"
  | "create_dimension_table"
  | "add_dimension_key"
  | "add_dimension_attribute"
  | "add_link";

export type ObjectToken =
  | "domain"
  | "model"
  | "fact_table"
  | "dimension_table"
  | "fact_key"
  | "fact_attribute"
  | "dimension_key"
  | "dimension_attribute"
  | "link";

export type SessionStatus = "active" | "completed" | "abandoned";

export type EventRequest = {
  process: ProcessToken;
  object?: ObjectToken;
  label: string;
  context: string | null;
};

export type TableDraft = {
  name: string;
  keys: string[];
  attributes: string[];
};

export type LinkDraft = {
  fact_table: string;
  fact_key: string;
  dimension_table: string;
  dimension_to_dimension: boolean;
};

export type SchemaDraft = {
  domain: string;
  model: string | null;
  fact_tables: TableDraft[];
  dimension_tables: TableDraft[];
  links: LinkDraft[];
};

export type Violation = {
  code: string;
  message: string;
  subject: string;
};

export type ValidationReport = {
  ok: boolean;
  violations: Violation[];
};

export type Proposal = {
  process: ProcessToken;
  object: ObjectToken;
  suggested_label: string;
  source: string;
  score: number;
};

export type Guidance = {
  object: ObjectToken;
  required_context: ProcessToken | null;
  prior_steps: ProcessToken[];
  note: string;
};

export type SuggestionKind = "exact_continuation" | "candidates" | "no_advice";

export type Suggestion = {
  kind: SuggestionKind;
  proposals: Proposal[];
  guidance: Guidance | null;
};

export type LinearStep = {
  seq: number;
  process: ProcessToken;
  object: ObjectToken;
  label: string;
};

export type CreateSessionResponse = { session: string };

export type PostEventResponse = {
  applied: boolean;
  validation: ValidationReport;
  suggestion: Suggestion;
};

export type SessionStateResponse = {
  session: string;
  user: string;
  status: SessionStatus;
  draft: SchemaDraft;
  steps: LinearStep[];
  suggestion: Suggestion;
  corpus_id: string | null;
};

export type CompleteResponse = { corpus_id: string };

export type CorpusStatsResponse = {
  records: number;
  domains: Record<string, number>;
};

export type HealthResponse = { status: string };
