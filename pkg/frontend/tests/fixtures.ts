/**
 * Typed access to fixtures.json, which gen_fixtures.py captures from
 * the real HTTP service. Tests replay these payloads so everything a
 * test displays or asserts on is a genuine service response.
 */

import type {
  CompleteResponse,
  CreateSessionResponse,
  PostEventResponse,
  SessionStateResponse,
} from "../src/types";
import raw from "./fixtures.json";

export type FixtureRequest = {
  process: string;
  label: string;
  context: string | null;
};

export type FixtureStep = {
  request: FixtureRequest;
  event: PostEventResponse;
  state: SessionStateResponse;
};

export type WalkthroughFixture = {
  user: string;
  create: CreateSessionResponse;
  initial: SessionStateResponse;
  steps: FixtureStep[];
  complete: CompleteResponse;
};

export type RejectionFixture = {
  user: string;
  create: CreateSessionResponse;
  initial: SessionStateResponse;
  applied: FixtureStep[];
  before: SessionStateResponse;
  request: FixtureRequest;
  event: PostEventResponse;
  after: SessionStateResponse;
};

export type Fixtures = {
  walkthrough: WalkthroughFixture;
  rejection: RejectionFixture;
};

export const fixtures = raw as unknown as Fixtures;
