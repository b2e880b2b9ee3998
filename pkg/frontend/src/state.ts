// Client-side mirror of the service's session state machine plus the local
// score history. All game state changes go through the service; this module
// only tracks what came back and decides which controls are legal.

import type { Bet, OutcomeView, Phase, SessionView } from "./api.js";

export type Control =
  | "host-prepare"
  | "player-choose"
  | "open-door"
  | "place-bet"
  | "resolve";

// Which action is legal in which phase. Resolved allows host-prepare again
// so the next round starts without a new session.
const LEGAL: Record<Phase, Control[]> = {
  Created: ["host-prepare"],
  HostPrepared: ["player-choose"],
  PlayerChosen: ["open-door"],
  DoorOpened: ["place-bet"],
  BetPlaced: ["resolve"],
  Resolved: ["host-prepare"],
};

export function allowedControls(phase: Phase): Control[] {
  return LEGAL[phase];
}

export function isAllowed(phase: Phase, control: Control): boolean {
  return LEGAL[phase].includes(control);
}

export interface BetRecord {
  plays: number;
  wins: number;
}

export interface LocalScore {
  switch: BetRecord;
  stay: BetRecord;
}

export function emptyScore(): LocalScore {
  return { switch: { plays: 0, wins: 0 }, stay: { plays: 0, wins: 0 } };
}

export function recordOutcome(score: LocalScore, outcome: OutcomeView): void {
  const slot = score[outcome.bet];
  slot.plays += 1;
  if (outcome.win) slot.wins += 1;
}

// Exact local frequency; null until the first play with that bet.
export function frequency(score: LocalScore, bet: Bet): number | null {
  const slot = score[bet];
  return slot.plays === 0 ? null : slot.wins / slot.plays;
}

// Alice's box amplitudes from her two rotator angles (the V column of the
// transfer map); returns the three |a_i|^2 the sliders are shaping.
export function boxWeights(t1: number, t2: number): [number, number, number] {
  const a1 = -Math.sin(t1) * Math.cos(t2);
  const a2 = -Math.sin(t1) * Math.sin(t2);
  const a3 = Math.cos(t1);
  return [a1 * a1, a2 * a2, a3 * a3];
}

export interface ClientState {
  view: SessionView | null;
  score: LocalScore;
  lastError: string | null;
  busy: boolean;
}

export function initialState(): ClientState {
  return { view: null, score: emptyScore(), lastError: null, busy: false };
}

// Fold a fresh service view into the client state. The outcome is counted
// exactly once: only when the view just turned Resolved.
export function applyView(state: ClientState, view: SessionView): void {
  const wasResolved = state.view?.phase === "Resolved";
  if (view.phase === "Resolved" && !wasResolved && view.outcome) {
    recordOutcome(state.score, view.outcome);
  }
  state.view = view;
  state.lastError = null;
}

export function applyError(state: ClientState, message: string): void {
  state.lastError = message;
}

// Semiclassical mode means the comparison lines at 2/3 and 1/3 make sense:
// no entanglement, no noise, and the player left the sliders alone or the
// host kept the uniform prize. The client flags it from what it controls.
export function isSemiclassicalMode(
  entangled: boolean,
  noiseP: number,
): boolean {
  return !entangled && noiseP === 0;
}
