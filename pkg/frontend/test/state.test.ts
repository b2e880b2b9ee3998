import { describe, expect, it } from "vitest";

import type { OutcomeView, Phase, SessionView } from "../src/api.js";
import {
  allowedControls,
  applyView,
  boxWeights,
  emptyScore,
  frequency,
  initialState,
  isAllowed,
  isSemiclassicalMode,
  recordOutcome,
} from "../src/state.js";

const PHASES: Phase[] = [
  "Created",
  "HostPrepared",
  "PlayerChosen",
  "DoorOpened",
  "BetPlaced",
  "Resolved",
];

describe("phase gating", () => {
  it("allows exactly one control per phase, mirroring the service machine", () => {
    expect(allowedControls("Created")).toEqual(["host-prepare"]);
    expect(allowedControls("HostPrepared")).toEqual(["player-choose"]);
    expect(allowedControls("PlayerChosen")).toEqual(["open-door"]);
    expect(allowedControls("DoorOpened")).toEqual(["place-bet"]);
    expect(allowedControls("BetPlaced")).toEqual(["resolve"]);
    expect(allowedControls("Resolved")).toEqual(["host-prepare"]);
  });

  it("disables every other control in every phase", () => {
    for (const phase of PHASES) {
      const legal = allowedControls(phase);
      const all = [
        "host-prepare",
        "player-choose",
        "open-door",
        "place-bet",
        "resolve",
      ] as const;
      for (const control of all) {
        expect(isAllowed(phase, control)).toBe(legal.includes(control));
      }
    }
  });
});

describe("local score", () => {
  it("computes frequency as exactly wins/plays", () => {
    const score = emptyScore();
    expect(frequency(score, "switch")).toBeNull();
    const outcomes: OutcomeView[] = [
      { i: 1, j: 2, bet: "switch", win: true },
      { i: 2, j: 2, bet: "switch", win: false },
      { i: 3, j: 1, bet: "switch", win: true },
      { i: 1, j: 1, bet: "stay", win: true },
    ];
    for (const o of outcomes) recordOutcome(score, o);
    expect(score.switch).toEqual({ plays: 3, wins: 2 });
    expect(score.stay).toEqual({ plays: 1, wins: 1 });
    expect(frequency(score, "switch")).toBe(2 / 3);
    expect(frequency(score, "stay")).toBe(1);
  });

  it("counts an outcome once even if the same resolved view is applied twice", () => {
    const state = initialState();
    const resolved = {
      id: "g1",
      phase: "Resolved",
      entangled: false,
      noise_p: 0,
      rounds: 1,
      player_angles: [0.1, 0.2],
      bet: "switch",
      score: { switch: { wins: 1, losses: 0 }, stay: { wins: 0, losses: 0 } },
      door: null,
      outcome: { i: 1, j: 2, bet: "switch", win: true },
    } as SessionView;
    applyView(state, resolved);
    applyView(state, resolved);
    expect(state.score.switch.plays).toBe(1);
  });
});

describe("box weights from slider angles", () => {
  it("always sums to one", () => {
    for (let t1 = 0; t1 <= Math.PI / 2; t1 += 0.17) {
      for (let t2 = 0; t2 <= Math.PI / 2; t2 += 0.23) {
        const [w1, w2, w3] = boxWeights(t1, t2);
        expect(w1 + w2 + w3).toBeCloseTo(1, 12);
      }
    }
  });

  it("gives equal thirds at the uniform-superposition angles", () => {
    const [w1, w2, w3] = boxWeights(Math.acos(1 / Math.sqrt(3)), Math.PI / 4);
    expect(w1).toBeCloseTo(1 / 3, 12);
    expect(w2).toBeCloseTo(1 / 3, 12);
    expect(w3).toBeCloseTo(1 / 3, 12);
  });

  it("concentrates on one box at the classical corners", () => {
    expect(boxWeights(0, 0)[2]).toBeCloseTo(1, 12);
    expect(boxWeights(Math.PI / 2, 0)[0]).toBeCloseTo(1, 12);
    expect(boxWeights(Math.PI / 2, Math.PI / 2)[1]).toBeCloseTo(1, 12);
  });
});

describe("semiclassical mode flag", () => {
  it("requires no entanglement and zero noise", () => {
    expect(isSemiclassicalMode(false, 0)).toBe(true);
    expect(isSemiclassicalMode(true, 0)).toBe(false);
    expect(isSemiclassicalMode(false, 0.2)).toBe(false);
    expect(isSemiclassicalMode(true, 1)).toBe(false);
  });
});
