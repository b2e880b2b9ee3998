// Browser entry point: wires the DOM controls to the game service. All game
// state lives on the server; every click is a round-trip and the screen is
// redrawn from the returned session view.

import { ApiError, GameClient, type Bet } from "./api.js";
import {
  renderDoor,
  renderError,
  renderOutcome,
  renderPhase,
  renderProbPreview,
  renderReveal,
  renderScore,
  renderWeightBars,
} from "./render.js";
import {
  allowedControls,
  applyError,
  applyView,
  boxWeights,
  initialState,
  isSemiclassicalMode,
  type Control,
} from "./state.js";

const client = new GameClient("");
const state = initialState();

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const els = {
  entangled: $<HTMLInputElement>("entangled"),
  noise: $<HTMLInputElement>("noise"),
  noiseValue: $<HTMLSpanElement>("noise-value"),
  newSession: $<HTMLButtonElement>("new-session"),
  phase: $<HTMLDivElement>("phase"),
  error: $<HTMLDivElement>("error"),
  hostPrepare: $<HTMLButtonElement>("host-prepare"),
  boxButtons: [1, 2, 3].map((i) => $<HTMLButtonElement>(`pick-box-${i}`)),
  theta1: $<HTMLInputElement>("theta1"),
  theta2: $<HTMLInputElement>("theta2"),
  weightBars: $<HTMLDivElement>("weight-bars"),
  chooseSuperposition: $<HTMLButtonElement>("choose-superposition"),
  openDoor: $<HTMLButtonElement>("open-door"),
  betSwitch: $<HTMLButtonElement>("bet-switch"),
  betStay: $<HTMLButtonElement>("bet-stay"),
  resolve: $<HTMLButtonElement>("resolve"),
  door: $<HTMLDivElement>("door"),
  outcome: $<HTMLDivElement>("outcome"),
  reveal: $<HTMLDivElement>("reveal"),
  score: $<HTMLDivElement>("score"),
  preview: $<HTMLDivElement>("preview"),
  autoplay: $<HTMLButtonElement>("autoplay"),
};

function sliderAngles(): [number, number] {
  return [parseFloat(els.theta1.value), parseFloat(els.theta2.value)];
}

function gate(control: Control, button: HTMLButtonElement) {
  const phase = state.view?.phase;
  button.disabled =
    state.busy || !phase || !allowedControls(phase).includes(control);
}

function redraw() {
  const view = state.view;
  els.phase.innerHTML = view ? renderPhase(view) : "no session";
  els.error.innerHTML = state.lastError ? renderError(state.lastError) : "";

  gate("host-prepare", els.hostPrepare);
  for (const b of els.boxButtons) gate("player-choose", b);
  gate("player-choose", els.chooseSuperposition);
  gate("open-door", els.openDoor);
  gate("place-bet", els.betSwitch);
  gate("place-bet", els.betStay);
  gate("resolve", els.resolve);
  els.newSession.disabled = state.busy;
  els.autoplay.disabled = state.busy;

  const [t1, t2] = sliderAngles();
  els.weightBars.innerHTML = renderWeightBars(boxWeights(t1, t2));

  els.door.innerHTML = view?.door ? renderDoor(view.door) : "";
  els.outcome.innerHTML = view?.outcome ? renderOutcome(view.outcome) : "";
  // host configuration exists on the view only after resolution
  els.reveal.innerHTML =
    view?.host && view.probabilities
      ? renderReveal(view.host, view.probabilities)
      : "";
  const semiclassical = view
    ? isSemiclassicalMode(view.entangled, view.noise_p)
    : isSemiclassicalMode(els.entangled.checked, parseFloat(els.noise.value));
  els.score.innerHTML = renderScore(state.score, semiclassical);
}

async function guarded(fn: () => Promise<void>) {
  state.busy = true;
  redraw();
  try {
    await fn();
  } catch (err) {
    applyError(
      state,
      err instanceof ApiError
        ? `${err.code}: ${err.message}`
        : String(err),
    );
  } finally {
    state.busy = false;
    redraw();
  }
}

async function doAction(
  action: Parameters<GameClient["act"]>[1],
): Promise<void> {
  if (!state.view) throw new Error("no session yet");
  const view = await client.act(state.view.id, action);
  applyView(state, view);
}

// Debounced single-game probability preview against projector door 3,
// computed by the service for the current sliders and noise settings.
let previewTimer: ReturnType<typeof setTimeout> | null = null;
function schedulePreview() {
  if (previewTimer) clearTimeout(previewTimer);
  previewTimer = setTimeout(() => void refreshPreview(), 250);
}

async function refreshPreview() {
  const [t1, t2] = sliderAngles();
  try {
    const job = await client.startSimulation({
      kind: "single-game",
      entangled: els.entangled.checked,
      noise_p: parseFloat(els.noise.value),
      phi1: 0,
      phi2: Math.PI / 2,
      player_angles: [t1, t2],
    });
    const done = await client.waitSimulation(job.id);
    if (done.status === "done" && done.result) {
      const { p_ns, p_s } = done.result as { p_ns: number; p_s: number };
      els.preview.innerHTML = renderProbPreview(p_ns, p_s);
    } else {
      els.preview.innerHTML = renderError(done.message ?? "simulation failed");
    }
  } catch (err) {
    els.preview.innerHTML = renderError(String(err));
  }
}

els.newSession.addEventListener("click", () =>
  guarded(async () => {
    const view = await client.createSession({
      entangled: els.entangled.checked,
      noise_p: parseFloat(els.noise.value),
    });
    state.score = initialState().score;
    state.view = view;
  }),
);

els.hostPrepare.addEventListener("click", () =>
  guarded(() => doAction({ action: "host-prepare" })),
);

els.boxButtons.forEach((button, idx) =>
  button.addEventListener("click", () =>
    guarded(() => doAction({ action: "player-choose", box: idx + 1 })),
  ),
);

els.chooseSuperposition.addEventListener("click", () =>
  guarded(() =>
    doAction({ action: "player-choose", angles: sliderAngles() }),
  ),
);

els.openDoor.addEventListener("click", () =>
  guarded(() => doAction({ action: "open-door" })),
);

const placeBet = (bet: Bet) =>
  guarded(() => doAction({ action: "place-bet", bet }));
els.betSwitch.addEventListener("click", () => placeBet("switch"));
els.betStay.addEventListener("click", () => placeBet("stay"));

els.resolve.addEventListener("click", () =>
  guarded(() => doAction({ action: "resolve" })),
);

// One-click demonstration: many rounds of the semiclassical flow betting
// switch, so the score bars settle visibly near the 2/3 line.
els.autoplay.addEventListener("click", () =>
  guarded(async () => {
    if (!state.view) {
      applyView(state, await client.createSession({}));
    }
    for (let round = 0; round < 100; round++) {
      await doAction({ action: "host-prepare" });
      await doAction({ action: "player-choose", box: 1 + (round % 3) });
      await doAction({ action: "open-door" });
      await doAction({ action: "place-bet", bet: "switch" });
      await doAction({ action: "resolve" });
      if (round % 10 === 9) redraw();
    }
  }),
);

for (const slider of [els.theta1, els.theta2]) {
  slider.addEventListener("input", () => {
    redraw();
    schedulePreview();
  });
}
els.noise.addEventListener("input", () => {
  els.noiseValue.textContent = parseFloat(els.noise.value).toFixed(2);
  schedulePreview();
});
els.entangled.addEventListener("change", schedulePreview);

redraw();
schedulePreview();
