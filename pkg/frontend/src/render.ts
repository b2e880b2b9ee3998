// Pure HTML-string renderers. Keeping these free of document access makes
// them testable without a browser; main.ts assigns the strings to innerHTML.

import type { DoorView, HostView, OutcomeView, SessionView } from "./api.js";
import { frequency, type LocalScore } from "./state.js";

const BOX_LABELS = ["box 1", "box 2", "box 3"];

export function fmt(x: number, digits = 3): string {
  return x.toFixed(digits);
}

export function pct(x: number): string {
  return `${Math.round(x * 100)}%`;
}

// Three horizontal bars for |a_i|^2; widths in percent of the row.
export function renderWeightBars(weights: [number, number, number]): string {
  return weights
    .map((w, i) => {
      const width = Math.max(0, Math.min(100, w * 100));
      return `
      <div class="bar-row">
        <span class="bar-label">${BOX_LABELS[i]}</span>
        <div class="bar-track"><div class="bar-fill" style="width:${width.toFixed(1)}%"></div></div>
        <span class="bar-value">${pct(w)}</span>
      </div>`;
    })
    .join("");
}

export function renderDoor(door: DoorView): string {
  const blocked =
    door.blocked_box === null
      ? "no box fully blocked"
      : `box ${door.blocked_box} blocked`;
  const coeffs = door.coefficients.map((c) => fmt(c)).join(", ");
  return `
    <p>The host opened the door: &phi;<sub>1</sub> = ${fmt(door.phi1)},
    &phi;<sub>2</sub> = ${fmt(door.phi2)}, &phi;<sub>3</sub> = ${fmt(door.phi3)}</p>
    <p>door coefficients (${coeffs}); ${blocked}</p>`;
}

export function renderOutcome(outcome: OutcomeView): string {
  const verdict = outcome.win ? "won" : "lost";
  const switchWould = outcome.i !== outcome.j;
  return `
    <p class="outcome ${outcome.win ? "win" : "loss"}">
    Coincidence (A${outcome.i}, B${outcome.j}): you bet ${outcome.bet} and ${verdict}.
    Switching ${switchWould ? "would have won" : "would have lost"} this round.</p>`;
}

// Post-resolution host reveal plus the current configuration's (P_ns, P_s).
// Never call this before the view carries the host block.
export function renderReveal(
  host: HostView,
  probabilities: { p_ns: number; p_s: number },
): string {
  const prize =
    typeof host.prize === "string"
      ? host.prize
      : `(${host.prize.map((x) => fmt(x)).join(", ")})`;
  const policy =
    typeof host.door_policy === "string"
      ? host.door_policy
      : `(${host.door_policy.map((x) => fmt(x)).join(", ")})`;
  return `
    <p>Host had prize <b>${prize}</b> (angles ${host.prize_angles
      .map((x) => fmt(x))
      .join(", ")}), door policy <b>${policy}</b>.</p>
    <p>Why switch? This configuration gives P<sub>ns</sub> = ${fmt(
      probabilities.p_ns,
    )}, P<sub>s</sub> = ${fmt(probabilities.p_s)}.</p>`;
}

// Running win frequencies per bet; exact wins/plays. In semiclassical mode
// the 2/3 and 1/3 reference lines are drawn on the bars.
export function renderScore(score: LocalScore, semiclassical: boolean): string {
  const rows = (["switch", "stay"] as const)
    .map((bet) => {
      const slot = score[bet];
      const freq = frequency(score, bet);
      const width = freq === null ? 0 : freq * 100;
      const ref = bet === "switch" ? 2 / 3 : 1 / 3;
      const marker = semiclassical
        ? `<div class="bar-marker" style="left:${(ref * 100).toFixed(1)}%" title="${fmt(ref)}"></div>`
        : "";
      const label =
        freq === null
          ? "no plays"
          : `${slot.wins}/${slot.plays} = ${fmt(freq)}`;
      return `
      <div class="bar-row">
        <span class="bar-label">${bet}</span>
        <div class="bar-track">${marker}<div class="bar-fill" style="width:${width.toFixed(1)}%"></div></div>
        <span class="bar-value">${label}</span>
      </div>`;
    })
    .join("");
  const note = semiclassical
    ? `<p class="hint">markers: classical switch 2/3, stay 1/3</p>`
    : "";
  return rows + note;
}

export function renderPhase(view: SessionView): string {
  const extras: string[] = [];
  if (view.entangled) extras.push("entangled");
  if (view.noise_p > 0) extras.push(`noise p = ${fmt(view.noise_p, 2)}`);
  const suffix = extras.length ? ` (${extras.join(", ")})` : "";
  return `round ${view.rounds + (view.phase === "Resolved" ? 0 : 1)}, phase <b>${view.phase}</b>${suffix}`;
}

export function renderError(message: string): string {
  return `<p class="error">${message}</p>`;
}

export function renderProbPreview(p_ns: number, p_s: number): string {
  return `single game vs projector door 3: P<sub>ns</sub> = ${fmt(p_ns)}, P<sub>s</sub> = ${fmt(p_s)}`;
}
