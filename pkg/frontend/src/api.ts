// Typed client for the qmonty game service. Every call is a plain fetch
// round-trip; error bodies always carry {error, message} and become ApiError.

export type Phase =
  | "Created"
  | "HostPrepared"
  | "PlayerChosen"
  | "DoorOpened"
  | "BetPlaced"
  | "Resolved";

export type Bet = "switch" | "stay";

export interface Tally {
  wins: number;
  losses: number;
  frequency?: number | null;
}

export interface Score {
  switch: Tally;
  stay: Tally;
}

export interface DoorView {
  phi1: number;
  phi2: number;
  phi3: number;
  coefficients: number[];
  blocked_box: number | null;
}

export interface OutcomeView {
  i: number;
  j: number;
  bet: Bet;
  win: boolean;
}

export interface HostView {
  prize: string | number[];
  door_policy: string | number[];
  prize_angles: number[];
}

// Pre-resolution views never include host or probabilities; the service
// omits the keys entirely rather than sending null.
export interface SessionView {
  id: string;
  phase: Phase;
  entangled: boolean;
  noise_p: number;
  rounds: number;
  player_angles: number[] | null;
  bet: Bet | null;
  score: Score;
  door: DoorView | null;
  outcome: OutcomeView | null;
  host?: HostView;
  probabilities?: { p_ns: number; p_s: number };
}

export interface SessionCreate {
  entangled?: boolean;
  noise_p?: number;
  seed?: number;
}

export interface ActionRequest {
  action:
    | "host-prepare"
    | "player-choose"
    | "open-door"
    | "place-bet"
    | "resolve";
  prize?: string | number[];
  door?: string | number[];
  box?: number;
  angles?: number[];
  bet?: Bet;
}

export interface SimulationRequest {
  kind:
    | "semiclassical"
    | "random-expectation"
    | "strategy-expectation"
    | "single-game"
    | "noise-curve";
  entangled?: boolean;
  noise_p?: number;
  method?: string;
  seed?: number;
  phi1?: number;
  phi2?: number;
  player_angles?: number[];
  prize_angles?: number[];
  grid?: number[];
}

export interface JobView {
  id: string;
  status: "queued" | "running" | "done" | "error";
  result?: Record<string, unknown>;
  message?: string;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(
  base: string,
  path: string,
  init?: RequestInit,
): Promise<T> {
  const res = await fetch(base + path, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const body = await res.json().catch(() => ({}));
  if (!res.ok) {
    const code = typeof body.error === "string" ? body.error : "Unknown";
    const message =
      typeof body.message === "string" ? body.message : res.statusText;
    throw new ApiError(res.status, code, message);
  }
  return body as T;
}

export class GameClient {
  constructor(public readonly base: string = "") {}

  createSession(opts: SessionCreate = {}): Promise<SessionView> {
    return request(this.base, "/sessions", {
      method: "POST",
      body: JSON.stringify(opts),
    });
  }

  getSession(id: string): Promise<SessionView> {
    return request(this.base, `/sessions/${id}`);
  }

  act(id: string, action: ActionRequest): Promise<SessionView> {
    return request(this.base, `/sessions/${id}/actions`, {
      method: "POST",
      body: JSON.stringify(action),
    });
  }

  getScore(id: string): Promise<{ id: string; rounds: number; score: Score }> {
    return request(this.base, `/sessions/${id}/score`);
  }

  startSimulation(req: SimulationRequest): Promise<JobView> {
    return request(this.base, "/simulations", {
      method: "POST",
      body: JSON.stringify(req),
    });
  }

  getSimulation(id: string): Promise<JobView> {
    return request(this.base, `/simulations/${id}`);
  }

  // Poll a job until it leaves the queue. Jobs here are short; the default
  // budget is generous rather than tight.
  async waitSimulation(
    id: string,
    intervalMs = 50,
    timeoutMs = 30_000,
  ): Promise<JobView> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const job = await this.getSimulation(id);
      if (job.status === "done" || job.status === "error") return job;
      if (Date.now() > deadline)
        throw new ApiError(0, "Timeout", `job ${id} still ${job.status}`);
      await new Promise((r) => setTimeout(r, intervalMs));
    }
  }
}
