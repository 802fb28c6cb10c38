/** Typed client for the play-service JSON endpoints (browser and node). */

export interface RoundRecord {
  t1: number;
  t2: number;
  history: string[];
  final: "s" | "j";
  payoff_s: number;
}

export interface SessionView {
  session_id: string;
  game: number;
  human_role: "juan" | "silvia";
  ai_strategy: string;
  stake: number;
  seed: number;
  rounds_played: number;
  bankroll_silvia: number;
  round_in_progress: { t1?: number };
  history: RoundRecord[];
}

export interface MeasureAck {
  t1: number;
}

export interface ResolvedRound extends RoundRecord {
  bankroll_silvia: number;
  rounds_played: number;
}

export interface HeatmapPayload {
  resolution: number;
  tau_units: boolean;
  values: (number | null)[][];
}

export interface SessionConfig {
  game?: number;
  human_role?: "juan" | "silvia";
  ai?: string;
  seed?: number;
  stake?: number;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    detail: string,
  ) {
    super(detail);
  }
}

async function parseOrThrow<T>(response: Response): Promise<{ data: T; raw: string }> {
  const raw = await response.text();
  if (!response.ok) {
    let detail = raw;
    try {
      detail = JSON.parse(raw).detail ?? raw;
    } catch {
      // non-JSON error body; keep the raw text
    }
    throw new ApiError(response.status, String(detail));
  }
  return { data: JSON.parse(raw) as T, raw };
}

export class ApiClient {
  constructor(private base: string = "") {}

  async createSession(config: SessionConfig): Promise<SessionView> {
    const response = await fetch(`${this.base}/api/v1/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(config),
    });
    return (await parseOrThrow<SessionView>(response)).data;
  }

  /** Raw body included so callers can audit exactly what went over the wire. */
  async getSessionRaw(id: string): Promise<{ view: SessionView; raw: string }> {
    const response = await fetch(`${this.base}/api/v1/sessions/${id}`);
    const { data, raw } = await parseOrThrow<SessionView>(response);
    return { view: data, raw };
  }

  async getSession(id: string): Promise<SessionView> {
    return (await this.getSessionRaw(id)).view;
  }

  async measure(id: string, role: "juan" | "silvia", time: number): Promise<MeasureAck | ResolvedRound> {
    const response = await fetch(`${this.base}/api/v1/sessions/${id}/measure`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ role, time }),
    });
    return (await parseOrThrow<MeasureAck | ResolvedRound>(response)).data;
  }

  async heatmap(game: number, resolution: number): Promise<HeatmapPayload> {
    const response = await fetch(`${this.base}/api/v1/games/${game}/heatmap?resolution=${resolution}`);
    return (await parseOrThrow<HeatmapPayload>(response)).data;
  }
}

export function isResolved(update: MeasureAck | ResolvedRound): update is ResolvedRound {
  return "final" in update;
}
