/** Typed client for the play-service JSON endpoints (browser and node). */
export class ApiError extends Error {
    status;
    constructor(status, detail) {
        super(detail);
        this.status = status;
    }
}
async function parseOrThrow(response) {
    const raw = await response.text();
    if (!response.ok) {
        let detail = raw;
        try {
            detail = JSON.parse(raw).detail ?? raw;
        }
        catch {
            // non-JSON error body; keep the raw text
        }
        throw new ApiError(response.status, String(detail));
    }
    return { data: JSON.parse(raw), raw };
}
export class ApiClient {
    base;
    constructor(base = "") {
        this.base = base;
    }
    async createSession(config) {
        const response = await fetch(`${this.base}/api/v1/sessions`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(config),
        });
        return (await parseOrThrow(response)).data;
    }
    /** Raw body included so callers can audit exactly what went over the wire. */
    async getSessionRaw(id) {
        const response = await fetch(`${this.base}/api/v1/sessions/${id}`);
        const { data, raw } = await parseOrThrow(response);
        return { view: data, raw };
    }
    async getSession(id) {
        return (await this.getSessionRaw(id)).view;
    }
    async measure(id, role, time) {
        const response = await fetch(`${this.base}/api/v1/sessions/${id}/measure`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ role, time }),
        });
        return (await parseOrThrow(response)).data;
    }
    async heatmap(game, resolution) {
        const response = await fetch(`${this.base}/api/v1/games/${game}/heatmap?resolution=${resolution}`);
        return (await parseOrThrow(response)).data;
    }
}
export function isResolved(update) {
    return "final" in update;
}
