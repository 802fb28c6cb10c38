/** Pure view logic: turn order, slider bounds, bankroll accounting. */
/** Timeline granularity in units of tau. */
export const TIME_STEP = 0.001;
/**
 * Which seat may move right now, or null while the machine owes a move
 * (the service advances machine turns on the next request).
 */
export function humanTurn(view) {
    const committed = view.round_in_progress.t1 !== undefined;
    if (view.human_role === "juan") {
        return committed ? null : "juan";
    }
    return committed ? "silvia" : null;
}
/** Legal slider interval for the human's next measurement. */
export function sliderBounds(view) {
    if (view.human_role === "silvia" && view.round_in_progress.t1 !== undefined) {
        return { min: view.round_in_progress.t1, max: 1.0 };
    }
    return { min: 0.0, max: 1.0 };
}
/** Clamp into [min, max] and snap onto the timeline grid. */
export function snapTime(value, min, max) {
    const snapped = Math.round(value / TIME_STEP) * TIME_STEP;
    const rounded = Number(snapped.toFixed(3));
    return Math.min(max, Math.max(min, rounded));
}
export function bankrollFromHistory(history) {
    return history.reduce((acc, r) => acc + r.payoff_s, 0);
}
/** Cumulative bankroll after each round, starting from zero. */
export function bankrollSeries(history) {
    const series = [];
    let total = 0;
    for (const record of history) {
        total += record.payoff_s;
        series.push(total);
    }
    return series;
}
/** Polyline points for a simple SVG bankroll chart. */
export function chartPoints(series, width, height) {
    if (series.length === 0) {
        return "";
    }
    const span = Math.max(1, Math.max(...series.map(Math.abs)));
    const dx = width / Math.max(1, series.length);
    const mid = height / 2;
    return series
        .map((v, k) => `${((k + 1) * dx).toFixed(1)},${(mid - (v / span) * (mid - 4)).toFixed(1)}`)
        .join(" ");
}
