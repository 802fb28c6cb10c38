/** Display formatting plus byte-exact journal-line reconstruction. */
/** Probabilities render with three decimals, e.g. "0.500". */
export function formatProbability(p) {
    return p.toFixed(3);
}
export function formatMoney(x) {
    const sign = x > 0 ? "+" : x < 0 ? "-" : "";
    return `${sign}$${Math.abs(x).toFixed(2)}`;
}
/**
 * Render a float the way the service serializes it.
 *
 * Both runtimes print the shortest round-tripping decimal, so the only
 * divergence in the journal's value range is integral floats, which the
 * service writes as "1.0" while JavaScript writes "1".
 */
export function pythonFloatRepr(x) {
    if (Number.isInteger(x) && Number.isFinite(x)) {
        return `${x}.0`;
    }
    return String(x);
}
/** Reconstruct one journal line byte-for-byte from wire data. */
export function journalLine(record) {
    const history = record.history.map((h) => `"${h}"`).join(",");
    return (`{"t1":${pythonFloatRepr(record.t1)},` +
        `"t2":${pythonFloatRepr(record.t2)},` +
        `"history":[${history}],` +
        `"final":"${record.final}",` +
        `"payoff_s":${pythonFloatRepr(record.payoff_s)}}`);
}
