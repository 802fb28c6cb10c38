/** DOM rendering helpers kept separate from wiring so they unit-test cleanly. */
import { formatMoney } from "./format.js";
import { bankrollSeries, chartPoints, humanTurn } from "./state.js";
export function renderHistory(tbody, history) {
    tbody.replaceChildren();
    history.forEach((record, k) => {
        const tr = document.createElement("tr");
        const cells = [
            String(k + 1),
            record.t1.toFixed(3),
            record.t2.toFixed(3),
            record.history.join(" "),
            record.final,
            formatMoney(record.payoff_s),
        ];
        for (const text of cells) {
            const td = document.createElement("td");
            td.textContent = text;
            tr.appendChild(td);
        }
        tr.className = record.final === "s" ? "win-s" : "win-j";
        tbody.appendChild(tr);
    });
}
export function renderBankroll(label, chart, view) {
    label.textContent = formatMoney(view.bankroll_silvia);
    const series = bankrollSeries(view.history);
    const width = Number(chart.getAttribute("width") ?? 420);
    const height = Number(chart.getAttribute("height") ?? 80);
    chart.replaceChildren();
    const axis = document.createElementNS("http://www.w3.org/2000/svg", "line");
    axis.setAttribute("x1", "0");
    axis.setAttribute("x2", String(width));
    axis.setAttribute("y1", String(height / 2));
    axis.setAttribute("y2", String(height / 2));
    axis.setAttribute("class", "chart-axis");
    chart.appendChild(axis);
    if (series.length > 0) {
        const line = document.createElementNS("http://www.w3.org/2000/svg", "polyline");
        line.setAttribute("points", chartPoints(series, width, height));
        line.setAttribute("class", "chart-line");
        chart.appendChild(line);
    }
}
export function statusMessage(view) {
    const turn = humanTurn(view);
    const round = view.rounds_played + 1;
    if (turn === "juan") {
        return `round ${round}: you are Juan, pick your measurement time`;
    }
    if (turn === "silvia") {
        const t1 = view.round_in_progress.t1 ?? 0;
        return `round ${round}: Juan measured at t = ${t1.toFixed(3)}, pick your time`;
    }
    return `round ${round}: waiting for the machine`;
}
export function showError(banner, message) {
    banner.textContent = message;
    banner.classList.remove("hidden");
}
export function clearError(banner) {
    banner.textContent = "";
    banner.classList.add("hidden");
}
