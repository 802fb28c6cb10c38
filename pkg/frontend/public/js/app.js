/** Browser wiring: session form, timeline, history, heatmap explorer. */
import { ApiClient, ApiError, isResolved } from "./api.js";
import { clearError, renderBankroll, renderHistory, showError, statusMessage } from "./dom.js";
import { canvasToTimes, overlayPoints, readoutText, renderGrid } from "./heatmap.js";
import { formatProbability } from "./format.js";
import { humanTurn, sliderBounds, snapTime } from "./state.js";
function el(id) {
    const node = document.getElementById(id);
    if (!node) {
        throw new Error(`missing element #${id}`);
    }
    return node;
}
function wire() {
    const api = new ApiClient("");
    const form = el("session-form");
    const banner = el("error-banner");
    const play = el("play");
    const status = el("status");
    const timeline = el("timeline");
    const timeReadout = el("time-readout");
    const tauMarker = el("tau-marker");
    const measureButton = el("measure");
    const bankrollLabel = el("bankroll");
    const chart = el("bankroll-chart");
    const historyBody = el("history-body");
    const hmGame = el("hm-game");
    const hmRes = el("hm-res");
    const hmLoad = el("hm-load");
    const hmCanvas = el("hm-canvas");
    const hmReadout = el("hm-readout");
    let view = null;
    let grid = null;
    let busy = false; // at most one in-flight mutation per session
    function refreshControls() {
        if (!view) {
            return;
        }
        play.classList.remove("hidden");
        status.textContent = statusMessage(view);
        const turn = humanTurn(view);
        const bounds = sliderBounds(view);
        timeline.min = String(bounds.min);
        timeline.max = String(bounds.max);
        if (Number(timeline.value) < bounds.min) {
            timeline.value = String(bounds.min);
        }
        timeline.disabled = busy || turn === null;
        measureButton.disabled = busy || turn === null;
        timeReadout.textContent = Number(timeline.value).toFixed(3);
        tauMarker.classList.toggle("hidden", view.game !== 2);
        renderBankroll(bankrollLabel, chart, view);
        renderHistory(historyBody, view.history);
        drawHeatmap();
    }
    async function refreshSession() {
        if (!view) {
            return;
        }
        view = await api.getSession(view.session_id);
        refreshControls();
    }
    async function guarded(action) {
        if (busy) {
            return;
        }
        busy = true;
        try {
            clearError(banner);
            await action();
        }
        catch (error) {
            showError(banner, error instanceof ApiError ? `service error: ${error.message}` : String(error));
        }
        finally {
            busy = false;
            refreshControls();
        }
    }
    form.addEventListener("submit", (event) => {
        event.preventDefault();
        void guarded(async () => {
            view = await api.createSession({
                game: Number(el("game").value),
                human_role: el("role").value,
                ai: el("ai").value,
                seed: Number(el("seed").value),
            });
            await refreshSession();
        });
    });
    timeline.addEventListener("input", () => {
        timeReadout.textContent = Number(timeline.value).toFixed(3);
    });
    measureButton.addEventListener("click", () => {
        void guarded(async () => {
            if (!view) {
                return;
            }
            const turn = humanTurn(view);
            if (turn === null) {
                await refreshSession();
                return;
            }
            const bounds = sliderBounds(view);
            const time = snapTime(Number(timeline.value), bounds.min, bounds.max);
            const update = await api.measure(view.session_id, turn, time);
            if (!isResolved(update)) {
                status.textContent = `measured at t = ${update.t1.toFixed(3)}, waiting for the machine`;
            }
            // the follow-up fetch advances any pending machine turn
            await refreshSession();
        });
    });
    function drawHeatmap() {
        if (!grid) {
            return;
        }
        const ctx = hmCanvas.getContext("2d");
        if (!ctx) {
            return;
        }
        renderGrid(ctx, grid, hmCanvas.width, hmCanvas.height);
        if (view) {
            overlayPoints(ctx, view.history, hmCanvas.width, hmCanvas.height);
        }
    }
    hmLoad.addEventListener("click", () => {
        void guarded(async () => {
            const requested = Math.max(2, Number(hmRes.value) || 101);
            grid = await api.heatmap(Number(hmGame.value), requested);
            if (grid.resolution !== requested) {
                showError(banner, `resolution clamped to the service cap (${grid.resolution})`);
            }
            drawHeatmap();
        });
    });
    hmCanvas.addEventListener("mousemove", (event) => {
        if (!grid) {
            return;
        }
        const rect = hmCanvas.getBoundingClientRect();
        const { t1, t2 } = canvasToTimes(event.clientX - rect.left, event.clientY - rect.top, rect.width, rect.height);
        const text = readoutText(grid, t1, t2);
        hmReadout.textContent = text
            ? `T1=${formatProbability(t1)}, T2=${formatProbability(t2)}: P_s = ${text}`
            : `T1=${formatProbability(t1)}, T2=${formatProbability(t2)}: outside the legal triangle`;
    });
}
if (typeof document !== "undefined" && document.getElementById("session-form")) {
    wire();
}
