/** Browser wiring: session form, timeline, history, heatmap explorer. */

import { ApiClient, ApiError, isResolved } from "./api.js";
import type { HeatmapPayload, SessionView } from "./api.js";
import { clearError, renderBankroll, renderHistory, showError, statusMessage } from "./dom.js";
import { canvasToTimes, overlayPoints, readoutText, renderGrid } from "./heatmap.js";
import { formatProbability } from "./format.js";
import { humanTurn, sliderBounds, snapTime } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function wire(): void {
  const api = new ApiClient("");
  const form = el<HTMLFormElement>("session-form");
  const banner = el<HTMLElement>("error-banner");
  const play = el<HTMLElement>("play");
  const status = el<HTMLElement>("status");
  const timeline = el<HTMLInputElement>("timeline");
  const timeReadout = el<HTMLElement>("time-readout");
  const tauMarker = el<HTMLElement>("tau-marker");
  const measureButton = el<HTMLButtonElement>("measure");
  const bankrollLabel = el<HTMLElement>("bankroll");
  const chart = el<HTMLElement>("bankroll-chart") as unknown as SVGElement;
  const historyBody = el<HTMLElement>("history-body");
  const hmGame = el<HTMLSelectElement>("hm-game");
  const hmRes = el<HTMLInputElement>("hm-res");
  const hmLoad = el<HTMLButtonElement>("hm-load");
  const hmCanvas = el<HTMLCanvasElement>("hm-canvas");
  const hmReadout = el<HTMLElement>("hm-readout");

  let view: SessionView | null = null;
  let grid: HeatmapPayload | null = null;
  let busy = false; // at most one in-flight mutation per session

  function refreshControls(): void {
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

  async function refreshSession(): Promise<void> {
    if (!view) {
      return;
    }
    view = await api.getSession(view.session_id);
    refreshControls();
  }

  async function guarded(action: () => Promise<void>): Promise<void> {
    if (busy) {
      return;
    }
    busy = true;
    try {
      clearError(banner);
      await action();
    } catch (error) {
      showError(banner, error instanceof ApiError ? `service error: ${error.message}` : String(error));
    } finally {
      busy = false;
      refreshControls();
    }
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void guarded(async () => {
      view = await api.createSession({
        game: Number(el<HTMLSelectElement>("game").value),
        human_role: el<HTMLSelectElement>("role").value as "juan" | "silvia",
        ai: el<HTMLSelectElement>("ai").value,
        seed: Number(el<HTMLInputElement>("seed").value),
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

  function drawHeatmap(): void {
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
