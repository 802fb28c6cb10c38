/** Heatmap grid lookups and painting; masked cells are never painted. */
import { formatProbability } from "./format.js";
/** Nearest grid index for a time in [0, 1]. */
export function nearestIndex(resolution, t) {
    const i = Math.round(t * (resolution - 1));
    return Math.min(resolution - 1, Math.max(0, i));
}
/** Surface value at the grid point closest to (t1, t2); null when masked. */
export function readout(grid, t1, t2) {
    const row = grid.values[nearestIndex(grid.resolution, t1)];
    if (!row) {
        return null;
    }
    return row[nearestIndex(grid.resolution, t2)] ?? null;
}
/** Hover text: "P_s = 0.500", or the empty marker on the masked triangle. */
export function readoutText(grid, t1, t2) {
    const value = readout(grid, t1, t2);
    return value === null ? "" : formatProbability(value);
}
/** Grayscale fill for a defined cell; null means leave the cell unpainted. */
export function cellColor(value) {
    if (value === null) {
        return null;
    }
    const level = Math.round(255 * value);
    return `rgb(${level},${level},${level})`;
}
/**
 * Paint the surface with T1 on x and T2 on y (origin bottom-left).
 * Masked cells stay transparent, so the lower triangle renders empty.
 */
export function renderGrid(ctx, grid, width, height) {
    ctx.clearRect(0, 0, width, height);
    const n = grid.resolution;
    const cw = width / n;
    const ch = height / n;
    for (let i = 0; i < n; i++) {
        const row = grid.values[i];
        if (!row)
            continue;
        for (let k = 0; k < n; k++) {
            const color = cellColor(row[k] ?? null);
            if (color === null)
                continue;
            ctx.fillStyle = color;
            ctx.fillRect(i * cw, height - (k + 1) * ch, cw + 0.5, ch + 0.5);
        }
    }
}
/** Overlay played strategy points so past rounds inform the next choice. */
export function overlayPoints(ctx, points, width, height) {
    ctx.fillStyle = "rgb(214,69,65)";
    for (const p of points) {
        ctx.beginPath();
        ctx.arc(p.t1 * width, height - p.t2 * height, 3, 0, 2 * Math.PI);
        ctx.fill();
    }
}
/** Canvas pixel coordinates back to (t1, t2) in units of tau. */
export function canvasToTimes(x, y, width, height) {
    return {
        t1: Math.min(1, Math.max(0, x / width)),
        t2: Math.min(1, Math.max(0, 1 - y / height)),
    };
}
