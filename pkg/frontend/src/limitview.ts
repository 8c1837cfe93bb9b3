// Limit-set view: boundary points arrive as rows [re z, im z, re w, im w]
// on the unit sphere; rendering maps them through the same chart the
// service documents (pole to infinity) and a rotating orthographic
// projection.  These are rendering transforms only; the data is never
// altered.

import type { PointRow } from "./types.js";
import type { ViewSettings } from "./state.js";

/** Chart a boundary point with the given pole sent to infinity.
 * Mirrors the service convention: rotate the pole to (1, 0) by the
 * determinant-1 unitary [[conj z0, conj w0], [-w0, z0]], then
 * zeta = sqrt(2) w / (z - 1), v = 2 Im((z + 1)/(z - 1)). */
export function chartPoint(p: PointRow, pole: PointRow): [number, number, number] | null {
  const [zr, zi, wr, wi] = p;
  const [pr, pi, qr, qi] = pole;
  // z' = conj(pole.z) * z + conj(pole.w) * w
  const zpr = pr * zr + pi * zi + qr * wr + qi * wi;
  const zpi = pr * zi - pi * zr + qr * wi - qi * wr;
  // w' = -pole.w * z + pole.z * w
  const wpr = -(qr * zr - qi * zi) + (pr * wr - pi * wi);
  const wpi = -(qr * zi + qi * zr) + (pr * wi + pi * wr);
  const dr = zpr - 1;
  const di = zpi;
  const den = dr * dr + di * di;
  if (den < 1e-24) return null; // at the pole
  const s = Math.SQRT2;
  const zetaR = (s * (wpr * dr + wpi * di)) / den;
  const zetaI = (s * (wpi * dr - wpr * di)) / den;
  // v = 2 Im((z'+1)/(z'-1)) = 2 (Im z' * Re(z'-1) - (Re z'+1) * Im z') / |z'-1|^2
  const v = (2 * (zpi * dr - (zpr + 1) * di)) / den;
  return [zetaR, zetaI, v];
}

export interface DownsampleResult {
  points: PointRow[];
  downsampled: boolean;
  total: number;
}

/** Cap the cloud size for rendering; the notice flag drives a UI banner. */
export function downsample(points: PointRow[], cap: number): DownsampleResult {
  if (points.length <= cap) {
    return { points, downsampled: false, total: points.length };
  }
  const stride = Math.ceil(points.length / cap);
  const out: PointRow[] = [];
  for (let i = 0; i < points.length; i += stride) out.push(points[i]);
  return { points: out, downsampled: true, total: points.length };
}

export interface ProjectedCloud {
  xy: Float32Array; // interleaved screen x, y
  depth: Float32Array;
  count: number;
  skipped: number; // points at the chart pole
}

/** Orthographic projection of charted points under the view rotation. */
export function projectCloud(
  points: PointRow[],
  pole: PointRow,
  view: ViewSettings,
  width: number,
  height: number,
  clipRadius = 12,
): ProjectedCloud {
  const cy = Math.cos(view.yaw);
  const sy = Math.sin(view.yaw);
  const cp = Math.cos(view.pitch);
  const sp = Math.sin(view.pitch);
  const scale = (Math.min(width, height) / (2 * clipRadius)) * view.zoom;
  const xy = new Float32Array(points.length * 2);
  const depth = new Float32Array(points.length);
  let count = 0;
  let skipped = 0;
  for (const p of points) {
    const c = chartPoint(p, pole);
    if (c === null) {
      skipped += 1;
      continue;
    }
    let [x, y, z] = c;
    if (x * x + y * y + z * z > clipRadius * clipRadius) {
      skipped += 1;
      continue;
    }
    // yaw about the v-axis, then pitch
    const x1 = cy * x + sy * y;
    const y1 = -sy * x + cy * y;
    const y2 = cp * y1 + sp * z;
    const z2 = -sp * y1 + cp * z;
    xy[2 * count] = width / 2 + x1 * scale;
    xy[2 * count + 1] = height / 2 - z2 * scale;
    depth[count] = y2;
    count += 1;
  }
  return { xy, depth, count, skipped };
}

export function drawCloud(
  ctx: CanvasRenderingContext2D,
  proj: ProjectedCloud,
  color = "#1a237e",
): void {
  ctx.fillStyle = color;
  for (let i = 0; i < proj.count; i++) {
    ctx.fillRect(proj.xy[2 * i], proj.xy[2 * i + 1], 1.6, 1.6);
  }
}

export function drawCurve(
  ctx: CanvasRenderingContext2D,
  proj: ProjectedCloud,
  color: string,
): void {
  if (proj.count === 0) return;
  ctx.strokeStyle = color;
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(proj.xy[0], proj.xy[1]);
  for (let i = 1; i < proj.count; i++) {
    ctx.lineTo(proj.xy[2 * i], proj.xy[2 * i + 1]);
  }
  ctx.stroke();
}
