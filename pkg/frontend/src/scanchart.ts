// Discriminant-versus-parameter chart: pure geometry first, thin canvas
// painting second.  Crossing markers carry the exact service-reported
// parameter so clicking one sets the slider to that value verbatim.

import type { CriticalPayload, ScanPayload } from "./types.js";

export interface Marker {
  word: string;
  t: number; // exact payload value
  x: number; // pixel position
}

export interface Polyline {
  label: string;
  xs: number[];
  ys: number[];
  gaps: number[]; // indices where the curve was truncated
}

export interface ChartGeometry {
  width: number;
  height: number;
  tMin: number;
  tMax: number;
  polylines: Polyline[];
  markers: Marker[];
  zeroY: number;
  tToX(t: number): number;
  xToT(x: number): number;
}

/** Symmetric log squashing keeps huge loxodromic discriminants on screen. */
function squash(v: number): number {
  return Math.sign(v) * Math.log10(1 + Math.abs(v));
}

export function buildScanGeometry(
  scan: ScanPayload,
  critical: CriticalPayload | null,
  width: number,
  height: number,
): ChartGeometry {
  let tMin = Infinity;
  let tMax = -Infinity;
  let vMax = 1e-9;
  for (const curve of scan.curves) {
    for (const p of curve.points) {
      tMin = Math.min(tMin, p.t);
      tMax = Math.max(tMax, p.t);
      vMax = Math.max(vMax, Math.abs(squash(p.discriminant)));
    }
  }
  if (!Number.isFinite(tMin)) {
    tMin = 0;
    tMax = 1;
  }
  const tToX = (t: number) => ((t - tMin) / (tMax - tMin || 1)) * width;
  const xToT = (x: number) => tMin + (x / width) * (tMax - tMin);
  const vToY = (v: number) => height / 2 - (squash(v) / vMax) * (height / 2 - 4);

  const polylines: Polyline[] = scan.curves.map((curve) => ({
    label: curve.label ?? curve.word,
    xs: curve.points.map((p) => tToX(p.t)),
    ys: curve.points.map((p) => vToY(p.discriminant)),
    gaps: curve.truncated ? [curve.points.length - 1] : [],
  }));

  const markers: Marker[] = [];
  if (critical) {
    for (const [word, t] of Object.entries(critical.crossings)) {
      if (t !== null) markers.push({ word, t, x: tToX(t) });
    }
  }
  return {
    width,
    height,
    tMin,
    tMax,
    polylines,
    markers,
    zeroY: vToY(0),
    tToX,
    xToT,
  };
}

/** Marker within `radius` pixels of x, or null.  Returns the exact payload t. */
export function hitTestMarker(geom: ChartGeometry, x: number, radius = 6): Marker | null {
  let best: Marker | null = null;
  let bestDist = radius;
  for (const m of geom.markers) {
    const d = Math.abs(m.x - x);
    if (d <= bestDist) {
      best = m;
      bestDist = d;
    }
  }
  return best;
}

const CURVE_COLORS = ["#1565c0", "#c62828", "#6a1b9a", "#00838f"];

export function drawScanChart(
  ctx: CanvasRenderingContext2D,
  geom: ChartGeometry,
  currentT: number | null,
): void {
  ctx.clearRect(0, 0, geom.width, geom.height);
  ctx.strokeStyle = "#999";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(0, geom.zeroY);
  ctx.lineTo(geom.width, geom.zeroY);
  ctx.stroke();

  geom.polylines.forEach((line, i) => {
    ctx.strokeStyle = CURVE_COLORS[i % CURVE_COLORS.length];
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    line.xs.forEach((x, k) => {
      if (k === 0) ctx.moveTo(x, line.ys[k]);
      else ctx.lineTo(x, line.ys[k]);
    });
    ctx.stroke();
    ctx.fillStyle = ctx.strokeStyle;
    ctx.fillText(`W_${line.label}`, 8, 14 + 14 * i);
  });

  for (const m of geom.markers) {
    ctx.strokeStyle = "#e65100";
    ctx.setLineDash([4, 3]);
    ctx.beginPath();
    ctx.moveTo(m.x, 0);
    ctx.lineTo(m.x, geom.height);
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = "#e65100";
    ctx.fillText(`W_${m.word}`, m.x + 3, 12);
  }

  if (currentT !== null) {
    const x = geom.tToX(currentT);
    ctx.strokeStyle = "#333";
    ctx.beginPath();
    ctx.moveTo(x, 0);
    ctx.lineTo(x, geom.height);
    ctx.stroke();
  }
}
