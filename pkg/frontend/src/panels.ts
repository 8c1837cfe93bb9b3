// DOM panels.  Thin: all data arrives as payloads, all geometry comes from
// the pure modules, and this file only moves strings and pixels.

import { LatestWins, ServiceClient, ServiceError, debounce } from "./client.js";
import { badgeFor, describeClass, fmt, fmtComplex } from "./format.js";
import {
  DownsampleResult,
  downsample,
  drawCloud,
  drawCurve,
  projectCloud,
} from "./limitview.js";
import {
  ChartGeometry,
  buildScanGeometry,
  drawScanChart,
  hitTestMarker,
} from "./scanchart.js";
import {
  SessionState,
  bookmarksFrom,
  jumpToBookmark,
  setT,
  unwatchWord,
  watchWord,
} from "./state.js";
import type {
  ClassifyPayload,
  CloudPayload,
  CriticalPayload,
  CurveDoc,
  PointRow,
  ScanPayload,
} from "./types.js";

export const SLIDER_DEBOUNCE_MS = 120; // stays under the 150 ms budget
export const POINT_CAP = 60000;

export interface Elements {
  status: HTMLElement;
  table: HTMLTableSectionElement;
  slider: HTMLInputElement;
  tValue: HTMLElement;
  scanCanvas: HTMLCanvasElement;
  cloudCanvas: HTMLCanvasElement;
  bookmarkBox: HTMLElement;
  notice: HTMLElement;
  wordInput: HTMLInputElement;
  specSelect: HTMLSelectElement;
  maxLenInput: HTMLInputElement;
  poleSelect: HTMLSelectElement;
  overlayToggle: HTMLInputElement;
}

export class Explorer {
  state: SessionState;
  private client: ServiceClient;
  private el: Elements;
  private classifyGate = new LatestWins();
  private cloudGate = new LatestWins();
  private scanGeometry: ChartGeometry | null = null;
  private cloud: CloudPayload | null = null;
  private overlays: CurveDoc[] = [];
  private pole: PointRow = [1, 0, 0, 0];
  private readonly refresh: { call: () => void; cancel: () => void };

  constructor(client: ServiceClient, state: SessionState, el: Elements) {
    this.client = client;
    this.state = state;
    this.el = el;
    this.refresh = debounce(() => void this.refreshDynamic(), SLIDER_DEBOUNCE_MS);
    this.wire();
  }

  private wire(): void {
    this.el.slider.addEventListener("input", () => {
      const frac = Number(this.el.slider.value) / Number(this.el.slider.max);
      const hi = this.state.bookmarks?.validRangeEnd ?? Math.PI;
      this.state = setT(this.state, frac * hi);
      this.el.tValue.textContent = fmt(this.state.t, 6);
      this.refresh.call();
    });
    this.el.scanCanvas.addEventListener("click", (ev) => {
      if (!this.scanGeometry) return;
      const rect = this.el.scanCanvas.getBoundingClientRect();
      const hit = hitTestMarker(this.scanGeometry, ev.clientX - rect.left);
      if (hit) {
        this.setParameter(hit.t);
      }
    });
    this.el.wordInput.addEventListener("change", () => {
      const word = this.el.wordInput.value.trim();
      if (word) {
        this.state = watchWord(this.state, word);
        this.el.wordInput.value = "";
        this.refresh.call();
      }
    });
    this.el.cloudCanvas.addEventListener("mousemove", (ev) => {
      if (ev.buttons !== 1) return;
      this.state.view.yaw += ev.movementX * 0.01;
      this.state.view.pitch += ev.movementY * 0.01;
      this.repaintCloud();
    });
    this.el.maxLenInput.addEventListener("change", () => {
      this.state = { ...this.state, maxLen: Number(this.el.maxLenInput.value) };
      this.refresh.call();
    });
    this.el.poleSelect.addEventListener("change", () => this.repaintCloud());
    this.el.overlayToggle.addEventListener("change", () => void this.loadOverlays());
  }

  setParameter(t: number): void {
    this.state = setT(this.state, t);
    const hi = this.state.bookmarks?.validRangeEnd ?? Math.PI;
    this.el.slider.value = String(Math.round((this.state.t / hi) * Number(this.el.slider.max)));
    this.el.tValue.textContent = fmt(this.state.t, 6);
    this.refresh.call();
  }

  /** Initial load: bookmarks, scan chart, then the dynamic panels. */
  async start(): Promise<void> {
    this.setStatus("loading scan…");
    try {
      const [critical, scan] = await Promise.all([
        this.client.critical(this.state.spec),
        this.client.scan(this.state.spec),
      ]);
      let orderParams: import("./types.js").OrderParamDoc[] = [];
      if (critical.group_type === "A") {
        try {
          const o = await this.client.orders(this.state.spec, "1213", 5, 12);
          orderParams = o.params;
        } catch (err) {
          if (!(err instanceof ServiceError)) throw err;
        }
      }
      this.state = { ...this.state, bookmarks: bookmarksFrom(critical, orderParams) };
      this.renderBookmarks();
      this.renderScan(scan, critical);
      this.setStatus("");
      await this.refreshDynamic();
    } catch (err) {
      this.setStatus(err instanceof ServiceError ? `service error: ${err.message}` : String(err));
    }
  }

  private setStatus(text: string): void {
    this.el.status.textContent = text;
    this.el.status.style.display = text ? "block" : "none";
  }

  private renderBookmarks(): void {
    const b = this.state.bookmarks;
    if (!b) return;
    const box = this.el.bookmarkBox;
    box.textContent = "";
    const add = (label: string, onClick: () => void) => {
      const btn = document.createElement("button");
      btn.textContent = label;
      btn.addEventListener("click", onClick);
      box.appendChild(btn);
    };
    if (b.criticalT !== null) {
      add(`t* = ${fmt(b.criticalT, 6)} (W_${b.degenerateWord})`, () => {
        this.state = jumpToBookmark(this.state, "critical");
        this.setParameter(this.state.t);
      });
    }
    for (const p of b.orderParams) {
      add(`t_${p.j} = ${fmt(p.t, 6)}`, () => this.setParameter(p.t));
    }
  }

  private renderScan(scan: ScanPayload, critical: CriticalPayload): void {
    const canvas = this.el.scanCanvas;
    this.scanGeometry = buildScanGeometry(scan, critical, canvas.width, canvas.height);
    const ctx = canvas.getContext("2d");
    if (ctx) drawScanChart(ctx, this.scanGeometry, this.state.t);
  }

  /** Slider-dependent panels: classification table and limit-set cloud. */
  async refreshDynamic(): Promise<void> {
    await Promise.all([this.refreshClassification(), this.refreshCloud()]);
    if (this.scanGeometry) {
      const ctx = this.el.scanCanvas.getContext("2d");
      if (ctx) drawScanChart(ctx, this.scanGeometry, this.state.t);
    }
  }

  async refreshClassification(): Promise<void> {
    const { spec, t, watchedWords } = this.state;
    const rows = await this.classifyGate.run(async (signal) => {
      const out: ClassifyPayload[] = [];
      for (const word of watchedWords) {
        out.push(await this.client.classify(spec, t, word, signal));
      }
      return out;
    });
    if (rows === null) return; // superseded
    this.renderClassification(rows);
  }

  renderClassification(rows: ClassifyPayload[]): void {
    const body = this.el.table;
    body.textContent = "";
    for (const row of rows) {
      const tr = document.createElement("tr");
      const badge = badgeFor(row.class);
      const cells = [
        row.word,
        badge.text,
        fmtComplex(row.trace[0], row.trace[1], 4),
        describeClass(row.class),
      ];
      cells.forEach((text, i) => {
        const td = document.createElement("td");
        td.textContent = text;
        if (i === 1) {
          td.style.color = badge.color;
          td.dataset.kind = row.class.kind;
        }
        tr.appendChild(td);
      });
      const remove = document.createElement("td");
      const btn = document.createElement("button");
      btn.textContent = "x";
      btn.addEventListener("click", () => {
        this.state = unwatchWord(this.state, row.word);
        this.refresh.call();
      });
      remove.appendChild(btn);
      tr.appendChild(remove);
      body.appendChild(tr);
    }
  }

  async refreshCloud(): Promise<void> {
    const { spec, t, maxLen } = this.state;
    const cloud = await this.cloudGate.run((signal) =>
      this.client.limitset(spec, t, maxLen, signal),
    );
    if (cloud === null) return;
    this.cloud = cloud;
    this.repaintCloud();
  }

  private async loadOverlays(): Promise<void> {
    if (!this.el.overlayToggle.checked) {
      this.overlays = [];
      this.repaintCloud();
      return;
    }
    const torus = await this.client.boundary({ kind: "clifford", nu: 8, nv: 48 });
    const mirrors = await Promise.all(
      [1, 2, 3].map((k) =>
        this.client.boundary({
          kind: "ccircle",
          spec: this.state.spec,
          t: this.state.t,
          mirror: k,
          n: 96,
        }),
      ),
    );
    this.overlays = [...torus.curves, ...mirrors.flatMap((m) => m.curves)];
    this.repaintCloud();
  }

  repaintCloud(): void {
    const canvas = this.el.cloudCanvas;
    const ctx = canvas.getContext("2d");
    if (!ctx || !this.cloud) return;
    this.pole = this.selectedPole();
    const capped: DownsampleResult = downsample(this.cloud.points, POINT_CAP);
    this.el.notice.textContent = capped.downsampled
      ? `showing ${capped.points.length} of ${capped.total} points`
      : "";
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    const proj = projectCloud(
      capped.points,
      this.pole,
      this.state.view,
      canvas.width,
      canvas.height,
    );
    drawCloud(ctx, proj);
    for (const overlay of this.overlays) {
      const p = projectCloud(
        overlay.points,
        this.pole,
        this.state.view,
        canvas.width,
        canvas.height,
      );
      drawCurve(ctx, p, overlay.kind === "foliation-leaf" ? "#9e9e9e" : "#d84315");
    }
  }

  private selectedPole(): PointRow {
    if (this.el.poleSelect.value === "wb-fixed" && this.cloud) {
      const seed = this.cloud.meta["seed"];
      if (Array.isArray(seed) && seed.length === 4) {
        return seed as PointRow;
      }
    }
    return [1, 0, 0, 0];
  }
}
