// Service client: every number shown in the UI originates from a payload
// fetched here; the client never recomputes anything.

import type {
  BoundaryPayload,
  ClassifyPayload,
  CloudPayload,
  CriticalPayload,
  Envelope,
  OrdersPayload,
  ScanPayload,
} from "./types.js";

export class ServiceError extends Error {
  code: string;

  constructor(code: string, message: string) {
    super(message);
    this.code = code;
  }
}

export class ServiceClient {
  baseUrl: string;

  constructor(baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  async post<P>(req: Record<string, unknown>, signal?: AbortSignal): Promise<P> {
    let resp: Response;
    try {
      resp = await fetch(this.baseUrl + "/", {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(req),
        signal,
      });
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") throw err;
      throw new ServiceError("service_down", String(err));
    }
    const env = (await resp.json()) as Envelope<P>;
    if (env.status !== "ok" || env.payload === undefined) {
      const info = env.error ?? { code: "unknown", message: "malformed envelope" };
      throw new ServiceError(info.code, info.message);
    }
    return env.payload;
  }

  classify(spec: string, t: number, word: string, signal?: AbortSignal) {
    return this.post<ClassifyPayload>({ cmd: "classify", spec, t, word }, signal);
  }

  critical(spec: string, grid?: number) {
    return this.post<CriticalPayload>({ cmd: "critical", spec, grid });
  }

  scan(spec: string, grid?: number) {
    return this.post<ScanPayload>({ cmd: "scan", spec, grid });
  }

  orders(spec: string, word: string, jmin: number, jmax: number) {
    return this.post<OrdersPayload>({ cmd: "orders", spec, word, jmin, jmax });
  }

  limitset(spec: string, t: number, maxlen: number, signal?: AbortSignal) {
    return this.post<CloudPayload>({ cmd: "limitset", spec, t, maxlen }, signal);
  }

  boundary(req: Record<string, unknown>) {
    return this.post<BoundaryPayload>({ cmd: "boundary", ...req });
  }

  async healthy(): Promise<boolean> {
    try {
      const resp = await fetch(this.baseUrl + "/healthz");
      return resp.ok;
    } catch {
      return false;
    }
  }
}

/**
 * Keeps at most one request in flight; a newer call aborts the older one.
 * Superseded calls resolve to null instead of stale data.
 */
export class LatestWins {
  private controller: AbortController | null = null;
  private generation = 0;

  async run<T>(fn: (signal: AbortSignal) => Promise<T>): Promise<T | null> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const gen = ++this.generation;
    try {
      const out = await fn(controller.signal);
      return gen === this.generation ? out : null;
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") return null;
      throw err;
    }
  }
}

/** Trailing-edge debounce; a new call cancels the pending one. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): { call: (...args: A) => void; cancel: () => void } {
  let handle: ReturnType<typeof setTimeout> | null = null;
  return {
    call: (...args: A) => {
      if (handle !== null) clearTimeout(handle);
      handle = setTimeout(() => {
        handle = null;
        fn(...args);
      }, waitMs);
    },
    cancel: () => {
      if (handle !== null) clearTimeout(handle);
      handle = null;
    },
  };
}
