import { afterEach, describe, expect, it, vi } from "vitest";

import { LatestWins, ServiceClient, ServiceError, debounce } from "../src/client.js";

function mockFetch(body: unknown, status = 200) {
  return vi.fn(async () => ({
    ok: status < 400,
    status,
    json: async () => body,
  })) as unknown as typeof fetch;
}

afterEach(() => {
  vi.restoreAllMocks();
  vi.useRealTimers();
});

describe("ServiceClient", () => {
  it("returns the payload untouched", async () => {
    const payload = { class: { kind: "elliptic" }, trace: [1.0000000000000009, 0] };
    vi.stubGlobal("fetch", mockFetch({ schema: 1, status: "ok", payload }));
    const client = new ServiceClient("http://x");
    const got = await client.post<typeof payload>({ cmd: "classify" });
    expect(got).toEqual(payload);
    expect(got.trace[0]).toBe(1.0000000000000009); // bit-exact passthrough
  });

  it("raises ServiceError with the service code", async () => {
    vi.stubGlobal(
      "fetch",
      mockFetch({ schema: 1, status: "error", error: { code: "OutOfRange", message: "t" } }, 400),
    );
    const client = new ServiceClient("http://x");
    await expect(client.post({ cmd: "solve" })).rejects.toMatchObject({ code: "OutOfRange" });
  });

  it("maps network failure to service_down", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => { throw new TypeError("refused"); }));
    const client = new ServiceClient("http://x");
    await expect(client.post({ cmd: "scan" })).rejects.toMatchObject({ code: "service_down" });
    await expect(client.post({ cmd: "scan" })).rejects.toBeInstanceOf(ServiceError);
  });
});

describe("LatestWins", () => {
  it("resolves superseded calls to null and the newest to its value", async () => {
    const gate = new LatestWins();
    let release1: (() => void) | null = null;
    const first = gate.run(
      (signal) =>
        new Promise<string>((resolve, reject) => {
          release1 = () => resolve("first");
          signal.addEventListener("abort", () => reject(new DOMException("x", "AbortError")));
        }),
    );
    const second = gate.run(async () => "second");
    expect(await second).toBe("second");
    release1?.();
    expect(await first).toBeNull();
  });

  it("aborts the in-flight request", async () => {
    const gate = new LatestWins();
    let aborted = false;
    const first = gate.run(
      (signal) =>
        new Promise<string>((_, reject) => {
          signal.addEventListener("abort", () => {
            aborted = true;
            reject(new DOMException("x", "AbortError"));
          });
        }),
    );
    await gate.run(async () => "y");
    expect(await first).toBeNull();
    expect(aborted).toBe(true);
  });
});

describe("debounce", () => {
  it("fires once on the trailing edge with the latest arguments", () => {
    vi.useFakeTimers();
    const calls: number[] = [];
    const d = debounce((x: number) => calls.push(x), 120);
    d.call(1);
    vi.advanceTimersByTime(60);
    d.call(2);
    vi.advanceTimersByTime(60);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(60);
    expect(calls).toEqual([2]);
  });

  it("cancel drops the pending call", () => {
    vi.useFakeTimers();
    const calls: number[] = [];
    const d = debounce((x: number) => calls.push(x), 120);
    d.call(1);
    d.cancel();
    vi.advanceTimersByTime(500);
    expect(calls).toEqual([]);
  });
});
