// Entry point: bind the DOM, create the session, start the explorer.

import { ServiceClient } from "./client.js";
import { Explorer, Elements } from "./panels.js";
import { createSession } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function gather(): Elements {
  return {
    status: el("status"),
    table: el<HTMLTableSectionElement>("class-rows"),
    slider: el<HTMLInputElement>("t-slider"),
    tValue: el("t-value"),
    scanCanvas: el<HTMLCanvasElement>("scan-canvas"),
    cloudCanvas: el<HTMLCanvasElement>("cloud-canvas"),
    bookmarkBox: el("bookmarks"),
    notice: el("cloud-notice"),
    wordInput: el<HTMLInputElement>("word-input"),
    specSelect: el<HTMLSelectElement>("spec-select"),
    maxLenInput: el<HTMLInputElement>("maxlen-input"),
    poleSelect: el<HTMLSelectElement>("pole-select"),
    overlayToggle: el<HTMLInputElement>("overlay-toggle"),
  };
}

function boot(): void {
  const base = (window as unknown as { SERVICE_URL?: string }).SERVICE_URL ?? "";
  const client = new ServiceClient(base || window.location.origin);
  const elements = gather();
  let explorer = new Explorer(client, createSession(elements.specSelect.value), elements);
  void explorer.start();
  elements.specSelect.addEventListener("change", () => {
    explorer = new Explorer(client, createSession(elements.specSelect.value), elements);
    void explorer.start();
  });
}

window.addEventListener("DOMContentLoaded", boot);
