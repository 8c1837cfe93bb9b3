// Session state: the spec under study, the slider position, watched words
// and bookmarks fetched from the service.  The parameter is always clamped
// to the valid range the service reported; the UI never computes its own.

import type { CriticalPayload, OrderParamDoc } from "./types.js";

export interface Bookmarks {
  criticalT: number | null;
  degenerateWord: string | null;
  groupType: string | null;
  validRangeEnd: number;
  orderParams: OrderParamDoc[];
}

export interface ViewSettings {
  yaw: number;
  pitch: number;
  zoom: number;
}

export interface SessionState {
  spec: string;
  t: number;
  watchedWords: string[];
  bookmarks: Bookmarks | null;
  view: ViewSettings;
  maxLen: number;
}

export const DEFAULT_WATCHED = ["1323", "123", "12", "1213"];

export function createSession(spec: string): SessionState {
  return {
    spec,
    t: 0,
    watchedWords: [...DEFAULT_WATCHED],
    bookmarks: null,
    view: { yaw: 0.6, pitch: 0.35, zoom: 1 },
    maxLen: 9,
  };
}

export function bookmarksFrom(
  critical: CriticalPayload,
  orderParams: OrderParamDoc[],
): Bookmarks {
  return {
    criticalT: critical.critical_t,
    degenerateWord: critical.degenerate_word,
    groupType: critical.group_type,
    validRangeEnd: critical.valid_range_end,
    orderParams,
  };
}

/** Clamp a requested slider position into the service-reported range. */
export function clampT(state: SessionState, t: number): number {
  const hi = state.bookmarks ? state.bookmarks.validRangeEnd : Math.PI;
  // keep a hair inside the degenerate endpoint
  const cap = hi * (1 - 1e-6);
  return Math.min(Math.max(t, 0), cap);
}

export function setT(state: SessionState, t: number): SessionState {
  return { ...state, t: clampT(state, t) };
}

export function jumpToBookmark(state: SessionState, which: "critical" | number): SessionState {
  if (!state.bookmarks) return state;
  if (which === "critical") {
    return state.bookmarks.criticalT === null ? state : setT(state, state.bookmarks.criticalT);
  }
  const param = state.bookmarks.orderParams.find((p) => p.j === which);
  return param ? setT(state, param.t) : state;
}

export function watchWord(state: SessionState, word: string): SessionState {
  if (!/^[123]*$/.test(word)) return state;
  if (state.watchedWords.includes(word)) return state;
  return { ...state, watchedWords: [...state.watchedWords, word] };
}

export function unwatchWord(state: SessionState, word: string): SessionState {
  return { ...state, watchedWords: state.watchedWords.filter((w) => w !== word) };
}
