// Wire types for the computation service (schema 1).

export interface ErrorInfo {
  code: string;
  message: string;
}

export interface Envelope<P = unknown> {
  schema: number;
  status: "ok" | "error";
  cmd?: string;
  tolerances?: Record<string, number>;
  payload?: P;
  error?: ErrorInfo;
}

export interface ClassInfo {
  kind: "identity" | "elliptic" | "parabolic" | "loxodromic";
  theta1: number | null;
  theta2: number | null;
  finite_order: number | null;
  length: number | null;
}

export interface ClassifyPayload {
  spec: string;
  t: number;
  word: string;
  trace: [number, number];
  discriminant: number;
  class: ClassInfo;
}

export interface TracePointDoc {
  t: number;
  trace: [number, number];
  discriminant: number;
  class: ClassInfo;
  lambda_or_angle: number;
}

export interface TraceCurveDoc {
  spec: string;
  word: string;
  label?: string;
  t_lo: number;
  t_hi: number;
  truncated: boolean;
  points: TracePointDoc[];
}

export interface ScanPayload {
  spec: string;
  grid: number;
  curves: TraceCurveDoc[];
}

export interface CriticalPayload {
  spec: string;
  transition: boolean;
  critical_t: number | null;
  degenerate_word: string | null;
  group_type: string | null;
  valid_range_end: number;
  crossings: Record<string, number | null>;
  ambiguous: boolean;
  critical_class: ClassInfo | null;
  grid: number;
}

export interface OrderParamDoc {
  j: number;
  t: number;
  word: string;
  k: number;
  order_verified: boolean;
  wb_kind: string;
  wb_loxodromic: boolean;
  wb_length_or_order: number | null;
}

export interface OrdersPayload {
  spec: string;
  word: string;
  jmin: number;
  jmax: number;
  critical_t: number | null;
  params: OrderParamDoc[];
  not_found: number[];
}

/** Rows of [re z, im z, re w, im w] on the unit sphere. */
export type PointRow = [number, number, number, number];

export interface CloudPayload {
  points: PointRow[];
  meta: Record<string, unknown>;
}

export interface CurveDoc {
  kind: string;
  points: PointRow[];
  meta: Record<string, unknown>;
}

export interface BoundaryPayload {
  kind: string;
  curves: CurveDoc[];
}
