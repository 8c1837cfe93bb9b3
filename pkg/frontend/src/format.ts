// Presentation helpers: payload values in, strings out.  No arithmetic on
// the data beyond choosing what to display.

import type { ClassInfo } from "./types.js";

export interface Badge {
  text: string;
  color: string;
}

const BADGE_COLORS: Record<ClassInfo["kind"], string> = {
  identity: "#8884",
  elliptic: "#c2185b",
  parabolic: "#ef6c00",
  loxodromic: "#2e7d32",
};

export function badgeFor(cls: ClassInfo): Badge {
  return { text: cls.kind, color: BADGE_COLORS[cls.kind] };
}

export function fmt(x: number | null | undefined, digits = 6): string {
  if (x === null || x === undefined || Number.isNaN(x)) return "-";
  return x.toFixed(digits);
}

export function fmtComplex(re: number, im: number, digits = 6): string {
  const sign = im < 0 ? "-" : "+";
  return `${re.toFixed(digits)} ${sign} ${Math.abs(im).toFixed(digits)}i`;
}

/** Human description of the class payload: length for loxodromic rows,
 * rotation angles (and order when finite) for elliptic ones. */
export function describeClass(cls: ClassInfo): string {
  switch (cls.kind) {
    case "loxodromic":
      return `len ${fmt(cls.length, 4)}`;
    case "elliptic": {
      const angles = `th ${fmt(cls.theta1, 4)}, ${fmt(cls.theta2, 4)}`;
      return cls.finite_order !== null ? `${angles} (order ${cls.finite_order})` : angles;
    }
    case "parabolic":
      return "boundary-fixed";
    case "identity":
      return "projective identity";
  }
}
