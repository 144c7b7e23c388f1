/** Keyboard bindings for review at speed. Pure lookup, no DOM. */

import { RELATIONS, type Relation } from "./types.js";

export type ReviewAction =
  | { kind: "accept" }
  | { kind: "reject" }
  | { kind: "relabel"; relation: Relation }
  | { kind: "move"; step: 1 | -1 }
  | { kind: "entry"; step: 1 | -1 }
  | { kind: "export" };

const FIXED: Record<string, ReviewAction> = {
  a: { kind: "accept" },
  x: { kind: "reject" },
  j: { kind: "move", step: 1 },
  ArrowDown: { kind: "move", step: 1 },
  k: { kind: "move", step: -1 },
  ArrowUp: { kind: "move", step: -1 },
  n: { kind: "entry", step: 1 },
  ArrowRight: { kind: "entry", step: 1 },
  p: { kind: "entry", step: -1 },
  ArrowLeft: { kind: "entry", step: -1 },
  e: { kind: "export" },
};

/** Digits 1..5 relabel to exact/broader/narrower/related/none in that order. */
export function actionForKey(key: string): ReviewAction | null {
  const fixed = FIXED[key];
  if (fixed) return fixed;
  const digit = Number.parseInt(key, 10);
  if (digit >= 1 && digit <= RELATIONS.length && key.length === 1) {
    return { kind: "relabel", relation: RELATIONS[digit - 1]! };
  }
  return null;
}
