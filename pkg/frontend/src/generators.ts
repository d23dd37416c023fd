// Local mirror of the server-side distribution generators.  The service
// exposes no generator endpoint, so the editor computes preview vectors
// itself; the formulas must stay in lockstep with the backend, which is
// pinned by tests/generators.test.ts against fixtures exported from it.

export const GRID = 16;
export const TRUTH_MAX = 15;

export function roundHalfAway(x: number): number {
  return x >= 0 ? Math.floor(x + 0.5) : Math.ceil(x - 0.5);
}

function checkPair(center: number, tail: number): void {
  for (const v of [center, tail]) {
    if (!Number.isInteger(v) || v < 0 || v > TRUTH_MAX) {
      throw new Error(`grid column ${v} outside 0..${TRUTH_MAX}`);
    }
  }
  if (center === tail) {
    throw new Error(`center and tail coincide at column ${center}`);
  }
}

// Bell curve peaking at `center`; the tail column sits at three standard
// deviations and rounds to zero.
export function makeNormal(center: number, tail: number): number[] {
  checkPair(center, tail);
  const sigma = Math.abs(tail - center) / 3;
  const levels: number[] = [];
  for (let i = 0; i < GRID; i++) {
    const d = i - center;
    levels.push(roundHalfAway(TRUTH_MAX * Math.exp(-(d * d) / (2 * sigma * sigma))));
  }
  levels[center] = TRUTH_MAX;
  return levels;
}

export function makeTriangle(center: number, tail: number): number[] {
  checkPair(center, tail);
  const width = Math.abs(tail - center);
  const levels: number[] = [];
  for (let i = 0; i < GRID; i++) {
    levels.push(roundHalfAway(TRUTH_MAX * Math.max(0, 1 - Math.abs(i - center) / width)));
  }
  return levels;
}

export function isValidVector(levels: number[]): boolean {
  return (
    levels.length === GRID &&
    levels.every((v) => Number.isInteger(v) && v >= 0 && v <= TRUTH_MAX)
  );
}
