// Canvas painting. Pure rendering transforms only; every number shown
// comes from editor state or service responses.

import { GRID, TRUTH_MAX } from "./generators";
import { rowForLevel } from "./editor";

export const CELL = 22;
export const GRID_SIZE = GRID * CELL;

export function drawGrid(
  ctx: CanvasRenderingContext2D,
  levels: number[],
  pendingColumn: number | null,
): void {
  ctx.clearRect(0, 0, GRID_SIZE, GRID_SIZE);
  ctx.fillStyle = "#fafafa";
  ctx.fillRect(0, 0, GRID_SIZE, GRID_SIZE);

  for (let column = 0; column < GRID; column++) {
    const row = rowForLevel(levels[column]);
    ctx.fillStyle = column === pendingColumn ? "#e5734a" : "#4a7de5";
    // fill from the level row down to the bottom of the grid
    ctx.fillRect(column * CELL + 1, row * CELL + 1, CELL - 2, (GRID - row) * CELL - 2);
  }

  ctx.strokeStyle = "#ddd";
  ctx.lineWidth = 1;
  for (let i = 0; i <= GRID; i++) {
    ctx.beginPath();
    ctx.moveTo(i * CELL, 0);
    ctx.lineTo(i * CELL, GRID_SIZE);
    ctx.stroke();
    ctx.beginPath();
    ctx.moveTo(0, i * CELL);
    ctx.lineTo(GRID_SIZE, i * CELL);
    ctx.stroke();
  }
}

export function cellFromEvent(
  canvas: HTMLCanvasElement,
  event: MouseEvent,
): [number, number] {
  const rect = canvas.getBoundingClientRect();
  const column = Math.floor(((event.clientX - rect.left) / rect.width) * GRID);
  const row = Math.floor(((event.clientY - rect.top) / rect.height) * GRID);
  return [column, row];
}

export function drawBars(
  ctx: CanvasRenderingContext2D,
  values: number[],
  maxValue: number,
  width: number,
  height: number,
  color: string,
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#fafafa";
  ctx.fillRect(0, 0, width, height);
  const slot = width / values.length;
  ctx.fillStyle = color;
  values.forEach((v, i) => {
    const h = maxValue > 0 ? (v / maxValue) * (height - 4) : 0;
    ctx.fillRect(i * slot + 1, height - h - 2, slot - 2, h);
  });
}

// One output membership as 16 bars with the centroid marked; hides the
// marker when no rule fired.
export function drawMembership(
  ctx: CanvasRenderingContext2D,
  vector: number[],
  crisp: number | null,
  lo: number,
  hi: number,
  width: number,
  height: number,
  normalized: boolean,
): void {
  drawBars(ctx, vector, normalized ? 1 : TRUTH_MAX, width, height, "#58a55c");
  if (crisp === null) return;
  const x = ((crisp - lo) / (hi - lo)) * width;
  ctx.strokeStyle = "#c23b21";
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(x, 0);
  ctx.lineTo(x, height);
  ctx.stroke();
}
