// Definition-editor state: a 16x16 truth grid edited with two-click
// distribution tools or freehand drawing.  All transitions are pure so
// they can be tested headless; the canvas layer only renders the state.

import { GRID, TRUTH_MAX, makeNormal, makeTriangle } from "./generators";

export type Tool = "NORMAL" | "TRIANGLE" | "FREEHAND";

export interface EditorState {
  selectedName: string | null;
  working: number[]; // 16 truth levels, the vector being edited
  serverCopy: number[]; // last vector seen from / saved to the service
  tool: Tool;
  pendingColumn: number | null; // first click of a two-click tool
  dirty: boolean;
}

// Grid rows render truth top-down: row 0 is truth 15, row 15 is truth 0.
export function levelForRow(row: number): number {
  return TRUTH_MAX - row;
}

export function rowForLevel(level: number): number {
  return TRUTH_MAX - level;
}

const ZEROS = () => new Array<number>(GRID).fill(0);

export function createEditor(): EditorState {
  return {
    selectedName: null,
    working: ZEROS(),
    serverCopy: ZEROS(),
    tool: "FREEHAND",
    pendingColumn: null,
    dirty: false,
  };
}

function vectorsEqual(a: number[], b: number[]): boolean {
  return a.length === b.length && a.every((v, i) => v === b[i]);
}

function withWorking(state: EditorState, working: number[]): EditorState {
  return { ...state, working, dirty: !vectorsEqual(working, state.serverCopy) };
}

export function selectDefinition(
  state: EditorState,
  name: string,
  levels: number[],
): EditorState {
  return {
    ...state,
    selectedName: name,
    working: [...levels],
    serverCopy: [...levels],
    pendingColumn: null,
    dirty: false,
  };
}

export function setTool(state: EditorState, tool: Tool): EditorState {
  return { ...state, tool, pendingColumn: null };
}

export function markSaved(state: EditorState): EditorState {
  return { ...state, serverCopy: [...state.working], dirty: false };
}

// The two-click generator placement: first click marks the center, the
// second the tail.  Coincident clicks are an error and change nothing.
export function gridClickPair(tool: Tool, first: number, second: number): number[] {
  if (tool === "NORMAL") return makeNormal(first, second);
  if (tool === "TRIANGLE") return makeTriangle(first, second);
  throw new Error(`tool ${tool} is not a two-click tool`);
}

export interface ClickResult {
  state: EditorState;
  error?: string;
}

export function applyClick(state: EditorState, column: number, row: number): ClickResult {
  if (column < 0 || column >= GRID || row < 0 || row >= GRID) {
    return { state };
  }
  if (state.tool === "FREEHAND") {
    return { state: freehandDrag(state, [[column, row]]) };
  }
  if (state.pendingColumn === null) {
    return { state: { ...state, pendingColumn: column } };
  }
  const first = state.pendingColumn;
  try {
    const vector = gridClickPair(state.tool, first, column);
    return { state: withWorking({ ...state, pendingColumn: null }, vector) };
  } catch (err) {
    return {
      state: { ...state, pendingColumn: null },
      error: err instanceof Error ? err.message : String(err),
    };
  }
}

// Freehand drawing: each visited column takes the level of the row the
// pointer crossed; revisiting a column overwrites (last write wins).
export function freehandDrag(
  state: EditorState,
  path: Array<[number, number]>,
): EditorState {
  const working = [...state.working];
  for (const [column, row] of path) {
    if (column >= 0 && column < GRID && row >= 0 && row < GRID) {
      working[column] = levelForRow(row);
    }
  }
  return withWorking(state, working);
}
