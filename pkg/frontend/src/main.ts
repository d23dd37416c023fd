// Workbench app: definition editor on a 16x16 truth grid, a rule pane
// for creating chips, live probing with sliders, and artifact downloads.

import { WorkbenchClient, ApiError, ChipSummary, InferResponse } from "./api";
import {
  EditorState,
  Tool,
  applyClick,
  createEditor,
  freehandDrag,
  markSaved,
  selectDefinition,
  setTool,
} from "./editor";
import { GRID_SIZE, cellFromEvent, drawBars, drawGrid, drawMembership } from "./render";
import { ProbeScheduler } from "./probe";
import { TRUTH_MAX } from "./generators";

const client = new WorkbenchClient("");

const app = document.getElementById("app")!;
app.innerHTML = `
  <section>
    <h2>Definitions</h2>
    <select id="definition-list" size="10" multiple={false}></select>
    <div class="toolbar">
      <input id="new-name" placeholder="NEW.NAME" size="10" />
      <button id="new-definition">New</button>
    </div>
  </section>
  <section>
    <h2>Editor <span id="editor-name" class="muted"></span><span id="dirty" class="badge"></span></h2>
    <div class="toolbar">
      <button data-tool="NORMAL">Normal</button>
      <button data-tool="TRIANGLE">Triangle</button>
      <button data-tool="FREEHAND" class="active">Freehand</button>
      <button id="save" disabled>Save</button>
    </div>
    <canvas id="grid" width="${GRID_SIZE}" height="${GRID_SIZE}"></canvas>
    <div id="editor-error" class="error"></div>
    <div class="muted">two-click tools: first click = center, second = tail</div>
  </section>
  <section style="flex:1; min-width: 420px">
    <h2>Chips</h2>
    <div class="toolbar">
      <input id="chip-name" placeholder="MYCHIP" size="10" />
      <select id="chip-type"><option value="minmax">minmax</option><option value="mult">multiplicative</option></select>
      <button id="create-chip">Create from rule text</button>
      <select id="chip-list"></select>
    </div>
    <textarea id="rule-text" rows="8">(INPUT TEMPERATURE (0 200) PRESSURE (0 500))
(OUTPUT HEATER.POWER (0 10) VALVE.OPENING (0 10))

(IF TEMPERATURE IS HIGH.TEMP AND PRESSURE IS LOW.PRESS
 THEN HEATER.POWER IS LOW AND VALVE.OPENING IS SMALL)</textarea>
    <div id="chip-error" class="error"></div>
    <div id="probe"></div>
    <div class="toolbar">
      <button id="download-fzc">Download rule image (.fzc)</button>
      <button id="download-tbl">Download address table (.tbl)</button>
    </div>
  </section>
`;

const definitionList = document.getElementById("definition-list") as HTMLSelectElement;
const gridCanvas = document.getElementById("grid") as HTMLCanvasElement;
const gridCtx = gridCanvas.getContext("2d")!;
const saveButton = document.getElementById("save") as HTMLButtonElement;
const editorError = document.getElementById("editor-error")!;
const editorName = document.getElementById("editor-name")!;
const dirtyBadge = document.getElementById("dirty")!;
const chipList = document.getElementById("chip-list") as HTMLSelectElement;
const chipError = document.getElementById("chip-error")!;
const probePanel = document.getElementById("probe")!;

let editor: EditorState = createEditor();
let chips: ChipSummary[] = [];
let currentChip: ChipSummary | null = null;
let sliders: HTMLInputElement[] = [];
let lastResponse: InferResponse | null = null;
let saving = false;

const probe = new ProbeScheduler<InferResponse>(
  (inputs) => client.infer(currentChip!.name, inputs),
  (result) => {
    lastResponse = result;
    renderProbeResult();
  },
  100,
);

function renderEditor(): void {
  drawGrid(gridCtx, editor.working, editor.pendingColumn);
  editorName.textContent = editor.selectedName ?? "(none)";
  dirtyBadge.textContent = editor.dirty ? "unsaved" : "";
  saveButton.disabled = !editor.dirty || !editor.selectedName || saving;
}

function setEditor(next: EditorState): void {
  editor = next;
  renderEditor();
}

async function refreshDefinitions(selected?: string): Promise<void> {
  const definitions = await client.listDefinitions();
  definitionList.innerHTML = "";
  for (const def of definitions) {
    const option = document.createElement("option");
    option.value = def.name;
    option.textContent = def.name;
    definitionList.appendChild(option);
  }
  if (selected) definitionList.value = selected;
}

definitionList.addEventListener("change", async () => {
  const name = definitionList.value;
  if (!name) return;
  const def = await client.getDefinition(name);
  setEditor(selectDefinition(editor, def.name, def.levels));
});

document.getElementById("new-definition")!.addEventListener("click", () => {
  const name = (document.getElementById("new-name") as HTMLInputElement).value.trim();
  if (!name) return;
  setEditor(selectDefinition(editor, name.toUpperCase(), new Array(16).fill(0)));
});

for (const button of app.querySelectorAll<HTMLButtonElement>("[data-tool]")) {
  button.addEventListener("click", () => {
    app.querySelectorAll("[data-tool]").forEach((b) => b.classList.remove("active"));
    button.classList.add("active");
    setEditor(setTool(editor, button.dataset.tool as Tool));
  });
}

let drawing = false;
gridCanvas.addEventListener("mousedown", (event) => {
  const [column, row] = cellFromEvent(gridCanvas, event);
  if (editor.tool === "FREEHAND") {
    drawing = true;
    setEditor(freehandDrag(editor, [[column, row]]));
  } else {
    const { state, error } = applyClick(editor, column, row);
    editorError.textContent = error ?? "";
    setEditor(state);
  }
});
gridCanvas.addEventListener("mousemove", (event) => {
  if (!drawing) return;
  const [column, row] = cellFromEvent(gridCanvas, event);
  setEditor(freehandDrag(editor, [[column, row]]));
});
window.addEventListener("mouseup", () => {
  drawing = false;
});

saveButton.addEventListener("click", async () => {
  if (!editor.selectedName || saving) return;
  saving = true;
  renderEditor();
  try {
    await client.putDefinition(editor.selectedName, editor.working);
    setEditor(markSaved(editor));
    editorError.textContent = "";
    await refreshDefinitions(editor.selectedName);
    // dependent chips were re-resolved server-side; refresh the probe
    if (currentChip) requestProbe();
  } catch (err) {
    editorError.textContent = describe(err);
  } finally {
    saving = false;
    renderEditor();
  }
});

function describe(err: unknown): string {
  if (err instanceof ApiError) {
    const lines = err.diagnostics.map(
      (d) => `line ${d.line}, col ${d.column}: ${d.message}`,
    );
    return lines.length ? lines.join("\n") : err.message;
  }
  return err instanceof Error ? err.message : String(err);
}

document.getElementById("create-chip")!.addEventListener("click", async () => {
  const name = (document.getElementById("chip-name") as HTMLInputElement).value.trim();
  const type = (document.getElementById("chip-type") as HTMLSelectElement).value;
  const ruleText = (document.getElementById("rule-text") as HTMLTextAreaElement).value;
  chipError.textContent = "";
  try {
    await client.createChip(name, type, ruleText);
    await refreshChips(name.toUpperCase());
  } catch (err) {
    chipError.textContent = describe(err);
  }
});

chipList.addEventListener("change", () => {
  selectChip(chipList.value);
});

async function refreshChips(selected?: string): Promise<void> {
  chips = await client.listChips();
  chipList.innerHTML = "";
  for (const chip of chips) {
    const option = document.createElement("option");
    option.value = chip.name;
    option.textContent = `${chip.name} (${chip.type.toLowerCase()})`;
    chipList.appendChild(option);
  }
  if (selected) chipList.value = selected;
  if (chipList.value) selectChip(chipList.value);
}

function selectChip(name: string): void {
  currentChip = chips.find((c) => c.name === name) ?? null;
  lastResponse = null;
  buildProbePanel();
  if (currentChip) requestProbe();
}

function buildProbePanel(): void {
  probePanel.innerHTML = "";
  sliders = [];
  if (!currentChip) return;
  for (const input of currentChip.inputs) {
    const row = document.createElement("div");
    row.className = "slider-row";
    const label = document.createElement("label");
    label.textContent = `${input.name} [${input.lo}, ${input.hi}]`;
    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = String(input.lo);
    slider.max = String(input.hi);
    slider.step = String((input.hi - input.lo) / 160);
    slider.value = String((input.lo + input.hi) / 2);
    const value = document.createElement("span");
    value.textContent = slider.value;
    slider.addEventListener("input", () => {
      value.textContent = slider.value;
      requestProbe();
    });
    row.append(label, slider, value);
    probePanel.appendChild(row);
    sliders.push(slider);
  }
  const stages = document.createElement("div");
  stages.innerHTML = `
    <div><span class="muted">rule activations</span><br/><canvas id="alpha-bars" width="360" height="60"></canvas></div>
    <div class="outputs" id="output-charts"></div>
  `;
  probePanel.appendChild(stages);
}

function requestProbe(): void {
  if (!currentChip) return;
  probe.request(sliders.map((s) => Number(s.value)));
}

function renderProbeResult(): void {
  if (!currentChip || !lastResponse) return;
  const alphaCanvas = document.getElementById("alpha-bars") as HTMLCanvasElement | null;
  if (alphaCanvas) {
    const normalized = currentChip.type === "MULTIPLICATIVE";
    drawBars(
      alphaCanvas.getContext("2d")!,
      lastResponse.alphas,
      normalized ? 1 : TRUTH_MAX,
      alphaCanvas.width,
      alphaCanvas.height,
      "#8058a5",
    );
  }
  const charts = document.getElementById("output-charts");
  if (!charts) return;
  charts.innerHTML = "";
  currentChip.outputs.forEach((output, index) => {
    const wrap = document.createElement("div");
    const crisp = lastResponse!.outputs[index];
    const title = document.createElement("span");
    title.className = "muted";
    title.textContent = `${output.name} = `;
    const value = document.createElement("b");
    value.textContent = crisp === null ? "" : crisp.toPrecision(6);
    wrap.append(title, value);
    if (crisp === null) {
      const badge = document.createElement("span");
      badge.className = "badge";
      badge.textContent = "no rule fired";
      wrap.appendChild(badge);
    }
    const canvas = document.createElement("canvas");
    canvas.width = 360;
    canvas.height = 80;
    wrap.appendChild(canvas);
    drawMembership(
      canvas.getContext("2d")!,
      lastResponse!.memberships[index],
      crisp,
      output.lo,
      output.hi,
      canvas.width,
      canvas.height,
      currentChip!.type === "MULTIPLICATIVE",
    );
    charts.appendChild(wrap);
  });
}

function downloadBlob(data: BlobPart, filename: string, type: string): void {
  const url = URL.createObjectURL(new Blob([data], { type }));
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}

document.getElementById("download-fzc")!.addEventListener("click", async () => {
  if (!currentChip) return;
  try {
    const image = await client.compileBinary(currentChip.name);
    downloadBlob(image, `${currentChip.name.toLowerCase()}.fzc`, "application/octet-stream");
    chipError.textContent = "";
  } catch (err) {
    chipError.textContent = describe(err);
  }
});

document.getElementById("download-tbl")!.addEventListener("click", async () => {
  if (!currentChip) return;
  try {
    const table = await client.compileTableText(currentChip.name, 0);
    downloadBlob(table, `${currentChip.name.toLowerCase()}.tbl`, "text/plain");
    chipError.textContent = "";
  } catch (err) {
    chipError.textContent = describe(err);
  }
});

async function start(): Promise<void> {
  await refreshDefinitions();
  await refreshChips();
  renderEditor();
}

start().catch((err) => {
  editorError.textContent = `cannot reach the workbench service: ${describe(err)}`;
});
