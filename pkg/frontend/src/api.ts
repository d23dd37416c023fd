// Typed client for the workbench service.  The UI does no fuzzy
// arithmetic of record: every number displayed is echoed from these
// responses or is a pure rendering transform of them.

export interface Definition {
  name: string;
  levels: number[];
}

export interface SignalInfo {
  name: string;
  lo: number;
  hi: number;
}

export interface ChipSummary {
  name: string;
  type: string;
  inputs: SignalInfo[];
  outputs: SignalInfo[];
  ruleCount: number;
}

export interface ChipCreated {
  name: string;
  inputs: SignalInfo[];
  outputs: SignalInfo[];
  ruleCount: number;
  normalizedRuleCount: number;
  diagnostics: Diagnostic[];
}

export interface Diagnostic {
  severity: string;
  line: number;
  column: number;
  message: string;
}

export interface InferResponse {
  outputs: (number | null)[];
  memberships: number[][];
  alphas: number[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
    public diagnostics: Diagnostic[] = [],
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<never> {
  let message = `${response.status} ${response.statusText}`;
  let diagnostics: Diagnostic[] = [];
  try {
    const body = await response.json();
    if (body.error) message = body.error;
    if (body.diagnostics) diagnostics = body.diagnostics;
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(response.status, message, diagnostics);
}

export class WorkbenchClient {
  constructor(private baseUrl: string = "") {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  listDefinitions(): Promise<Definition[]> {
    return this.json("/api/definitions");
  }

  getDefinition(name: string): Promise<Definition> {
    return this.json(`/api/definitions/${encodeURIComponent(name)}`);
  }

  putDefinition(name: string, levels: number[]): Promise<Definition> {
    return this.json(`/api/definitions/${encodeURIComponent(name)}`, {
      method: "PUT",
      body: JSON.stringify({ levels }),
    });
  }

  listChips(): Promise<ChipSummary[]> {
    return this.json("/api/chips");
  }

  createChip(name: string, type: string, ruleText: string): Promise<ChipCreated> {
    return this.json("/api/chips", {
      method: "POST",
      body: JSON.stringify({ name, type, ruleText }),
    });
  }

  infer(chip: string, inputs: number[]): Promise<InferResponse> {
    return this.json(`/api/chips/${encodeURIComponent(chip)}/infer`, {
      method: "POST",
      body: JSON.stringify({ inputs }),
    });
  }

  async compileBinary(chip: string): Promise<ArrayBuffer> {
    const response = await fetch(
      `${this.baseUrl}/api/chips/${encodeURIComponent(chip)}/compile`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ target: "inference-chip" }),
      },
    );
    if (!response.ok) await parseError(response);
    return response.arrayBuffer();
  }

  async compileTableText(chip: string, bytesize: number): Promise<string> {
    const response = await fetch(
      `${this.baseUrl}/api/chips/${encodeURIComponent(chip)}/compile`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ target: "memory-chip", bytesize, format: "text" }),
      },
    );
    if (!response.ok) await parseError(response);
    return response.text();
  }
}
