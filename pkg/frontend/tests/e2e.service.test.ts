// End-to-end against the real workbench service: spawns the backend,
// then drives the same client code the UI uses.  Verifies the editor's
// two-click vector against the server-side generator through real
// surfaces, and that saving a definition re-resolves chips before the
// next probe.

import { spawn, spawnSync, ChildProcess } from "node:child_process";
import { mkdtempSync, copyFileSync, rmSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { WorkbenchClient } from "../src/api";
import { gridClickPair } from "../src/editor";

const REPO_ROOT = join(__dirname, "..", "..");
const PYTHON = process.env.FUZZCHIP_PYTHON ?? "python3";

let workdir: string;
let server: ChildProcess | null = null;
let client: WorkbenchClient;

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.once("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address && typeof address === "object") {
        const port = address.port;
        probe.close(() => resolve(port));
      } else {
        reject(new Error("no port"));
      }
    });
  });
}

async function waitForService(baseUrl: string, attempts = 150): Promise<void> {
  for (let i = 0; i < attempts; i++) {
    try {
      const response = await fetch(`${baseUrl}/api/definitions`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), "fuzzchip-e2e-"));
  const dict = join(workdir, "defs.fzd");
  copyFileSync(join(REPO_ROOT, "sampledata", "errorgrid.fzd"), dict);

  // seed one definition through the server-side generator, before the
  // service loads the dictionary
  const seeded = spawnSync(
    PYTHON,
    ["-m", "fuzzchip", "defs", "make-triangle", "--dict", dict,
     "--name", "CLICKED", "--center", "8", "--tail", "12"],
    { cwd: REPO_ROOT, encoding: "utf-8" },
  );
  expect(seeded.status, seeded.stderr).toBe(0);

  const port = await freePort();
  server = spawn(PYTHON, ["-m", "fuzzchip", "serve", "--dict", dict, "--port", String(port)], {
    cwd: REPO_ROOT,
    stdio: ["ignore", "pipe", "pipe"],
  });
  const baseUrl = `http://127.0.0.1:${port}`;
  client = new WorkbenchClient(baseUrl);
  await waitForService(baseUrl);
}, 60000);

afterAll(async () => {
  if (server) {
    server.kill("SIGTERM");
    await new Promise((resolve) => {
      server!.once("exit", resolve);
      setTimeout(resolve, 5000);
    });
  }
  rmSync(workdir, { recursive: true, force: true });
});

describe("editor vectors against the service", () => {
  it("two-click TRIANGLE(8,12) equals the server-side generator", async () => {
    const ui = gridClickPair("TRIANGLE", 8, 12);
    const server = await client.getDefinition("CLICKED");
    expect(ui).toEqual(server.levels);
  });

  it("saved definitions echo back verbatim", async () => {
    const vector = gridClickPair("NORMAL", 8, 11);
    await client.putDefinition("DRAWN", vector);
    const stored = await client.getDefinition("DRAWN");
    expect(stored.levels).toEqual(vector);
  });
});

describe("save / probe loop", () => {
  // a chip whose crisp output is pinned to the consequent's single bin:
  // with outputs on (0 16), bin k defuzzifies to exactly k + 0.5
  const binAt = (k: number) => {
    const v = new Array(16).fill(0);
    v[k] = 15;
    return v;
  };

  it("editing a definition, saving, and re-probing reflects the engine", async () => {
    await client.putDefinition("EVERYWHERE", new Array(16).fill(15));
    await client.putDefinition("TARGET", binAt(4));
    await client.createChip(
      "PINNED",
      "minmax",
      "(INPUT E (-1 1))\n(OUTPUT U (0 16))\n(IF E IS EVERYWHERE THEN U IS TARGET)\n",
    );

    const before = await client.infer("PINNED", [0.3]);
    expect(before.outputs[0]).toBe(4.5);
    expect(before.alphas).toEqual([15]);

    // the editor's save: PUT the changed vector, then re-probe
    await client.putDefinition("TARGET", binAt(9));
    const after = await client.infer("PINNED", [0.3]);
    expect(after.outputs[0]).toBe(9.5);
    expect(after.memberships[0][9]).toBe(15);
    expect(after.memberships[0][4]).toBe(0);
  });

  it("no-activation probes return null outputs", async () => {
    await client.putDefinition("NOWHERE", new Array(16).fill(0));
    await client.createChip(
      "DEADCHIP",
      "minmax",
      "(INPUT E (-1 1))\n(OUTPUT U (0 16))\n(IF E IS NOWHERE THEN U IS TARGET)\n",
    );
    const result = await client.infer("DEADCHIP", [0.0]);
    expect(result.outputs[0]).toBeNull();
  });

  it("downloads the 776-byte rule image", async () => {
    const image = await client.compileBinary("PINNED");
    expect(image.byteLength).toBe(776);
    const bytes = new Uint8Array(image);
    expect(String.fromCharCode(...bytes.slice(0, 4))).toBe("FZC1");
  });
});
