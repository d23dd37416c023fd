import { describe, expect, it } from "vitest";

import { ProbeScheduler, ProbeTimers } from "../src/probe";

// Deterministic clock + timer queue so tests drive time explicitly.
class FakeTimers implements ProbeTimers {
  time = 0;
  private queue: Array<{ at: number; fn: () => void; id: number }> = [];
  private nextId = 1;

  now() {
    return this.time;
  }

  setTimer(fn: () => void, ms: number) {
    const id = this.nextId++;
    this.queue.push({ at: this.time + ms, fn, id });
    return id;
  }

  clearTimer(handle: unknown) {
    this.queue = this.queue.filter((t) => t.id !== handle);
  }

  advance(ms: number) {
    this.time += ms;
    const due = this.queue.filter((t) => t.at <= this.time);
    this.queue = this.queue.filter((t) => t.at > this.time);
    due.sort((a, b) => a.at - b.at).forEach((t) => t.fn());
  }
}

interface Deferred {
  inputs: number[];
  resolve: (v: string) => void;
}

function harness(minInterval = 100) {
  const timers = new FakeTimers();
  const pending: Deferred[] = [];
  const delivered: string[] = [];
  const scheduler = new ProbeScheduler<string>(
    (inputs) =>
      new Promise<string>((resolve) => {
        pending.push({ inputs, resolve });
      }),
    (result) => delivered.push(result),
    minInterval,
    timers,
  );
  return { timers, pending, delivered, scheduler };
}

describe("rate limiting", () => {
  it("fires immediately when idle", () => {
    const { pending, scheduler } = harness();
    scheduler.request([1]);
    expect(pending.length).toBe(1);
  });

  it("coalesces a burst into one trailing request", () => {
    const { timers, pending, scheduler } = harness(100);
    scheduler.request([1]);
    for (let i = 2; i <= 9; i++) scheduler.request([i]);
    expect(pending.length).toBe(1); // burst within the interval
    timers.advance(100);
    expect(pending.length).toBe(2);
    expect(pending[1].inputs).toEqual([9]); // latest wins the trailing slot
  });

  it("caps the send rate at one per interval", () => {
    const { timers, scheduler } = harness(100);
    for (let t = 0; t < 1000; t += 10) {
      scheduler.request([t]);
      timers.advance(10);
    }
    // 1000 ms at 100 ms per send allows ~10-11 sends, not 100
    expect(scheduler.sent).toBeLessThanOrEqual(11);
    expect(scheduler.sent).toBeGreaterThanOrEqual(10);
  });
});

describe("latest-wins delivery", () => {
  it("discards stale responses that resolve late", () => {
    const { timers, pending, delivered, scheduler } = harness(100);
    scheduler.request([1]);
    timers.advance(100);
    scheduler.request([2]);
    expect(pending.length).toBe(2);
    pending[1].resolve("newer");
    pending[0].resolve("older");
    return Promise.resolve().then(() => {
      expect(delivered).toEqual(["newer"]);
    });
  });

  it("delivers in-order responses normally", async () => {
    const { timers, pending, delivered, scheduler } = harness(100);
    scheduler.request([1]);
    pending[0].resolve("first");
    await Promise.resolve();
    timers.advance(100);
    scheduler.request([2]);
    pending[1].resolve("second");
    await Promise.resolve();
    expect(delivered).toEqual(["first", "second"]);
  });

  it("dispose cancels the trailing request", () => {
    const { timers, pending, scheduler } = harness(100);
    scheduler.request([1]);
    scheduler.request([2]);
    scheduler.dispose();
    timers.advance(500);
    expect(pending.length).toBe(1);
  });
});
