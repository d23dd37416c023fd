// Live probing with sliders: requests are rate-limited (trailing-edge
// debounce) and responses are delivered latest-wins, so a stale slow
// response can never overwrite a newer one.

export interface ProbeTimers {
  now(): number;
  setTimer(fn: () => void, ms: number): unknown;
  clearTimer(handle: unknown): void;
}

const realTimers: ProbeTimers = {
  now: () => Date.now(),
  setTimer: (fn, ms) => setTimeout(fn, ms),
  clearTimer: (handle) => clearTimeout(handle as ReturnType<typeof setTimeout>),
};

export class ProbeScheduler<T> {
  private sequence = 0;
  private delivered = 0;
  private lastSent = Number.NEGATIVE_INFINITY;
  private trailing: number[] | null = null;
  private timer: unknown = null;

  constructor(
    private send: (inputs: number[]) => Promise<T>,
    private onResult: (result: T) => void,
    private minIntervalMs = 100,
    private timers: ProbeTimers = realTimers,
    private onError: (err: unknown) => void = () => {},
  ) {}

  request(inputs: number[]): void {
    const now = this.timers.now();
    const wait = this.lastSent + this.minIntervalMs - now;
    if (wait <= 0) {
      this.fire(inputs, now);
      return;
    }
    this.trailing = [...inputs];
    if (this.timer === null) {
      this.timer = this.timers.setTimer(() => {
        this.timer = null;
        const pending = this.trailing;
        this.trailing = null;
        if (pending) this.fire(pending, this.timers.now());
      }, wait);
    }
  }

  /** Requests actually sent so far (for tests and diagnostics). */
  get sent(): number {
    return this.sequence;
  }

  dispose(): void {
    if (this.timer !== null) {
      this.timers.clearTimer(this.timer);
      this.timer = null;
    }
    this.trailing = null;
  }

  private fire(inputs: number[], now: number): void {
    this.lastSent = now;
    const seq = ++this.sequence;
    this.send(inputs).then(
      (result) => {
        if (seq > this.delivered) {
          this.delivered = seq;
          this.onResult(result);
        }
      },
      (err) => {
        if (seq > this.delivered) this.onError(err);
      },
    );
  }
}
