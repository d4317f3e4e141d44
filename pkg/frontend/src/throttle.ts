// Rate limiter for slider drags: at most N sends per second, and the last
// dragged value always goes out once the window reopens.

export class TrailingRateLimiter {
  private readonly minIntervalMs: number;
  private lastSentAt = -Infinity;
  private trailing: (() => void) | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private readonly now: () => number;

  constructor(maxPerSecond: number, now: () => number = () => Date.now()) {
    this.minIntervalMs = 1000 / maxPerSecond;
    this.now = now;
  }

  /** Run `send` immediately if the rate allows, else queue it as trailing. */
  submit(send: () => void): boolean {
    const t = this.now();
    if (t - this.lastSentAt >= this.minIntervalMs) {
      this.lastSentAt = t;
      send();
      return true;
    }
    this.trailing = send;
    if (this.timer === null) {
      const wait = Math.max(0, this.minIntervalMs - (t - this.lastSentAt));
      this.timer = setTimeout(() => this.flush(), wait);
    }
    return false;
  }

  private flush(): void {
    this.timer = null;
    const send = this.trailing;
    this.trailing = null;
    if (send) {
      this.lastSentAt = this.now();
      send();
    }
  }

  dispose(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.trailing = null;
  }
}
