// Prediction request scheduling: at most one request per interval window,
// at most one in flight, and whenever several layouts arrive in a window
// only the latest is sent (with a guaranteed trailing send, so the final
// pose after a drag always gets predicted).

import type { Layout } from "./types.js";

export type PredictSender = (layout: Layout, revision: number) => Promise<void>;

export class PredictScheduler {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inFlight = false;
  private lastSentAt = Number.NEGATIVE_INFINITY;
  private queued: { layout: Layout; revision: number } | null = null;
  sent = 0;

  constructor(
    private send: PredictSender,
    private intervalMs = 100,
  ) {}

  request(layout: Layout, revision: number): void {
    this.queued = { layout, revision };
    this.schedule();
  }

  private schedule(): void {
    if (this.timer !== null || this.inFlight || this.queued === null) {
      return;
    }
    const wait = Math.max(0, this.lastSentAt + this.intervalMs - Date.now());
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire();
    }, wait);
  }

  private async fire(): Promise<void> {
    if (this.inFlight || this.queued === null) {
      return;
    }
    const job = this.queued;
    this.queued = null;
    this.inFlight = true;
    this.lastSentAt = Date.now();
    this.sent += 1;
    try {
      await this.send(job.layout, job.revision);
    } finally {
      this.inFlight = false;
      this.schedule(); // trailing send if something arrived meanwhile
    }
  }
}
