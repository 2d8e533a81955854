/** Reaction-time clock: starts when the stimulus is put on screen, read at
 * submit. Rest and confirmation screens never run the clock. */

export type Now = () => number;

export class ReactionClock {
  private startedAt: number | null = null;

  constructor(private readonly now: Now = () => performance.now()) {}

  start(): void {
    this.startedAt = this.now();
  }

  stop(): void {
    this.startedAt = null;
  }

  /** Milliseconds since start; 0 if the clock was never started. */
  elapsedMs(): number {
    if (this.startedAt === null) return 0;
    return Math.max(0, this.now() - this.startedAt);
  }
}
