/** Discards responses that arrive after a newer request was issued.
 *
 * Concurrent in-flight requests are fine; only the latest ticket may apply
 * its result, so a slow stale response can never overwrite a fresh view.
 */

export class RequestSequencer {
  private current = 0;

  /** Take a ticket for a new request; invalidates all earlier tickets. */
  begin(): number {
    this.current += 1;
    return this.current;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.current;
  }

  /** Run an async producer; resolve with its value, or null if superseded. */
  async run<T>(producer: () => Promise<T>): Promise<T | null> {
    const ticket = this.begin();
    const value = await producer();
    return this.isCurrent(ticket) ? value : null;
  }
}
