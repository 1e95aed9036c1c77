/** Playback clock: a self-rescheduling timeout that reads the live state
 * each tick, so speed changes take effect on the next frame advance
 * without restarting playback. */

import type { ViewerState } from "./state.js";

export class Player {
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly getState: () => ViewerState,
    private readonly onTick: () => void,
  ) {}

  sync(): void {
    const state = this.getState();
    if (state.playing && this.timer === null) {
      this.schedule();
    } else if (!state.playing && this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }

  private schedule(): void {
    const delay = this.getState().secondsPerFrame * 1000;
    this.timer = setTimeout(() => {
      this.timer = null;
      if (this.getState().playing) {
        this.onTick();
        this.schedule();
      }
    }, delay);
  }

  stop(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = null;
  }
}
