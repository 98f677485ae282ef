// Tilt-pad math and outbound pacing, kept DOM-free so it can be tested.

/** Pad edges map to +/- 1.5 g: comfortably past the engage threshold while
 * leaving the dead zone findable near the center. */
export const PAD_RANGE_G = 1.5;

/** Emission cadence while the pad is engaged (the gateway ticks at 20 Hz). */
export const TILT_INTERVAL_MS = 50;

/** Hard floor between any two sends: caps outbound rate at 25 msg/s. */
export const MIN_SEND_GAP_MS = 40;

export interface Tilt {
  x_g: number;
  y_g: number;
}

/**
 * Map a pointer position inside the pad to a tilt sample.
 *
 * The pad center is (0,0) g; the right and top edges are +1.5 g on x and y
 * (screen y grows downward, hand y grows "push forward", hence the flip).
 * Positions outside the pad clamp to the edge.
 */
export function padPointToTilt(
  rect: { left: number; top: number; width: number; height: number },
  clientX: number,
  clientY: number,
): Tilt {
  const cx = rect.left + rect.width / 2;
  const cy = rect.top + rect.height / 2;
  const nx = (clientX - cx) / (rect.width / 2);
  const ny = (cy - clientY) / (rect.height / 2);
  const clamp = (v: number) => Math.max(-1, Math.min(1, v));
  return { x_g: clamp(nx) * PAD_RANGE_G, y_g: clamp(ny) * PAD_RANGE_G };
}

/**
 * Latest-wins outbound scheduler for tilt samples.
 *
 * `offer` replaces the pending sample; `pump(now)` sends it if the minimum
 * gap has elapsed. Releasing the pad offers a final (0,0) that is guaranteed
 * to go out on a later pump even if the rate cap delays it.
 */
export class TiltSender {
  private pending: Tilt | null = null;
  private lastSentAt = -Infinity;
  sentCount = 0;

  constructor(private readonly send: (tilt: Tilt) => void) {}

  offer(tilt: Tilt): void {
    this.pending = tilt;
  }

  release(): void {
    this.pending = { x_g: 0, y_g: 0 };
  }

  /** Try to flush the pending sample; returns the sent tilt, if any. */
  pump(nowMs: number): Tilt | null {
    if (this.pending === null) return null;
    if (nowMs - this.lastSentAt < MIN_SEND_GAP_MS) return null;
    const tilt = this.pending;
    this.pending = null;
    this.lastSentAt = nowMs;
    this.sentCount += 1;
    this.send(tilt);
    return tilt;
  }

  get hasPending(): boolean {
    return this.pending !== null;
  }
}
