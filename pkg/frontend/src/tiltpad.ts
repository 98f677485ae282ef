// Pointer-driven tilt pad. While a pointer is captured the pad offers samples
// at the pad's position and pumps the sender on a 20 Hz timer; releasing
// snaps the knob home and offers one final (0,0).

import { padPointToTilt, TILT_INTERVAL_MS, TiltSender } from "./tilt.js";
import type { Tilt } from "./tilt.js";

export class TiltPad {
  private pointerId: number | null = null;
  private timer: number | null = null;

  constructor(
    private readonly pad: HTMLElement,
    private readonly knob: HTMLElement,
    private readonly sender: TiltSender,
    private readonly onTilt: (tilt: Tilt) => void,
    private readonly enabled: () => boolean,
  ) {
    pad.addEventListener("pointerdown", (e) => this.engage(e));
    pad.addEventListener("pointermove", (e) => this.track(e));
    pad.addEventListener("pointerup", (e) => this.release(e));
    pad.addEventListener("pointercancel", (e) => this.release(e));
  }

  private engage(e: PointerEvent): void {
    if (!this.enabled() || this.pointerId !== null) return;
    this.pointerId = e.pointerId;
    this.pad.setPointerCapture(e.pointerId);
    this.track(e);
    this.timer = window.setInterval(() => this.sender.pump(performance.now()), TILT_INTERVAL_MS);
    this.sender.pump(performance.now()); // responsive first sample
  }

  private track(e: PointerEvent): void {
    if (e.pointerId !== this.pointerId) return;
    const tilt = padPointToTilt(this.pad.getBoundingClientRect(), e.clientX, e.clientY);
    this.sender.offer(tilt);
    this.onTilt(tilt);
    this.moveKnob(tilt);
  }

  private release(e: PointerEvent): void {
    if (e.pointerId !== this.pointerId) return;
    this.pointerId = null;
    if (this.timer !== null) {
      window.clearInterval(this.timer);
      this.timer = null;
    }
    this.sender.release();
    this.onTilt({ x_g: 0, y_g: 0 });
    this.moveKnob({ x_g: 0, y_g: 0 });
    // keep pumping until the final zero clears the rate cap
    const drain = window.setInterval(() => {
      this.sender.pump(performance.now());
      if (!this.sender.hasPending) window.clearInterval(drain);
    }, TILT_INTERVAL_MS);
  }

  private moveKnob(tilt: Tilt): void {
    const half = this.pad.clientWidth / 2;
    const dx = (tilt.x_g / 1.5) * half * 0.8;
    const dy = (-tilt.y_g / 1.5) * half * 0.8;
    this.knob.style.transform = `translate(calc(-50% + ${dx}px), calc(-50% + ${dy}px))`;
  }
}
