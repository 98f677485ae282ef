import { describe, expect, it } from "vitest";

import { MIN_SEND_GAP_MS, PAD_RANGE_G, padPointToTilt, TiltSender } from "../src/tilt.js";

const RECT = { left: 100, top: 100, width: 200, height: 200 };

describe("padPointToTilt", () => {
  it("maps the center to zero tilt", () => {
    expect(padPointToTilt(RECT, 200, 200)).toEqual({ x_g: 0, y_g: 0 });
  });

  it("maps the top edge to full forward tilt", () => {
    const tilt = padPointToTilt(RECT, 200, 100);
    expect(tilt.x_g).toBe(0);
    expect(tilt.y_g).toBe(PAD_RANGE_G);
  });

  it("maps the right edge to full right tilt", () => {
    const tilt = padPointToTilt(RECT, 300, 200);
    expect(tilt.x_g).toBe(PAD_RANGE_G);
    expect(tilt.y_g).toBe(0);
  });

  it("is linear in between", () => {
    const tilt = padPointToTilt(RECT, 250, 150);
    expect(tilt.x_g).toBeCloseTo(0.75, 10);
    expect(tilt.y_g).toBeCloseTo(0.75, 10);
  });

  it("clamps positions outside the pad", () => {
    const tilt = padPointToTilt(RECT, 1000, -1000);
    expect(tilt.x_g).toBe(PAD_RANGE_G);
    expect(tilt.y_g).toBe(PAD_RANGE_G);
  });
});

describe("TiltSender", () => {
  it("coalesces offers to the latest sample", () => {
    const sent: number[] = [];
    const sender = new TiltSender((t) => sent.push(t.y_g));
    sender.offer({ x_g: 0, y_g: 0.1 });
    sender.offer({ x_g: 0, y_g: 0.2 });
    sender.offer({ x_g: 0, y_g: 0.9 });
    sender.pump(0);
    expect(sent).toEqual([0.9]);
  });

  it("never exceeds 25 messages in any one-second window", () => {
    const sendTimes: number[] = [];
    const sender = new TiltSender(() => {});
    // a pathological caller offering and pumping every 5 ms for five seconds
    for (let now = 0; now < 5000; now += 5) {
      sender.offer({ x_g: 0, y_g: 1 });
      if (sender.pump(now) !== null) sendTimes.push(now);
    }
    const cap = 1000 / MIN_SEND_GAP_MS; // 25
    for (let i = 0; i < sendTimes.length; i += 1) {
      const windowStart = sendTimes[i]!;
      const inWindow = sendTimes.filter((t) => t >= windowStart && t < windowStart + 1000);
      expect(inWindow.length).toBeLessThanOrEqual(cap);
    }
  });

  it("release guarantees a final zero even under the rate cap", () => {
    const sent: Array<{ x_g: number; y_g: number }> = [];
    const sender = new TiltSender((t) => sent.push(t));
    sender.offer({ x_g: 0, y_g: 1.5 });
    sender.pump(0);
    sender.release(); // immediately after a send: the cap delays it
    expect(sender.pump(10)).toBeNull();
    expect(sender.hasPending).toBe(true);
    expect(sender.pump(50)).toEqual({ x_g: 0, y_g: 0 });
    expect(sent).toEqual([
      { x_g: 0, y_g: 1.5 },
      { x_g: 0, y_g: 0 },
    ]);
    expect(sender.hasPending).toBe(false);
  });
});
