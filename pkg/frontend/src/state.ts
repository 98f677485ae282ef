// Console-side state. The console never simulates: everything here is a
// verbatim record of what the gateway said, so when the gateway stops the
// view simply freezes on the last message.

import type { AlertMessage, StateMessage, TelemetryEventMsg } from "./types.js";

export type ConnectionStatus = "connecting" | "connected" | "disconnected";

export interface AlertEntry {
  event: TelemetryEventMsg;
  receivedAt: number;
}

export class ConsoleState {
  status: ConnectionStatus = "connecting";
  latest: StateMessage | null = null;
  /** Newest first; arrival order preserved top-down. */
  alerts: AlertEntry[] = [];
  /** Newest detection/gas alert to show as the banner, if any. */
  banner: AlertEntry | null = null;
  tilt = { x_g: 0, y_g: 0 };
  staleStatesDropped = 0;

  private seenAlerts = new Set<string>();

  /**
   * Apply a state message. Within one run the rendered tick only moves
   * forward; a message with a new run id is a gateway reset and always
   * accepted. Returns true when the view should re-render.
   */
  applyState(msg: StateMessage): boolean {
    if (this.latest && msg.run === this.latest.run && msg.tick <= this.latest.tick) {
      this.staleStatesDropped += 1;
      return false;
    }
    this.latest = msg;
    return true;
  }

  /**
   * Record an alert. Each underlying event enters the feed exactly once;
   * a duplicate delivery is ignored. Returns true when the alert is new.
   */
  addAlert(msg: AlertMessage, receivedAt: number): boolean {
    const key = JSON.stringify(msg.event);
    if (this.seenAlerts.has(key)) return false;
    this.seenAlerts.add(key);
    const entry: AlertEntry = { event: msg.event, receivedAt };
    this.alerts.unshift(entry);
    this.banner = entry;
    return true;
  }

  dismissBanner(): void {
    this.banner = null;
  }

  setStatus(status: ConnectionStatus): void {
    this.status = status;
  }

  setTilt(x_g: number, y_g: number): void {
    this.tilt = { x_g, y_g };
  }
}
