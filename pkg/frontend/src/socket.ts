// Thin WebSocket client for the gateway protocol. The socket implementation
// is injected so tests can use the `ws` package where a browser provides
// the native WebSocket.

import { parseGatewayMessage } from "./types.js";
import type { AlertMessage, ErrorMessage, StateMessage } from "./types.js";

/** The slice of the WebSocket API the client needs (browser and `ws` both fit). */
export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
}

export interface GatewayHandlers {
  onState: (msg: StateMessage) => void;
  onAlert: (msg: AlertMessage) => void;
  onError?: (msg: ErrorMessage) => void;
  onStatus?: (connected: boolean) => void;
  /** A frame the parser rejected; the view must stay unchanged. */
  onGarbage?: (raw: string) => void;
}

export class GatewayClient {
  private socket: SocketLike | null = null;
  private connected = false;

  constructor(
    private readonly url: string,
    private readonly handlers: GatewayHandlers,
    private readonly factory: (url: string) => SocketLike,
  ) {}

  connect(): void {
    const socket = this.factory(this.url);
    this.socket = socket;
    socket.onopen = () => {
      this.connected = true;
      this.handlers.onStatus?.(true);
    };
    socket.onclose = () => {
      this.connected = false;
      this.handlers.onStatus?.(false);
    };
    socket.onerror = () => {
      // onclose follows; nothing to do here
    };
    socket.onmessage = (ev) => {
      const raw = typeof ev.data === "string" ? ev.data : String(ev.data);
      const msg = parseGatewayMessage(raw);
      if (msg === null) {
        this.handlers.onGarbage?.(raw);
        return;
      }
      if (msg.type === "state") this.handlers.onState(msg);
      else if (msg.type === "alert") this.handlers.onAlert(msg);
      else this.handlers.onError?.(msg);
    };
  }

  get isConnected(): boolean {
    return this.connected;
  }

  close(): void {
    this.socket?.close();
    this.socket = null;
    this.connected = false;
  }

  private sendDoc(doc: Record<string, unknown>): void {
    if (!this.connected || this.socket === null) return;
    this.socket.send(JSON.stringify(doc));
  }

  sendTilt(x_g: number, y_g: number): void {
    this.sendDoc({ type: "tilt", x_g, y_g });
  }

  setSweep(enabled: boolean): void {
    this.sendDoc({ type: "set_sweep", enabled });
  }

  reset(scenarioName: string, seed?: number): void {
    const doc: Record<string, unknown> = { type: "reset", scenario_name: scenarioName };
    if (seed !== undefined) doc.seed = seed;
    this.sendDoc(doc);
  }
}
