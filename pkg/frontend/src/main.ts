// Console wiring: socket -> state -> render loop, tilt pad -> socket.

import { drawMap } from "./map.js";
import { renderAlerts, renderTelemetry } from "./panels.js";
import { ConsoleState } from "./state.js";
import { GatewayClient } from "./socket.js";
import type { SocketLike } from "./socket.js";
import { TiltSender } from "./tilt.js";
import { TiltPad } from "./tiltpad.js";

const params = new URLSearchParams(window.location.search);
const gatewayUrl = params.get("gateway") ?? "ws://127.0.0.1:8765";

const state = new ConsoleState();
const canvas = document.getElementById("map") as HTMLCanvasElement;
const telemetryRoot = document.getElementById("telemetry")!;
const feedEl = document.getElementById("alert-feed")!;
const bannerEl = document.getElementById("banner")!;
const padEl = document.getElementById("tilt-pad")!;
const knobEl = document.getElementById("tilt-knob")!;
const sweepToggle = document.getElementById("sweep-toggle") as HTMLInputElement;
const resetButton = document.getElementById("reset-button") as HTMLButtonElement;

let dirty = true;

const client = new GatewayClient(
  gatewayUrl,
  {
    onState: (msg) => {
      if (state.applyState(msg)) dirty = true;
    },
    onAlert: (msg) => {
      if (state.addAlert(msg, performance.now())) dirty = true;
    },
    onError: (msg) => console.warn("gateway error:", msg.message),
    onGarbage: (raw) => console.warn("unparseable gateway frame ignored:", raw.slice(0, 120)),
    onStatus: (connected) => {
      state.setStatus(connected ? "connected" : "disconnected");
      dirty = true;
    },
  },
  (url) => new WebSocket(url) as unknown as SocketLike,
);
client.connect();

const sender = new TiltSender((tilt) => client.sendTilt(tilt.x_g, tilt.y_g));
new TiltPad(
  padEl,
  knobEl,
  sender,
  (tilt) => {
    state.setTilt(tilt.x_g, tilt.y_g);
    dirty = true;
  },
  () => client.isConnected,
);

sweepToggle.addEventListener("change", () => client.setSweep(sweepToggle.checked));
resetButton.addEventListener("click", () => {
  const name = state.latest?.world.scenario;
  if (name) client.reset(name);
});
bannerEl.addEventListener("click", () => {
  state.dismissBanner();
  dirty = true;
});

function frame(): void {
  if (dirty) {
    dirty = false;
    renderTelemetry(telemetryRoot as HTMLElement, state);
    renderAlerts(feedEl as HTMLElement, bannerEl as HTMLElement, state);
    if (state.latest) drawMap(canvas, state.latest);
  }
  requestAnimationFrame(frame);
}
requestAnimationFrame(frame);
