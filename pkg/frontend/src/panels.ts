// Telemetry pane, alert feed, and the detection banner.

import type { AlertEntry, ConsoleState } from "./state.js";
import type { TelemetryEventMsg } from "./types.js";

function describe(event: TelemetryEventMsg): string {
  if (event.kind === "detection") {
    return `Detected ${event.payload.body_kind} "${event.payload.body_id}" (tick ${event.tick})`;
  }
  if (event.kind === "gas_alarm") {
    const co = Number(event.payload.co_ppm ?? 0).toFixed(0);
    return `Gas alarm: CO ${co} ppm (tick ${event.tick})`;
  }
  return `Status (tick ${event.tick})`;
}

export function renderTelemetry(root: HTMLElement, state: ConsoleState): void {
  const msg = state.latest;
  const byId = (id: string) => root.querySelector<HTMLElement>(`#${id}`)!;

  byId("conn-status").textContent = state.status;
  byId("conn-status").dataset.status = state.status;

  if (!msg) return;
  byId("scenario-name").textContent = msg.world.scenario;
  byId("tick").textContent = String(msg.tick);
  byId("command").textContent = msg.current_command + (msg.auto_stopped ? " (auto-stop)" : "");

  const lossP = msg.link.up_loss_p;
  const linkEl = byId("link-quality");
  if (lossP >= 1.0) {
    linkEl.textContent = "out of range";
    linkEl.dataset.level = "dead";
  } else if (lossP > 0) {
    linkEl.textContent = `lossy (p=${lossP.toFixed(3)})`;
    linkEl.dataset.level = "degraded";
  } else {
    linkEl.textContent = "reliable";
    linkEl.dataset.level = "good";
  }
  const up = msg.link.up_stats;
  const down = msg.link.down_stats;
  byId("uplink-counters").textContent =
    `${up.frames_delivered}/${up.frames_sent} (re-tx ${up.retransmissions}, lost ${up.frames_dropped})`;
  byId("downlink-counters").textContent =
    `${down.frames_delivered}/${down.frames_sent} (re-tx ${down.retransmissions}, lost ${down.frames_dropped})`;

  byId("gas-co").textContent = msg.gas.co_ppm.toFixed(1);
  byId("gas-lpg").textContent = msg.gas.lpg_ppm.toFixed(1);
  byId("gas-ch4").textContent = msg.gas.ch4_ppm.toFixed(1);
  const gasPane = byId("gas-pane");
  gasPane.classList.toggle("alarm", msg.gas.alarm);
}

export function renderAlerts(feedEl: HTMLElement, bannerEl: HTMLElement, state: ConsoleState): void {
  feedEl.replaceChildren(
    ...state.alerts.map((entry: AlertEntry) => {
      const li = document.createElement("li");
      li.textContent = describe(entry.event) + (entry.event.delivered ? "" : " [lost]");
      li.dataset.kind = entry.event.kind;
      return li;
    }),
  );
  if (state.banner) {
    bannerEl.textContent = describe(state.banner.event);
    bannerEl.dataset.kind = state.banner.event.kind;
    bannerEl.classList.add("visible");
  } else {
    bannerEl.classList.remove("visible");
  }
}
