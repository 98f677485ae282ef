// Gateway protocol types, mirroring docs/protocol.md. One JSON document per
// WebSocket text frame.

export interface PoseMsg {
  x_m: number;
  y_m: number;
  heading_rad: number;
}

export interface LinkCountersMsg {
  frames_sent: number;
  frames_delivered: number;
  retransmissions: number;
  frames_dropped: number;
}

export interface GasMsg {
  co_ppm: number;
  lpg_ppm: number;
  ch4_ppm: number;
  alarm: boolean;
}

export interface CameraMsg {
  resolution_m: number;
  origin_cell: [number, number];
  rows: string[];
}

export interface StateMessage {
  type: "state";
  run: number;
  tick: number;
  pose: PoseMsg;
  current_command: string;
  auto_stopped: boolean;
  link: {
    up_loss_p: number;
    up_stats: LinkCountersMsg;
    down_stats: LinkCountersMsg;
  };
  gas: GasMsg;
  camera: CameraMsg;
  world: {
    size_m: [number, number];
    base_position: [number, number];
    scenario: string;
  };
}

export interface TelemetryEventMsg {
  tick: number;
  kind: "detection" | "gas_alarm" | "status";
  payload: Record<string, unknown>;
  delivered: boolean;
}

export interface AlertMessage {
  type: "alert";
  event: TelemetryEventMsg;
}

export interface ErrorMessage {
  type: "error";
  message: string;
}

export type GatewayMessage = StateMessage | AlertMessage | ErrorMessage;

function isRecord(v: unknown): v is Record<string, unknown> {
  return typeof v === "object" && v !== null && !Array.isArray(v);
}

function isNum(v: unknown): v is number {
  return typeof v === "number" && Number.isFinite(v);
}

function isPair(v: unknown): v is [number, number] {
  return Array.isArray(v) && v.length === 2 && isNum(v[0]) && isNum(v[1]);
}

function isPose(v: unknown): v is PoseMsg {
  return isRecord(v) && isNum(v.x_m) && isNum(v.y_m) && isNum(v.heading_rad);
}

function isCounters(v: unknown): v is LinkCountersMsg {
  return (
    isRecord(v) &&
    isNum(v.frames_sent) &&
    isNum(v.frames_delivered) &&
    isNum(v.retransmissions) &&
    isNum(v.frames_dropped)
  );
}

function isStateMessage(v: Record<string, unknown>): v is Record<string, unknown> & StateMessage {
  const link = v.link;
  const camera = v.camera;
  const world = v.world;
  const gas = v.gas;
  return (
    isNum(v.run) &&
    isNum(v.tick) &&
    isPose(v.pose) &&
    typeof v.current_command === "string" &&
    typeof v.auto_stopped === "boolean" &&
    isRecord(link) &&
    isNum(link.up_loss_p) &&
    isCounters(link.up_stats) &&
    isCounters(link.down_stats) &&
    isRecord(gas) &&
    isNum(gas.co_ppm) &&
    isNum(gas.lpg_ppm) &&
    isNum(gas.ch4_ppm) &&
    typeof gas.alarm === "boolean" &&
    isRecord(camera) &&
    isNum(camera.resolution_m) &&
    isPair(camera.origin_cell) &&
    Array.isArray(camera.rows) &&
    camera.rows.every((r) => typeof r === "string") &&
    isRecord(world) &&
    isPair(world.size_m) &&
    isPair(world.base_position) &&
    typeof world.scenario === "string"
  );
}

function isAlertMessage(v: Record<string, unknown>): v is Record<string, unknown> & AlertMessage {
  const event = v.event;
  return (
    isRecord(event) &&
    isNum(event.tick) &&
    (event.kind === "detection" || event.kind === "gas_alarm" || event.kind === "status") &&
    isRecord(event.payload) &&
    typeof event.delivered === "boolean"
  );
}

/** Parse one inbound frame; returns null for anything malformed. */
export function parseGatewayMessage(raw: string): GatewayMessage | null {
  let doc: unknown;
  try {
    doc = JSON.parse(raw);
  } catch {
    return null;
  }
  if (!isRecord(doc)) return null;
  switch (doc.type) {
    case "state":
      return isStateMessage(doc) ? (doc as unknown as StateMessage) : null;
    case "alert":
      return isAlertMessage(doc) ? (doc as unknown as AlertMessage) : null;
    case "error":
      return typeof doc.message === "string" ? ({ type: "error", message: doc.message }) : null;
    default:
      return null;
  }
}
