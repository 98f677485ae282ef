// Map pane: world outline, camera snapshot cells, robot arrow, base marker,
// and control-range rings at 250 m / 1000 m drawn to the same scale.

import type { StateMessage } from "./types.js";

const COLORS = {
  background: "#10141a",
  world: "#1b2330",
  free: "#2c3b4f",
  rubble: "#8a6d3b",
  unknown: "#161c26",
  robot: "#5ad1ff",
  base: "#ffd75a",
  ringReliable: "rgba(90, 209, 255, 0.35)",
  ringMax: "rgba(255, 90, 90, 0.35)",
};

export function drawMap(canvas: HTMLCanvasElement, state: StateMessage): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const [worldW, worldH] = state.world.size_m;
  const pad = 10;
  const scale = Math.min(
    (canvas.width - 2 * pad) / worldW,
    (canvas.height - 2 * pad) / worldH,
  );
  const toPx = (x: number, y: number): [number, number] => [
    pad + x * scale,
    canvas.height - pad - y * scale, // world y grows up, canvas y grows down
  ];

  ctx.fillStyle = COLORS.background;
  ctx.fillRect(0, 0, canvas.width, canvas.height);

  const [wx, wy] = toPx(0, worldH);
  ctx.fillStyle = COLORS.world;
  ctx.fillRect(wx, wy, worldW * scale, worldH * scale);

  // camera snapshot cells around the robot
  const res = state.camera.resolution_m;
  const [ox, oy] = state.camera.origin_cell;
  const cell = res * scale;
  state.camera.rows.forEach((row, j) => {
    for (let i = 0; i < row.length; i += 1) {
      const ch = row[i];
      if (ch === "?") continue; // leave unknown as world background
      const [px, py] = toPx((ox + i) * res, (oy + j + 1) * res);
      ctx.fillStyle = ch === "#" ? COLORS.rubble : COLORS.free;
      ctx.fillRect(px, py, Math.ceil(cell), Math.ceil(cell));
    }
  });

  // range rings centered on the base
  const [bx, by] = state.world.base_position;
  const [bpx, bpy] = toPx(bx, by);
  for (const [radius, color] of [
    [250, COLORS.ringReliable],
    [1000, COLORS.ringMax],
  ] as const) {
    ctx.beginPath();
    ctx.strokeStyle = color;
    ctx.lineWidth = 1.5;
    ctx.arc(bpx, bpy, radius * scale, 0, 2 * Math.PI);
    ctx.stroke();
  }

  // base marker
  ctx.fillStyle = COLORS.base;
  ctx.beginPath();
  ctx.arc(bpx, bpy, 5, 0, 2 * Math.PI);
  ctx.fill();

  // robot pose arrow
  const { x_m, y_m, heading_rad } = state.pose;
  const [rx, ry] = toPx(x_m, y_m);
  const len = Math.max(10, 0.6 * scale);
  ctx.strokeStyle = COLORS.robot;
  ctx.fillStyle = COLORS.robot;
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.arc(rx, ry, 4, 0, 2 * Math.PI);
  ctx.fill();
  ctx.beginPath();
  ctx.moveTo(rx, ry);
  ctx.lineTo(rx + len * Math.cos(heading_rad), ry - len * Math.sin(heading_rad));
  ctx.stroke();
}
