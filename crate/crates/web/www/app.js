import init, { xi_sweep, residual_trace, work_comparison } from "./pkg/pushrank_web.js";

const $ = (id) => document.getElementById(id);
const COLORS = { ifp1: "#1f77b4", ifp2: "#d62728", alpha: "#2ca02c", c: "#888" };

function params() {
  return {
    n: Number($("n").value),
    m: Number($("m").value),
    f: Number($("f").value),
    seed: BigInt($("seed").value),
    xi: Number($("xi").value),
  };
}

function guarded(fn) {
  return () => {
    $("status").textContent = "";
    try {
      fn();
    } catch (e) {
      $("status").textContent = String(e.message ?? e);
    }
  };
}

// Axes box with a log10 y scale; returns a point mapper.
function frame(ctx, xs, ys, { logY = true, yLabel = "" } = {}) {
  const { width: w, height: h } = ctx.canvas;
  const pad = 50;
  ctx.clearRect(0, 0, w, h);
  const fy = logY ? (v) => Math.log10(v) : (v) => v;
  const finite = ys.filter((v) => v > 0 || !logY).map(fy);
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...finite), Math.max(...finite)];
  if (y0 === y1) { y0 -= 1; y1 += 1; }
  const px = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * pad);
  const py = (y) => h - pad - ((fy(y) - y0) / (y1 - y0)) * (h - 2 * pad);
  ctx.strokeStyle = "#444";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "12px system-ui";
  ctx.fillText(logY ? `1e${y1.toFixed(1)}` : y1.toPrecision(3), 4, pad + 4);
  ctx.fillText(logY ? `1e${y0.toFixed(1)}` : y0.toPrecision(3), 4, h - pad);
  ctx.fillText(yLabel, pad, pad - 8);
  return { px, py };
}

function line(ctx, pts, color) {
  ctx.strokeStyle = color;
  ctx.lineWidth = 2;
  ctx.beginPath();
  pts.forEach(([x, y], i) => (i ? ctx.lineTo(x, y) : ctx.moveTo(x, y)));
  ctx.stroke();
}

function legend(ctx, entries) {
  entries.forEach(([name, color], i) => {
    ctx.fillStyle = color;
    ctx.fillText(name, ctx.canvas.width - 140, 70 + 16 * i);
  });
}

function drawSweep() {
  const p = params();
  const data = JSON.parse(xi_sweep(p.n, p.m, p.f, p.seed));
  const ctx = $("sweep").getContext("2d");
  const xs = data.xi.map((x) => -Math.log10(x));
  const all = Object.values(data.err).flat();
  const { px, py } = frame(ctx, xs, all.concat(data.xi), { yLabel: "ERR (log) vs -log10 xi" });
  line(ctx, xs.map((x, i) => [px(x), py(data.xi[i])]), COLORS.c);
  for (const [name, errs] of Object.entries(data.err)) {
    line(ctx, xs.map((x, i) => [px(x), py(Math.max(errs[i], 1e-17))]), COLORS[name]);
  }
  legend(ctx, [["ifp1", COLORS.ifp1], ["ifp2", COLORS.ifp2], ["ERR = xi", COLORS.c]]);
}

function drawTrace() {
  const p = params();
  const data = JSON.parse(residual_trace(p.n, p.m, p.f, p.seed, p.xi));
  const ctx = $("trace").getContext("2d");
  const { px, py } = frame(ctx, data.t, data.h_l1, { yLabel: "||h(t)||_1 (log) and alpha(t)" });
  line(ctx, data.t.map((t, i) => [px(t), py(data.h_l1[i])]), COLORS.ifp1);
  const { height: h } = ctx.canvas;
  const alphaPts = data.t
    .map((t, i) => [t, data.alpha[i]])
    .filter(([, a]) => a !== null)
    .map(([t, a]) => [px(t), h - 50 - a * (h - 100)]);
  line(ctx, alphaPts, COLORS.alpha);
  legend(ctx, [["||h||_1", COLORS.ifp1], ["alpha (linear 0..1)", COLORS.alpha]]);
}

function drawWork() {
  const p = params();
  const data = JSON.parse(work_comparison(p.n, p.m, p.f, p.seed, p.xi));
  const ctx = $("work").getContext("2d");
  const { width: w, height: h } = ctx.canvas;
  ctx.clearRect(0, 0, w, h);
  const bars = [
    ["m_d", data.m_d, COLORS.c],
    ["ifp1", data.runs.ifp1.push_ops_to_dangling, COLORS.ifp1],
    ["ifp2", data.runs.ifp2.push_ops_to_dangling, COLORS.ifp2],
  ];
  const max = Math.max(...bars.map((b) => b[1]), 1);
  ctx.font = "12px system-ui";
  bars.forEach(([name, v, color], i) => {
    const y = 20 + i * 55;
    ctx.fillStyle = color;
    ctx.fillRect(60, y, ((w - 200) * v) / max, 35);
    ctx.fillStyle = "#222";
    ctx.fillText(name, 10, y + 22);
    ctx.fillText(String(v), 70 + ((w - 200) * v) / max, y + 22);
  });
  $("work-table").textContent = JSON.stringify(data, null, 2);
}

await init();
$("run-sweep").addEventListener("click", guarded(drawSweep));
$("run-trace").addEventListener("click", guarded(drawTrace));
$("run-work").addEventListener("click", guarded(drawWork));
