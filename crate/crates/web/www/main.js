import init, { composition_curves, spectrum, orbit_growth } from "./pkg/pwlab_web.js";

const $ = (id) => document.getElementById(id);
const COLORS = ["#1f77b4", "#aec7e8", "#d62728", "#ff9896"];

function params() {
  const num = (id) => Number($(id).value);
  return { a: num("a"), c: num("c"), dre: num("dre"), dim: num("dim"), seed: num("seed") >>> 0, nmax: num("nmax") };
}

// Linear map from data box to canvas pixels, with a margin for tick labels.
function frame(canvas, x0, x1, y0, y1) {
  const ctx = canvas.getContext("2d");
  const m = 40, w = canvas.width, h = canvas.height;
  ctx.clearRect(0, 0, w, h);
  const sx = (x) => m + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * m);
  const sy = (y) => h - m - ((y - y0) / (y1 - y0 || 1)) * (h - 2 * m);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(m, m, w - 2 * m, h - 2 * m);
  ctx.fillStyle = "#555";
  ctx.font = "18px sans-serif";
  ctx.fillText(x0.toPrecision(3), m, h - 12);
  ctx.fillText(x1.toPrecision(3), w - m - 50, h - 12);
  ctx.fillText(y1.toPrecision(3), 2, m + 6);
  ctx.fillText(y0.toPrecision(3), 2, h - m);
  return { ctx, sx, sy };
}

function polyline({ ctx, sx, sy }, xs, ys, color, dots = false) {
  ctx.strokeStyle = ctx.fillStyle = color;
  ctx.lineWidth = 2;
  ctx.beginPath();
  xs.forEach((x, i) => (i ? ctx.lineTo(sx(x), sy(ys[i])) : ctx.moveTo(sx(x), sy(ys[i]))));
  ctx.stroke();
  if (dots) xs.forEach((x, i) => ctx.fillRect(sx(x) - 3, sy(ys[i]) - 3, 6, 6));
}

const extent = (arrays) => {
  const all = arrays.flat().filter(Number.isFinite);
  return [Math.min(...all), Math.max(...all)];
};

function drawCurves(p) {
  const r = JSON.parse(composition_curves(p.a, p.c, p.dre, p.dim, p.seed, 40, 800));
  const [lo, hi] = extent([r.f_re, r.f_im, r.g_re, r.g_im]);
  const f = frame($("curves"), r.x[0], r.x[r.x.length - 1], lo, hi);
  [r.f_re, r.f_im, r.g_re, r.g_im].forEach((ys, i) => polyline(f, r.x, ys, COLORS[i]));
  $("curves-info").textContent =
    `blue: Re/Im f, red: Re/Im f∘φ\n‖f‖ = ${r.norm_f.toFixed(6)}, ‖f∘φ‖ = ${r.norm_g.toFixed(6)}\n` +
    `norm bounds on C_φ: [${r.bounds[0].toFixed(6)}, ${r.bounds[1].toFixed(6)}]`;
}

function drawSpectrum(p) {
  const r = JSON.parse(spectrum(p.a, p.c, p.dre, p.dim, 400));
  const s = 1.1 * Math.max(r.radius, 1);
  const f = frame($("spectrum"), -s, s, -s, s);
  const unit = Array.from({ length: 201 }, (_, j) => (2 * Math.PI * j) / 200);
  polyline(f, unit.map(Math.cos), unit.map(Math.sin), "#ccc");
  const points = r.re.length <= 2;
  polyline(f, r.re, r.im, COLORS[2], points);
  if (r.descriptor.kind === "closed-disk") {
    f.ctx.fillStyle = "rgba(214, 39, 40, 0.12)";
    f.ctx.beginPath();
    f.ctx.arc(f.sx(0), f.sy(0), f.sx(r.radius) - f.sx(0), 0, 2 * Math.PI);
    f.ctx.fill();
  }
  $("spectrum-info").textContent =
    `${r.descriptor.kind}\nspectral radius ${r.radius.toFixed(6)}\nnorm bounds [${r.bounds[0].toFixed(6)}, ${r.bounds[1].toFixed(6)}]`;
}

function drawOrbit(p) {
  const r = JSON.parse(orbit_growth(p.a, p.c, p.dre, p.dim, p.seed, p.nmax));
  const logs = r.norms.map(Math.log10);
  const avg = r.averages.map(Math.log10);
  const n = r.norms.map((_, i) => i);
  const [lo, hi] = extent([logs, avg]);
  const f = frame($("orbit"), 0, n.length - 1, lo, hi);
  polyline(f, n, logs, COLORS[0], true);
  polyline(f, n.slice(1), avg, COLORS[2], true);
  const flags = Object.entries(r.flags).map(([k, v]) => `${k}: ${v}`).join("\n");
  $("orbit-info").textContent =
    `blue: log10 ‖C_φⁿ f‖, red: log10 of the Cesàro average\n` +
    (r.cesaro_bound === null ? "" : `Cesàro bound ${r.cesaro_bound.toFixed(6)}\n`) + flags;
}

function redraw() {
  const p = params();
  const status = $("status");
  status.textContent = "";
  status.className = "";
  for (const draw of [drawCurves, drawSpectrum, drawOrbit]) {
    try {
      draw(p);
    } catch (e) {
      status.textContent = String(e);
      status.className = "error";
      return;
    }
  }
}

await init();
document.querySelectorAll("input").forEach((el) => el.addEventListener("input", redraw));
redraw();
