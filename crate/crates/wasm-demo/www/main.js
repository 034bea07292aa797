import init, { mixtureCdf, meanBootstrap, kernelCurves } from "./pkg/mixcdf_wasm.js";

const $ = (id) => document.getElementById(id);

function numbers(text) {
  return Float64Array.from(
    text.split(/[\s,;]+/).filter((t) => t.length > 0).map(Number),
  );
}

// series: [{ x, y, color }], marks: [{ x, color }] drawn as vertical lines
function plot(canvas, series, marks = []) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);
  let [x0, x1, y0, y1] = [Infinity, -Infinity, Infinity, -Infinity];
  for (const s of series) {
    for (let i = 0; i < s.x.length; i++) {
      x0 = Math.min(x0, s.x[i]); x1 = Math.max(x1, s.x[i]);
      y0 = Math.min(y0, s.y[i]); y1 = Math.max(y1, s.y[i]);
    }
  }
  if (y1 === y0) y1 = y0 + 1;
  const px = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const py = (y) => h - pad - ((y - y0) / (y1 - y0)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#555";
  ctx.font = "12px sans-serif";
  ctx.fillText(x0.toPrecision(4), pad, h - pad + 15);
  ctx.fillText(x1.toPrecision(4), w - pad - 40, h - pad + 15);
  ctx.fillText(y1.toPrecision(3), 2, pad + 4);
  ctx.fillText(y0.toPrecision(3), 2, h - pad);

  for (const m of marks) {
    ctx.strokeStyle = m.color;
    ctx.setLineDash([4, 4]);
    ctx.beginPath();
    ctx.moveTo(px(m.x), pad);
    ctx.lineTo(px(m.x), h - pad);
    ctx.stroke();
  }
  ctx.setLineDash([]);
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.beginPath();
    for (let i = 0; i < s.x.length; i++) {
      const [u, v] = [px(s.x[i]), py(s.y[i])];
      i === 0 ? ctx.moveTo(u, v) : ctx.lineTo(u, v);
    }
    ctx.stroke();
  }
}

function guarded(out, action) {
  try {
    out.classList.remove("err");
    action();
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
  }
}

function runMixture() {
  const out = $("mix-out");
  guarded(out, () => {
    const curve = mixtureCdf(
      numbers($("mix-values").value),
      numbers($("mix-coeffs").value),
      Number($("mix-n").value),
      Number($("mix-kappa").value),
      Number($("mix-alg").value),
      Float64Array.of(0.05, 0.5, 0.95),
    );
    const x = curve.x;
    const density = curve.density;
    const peak = density.reduce((m, d) => Math.max(m, d), 0) || 1;
    plot($("mix-plot"), [
      { x, y: curve.cdf, color: "#1f5fbf" },
      { x, y: density.map((d) => d / peak), color: "#d08020" },
    ]);
    const [q05, q50, q95] = curve.quantiles;
    out.textContent =
      `blue: CDF, orange: density (scaled to peak 1)\n` +
      `quantiles 5% / 50% / 95%: ${q05.toFixed(5)} / ${q50.toFixed(5)} / ${q95.toFixed(5)}\n` +
      `heuristic uniform error bound at continuity points: ${curve.bound.toExponential(3)}`;
  });
}

function runBootstrap() {
  const out = $("boot-out");
  guarded(out, () => {
    const values = numbers($("boot-values").value);
    const level = Number($("boot-level").value);
    const tail = (1 - level) / 2;
    const curve = meanBootstrap(values, Number($("boot-n").value), Float64Array.of(tail, 1 - tail));
    const [lo, hi] = curve.quantiles;
    const mean = values.reduce((a, b) => a + b, 0) / values.length;
    plot($("boot-plot"), [{ x: curve.x, y: curve.cdf, color: "#1f5fbf" }], [
      { x: lo, color: "#b03030" },
      { x: hi, color: "#b03030" },
      { x: mean, color: "#30a030" },
    ]);
    out.textContent =
      `sample mean ${mean.toFixed(5)} (green)\n` +
      `${(100 * level).toFixed(1)}% percentile interval: [${lo.toFixed(5)}, ${hi.toFixed(5)}] (red)`;
  });
}

function runKernel() {
  const n = Number($("ker-n").value);
  $("ker-n-label").textContent = String(n);
  const t = Number($("ker-t").value);
  const k = kernelCurves(n, t, 1201);
  const peak = (2 * n - 1) / t;
  plot($("ker-plot"), [
    { x: k.x, y: k.kernel.map((r) => r / peak), color: "#1f5fbf" },
    { x: k.x, y: k.integral, color: "#d08020" },
  ]);
}

await init();
$("mix-run").addEventListener("click", runMixture);
$("boot-run").addEventListener("click", runBootstrap);
$("ker-n").addEventListener("input", runKernel);
$("ker-t").addEventListener("change", runKernel);
runMixture();
runBootstrap();
runKernel();
