import init, { Heatmap, corruption_histogram, PatternRun } from "./pkg/daga_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

// Viridis-ish ramp from dark blue to yellow.
function colour(t) {
  t = Math.min(1, Math.max(0, t));
  const r = Math.round(255 * Math.min(1, Math.max(0, 1.8 * t - 0.5)));
  const g = Math.round(255 * Math.min(1, 0.1 + 0.9 * t));
  const b = Math.round(255 * Math.max(0, 0.55 - 0.6 * t + 0.45 * (1 - t) * t));
  return `rgb(${r},${g},${b})`;
}

function drawHeatmap(h) {
  const n = h.size();
  const entries = h.entries();
  const ctx = $("hm-canvas").getContext("2d");
  const cell = $("hm-canvas").width / n;
  // Log scale so the low-probability structure stays visible.
  const floor = Math.log10(1e-6);
  for (let x = 0; x < n; x++) {
    for (let y = 0; y < n; y++) {
      const p = entries[x * n + y];
      ctx.fillStyle = colour((Math.log10(Math.max(p, 1e-6)) - floor) / -floor);
      ctx.fillRect(x * cell, (n - 1 - y) * cell, cell, cell);
    }
  }
  const marginal = h.marginal();
  const m = $("hm-marginal").getContext("2d");
  const { width, height } = $("hm-marginal");
  m.clearRect(0, 0, width, height);
  const peak = Math.max(...marginal);
  const w = width / n;
  m.fillStyle = "#346";
  marginal.forEach((p, i) => {
    const bar = (p / peak) * (height - 4);
    m.fillRect(i * w, height - bar, w - 1, bar);
  });
  const top = Array.from(h.top()).map((i) => `${i} (${i.toString(2).padStart(6, "0")})`);
  $("hm-top").textContent = `most probable outputs: ${top.join(", ")}`;
}

function drawHistogram(hist) {
  const canvas = $("ch-canvas");
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const peak = Math.max(1, ...hist);
  const w = width / hist.length;
  ctx.font = "10px sans-serif";
  hist.forEach((c, d) => {
    const bar = (c / peak) * (height - 20);
    ctx.fillStyle = "#6a3";
    ctx.fillRect(d * w + 1, height - 14 - bar, w - 2, bar);
    ctx.fillStyle = "#222";
    ctx.fillText(String(d), d * w + w / 3, height - 2);
  });
  const total = hist.reduce((a, b) => a + b, 0);
  const mean = hist.reduce((a, c, d) => a + c * d, 0) / total;
  $("ch-mean").textContent = `mean distance ${mean.toFixed(2)} over ${total} samples`;
}

function drawGrid(id, values) {
  const canvas = $(id);
  const ctx = canvas.getContext("2d");
  const side = PatternRun.side();
  const cell = canvas.width / side;
  for (let i = 0; i < side * side; i++) {
    const v = Math.round(255 * (1 - values[i]));
    ctx.fillStyle = `rgb(${v},${v},${v})`;
    ctx.fillRect((i % side) * cell, Math.floor(i / side) * cell, cell, cell);
  }
}

let run = null;
let timer = null;

function showRun() {
  drawGrid("pd-best", run.best());
  drawGrid("pd-recon", run.reconstruction());
  $("pd-info").textContent =
    `generation ${run.generation()}, ${run.evaluations()} evaluations, ` +
    `best fitness ${run.lastFitness}` + (run.done() ? " (finished)" : "");
}

function resetRun() {
  if (timer) clearInterval(timer);
  timer = null;
  const pattern = $("pd-pattern").value;
  run = new PatternRun(pattern, num("pd-seed"), num("pd-pop"));
  run.lastFitness = NaN;
  drawGrid("pd-target", run.target());
  showRun();
}

function stepRun() {
  run.lastFitness = run.step();
  showRun();
  if (run.done() && timer) {
    clearInterval(timer);
    timer = null;
  }
}

async function main() {
  await init();
  $("status").textContent = "";

  $("hm-go").onclick = () => {
    $("hm-top").textContent = "training…";
    setTimeout(() => drawHeatmap(new Heatmap(num("hm-seed"), num("hm-epochs"), num("hm-rate"))), 0);
  };
  $("ch-rate").oninput = () => ($("ch-rate-out").textContent = $("ch-rate").value);
  $("ch-go").onclick = () => {
    $("ch-mean").textContent = "running…";
    setTimeout(() => drawHistogram(corruption_histogram(num("ch-rate"), num("ch-seed"))), 0);
  };

  const select = $("pd-pattern");
  const names = ["box", "cross"];
  for (let m = 1; m < 15; m++) names.push(`box-cross-${m.toString(2).padStart(4, "0")}`);
  for (const n of names) select.add(new Option(n, n));
  select.value = "cross";
  $("pd-reset").onclick = resetRun;
  $("pd-step").onclick = stepRun;
  $("pd-run").onclick = () => {
    if (!timer) timer = setInterval(stepRun, 30);
  };

  for (const b of document.querySelectorAll("button")) b.disabled = false;
  resetRun();
  $("hm-go").click();
  $("ch-go").click();
}

main().catch((e) => ($("status").textContent = `failed to start: ${e}`));
