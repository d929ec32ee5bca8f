import init, { algorithms, compute, compute_ipe, palette_hex } from "./pkg/proxigraph_web.js";

const SIZE = 512;
const SVG_NS = "http://www.w3.org/2000/svg";
const board = document.getElementById("board");
const select = document.getElementById("algorithm");
const paramsBox = document.getElementById("params");
const statusLine = document.getElementById("status");

const state = { points: [], algorithm: null, params: {}, result: null };
let catalog = [];
let timer = null;

// drawing coordinates point up, like Ipe; flip only at the SVG boundary
const toScreen = ([x, y]) => [x, SIZE - y];

function setStatus(text, isError = false) {
  statusLine.textContent = text;
  statusLine.classList.toggle("error", isError);
}

function entry() {
  return catalog.find((a) => a.id === state.algorithm);
}

function buildParams() {
  paramsBox.replaceChildren();
  state.params = {};
  for (const p of entry().params) {
    const label = document.createElement("label");
    label.title = p.description;
    label.textContent = p.name;
    const input = document.createElement("input");
    input.type = "number";
    input.step = p.type === "integer" ? "1" : "any";
    if (p.default !== null) input.value = p.default;
    if (p.placeholder !== undefined) input.placeholder = p.placeholder;
    input.addEventListener("input", () => {
      if (input.value === "") delete state.params[p.name];
      else state.params[p.name] = Number(input.value);
      schedule();
    });
    if (input.value !== "") state.params[p.name] = Number(input.value);
    p.input = input;
    label.append(input);
    paramsBox.append(label);
  }
}

function missingParams() {
  const missing = entry().params.filter((p) => p.required && !(p.name in state.params));
  for (const p of entry().params) p.input.classList.toggle("missing", missing.includes(p));
  return missing;
}

function request() {
  return JSON.stringify({ points: state.points, algorithm: state.algorithm, params: state.params });
}

function schedule() {
  state.result = null;
  draw();
  clearTimeout(timer);
  timer = setTimeout(recompute, 150);
}

function recompute() {
  if (state.points.length === 0) {
    setStatus("Click to place points.");
    return;
  }
  const missing = missingParams();
  if (missing.length > 0) {
    setStatus(`Enter ${missing.map((p) => p.name).join(", ")}.`);
    return;
  }
  const out = JSON.parse(compute(request(), false));
  if (out.error) {
    setStatus(`${out.error}: ${out.detail}`, true);
    return;
  }
  state.result = out;
  const summary = out.type === "graph"
    ? `${out.edges.length} edges`
    : `${new Set(out.labels.filter((l) => l >= 0)).size} clusters, ${out.labels.filter((l) => l < 0).length} noise`;
  setStatus(`${state.points.length} points, ${summary}`);
  draw();
}

function el(name, attrs) {
  const node = document.createElementNS(SVG_NS, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

function draw() {
  board.replaceChildren();
  const r = state.result;
  if (r && r.type === "graph") {
    for (const [a, b] of r.edges) {
      const [x1, y1] = toScreen(state.points[a]);
      const [x2, y2] = toScreen(state.points[b]);
      board.append(el("line", { x1, y1, x2, y2, stroke: "#000", "stroke-width": 1 }));
    }
  }
  state.points.forEach((p, i) => {
    const [x, y] = toScreen(p);
    const label = r && r.type === "clustering" ? r.labels[i] : 0;
    if (label < 0) {
      const gray = palette_hex(7);
      board.append(el("path", { d: `M${x - 3},${y - 3}L${x + 3},${y + 3}M${x - 3},${y + 3}L${x + 3},${y - 3}`, stroke: gray, "stroke-width": 1.5 }));
    } else {
      const color = palette_hex(label);
      board.append(el("circle", { cx: x, cy: y, r: 3, fill: color, stroke: color, opacity: r ? 1 : 0.5 }));
    }
  });
  if (r && r.centers) {
    r.centers.forEach((c, j) => {
      const [x, y] = toScreen(c);
      board.append(el("rect", { x: x - 4, y: y - 4, width: 8, height: 8, fill: "none", stroke: palette_hex(j) }));
    });
  }
}

function download(name, text, type) {
  const url = URL.createObjectURL(new Blob([text], { type }));
  const a = Object.assign(document.createElement("a"), { href: url, download: name });
  a.click();
  URL.revokeObjectURL(url);
}

board.addEventListener("click", (e) => {
  const box = board.getBoundingClientRect();
  const p = [Math.round(e.clientX - box.left), Math.round(SIZE - (e.clientY - box.top))];
  const hit = state.points.findIndex(([x, y]) => x === p[0] && y === p[1]);
  if (e.shiftKey) {
    const near = state.points.findIndex(([x, y]) => Math.hypot(x - p[0], y - p[1]) <= 4);
    if (near >= 0) state.points.splice(near, 1);
  } else if (hit >= 0) {
    setStatus(`DuplicatePoints: a point already sits at ${p[0]}, ${p[1]}`, true);
    return;
  } else {
    state.points.push(p);
  }
  schedule();
});

select.addEventListener("change", () => {
  state.algorithm = select.value;
  buildParams();
  schedule();
});

document.getElementById("random").addEventListener("click", () => {
  const seen = new Set(state.points.map(String));
  while (seen.size < state.points.length + 40) {
    const p = [16 + Math.floor(Math.random() * (SIZE - 32)), 16 + Math.floor(Math.random() * (SIZE - 32))];
    if (!seen.has(String(p))) {
      seen.add(String(p));
      state.points.push(p);
    }
  }
  schedule();
});

document.getElementById("clear").addEventListener("click", () => {
  state.points = [];
  schedule();
});

document.getElementById("export-ipe").addEventListener("click", () => {
  if (!state.result) {
    setStatus("Nothing to export yet.", true);
    return;
  }
  const ipe = compute_ipe(request());
  if (ipe.startsWith("{")) {
    const err = JSON.parse(ipe);
    setStatus(`${err.error}: ${err.detail}`, true);
  } else {
    download(`${state.algorithm}.ipe`, ipe, "application/xml");
  }
});

document.getElementById("export-csv").addEventListener("click", () => {
  download("points.csv", state.points.map(([x, y]) => `${x},${y}`).join("\n") + "\n", "text/csv");
});

await init();
catalog = JSON.parse(algorithms());
for (const a of catalog) select.append(new Option(`${a.id} (${a.result})`, a.id));
state.algorithm = "gabriel";
select.value = state.algorithm;
buildParams();
draw();
