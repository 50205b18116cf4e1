import init, { distant_graph, dual_model, figure } from "./pkg/ringline_demo.js";

const NS = "http://www.w3.org/2000/svg";
const palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"];

function el(name, attrs, parent) {
  const e = document.createElementNS(NS, name);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  if (parent) parent.appendChild(e);
  return e;
}

function clear(svg) {
  while (svg.firstChild) svg.removeChild(svg.firstChild);
}

function fail(target, e) {
  target.textContent = String(e);
  target.className = "error";
}

function drawGraph() {
  const info = document.getElementById("g-info");
  const svg = document.getElementById("g-svg");
  info.className = "";
  clear(svg);
  let g;
  try {
    g = JSON.parse(distant_graph(document.getElementById("g-ring").value));
  } catch (e) {
    return fail(info, e);
  }
  const n = g.points.length;
  info.textContent = `${n} points, ${g.edges.length} edges, ${g.classes.length} parallel classes, ` +
    `${g.local ? "local" : "not local"}, rad = {${g.radical.join(", ")}}`;
  // points of one class sit next to each other on the circle
  const order = g.classes.flat();
  const classOf = new Map();
  g.classes.forEach((c, i) => c.forEach((p) => classOf.set(p, i)));
  const pos = new Map();
  order.forEach((p, i) => {
    const a = (2 * Math.PI * i) / n - Math.PI / 2;
    pos.set(p, [240 + 200 * Math.cos(a), 240 + 200 * Math.sin(a)]);
  });
  const opacity = Math.max(0.05, Math.min(0.6, 40 / g.edges.length));
  for (const [p, q] of g.edges) {
    const [x1, y1] = pos.get(p), [x2, y2] = pos.get(q);
    el("line", { x1, y1, x2, y2, stroke: "#555", "stroke-opacity": opacity }, svg);
  }
  for (let p = 0; p < n; p++) {
    const [cx, cy] = pos.get(p);
    const c = el("circle", { cx, cy, r: n > 60 ? 3 : 6, fill: palette[classOf.get(p) % palette.length] }, svg);
    el("title", {}, c).textContent = g.points[p];
  }
  document.getElementById("g-classes").textContent = g.classes
    .map((c, i) => `class ${i}: ${c.map((p) => g.points[p]).join(" ")}`)
    .join("\n");
}

function drawModel() {
  const info = document.getElementById("m-info");
  const svg = document.getElementById("m-svg");
  info.className = "";
  clear(svg);
  let m;
  try {
    m = JSON.parse(dual_model(document.getElementById("m-field").value, document.getElementById("m-t").value));
  } catch (e) {
    return fail(info, e);
  }
  const counts = {};
  for (const l of m.lines) counts[l.tag] = (counts[l.tag] || 0) + 1;
  info.textContent = `${m.lines.length} lines: ` + Object.entries(counts).map(([k, v]) => `${v} ${k}`).join(", ");
  const step = 400 / (m.q - 1);
  const at = ([x, y]) => [40 + x * step, 440 - y * step];
  m.lines.forEach((l, i) => {
    const pts = l.points.slice().sort((a, b) => a[0] - b[0] || a[1] - b[1]).map(at);
    const color = l.tag === "vertical" ? "#999" : palette[i % palette.length];
    const path = el("polyline", {
      points: pts.map((p) => p.join(",")).join(" "),
      fill: "none", stroke: color, "stroke-width": 2, "stroke-opacity": 0.35,
    }, svg);
    el("title", {}, path).textContent = `${l.tag} (${l.kind})`;
    path.addEventListener("mouseenter", () => { path.setAttribute("stroke-opacity", 1); path.setAttribute("stroke-width", 4); });
    path.addEventListener("mouseleave", () => { path.setAttribute("stroke-opacity", 0.35); path.setAttribute("stroke-width", 2); });
  });
  for (let x = 0; x < m.q; x++) {
    for (let y = 0; y < m.q; y++) {
      const [cx, cy] = at([x, y]);
      const c = el("circle", { cx, cy, r: 4, fill: "#222" }, svg);
      el("title", {}, c).textContent = `(${m.labels[x]}, ${m.labels[y]})`;
    }
    el("text", { x: at([x, 0])[0] - 4, y: 465, "font-size": 12 }, svg).textContent = m.labels[x];
    el("text", { x: 10, y: at([0, x])[1] + 4, "font-size": 12 }, svg).textContent = m.labels[x];
  }
}

function drawFigure() {
  const svg = document.getElementById("f-svg");
  clear(svg);
  const example = document.getElementById("f-example").value;
  let csv;
  try {
    csv = figure(example, parseFloat(document.getElementById("f-t").value), document.getElementById("f-range").value);
  } catch (e) {
    el("text", { x: 10, y: 20, fill: "#b00" }, svg).textContent = String(e);
    return;
  }
  const curves = new Map();
  for (const row of csv.trim().split("\n").slice(1)) {
    const [id, , ...xs] = row.split(",");
    const v = xs.map(Number);
    // oblique projection for the saddle
    const p = v.length === 3 ? [v[0] - 0.5 * v[1], v[2] + 0.35 * v[1]] : v;
    if (!curves.has(id)) curves.set(id, []);
    curves.get(id).push(p);
  }
  const all = [...curves.values()].flat();
  if (all.length === 0) return;
  const xs = all.map((p) => p[0]), ys = all.map((p) => p[1]);
  const [x0, x1, y0, y1] = [Math.min(...xs), Math.max(...xs), Math.min(...ys), Math.max(...ys)];
  const sx = 440 / (x1 - x0 || 1), sy = 320 / (y1 - y0 || 1);
  const at = ([x, y]) => `${20 + (x - x0) * sx},${340 - (y - y0) * sy}`;
  let i = 0;
  for (const [id, pts] of curves) {
    const main = id === "C";
    const path = el("polyline", {
      points: pts.map(at).join(" "), fill: "none",
      stroke: main ? "#d62728" : example === "dual" ? palette[i++ % palette.length] : "#888",
      "stroke-width": main ? 2.5 : 1.2,
    }, svg);
    el("title", {}, path).textContent = id;
  }
}

await init();
document.getElementById("g-go").addEventListener("click", drawGraph);
document.getElementById("m-go").addEventListener("click", drawModel);
document.getElementById("f-go").addEventListener("click", drawFigure);
drawGraph();
drawModel();
drawFigure();
