import init, { certify, chromatic, eng_homology } from "./pkg/hombound_web.js";

const palette = ["#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45", "#469990", "#9a6324"];

function draw(canvas, graph, colors) {
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const n = graph.n;
  const r = Math.min(width, height) / 2 - 24;
  const pos = Array.from({ length: n }, (_, i) => {
    const a = (2 * Math.PI * i) / n - Math.PI / 2;
    return [width / 2 + r * Math.cos(a), height / 2 + r * Math.sin(a)];
  });
  ctx.strokeStyle = "#999";
  for (const [u, v] of graph.edges) {
    ctx.beginPath();
    ctx.moveTo(...pos[u]);
    ctx.lineTo(...pos[v]);
    ctx.stroke();
  }
  pos.forEach(([x, y], i) => {
    ctx.beginPath();
    ctx.arc(x, y, 9, 0, 2 * Math.PI);
    ctx.fillStyle = colors[i] ? palette[(colors[i] - 1) % palette.length] : "#fff";
    ctx.fill();
    ctx.strokeStyle = "#333";
    ctx.stroke();
  });
}

function show(out, fn) {
  out.classList.remove("error");
  try {
    return fn();
  } catch (e) {
    out.classList.add("error");
    out.textContent = String(e);
    return null;
  }
}

await init();

document.getElementById("cert-run").onclick = () => {
  const out = document.getElementById("cert-out");
  const t = document.getElementById("cert-t").value;
  const h = document.getElementById("cert-h").value;
  const res = show(out, () => JSON.parse(certify(t, h)));
  if (res) {
    out.textContent = res.summary;
    draw(document.getElementById("cert-canvas"), res.graph, res.colors);
  }
};

document.getElementById("chi-run").onclick = () => {
  const out = document.getElementById("chi-out");
  const res = show(out, () => JSON.parse(chromatic(document.getElementById("chi-in").value)));
  if (res) {
    out.textContent = `chi = ${res.chi}`;
    draw(document.getElementById("chi-canvas"), res.graph, res.colors);
  }
};

document.getElementById("eng-run").onclick = () => {
  const out = document.getElementById("eng-out");
  const r = Number(document.getElementById("eng-r").value);
  const n = Number(document.getElementById("eng-n").value);
  const res = show(out, () => JSON.parse(eng_homology(r, n)));
  if (res) {
    const betti = res.betti.map((b) => `GF(${b.p}): [${b.betti.join(", ")}]`).join("\n");
    out.textContent = `${res.elements} elements, f-vector [${res.f_vector.join(", ")}], conn_H = ${res.conn}\n${betti}`;
  }
};
