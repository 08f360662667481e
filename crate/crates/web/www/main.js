import init, { expLog, kernelAutomaton, bellReduction } from "./pkg/shuffle_web.js";

const CELL = 6;
const PER_ROW = 128;

function shade(v, q) {
  if (v === 0) return "#fff";
  const hue = Math.round((360 * (v - 1)) / Math.max(q - 1, 1));
  return q === 2 ? "#222" : `hsl(${hue} 65% 45%)`;
}

function strip(canvas, values, q) {
  const rows = Math.max(1, Math.ceil(values.length / PER_ROW));
  const cols = Math.min(values.length, PER_ROW);
  canvas.width = cols * CELL;
  canvas.height = rows * CELL;
  const g = canvas.getContext("2d");
  values.forEach((v, n) => {
    g.fillStyle = shade(v, q);
    g.fillRect((n % PER_ROW) * CELL, Math.floor(n / PER_ROW) * CELL, CELL, CELL);
  });
}

function wire(id, run) {
  const root = document.getElementById(id);
  const field = (name) => root.querySelector(`[name=${name}]`).value;
  const log = root.querySelector(".log");
  const go = () => {
    log.classList.remove("err");
    try {
      run(field, root, log);
    } catch (e) {
      log.classList.add("err");
      log.textContent = String(e);
    }
  };
  root.querySelector("button").addEventListener("click", go);
  go();
}

await init();

wire("explog", (field, root, log) => {
  const r = JSON.parse(expLog(field("field"), field("expr"), Number(field("order"))));
  strip(root.querySelector(".in"), r.input.values, r.q);
  strip(root.querySelector(".out"), r.output.values, r.q);
  log.textContent = `${r.op} over F_${r.q} (${r.field})\n${r.op}(${r.input.text}) = ${r.output.text}\nround trip exact: ${r.round_trip}`;
});

wire("kernel", (field, root, log) => {
  const r = JSON.parse(kernelAutomaton(field("field"), field("expr"), Number(field("order")), Number(field("maxdim"))));
  strip(root.querySelector(".in"), r.input.values, r.q);
  strip(root.querySelector(".out"), r.generated.values, r.q);
  const lines = r.delta.map((next, s) => `${s}: out ${r.output[s]}, next ${next.join(" ")}`);
  log.textContent = `kernel dimension ${r.dim} (verified to order ${r.verified_order})\n` +
    `${r.states} states, digits read least significant first\n${lines.join("\n")}`;
});

wire("bell", (field, root, log) => {
  const r = JSON.parse(bellReduction(field("field"), Number(field("n"))));
  strip(root.querySelector(".out"), r.coeffs.values, r.q);
  log.textContent = `exp_!(x/(1-x)) = ${r.rational}, norm ${r.norm}\n${r.coeffs.values.join(" ")}`;
});
