import init, { spectrum_sweep, flagship_residual, octonion_product } from "./pkg/osserman_wasm_demo.js";

const $ = (id) => document.getElementById(id);

function show(out, fn) {
  out.classList.remove("err");
  try {
    out.textContent = fn();
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
  }
}

const fmt = (pattern) => pattern.map(([v, m]) => `${v.toFixed(6)} x${m}`).join(", ");

function sweep() {
  const r = JSON.parse(spectrum_sweep(Number($("sw-l0").value), $("sw-mu").value,
    Number($("sw-seed").value), Number($("sw-count").value)));
  const lines = r.spectra.map((s, i) => `#${String(i + 1).padStart(3)}  ${fmt(s)}`);
  return [`expected  ${fmt(r.expected)}`, ...lines, `max deviation ${r.max_deviation.toExponential(3)}`].join("\n");
}

function flagship() {
  const r = JSON.parse(flagship_residual($("fl-m").value, $("fl-l").value, Number($("fl-seed").value)));
  return [
    `|(nabla_X R)(X,Y)X| = ${r.symmetric_residual.toExponential(3)}  (relative ${r.relative.toExponential(3)})`,
    `second Bianchi residual = ${r.bianchi_residual.toExponential(3)}`,
  ].join("\n");
}

function product() {
  const p = JSON.parse(octonion_product($("op-a").value, $("op-b").value));
  const names = ["1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"];
  const terms = p.map((c, i) => [c, names[i]]).filter(([c]) => c !== "0").map(([c, n]) => `${c} ${n}`);
  return `[${p.join(", ")}]\n= ${terms.length ? terms.join(" + ") : "0"}`;
}

await init();
$("sw-run").onclick = () => show($("sw-out"), sweep);
$("fl-run").onclick = () => show($("fl-out"), flagship);
$("op-run").onclick = () => show($("op-out"), product);
show($("sw-out"), sweep);
show($("fl-out"), flagship);
show($("op-out"), product);
