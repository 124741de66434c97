import init, {
  analyze_polynomial,
  extremal_even_family,
  cubic_modulus_curve,
  ferrari_slice,
} from "./pkg/zerocert_wasm.js";

const $ = (id) => document.getElementById(id);

// ---- complex-plane drawing ------------------------------------------------

// Radial map: linear for compact pictures, logarithmic once the circles
// span more than two decades (the radii grow like c^k).
function radialMap(maxModulus, minModulus, pixelRadius) {
  if (maxModulus / Math.max(minModulus, 1e-12) < 100) {
    const s = pixelRadius / maxModulus;
    return (m) => m * s;
  }
  const lo = Math.log(Math.max(minModulus, 1e-12)) - 0.7;
  const hi = Math.log(maxModulus);
  return (m) =>
    m <= 0 ? 0 : pixelRadius * Math.max(0, (Math.log(m) - lo) / (hi - lo));
}

function drawPlane(canvas, { roots = [], circles = [], flags = [], marks = [] }) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height;
  const cx = w / 2, cy = h / 2;
  const pixelRadius = Math.min(w, h) / 2 - 14;
  ctx.clearRect(0, 0, w, h);
  ctx.fillStyle = "#10141a";
  ctx.fillRect(0, 0, w, h);

  const moduli = roots.map(([re, im]) => Math.hypot(re, im)).filter((m) => m > 0);
  const maxM = Math.max(1e-9, ...circles, ...moduli) * 1.25;
  const minM = Math.min(...(moduli.length ? moduli : [1]), ...(circles.length ? circles : [1]));
  const map = radialMap(maxM, minM, pixelRadius);
  const px = ([re, im]) => {
    const m = Math.hypot(re, im);
    const r = map(m);
    const a = Math.atan2(im, re);
    return [cx + r * Math.cos(a), cy - r * Math.sin(a)];
  };

  // axes
  ctx.strokeStyle = "rgba(255,255,255,0.18)";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(0, cy); ctx.lineTo(w, cy);
  ctx.moveTo(cx, 0); ctx.lineTo(cx, h);
  ctx.stroke();

  // separating circles
  circles.forEach((radius, i) => {
    ctx.strokeStyle = "rgba(97,175,239,0.55)";
    ctx.setLineDash([5, 4]);
    ctx.beginPath();
    ctx.arc(cx, cy, map(radius), 0, 2 * Math.PI);
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = "rgba(97,175,239,0.8)";
    ctx.font = "11px ui-monospace, monospace";
    ctx.fillText(`R${i + 1}`, cx + map(radius) * 0.7071 + 3, cy - map(radius) * 0.7071 - 3);
  });

  // reference marks (e.g. z = 1)
  for (const m of marks) {
    const [x, y] = px(m);
    ctx.strokeStyle = "rgba(255,214,102,0.9)";
    ctx.beginPath();
    ctx.moveTo(x - 5, y); ctx.lineTo(x + 5, y);
    ctx.moveTo(x, y - 5); ctx.lineTo(x, y + 5);
    ctx.stroke();
  }

  roots.forEach((z, i) => {
    const [x, y] = px(z);
    ctx.fillStyle = flags[i] ? "#e06c75" : "#98c379";
    ctx.beginPath();
    ctx.arc(x, y, 4.5, 0, 2 * Math.PI);
    ctx.fill();
  });
}

function drawCurve(canvas, xs, ys, refY, markX) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 34;
  ctx.clearRect(0, 0, w, h);
  ctx.fillStyle = "#10141a";
  ctx.fillRect(0, 0, w, h);
  const yMin = Math.min(...ys, refY) - 0.05;
  const yMax = Math.max(...ys, refY) + 0.05;
  const X = (x) => pad + (x - xs[0]) / (xs[xs.length - 1] - xs[0]) * (w - 2 * pad);
  const Y = (y) => h - pad - (y - yMin) / (yMax - yMin) * (h - 2 * pad);

  ctx.strokeStyle = "rgba(255,255,255,0.25)";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "rgba(255,255,255,0.6)";
  ctx.font = "11px ui-monospace, monospace";
  ctx.fillText("λ", w - pad + 8, h - pad + 4);
  ctx.fillText("max |root|", pad, pad - 8);

  // the sharp-constant line
  ctx.strokeStyle = "rgba(224,108,117,0.8)";
  ctx.setLineDash([6, 4]);
  ctx.beginPath();
  ctx.moveTo(pad, Y(refY)); ctx.lineTo(w - pad, Y(refY));
  ctx.stroke();
  ctx.setLineDash([]);

  ctx.strokeStyle = "#61afef";
  ctx.lineWidth = 2;
  ctx.beginPath();
  xs.forEach((x, i) => (i ? ctx.lineTo(X(x), Y(ys[i])) : ctx.moveTo(X(x), Y(ys[i]))));
  ctx.stroke();

  if (markX !== undefined) {
    const i = Math.round(markX * (xs.length - 1));
    ctx.fillStyle = "#ffd666";
    ctx.beginPath();
    ctx.arc(X(xs[i]), Y(ys[i]), 5, 0, 2 * Math.PI);
    ctx.fill();
  }
}

// ---- panel 1: certify & localize ------------------------------------------

function verdictBadge(v) {
  const cls = v === "CERTIFIED" ? "ok" : v === "CONDITION_FAILS" ? "fail" : "na";
  return `<span class="badge ${cls}">${v}</span>`;
}

function runAnalyze() {
  const doc = JSON.parse(analyze_polynomial($("poly-input").value));
  if (doc.error) {
    $("analyze-error").textContent = doc.error;
    $("analyze-verdict").innerHTML = "";
    $("cert-table").innerHTML = "";
    return;
  }
  $("analyze-error").textContent = "";
  $("analyze-verdict").innerHTML = verdictBadge(doc.verdict);
  const rows = doc.certificates
    .map((c) => {
      const worst = c.margins.length
        ? Math.min(...c.margins.map(([, m]) => m)).toExponential(2)
        : "–";
      return `<tr><td>${c.theorem}</td><td>${verdictBadge(c.verdict)}</td>
        <td>${Number.isFinite(c.threshold) ? c.threshold.toFixed(6) : "–"}</td><td>${worst}</td></tr>`;
    })
    .join("");
  $("cert-table").innerHTML =
    `<table><tr><th>condition</th><th>verdict</th><th>threshold</th><th>worst margin</th></tr>${rows}</table>`;
  drawPlane($("analyze-plane"), {
    roots: doc.roots,
    circles: doc.radii,
    flags: doc.multiplicity_flags,
  });
  $("analyze-readout").textContent =
    `degree ${doc.degree} · min modulus gap ${doc.min_modulus_gap.toExponential(2)}` +
    ` · all real: ${doc.all_real}` + (doc.converged ? "" : " · oracle did not converge");
}

// ---- panel 2: the witness family ------------------------------------------

let familyThreshold = null;

function runFamily() {
  const n = Number($("fam-n").value);
  const c = Number($("fam-c").value);
  $("fam-n-val").textContent = n;
  $("fam-c-val").textContent = c.toFixed(4);
  const doc = JSON.parse(extremal_even_family(n, c));
  if (doc.error) {
    $("fam-error").textContent = doc.error;
    return;
  }
  $("fam-error").textContent = "";
  familyThreshold = doc.threshold;
  const margin = doc.margin;
  $("fam-readout").textContent =
    `threshold b(${2 * n}) = ${doc.threshold.toFixed(8)}\n` +
    `margin c - b(${2 * n}) = ${margin >= 0 ? "+" : ""}${margin.toExponential(3)}  ` +
    (margin > 0 ? "(certified: simple zeros, distinct moduli)" : "(not certified)") +
    `\n|P(1)| / scale = ${doc.residual_at_one.toExponential(2)}` +
    `\nmin modulus gap = ${doc.min_modulus_gap.toExponential(2)}`;
  drawPlane($("fam-plane"), {
    roots: doc.roots,
    circles: doc.radii,
    flags: doc.multiplicity_flags,
    marks: [[1, 0]],
  });
}

// ---- panel 3: the cubic scan ----------------------------------------------

let cubicCurve = null;

function runCubic() {
  const lambda = Number($("cubic-lambda").value);
  $("cubic-lambda-val").textContent = lambda.toFixed(3);
  const slice = JSON.parse(ferrari_slice(lambda));
  drawCurve(
    $("cubic-curve"),
    cubicCurve.lambdas,
    cubicCurve.max_moduli,
    cubicCurve.sharp_constant,
    lambda,
  );
  drawPlane($("cubic-plane"), {
    roots: slice.roots,
    circles: [slice.sharp_constant],
  });
  $("cubic-readout").textContent =
    `moduli: ${slice.moduli.map((m) => m.toFixed(5)).join(", ")}\n` +
    `max residual: ${Math.max(...slice.residuals).toExponential(2)}\n` +
    `sup over λ: ${cubicCurve.sup_modulus.toFixed(7)} at λ = ${cubicCurve.argmax_lambda}`;
}

// ---- wiring ----------------------------------------------------------------

async function main() {
  await init();
  $("analyze-btn").addEventListener("click", runAnalyze);
  $("fam-n").addEventListener("input", runFamily);
  $("fam-c").addEventListener("input", runFamily);
  $("fam-snap").addEventListener("click", () => {
    if (familyThreshold !== null) {
      $("fam-c").value = familyThreshold;
      runFamily();
    }
  });
  $("cubic-lambda").addEventListener("input", runCubic);

  cubicCurve = JSON.parse(cubic_modulus_curve(600));
  runAnalyze();
  runFamily();
  runCubic();
}

main();
