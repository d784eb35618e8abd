import init, { scan_group, analyze_subgroup, analyze_quadratic } from "./pkg/bialgd_web.js";

const $ = (id) => document.getElementById(id);
const seed = () => Math.max(0, Number($("seed").value) | 0);

function yesNo(cell, value) {
  if (value === null) {
    cell.textContent = "–";
    return;
  }
  cell.textContent = value ? "yes" : "no";
  cell.className = value ? "yes" : "no";
}

function run(label, f) {
  $("status").textContent = label + "…";
  // let the status repaint before the blocking call
  setTimeout(() => {
    const t0 = performance.now();
    try {
      f();
      $("status").textContent = `${label}: ${Math.round(performance.now() - t0)} ms`;
    } catch (e) {
      $("status").textContent = `${label}: ${e.message ?? e}`;
    }
  }, 10);
}

function scan() {
  const name = $("group").value;
  run(`scan of ${name}`, () => {
    const doc = JSON.parse(scan_group(name));
    const body = $("rows").querySelector("tbody");
    body.replaceChildren();
    doc.rows.forEach((row, i) => {
      const tr = body.insertRow();
      tr.insertCell().textContent = row.subgroup;
      tr.insertCell().textContent = row.order;
      yesNo(tr.insertCell(), row.normal);
      yesNo(tr.insertCell(), row.d2);
      yesNo(tr.insertCell(), row.galois);
      tr.title = row.elements.join(" ");
      tr.addEventListener("click", () =>
        run(`${name} | ${row.subgroup}`, () => ($("report").textContent = analyze_subgroup(name, i, seed()))));
    });
    $("rows").hidden = false;
    $("summary").textContent =
      `${doc.rows.length} subgroups, ${doc.normal_count} normal, ${doc.d2_count} depth two; ` +
      (doc.consistent ? "depth two matches normality on every row." : "depth two and normality disagree somewhere.");
  });
}

function quad() {
  const d = Number($("d").value) | 0;
  run(`Q[x]/(x² − ${d})`, () => ($("report").textContent = analyze_quadratic(d, seed())));
}

await init();
$("scan").addEventListener("click", scan);
$("quad").addEventListener("click", quad);
$("status").textContent = "ready";
