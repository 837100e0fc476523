/** Minimal dependency-free SVG line charts. */

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: string;
  dashed?: boolean;
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  width?: number;
  height?: number;
}

const MARGIN = { left: 64, right: 16, top: 36, bottom: 44 };

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!Number.isFinite(lo)) return [0, 1];
  if (lo === hi) return [lo - 0.5, hi + 0.5];
  return [lo, hi];
}

function ticks(lo: number, hi: number, n = 6): number[] {
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / n)));
  const candidates = [step, 2 * step, 2.5 * step, 5 * step, 10 * step];
  const best = candidates.find((s) => span / s <= n) ?? 10 * step;
  const out: number[] = [];
  for (let v = Math.ceil(lo / best) * best; v <= hi + 1e-12 * span; v += best) {
    out.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return out;
}

function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1);
  return String(Math.round(v * 1e6) / 1e6);
}

const esc = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export function renderChart(spec: ChartSpec): string {
  const W = spec.width ?? 720;
  const H = spec.height ?? 420;
  const iw = W - MARGIN.left - MARGIN.right;
  const ih = H - MARGIN.top - MARGIN.bottom;
  const [x0, x1] = extent(spec.series.flatMap((s) => s.x));
  const [y0raw, y1raw] = extent(spec.series.flatMap((s) => s.y));
  const pad = 0.05 * (y1raw - y0raw);
  const y0 = y0raw - pad;
  const y1 = y1raw + pad;
  const sx = (v: number) => MARGIN.left + ((v - x0) / (x1 - x0)) * iw;
  const sy = (v: number) => MARGIN.top + (1 - (v - y0) / (y1 - y0)) * ih;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" viewBox="0 0 ${W} ${H}" font-family="sans-serif" font-size="12">`,
    `<rect width="${W}" height="${H}" fill="white"/>`,
    `<text x="${W / 2}" y="20" text-anchor="middle" font-size="14">${esc(spec.title)}</text>`,
  );

  for (const tx of ticks(x0, x1)) {
    const px = sx(tx);
    parts.push(
      `<line x1="${px}" y1="${MARGIN.top}" x2="${px}" y2="${MARGIN.top + ih}" stroke="#ddd"/>`,
      `<text x="${px}" y="${MARGIN.top + ih + 16}" text-anchor="middle">${fmt(tx)}</text>`,
    );
  }
  for (const ty of ticks(y0, y1)) {
    const py = sy(ty);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${py}" x2="${MARGIN.left + iw}" y2="${py}" stroke="#ddd"/>`,
      `<text x="${MARGIN.left - 6}" y="${py + 4}" text-anchor="end">${fmt(ty)}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${iw}" height="${ih}" fill="none" stroke="#333"/>`,
    `<text x="${MARGIN.left + iw / 2}" y="${H - 8}" text-anchor="middle">${esc(spec.xLabel)}</text>`,
    `<text x="16" y="${MARGIN.top + ih / 2}" text-anchor="middle" transform="rotate(-90 16 ${MARGIN.top + ih / 2})">${esc(spec.yLabel)}</text>`,
  );

  spec.series.forEach((s, i) => {
    const pts = s.x
      .map((xv, j) => `${sx(xv).toFixed(2)},${sy(s.y[j]).toFixed(2)}`)
      .join(" ");
    const dash = s.dashed ? ` stroke-dasharray="6 4"` : "";
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="${s.color}" stroke-width="1.5"${dash}/>`,
    );
    const ly = MARGIN.top + 14 + 16 * i;
    parts.push(
      `<line x1="${MARGIN.left + iw - 130}" y1="${ly - 4}" x2="${MARGIN.left + iw - 104}" y2="${ly - 4}" stroke="${s.color}" stroke-width="1.5"${dash}/>`,
      `<text x="${MARGIN.left + iw - 98}" y="${ly}">${esc(s.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n");
}
