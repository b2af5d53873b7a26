/** Small SVG chart toolkit: scales, axes, series marks, and legends. */

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const DEFAULT_MARGIN: Margin = { top: 44, right: 24, bottom: 52, left: 64 };

export type Scale = (value: number) => number;

export function linearScale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  return (value) => r0 + ((value - d0) / span) * (r1 - r0);
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const lo = Math.log10(domain[0]);
  const hi = Math.log10(domain[1]);
  const inner = linearScale([lo, hi], range);
  return (value) => inner(Math.log10(value));
}

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function linearTicks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo || 1;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => span / s <= count) ?? 10 * step;
  const start = Math.ceil(lo / chosen) * chosen;
  const ticks: number[] = [];
  for (let v = start; v <= hi + 1e-12; v += chosen) {
    ticks.push(Number(v.toPrecision(12)));
  }
  return ticks;
}

export function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.floor(Math.log10(lo)); e <= Math.ceil(Math.log10(hi)); e++) {
    const v = Math.pow(10, e);
    if (v >= lo / 1.0001 && v <= hi * 1.0001) {
      ticks.push(v);
    }
  }
  return ticks;
}

export function formatTick(value: number): string {
  if (value !== 0 && (Math.abs(value) >= 1e4 || Math.abs(value) < 1e-2)) {
    return value.toExponential(0).replace("+", "");
  }
  return Number(value.toPrecision(4)).toString();
}

export const PALETTE: Record<string, string> = {
  pqa: "#d62728",
  ds: "#1f77b4",
  qls: "#2ca02c",
  hill: "#7f7f7f",
  cpqa: "#9467bd",
};

export function colorFor(algorithm: string, index: number): string {
  return PALETTE[algorithm] ?? ["#e377c2", "#8c564b", "#17becf"][index % 3];
}

export class SvgBuilder {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
    );
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke = "#333", width = 1, dash = ""): void {
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<line x1="${x1.toFixed(2)}" y1="${y1.toFixed(2)}" x2="${x2.toFixed(2)}" ` +
        `y2="${y2.toFixed(2)}" stroke="${stroke}" stroke-width="${width}"${dashAttr}/>`,
    );
  }

  polyline(points: [number, number][], stroke: string, width = 2, dash = ""): void {
    const path = points.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(" ");
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<polyline points="${path}" fill="none" stroke="${stroke}" stroke-width="${width}"${dashAttr}/>`,
    );
  }

  circle(x: number, y: number, r: number, fill: string): void {
    this.parts.push(
      `<circle cx="${x.toFixed(2)}" cy="${y.toFixed(2)}" r="${r}" fill="${fill}"/>`,
    );
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.parts.push(
      `<rect x="${x.toFixed(2)}" y="${y.toFixed(2)}" width="${Math.max(w, 0).toFixed(2)}" ` +
        `height="${Math.max(h, 0).toFixed(2)}" fill="${fill}"/>`,
    );
  }

  text(
    x: number,
    y: number,
    content: string,
    options: { size?: number; anchor?: string; fill?: string; rotate?: number } = {},
  ): void {
    const { size = 12, anchor = "start", fill = "#222", rotate } = options;
    const transform = rotate !== undefined
      ? ` transform="rotate(${rotate} ${x.toFixed(2)} ${y.toFixed(2)})"`
      : "";
    this.parts.push(
      `<text x="${x.toFixed(2)}" y="${y.toFixed(2)}" font-size="${size}" ` +
        `text-anchor="${anchor}" fill="${fill}"${transform}>${escapeXml(content)}</text>`,
    );
  }

  legend(
    entries: { label: string; color: string; dash?: string }[],
    x: number,
    y: number,
  ): void {
    entries.forEach((entry, i) => {
      const yy = y + i * 18;
      this.line(x, yy - 4, x + 22, yy - 4, entry.color, 2.5, entry.dash ?? "");
      this.text(x + 28, yy, entry.label, { size: 12 });
    });
  }

  toString(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}
