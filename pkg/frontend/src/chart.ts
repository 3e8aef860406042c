import type { RenderSpec, Row, Stripe } from './types';

export const SVG_NS = 'http://www.w3.org/2000/svg';

export interface StripeHit {
  row: number;
  stripe: number;
}

/**
 * Draw a RenderSpec into `svg`, replacing its contents.
 *
 * All geometry and every fill comes straight from the RenderSpec: stripes are
 * rectangles over [x0, x1] of the plot area, the curve is a polyline at
 * 90% row height (bin-curve) or a set of per-stripe filled paths under
 * the curve (filled-curve). Each stripe rect carries data-row /
 * data-stripe attributes for hover hit-testing.
 */
export const renderChart = (svg: SVGSVGElement, spec: RenderSpec): void => {
  const geo = spec.geometry;
  const n = spec.rows.length;
  const margin = geo.rowGapPx;
  const width = geo.widthPx;
  const height = 2 * margin + n * geo.rowHeightPx + (n - 1) * geo.rowGapPx;
  const plotX = geo.labelGutterPx;
  const plotW = width - geo.labelGutterPx;
  const px = (u: number): number => plotX + u * plotW;

  svg.setAttribute('width', `${width}`);
  svg.setAttribute('height', `${height}`);
  svg.setAttribute('viewBox', `0 0 ${width} ${height}`);
  svg.replaceChildren();

  const canvas = document.createElementNS(SVG_NS, 'rect');
  canvas.setAttribute('width', `${width}`);
  canvas.setAttribute('height', `${height}`);
  canvas.setAttribute('fill', spec.colorScale.background);
  svg.appendChild(canvas);

  const fill = (s: Stripe): string =>
    s.colorIndex === 0
      ? spec.colorScale.background
      : spec.colorScale.levels[s.colorIndex - 1];

  spec.rows.forEach((row: Row, i: number) => {
    const y0 = margin + i * (geo.rowHeightPx + geo.rowGapPx);
    const y1 = y0 + geo.rowHeightPx;

    const label = document.createElementNS(SVG_NS, 'text');
    label.setAttribute('x', '8');
    label.setAttribute('y', `${y0 + geo.rowHeightPx / 2 + 4}`);
    label.setAttribute('fill', '#d0d0d0');
    label.setAttribute('font-family', 'sans-serif');
    label.setAttribute('font-size', '12');
    label.textContent = row.name;
    svg.appendChild(label);

    if (row.layout === 'Bin' || row.layout === 'BinCurve') {
      row.stripes.forEach((s: Stripe, j: number) => {
        const rect = document.createElementNS(SVG_NS, 'rect');
        rect.setAttribute('x', `${px(s.x0)}`);
        rect.setAttribute('y', `${y0}`);
        rect.setAttribute('width', `${(s.x1 - s.x0) * plotW}`);
        rect.setAttribute('height', `${geo.rowHeightPx}`);
        rect.setAttribute('fill', fill(s));
        rect.setAttribute('data-row', `${i}`);
        rect.setAttribute('data-stripe', `${j}`);
        rect.classList.add('stripe');
        svg.appendChild(rect);
      });
    }

    if (row.layout === 'BinCurve' && row.curve) {
      const pts = row.curve
        .map((p) => `${px(p.x)},${y1 - 0.9 * geo.rowHeightPx * p.y}`)
        .join(' ');
      const line = document.createElementNS(SVG_NS, 'polyline');
      line.setAttribute('points', pts);
      line.setAttribute('fill', 'none');
      line.setAttribute('stroke', '#d0d0d0');
      line.setAttribute('stroke-width', '1.5');
      svg.appendChild(line);
    }

    if (row.layout === 'FilledCurve' && row.curve) {
      const xs = row.curve.map((p) => p.x);
      const ys = row.curve.map((p) => p.y);
      row.stripes.forEach((s: Stripe, j: number) => {
        const d = [`M${px(s.x0)},${y1}`];
        d.push(`L${px(s.x0)},${y1 - geo.rowHeightPx * interp(xs, ys, s.x0)}`);
        for (let k = 0; k < xs.length; k += 1) {
          if (xs[k] > s.x0 && xs[k] < s.x1) {
            d.push(`L${px(xs[k])},${y1 - geo.rowHeightPx * ys[k]}`);
          }
        }
        d.push(`L${px(s.x1)},${y1 - geo.rowHeightPx * interp(xs, ys, s.x1)}`);
        d.push(`L${px(s.x1)},${y1}`);
        d.push('Z');
        const path = document.createElementNS(SVG_NS, 'path');
        path.setAttribute('d', d.join(' '));
        path.setAttribute('fill', fill(s));
        path.setAttribute('data-row', `${i}`);
        path.setAttribute('data-stripe', `${j}`);
        path.classList.add('stripe');
        svg.appendChild(path);
      });
    }
  });
};

/** Linear interpolation on an ascending grid, clamped at the ends. */
export const interp = (xs: number[], ys: number[], x: number): number => {
  if (x <= xs[0]) return ys[0];
  if (x >= xs[xs.length - 1]) return ys[ys.length - 1];
  let lo = 0;
  let hi = xs.length - 1;
  while (hi - lo > 1) {
    const mid = (lo + hi) >> 1;
    if (xs[mid] <= x) lo = mid;
    else hi = mid;
  }
  const t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
};

export const hitFromElement = (el: Element): StripeHit | null => {
  const row = el.getAttribute('data-row');
  const stripe = el.getAttribute('data-stripe');
  if (row === null || stripe === null) return null;
  return { row: Number(row), stripe: Number(stripe) };
};
