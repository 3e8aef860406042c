import type { BinPayload, RenderSpec, Stripe } from './types';

export interface TooltipData {
  /** Stripe bounds mapped back into data units via the common range. */
  lo: number;
  hi: number;
  count: number;
  colorIndex: number;
}

/** Invert the unit-workspace mapping: u in [0,1] -> data value. */
export const fromUnit = (spec: RenderSpec, u: number): number =>
  spec.range.lo + u * (spec.range.hi - spec.range.lo);

/**
 * Index of the bin containing x: half-open [e_i, e_i+1) bins with the
 * last bin right-closed; -1 outside the binned range.
 */
export const findBinIndex = (edges: number[], x: number): number => {
  const last = edges.length - 2;
  if (x < edges[0] || x > edges[edges.length - 1]) return -1;
  if (x === edges[edges.length - 1]) return last;
  let lo = 0;
  let hi = edges.length - 1;
  while (hi - lo > 1) {
    const mid = (lo + hi) >> 1;
    if (edges[mid] <= x) lo = mid;
    else hi = mid;
  }
  return lo;
};

/**
 * Tooltip payload for a stripe. Counts come from the /api/bin partition
 * (the single source of truth); background stripes (colorIndex 0) are
 * empty by construction and report count 0 without a lookup, covering
 * both empty bins and the padding/void stripes that lie outside or
 * between occupied bins.
 */
export const tooltipData = (
  spec: RenderSpec,
  stripe: Stripe,
  bin: BinPayload,
): TooltipData => {
  const lo = fromUnit(spec, stripe.x0);
  const hi = fromUnit(spec, stripe.x1);
  if (stripe.colorIndex === 0) {
    return { lo, hi, count: 0, colorIndex: 0 };
  }
  const mid = fromUnit(spec, (stripe.x0 + stripe.x1) / 2);
  const index = findBinIndex(bin.edges, mid);
  return {
    lo,
    hi,
    count: index >= 0 ? bin.counts[index] : 0,
    colorIndex: stripe.colorIndex,
  };
};

export const formatTooltip = (data: TooltipData): string =>
  `[${data.lo.toPrecision(4)}, ${data.hi.toPrecision(4)}] · ` +
  `count ${data.count} · level ${data.colorIndex}`;

export interface TooltipHandle {
  element: HTMLDivElement;
  show: (x: number, y: number, text: string) => void;
  hide: () => void;
}

export const createTooltip = (parent: HTMLElement): TooltipHandle => {
  const div = document.createElement('div');
  div.className = 'tooltip';
  div.style.position = 'absolute';
  div.style.pointerEvents = 'none';
  div.style.display = 'none';
  parent.appendChild(div);
  return {
    element: div,
    show(x, y, text) {
      div.style.left = `${x + 12}px`;
      div.style.top = `${y + 12}px`;
      div.textContent = text;
      div.style.display = 'block';
    },
    hide() {
      div.style.display = 'none';
    },
  };
};
