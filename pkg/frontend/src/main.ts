import { SpecFetcher, fetchBin } from './api';
import { hitFromElement, renderChart } from './chart';
import { createToggleGroup, initialState } from './state';
import { createTooltip, formatTooltip, tooltipData } from './tooltip';
import { LAYOUTS, METHODS, SCOPES } from './types';
import type { BinPayload, Layout, Method, RenderSpec, Scope, ViewState } from './types';

export const app = (): void => {
  const root = document.getElementById('app');
  if (!root) throw new Error('missing #app');

  const controls = document.createElement('div');
  controls.className = 'controls';
  const banner = document.createElement('div');
  banner.className = 'banner';
  banner.style.display = 'none';
  const chartWrap = document.createElement('div');
  chartWrap.className = 'chart-wrap';
  chartWrap.style.position = 'relative';
  const svg = document.createElementNS('http://www.w3.org/2000/svg', 'svg');
  chartWrap.appendChild(svg);
  root.append(controls, banner, chartWrap);

  const tooltip = createTooltip(chartWrap);
  const fetcher = new SpecFetcher();
  let state: ViewState = initialState();
  let currentSpec: RenderSpec | null = null;
  const binCache = new Map<string, Promise<BinPayload>>();

  const binFor = (dataset: number, method: string): Promise<BinPayload> => {
    const key = `${dataset}:${method}`;
    let cached = binCache.get(key);
    if (!cached) {
      cached = fetchBin(dataset, method);
      binCache.set(key, cached);
    }
    return cached;
  };

  const refresh = async (): Promise<void> => {
    const requested = state;
    try {
      const spec = await fetcher.fetch(requested);
      if (requested !== state) return; // a newer toggle won
      currentSpec = spec;
      renderChart(svg, spec);
      banner.style.display = 'none';
    } catch (err) {
      if ((err as Error).name === 'AbortError') return;
      // keep the last good view; just surface the failure
      banner.textContent = `could not reach the server: ${(err as Error).message}`;
      banner.style.display = 'block';
    }
  };

  controls.appendChild(createToggleGroup('method', METHODS, state.method,
    (v) => { state = { ...state, method: v as Method }; void refresh(); }).element);
  controls.appendChild(createToggleGroup('layout', LAYOUTS, state.layout,
    (v) => { state = { ...state, layout: v as Layout }; void refresh(); }).element);
  controls.appendChild(createToggleGroup('scope', SCOPES, state.scope,
    (v) => { state = { ...state, scope: v as Scope }; void refresh(); }).element);

  svg.addEventListener('mousemove', (ev) => {
    const spec = currentSpec;
    const hit = ev.target instanceof Element ? hitFromElement(ev.target) : null;
    if (!spec || !hit) {
      tooltip.hide();
      return;
    }
    const stripe = spec.rows[hit.row].stripes[hit.stripe];
    void binFor(hit.row, state.method).then((bin) => {
      tooltip.show(ev.offsetX, ev.offsetY,
        formatTooltip(tooltipData(spec, stripe, bin)));
    });
  });
  svg.addEventListener('mouseleave', () => tooltip.hide());

  void refresh();
};

if (typeof document !== 'undefined' && document.getElementById('app')) {
  app();
}
