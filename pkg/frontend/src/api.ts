import type { BinPayload, RenderSpec, ViewState } from './types';

export const specUrl = (state: ViewState): string =>
  `/api/renderspec?method=${state.method}&layout=${state.layout}&scope=${state.scope}`;

export const binUrl = (dataset: number, method: string): string =>
  `/api/bin?dataset=${dataset}&method=${method}`;

/**
 * Render-spec fetcher with last-write-wins semantics: starting a new
 * request aborts the one in flight, so stale responses can never paint
 * over a newer state.
 */
export class SpecFetcher {
  private controller: AbortController | null = null;

  async fetch(state: ViewState): Promise<RenderSpec> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const resp = await fetch(specUrl(state), { signal: controller.signal });
    if (!resp.ok) {
      throw new Error(`renderspec request failed: ${resp.status}`);
    }
    return (await resp.json()) as RenderSpec;
  }
}

export const fetchBin = async (
  dataset: number,
  method: string,
): Promise<BinPayload> => {
  const resp = await fetch(binUrl(dataset, method));
  if (!resp.ok) {
    throw new Error(`bin request failed: ${resp.status}`);
  }
  return (await resp.json()) as BinPayload;
};
