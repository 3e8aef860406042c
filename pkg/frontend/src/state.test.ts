import { beforeEach, describe, expect, it, vi } from 'vitest';

import { allStates, createToggleGroup, initialState } from './state';
import { specUrl } from './api';
import { app } from './main';
import type { RenderSpec } from './types';
import fixtureJson from '../../tests/goldens/renderspec_fixture.json';

const fixture = fixtureJson as unknown as RenderSpec;

describe('view state', () => {
  it('enumerates all 18 method x layout x scope combinations', () => {
    const states = allStates();
    expect(states.length).toBe(18);
    expect(new Set(states.map(specUrl)).size).toBe(18);
  });

  it('starts from uniform / bin / global', () => {
    expect(initialState()).toEqual({
      method: 'uniform', layout: 'bin', scope: 'global',
    });
  });
});

describe('toggle group', () => {
  it('fires onChange and marks the active button', () => {
    const seen: string[] = [];
    const group = createToggleGroup('layout', ['a', 'b'], 'a', (v) =>
      seen.push(v),
    );
    const buttons = group.element.querySelectorAll('button');
    (buttons[1] as HTMLButtonElement).click();
    expect(seen).toEqual(['b']);
    expect(buttons[1].classList.contains('active')).toBe(true);
    expect(buttons[0].classList.contains('active')).toBe(false);
  });
});

const specFor = (layout: string): RenderSpec => ({
  ...fixture,
  rows: fixture.rows.map((r) => ({
    ...r,
    layout:
      layout === 'bin' ? 'Bin' : layout === 'bin-curve' ? 'BinCurve' : 'FilledCurve',
    curve: layout === 'bin' ? null : r.curve,
  })),
});

const installFetchMock = () => {
  const calls: string[] = [];
  const mock = vi.fn(async (url: string | URL | Request) => {
    const href = String(url);
    calls.push(href);
    const layout = new URLSearchParams(href.split('?')[1]).get('layout') ?? 'bin';
    return {
      ok: true,
      status: 200,
      json: async () => specFor(layout),
    } as unknown as Response;
  });
  vi.stubGlobal('fetch', mock);
  return { calls, mock };
};

const flush = async (): Promise<void> => {
  await Promise.resolve();
  await Promise.resolve();
  await Promise.resolve();
};

describe('application shell', () => {
  beforeEach(() => {
    document.body.innerHTML = '<div id="app"></div>';
    vi.unstubAllGlobals();
  });

  it('reaches all 18 combinations through toggles without reloading', async () => {
    const { calls } = installFetchMock();
    app();
    await flush();
    const buttons = Array.from(
      document.querySelectorAll<HTMLButtonElement>('.controls button'),
    );
    const byValue = (v: string) => buttons.find((b) => b.dataset.value === v)!;
    for (const state of allStates()) {
      byValue(state.method).click();
      await flush();
      byValue(state.layout).click();
      await flush();
      byValue(state.scope).click();
      await flush();
    }
    const specCalls = calls.filter((c) => c.includes('/api/renderspec'));
    expect(new Set(specCalls).size).toBe(18);
    // state changes re-rendered in place; the shell is still the same DOM
    expect(document.getElementById('app')).not.toBeNull();
    expect(document.querySelectorAll('svg .stripe').length).toBeGreaterThan(0);
  });

  it('toggling away and back restores an identical chart DOM', async () => {
    installFetchMock();
    app();
    await flush();
    const svg = document.querySelector('svg')!;
    const byValue = (v: string) =>
      Array.from(document.querySelectorAll<HTMLButtonElement>('.controls button'))
        .find((b) => b.dataset.value === v)!;
    byValue('bb').click();
    await flush();
    const before = svg.outerHTML;
    byValue('nb').click();
    await flush();
    byValue('bb').click();
    await flush();
    expect(svg.outerHTML).toBe(before);
  });

  it('shows a banner and keeps the last view when the server fails', async () => {
    const { mock } = installFetchMock();
    app();
    await flush();
    const rectsBefore = document.querySelectorAll('svg rect.stripe').length;
    expect(rectsBefore).toBeGreaterThan(0);
    mock.mockImplementation(async () => {
      throw new Error('connection refused');
    });
    const byValue = (v: string) =>
      Array.from(document.querySelectorAll<HTMLButtonElement>('.controls button'))
        .find((b) => b.dataset.value === v)!;
    byValue('nb').click();
    await flush();
    const banner = document.querySelector<HTMLElement>('.banner')!;
    expect(banner.style.display).toBe('block');
    expect(banner.textContent).toContain('could not reach the server');
    expect(document.querySelectorAll('svg rect.stripe').length).toBe(rectsBefore);
  });

  it('aborts the in-flight request when a newer toggle arrives', async () => {
    const aborted: boolean[] = [];
    let resolveFirst: ((r: Response) => void) | null = null;
    const mock = vi.fn((url: string | URL | Request, init?: RequestInit) => {
      const signal = init?.signal ?? null;
      if (mock.mock.calls.length === 1) {
        return new Promise<Response>((resolve, reject) => {
          resolveFirst = resolve;
          signal?.addEventListener('abort', () => {
            aborted.push(true);
            reject(new DOMException('aborted', 'AbortError'));
          });
        });
      }
      return Promise.resolve({
        ok: true,
        status: 200,
        json: async () => specFor('bin'),
      } as unknown as Response);
    });
    vi.stubGlobal('fetch', mock);
    app();
    await flush();
    const byValue = (v: string) =>
      Array.from(document.querySelectorAll<HTMLButtonElement>('.controls button'))
        .find((b) => b.dataset.value === v)!;
    byValue('bb').click(); // supersedes the initial fetch
    await flush();
    expect(aborted).toEqual([true]);
    expect(resolveFirst).not.toBeNull();
  });
});
