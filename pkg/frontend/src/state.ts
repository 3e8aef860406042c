import { LAYOUTS, METHODS, SCOPES } from './types';
import type { Layout, Method, Scope, ViewState } from './types';

export const initialState = (): ViewState => ({
  method: 'uniform',
  layout: 'bin',
  scope: 'global',
});

export const withMethod = (s: ViewState, method: Method): ViewState =>
  ({ ...s, method });
export const withLayout = (s: ViewState, layout: Layout): ViewState =>
  ({ ...s, layout });
export const withScope = (s: ViewState, scope: Scope): ViewState =>
  ({ ...s, scope });

/** Every method x layout x scope combination, in a stable order. */
export const allStates = (): ViewState[] => {
  const out: ViewState[] = [];
  for (const method of METHODS) {
    for (const layout of LAYOUTS) {
      for (const scope of SCOPES) {
        out.push({ method, layout, scope });
      }
    }
  }
  return out;
};

export interface ToggleGroup {
  element: HTMLElement;
  set: (value: string) => void;
}

/**
 * A row of radio-style buttons; clicking one re-renders through
 * `onChange` — never a page reload.
 */
export const createToggleGroup = (
  label: string,
  values: readonly string[],
  current: string,
  onChange: (value: string) => void,
): ToggleGroup => {
  const wrap = document.createElement('span');
  wrap.className = 'toggle-group';
  const caption = document.createElement('span');
  caption.className = 'toggle-label';
  caption.textContent = label;
  wrap.appendChild(caption);
  const buttons = new Map<string, HTMLButtonElement>();
  const set = (value: string): void => {
    buttons.forEach((btn, v) => btn.classList.toggle('active', v === value));
  };
  for (const value of values) {
    const btn = document.createElement('button');
    btn.type = 'button';
    btn.textContent = value;
    btn.dataset.value = value;
    btn.addEventListener('click', () => {
      set(value);
      onChange(value);
    });
    buttons.set(value, btn);
    wrap.appendChild(btn);
  }
  set(current);
  return { element: wrap, set };
};
