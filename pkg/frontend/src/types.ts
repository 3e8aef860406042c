export interface Stripe {
  x0: number;
  x1: number;
  colorIndex: number;
}

export interface CurvePoint {
  x: number;
  y: number;
}

export interface Row {
  name: string;
  stripes: Stripe[];
  curve: CurvePoint[] | null;
  layout: string;
}

export interface RenderSpec {
  rows: Row[];
  range: { lo: number; hi: number };
  colorScale: { levels: string[]; background: string; scope: string };
  geometry: {
    rowHeightPx: number;
    rowGapPx: number;
    widthPx: number;
    labelGutterPx: number;
  };
}

export interface BinPayload {
  method: string;
  edges: number[];
  counts: number[];
  params: Record<string, unknown>;
}

export type Method = 'uniform' | 'bb' | 'nb';
export type Layout = 'bin' | 'bin-curve' | 'filled-curve';
export type Scope = 'global' | 'per';

export interface ViewState {
  method: Method;
  layout: Layout;
  scope: Scope;
}

export const METHODS: Method[] = ['uniform', 'bb', 'nb'];
export const LAYOUTS: Layout[] = ['bin', 'bin-curve', 'filled-curve'];
export const SCOPES: Scope[] = ['global', 'per'];
