/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_landscape_free: (a: number, b: number) => void;
export const __wbg_path_free: (a: number, b: number) => void;
export const landscape_alpha: (a: number) => number;
export const landscape_flux: (a: number) => [number, number];
export const landscape_potential: (a: number) => [number, number];
export const landscape_regime: (a: number) => [number, number];
export const landscape_stationary_kinds: (a: number) => [number, number];
export const landscape_stationary_x: (a: number) => [number, number];
export const landscape_x: (a: number) => [number, number];
export const path_events: (a: number) => [number, number];
export const path_m: (a: number) => [number, number];
export const path_t: (a: number) => [number, number];
export const presetValues: (a: number, b: number) => [number, number, number, number];
export const priceLandscape: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const stockLandscape: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const stockTrajectory: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
