/* tslint:disable */
/* eslint-disable */

/**
 * A sampled curve with its stationary points.
 */
export class Landscape {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly alpha: number;
    readonly flux: Float64Array;
    readonly potential: Float64Array;
    readonly regime: string;
    /**
     * Comma-separated kinds, parallel to `stationary_x`.
     */
    readonly stationary_kinds: string;
    readonly stationary_x: Float64Array;
    readonly x: Float64Array;
}

export class Path {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * One line per event, e.g. `junction up at t=3.21`.
     */
    readonly events: string;
    readonly m: Float64Array;
    readonly t: Float64Array;
}

export function presetValues(id: string): Float64Array;

export function priceLandscape(d_s: number, d_u: number, d_max: number, t_plus: number, t_minus: number, n: number): Landscape;

export function stockLandscape(p_plus: number, p_minus: number, t_plus: number, t_minus: number, n: number): Landscape;

export function stockTrajectory(p_plus: number, p_minus: number, t_plus: number, t_minus: number, m0: number, dt: number, steps: number): Path;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_landscape_free: (a: number, b: number) => void;
    readonly __wbg_path_free: (a: number, b: number) => void;
    readonly landscape_alpha: (a: number) => number;
    readonly landscape_flux: (a: number) => [number, number];
    readonly landscape_potential: (a: number) => [number, number];
    readonly landscape_regime: (a: number) => [number, number];
    readonly landscape_stationary_kinds: (a: number) => [number, number];
    readonly landscape_stationary_x: (a: number) => [number, number];
    readonly landscape_x: (a: number) => [number, number];
    readonly path_events: (a: number) => [number, number];
    readonly path_m: (a: number) => [number, number];
    readonly path_t: (a: number) => [number, number];
    readonly presetValues: (a: number, b: number) => [number, number, number, number];
    readonly priceLandscape: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly stockLandscape: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly stockTrajectory: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
