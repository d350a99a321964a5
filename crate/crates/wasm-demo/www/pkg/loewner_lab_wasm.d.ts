/* tslint:disable */
/* eslint-disable */

/**
 * Margin of the mean-interval condition for `[n, N]`, `[m, M]` across
 * `points` interior weights.
 */
export function hypothesis_window(n: number, big_n: number, m: number, big_m: number, points: number): string;

/**
 * `A^r + B^r` against `2^(1-r)(A+B)^r` for row-major square matrices.
 */
export function power_difference(a: Float64Array, b: Float64Array, r: number): string;

/**
 * Chord-over-function ratio of `f` (e.g. `power:2`, `inverse_shift:1`) on
 * `[m, M]`, sampled at `points` points, with `K` and `k`.
 */
export function ratio_curve(f: string, m: number, big_m: number, points: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly hypothesis_window: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly power_difference: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly ratio_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
