/* tslint:disable */
/* eslint-disable */

export class ChainResponse {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * `|y_i|` for each output coordinate.
     */
    magnitudes: Float64Array;
    norm: number;
    ops: number;
    transforms: number;
}

export class Histogram {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    counts: Uint32Array;
    hi: number;
    lo: number;
    mean_alpha_sq: number;
    median: number;
}

export function chain_response(construction: string, transform: string, n: number, k: number, seed: bigint, support: Uint32Array): ChainResponse;

export function chaos_histogram(n: number, k: number, trials: number, bins: number, seed: bigint): Histogram;

export function rip_curve(n: number, s: number, ks: Uint32Array, trials: number, seed: bigint): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_chainresponse_free: (a: number, b: number) => void;
    readonly __wbg_get_chainresponse_magnitudes: (a: number) => [number, number];
    readonly __wbg_get_chainresponse_norm: (a: number) => number;
    readonly __wbg_get_chainresponse_ops: (a: number) => number;
    readonly __wbg_get_chainresponse_transforms: (a: number) => number;
    readonly __wbg_get_histogram_counts: (a: number) => [number, number];
    readonly __wbg_get_histogram_hi: (a: number) => number;
    readonly __wbg_get_histogram_lo: (a: number) => number;
    readonly __wbg_get_histogram_mean_alpha_sq: (a: number) => number;
    readonly __wbg_get_histogram_median: (a: number) => number;
    readonly __wbg_histogram_free: (a: number, b: number) => void;
    readonly __wbg_set_chainresponse_magnitudes: (a: number, b: number, c: number) => void;
    readonly __wbg_set_chainresponse_norm: (a: number, b: number) => void;
    readonly __wbg_set_chainresponse_ops: (a: number, b: number) => void;
    readonly __wbg_set_chainresponse_transforms: (a: number, b: number) => void;
    readonly __wbg_set_histogram_counts: (a: number, b: number, c: number) => void;
    readonly __wbg_set_histogram_hi: (a: number, b: number) => void;
    readonly __wbg_set_histogram_lo: (a: number, b: number) => void;
    readonly __wbg_set_histogram_mean_alpha_sq: (a: number, b: number) => void;
    readonly __wbg_set_histogram_median: (a: number, b: number) => void;
    readonly chain_response: (a: number, b: number, c: number, d: number, e: number, f: number, g: bigint, h: number, i: number) => [number, number, number];
    readonly chaos_histogram: (a: number, b: number, c: number, d: number, e: bigint) => [number, number, number];
    readonly rip_curve: (a: number, b: number, c: number, d: number, e: number, f: bigint) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
