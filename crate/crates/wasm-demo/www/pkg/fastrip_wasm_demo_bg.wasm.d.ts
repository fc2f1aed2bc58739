/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_chainresponse_free: (a: number, b: number) => void;
export const __wbg_get_chainresponse_magnitudes: (a: number) => [number, number];
export const __wbg_get_chainresponse_norm: (a: number) => number;
export const __wbg_get_chainresponse_ops: (a: number) => number;
export const __wbg_get_chainresponse_transforms: (a: number) => number;
export const __wbg_get_histogram_counts: (a: number) => [number, number];
export const __wbg_get_histogram_hi: (a: number) => number;
export const __wbg_get_histogram_lo: (a: number) => number;
export const __wbg_get_histogram_mean_alpha_sq: (a: number) => number;
export const __wbg_get_histogram_median: (a: number) => number;
export const __wbg_histogram_free: (a: number, b: number) => void;
export const __wbg_set_chainresponse_magnitudes: (a: number, b: number, c: number) => void;
export const __wbg_set_chainresponse_norm: (a: number, b: number) => void;
export const __wbg_set_chainresponse_ops: (a: number, b: number) => void;
export const __wbg_set_chainresponse_transforms: (a: number, b: number) => void;
export const __wbg_set_histogram_counts: (a: number, b: number, c: number) => void;
export const __wbg_set_histogram_hi: (a: number, b: number) => void;
export const __wbg_set_histogram_lo: (a: number, b: number) => void;
export const __wbg_set_histogram_mean_alpha_sq: (a: number, b: number) => void;
export const __wbg_set_histogram_median: (a: number, b: number) => void;
export const chain_response: (a: number, b: number, c: number, d: number, e: number, f: number, g: bigint, h: number, i: number) => [number, number, number];
export const chaos_histogram: (a: number, b: number, c: number, d: number, e: bigint) => [number, number, number];
export const rip_curve: (a: number, b: number, c: number, d: number, e: number, f: bigint) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
