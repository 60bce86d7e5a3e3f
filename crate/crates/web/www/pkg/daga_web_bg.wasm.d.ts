/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_heatmap_free: (a: number, b: number) => void;
export const __wbg_patternrun_free: (a: number, b: number) => void;
export const corruption_histogram: (a: number, b: number) => [number, number, number, number];
export const heatmap_entries: (a: number) => [number, number];
export const heatmap_marginal: (a: number) => [number, number];
export const heatmap_new: (a: number, b: number, c: number) => [number, number, number];
export const heatmap_size: (a: number) => number;
export const heatmap_top: (a: number) => [number, number];
export const patternrun_best: (a: number) => [number, number];
export const patternrun_done: (a: number) => number;
export const patternrun_evaluations: (a: number) => number;
export const patternrun_generation: (a: number) => number;
export const patternrun_new: (a: number, b: number, c: number, d: number) => [number, number, number];
export const patternrun_reconstruction: (a: number) => [number, number, number, number];
export const patternrun_side: () => number;
export const patternrun_step: (a: number) => [number, number, number];
export const patternrun_target: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
