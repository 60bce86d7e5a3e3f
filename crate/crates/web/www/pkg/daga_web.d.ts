/* tslint:disable */
/* eslint-disable */

/**
 * Transition probabilities of a 6-bit network trained on 000000, 000111, 111111.
 */
export class Heatmap {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Row-major `size x size` matrix; row = input genome, column = output.
     */
    entries(): Float64Array;
    marginal(): Float64Array;
    constructor(seed: number, epochs: number, corruption_rate: number);
    size(): number;
    /**
     * Indices of the three most probable output genomes.
     */
    top(): Uint32Array;
}

/**
 * DAGA on a 9x9 target pattern, advanced one generation at a time.
 */
export class PatternRun {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Best genome so far as 0/1 pixels, row-major.
     */
    best(): Uint8Array;
    done(): boolean;
    evaluations(): number;
    generation(): number;
    /**
     * `pattern` is `box`, `cross` or a quadrant splice such as `box-cross-0011`.
     */
    constructor(pattern: string, seed: number, population: number);
    /**
     * Network reconstruction of the best genome, one probability per pixel.
     */
    reconstruction(): Float64Array;
    static side(): number;
    /**
     * Run one generation; returns the best fitness so far.
     */
    step(): number;
    target(): Uint8Array;
}

/**
 * Histogram of offspring distances to the 20-bit MaxOnes optimum after
 * training at `rate`; entry `d` counts samples at distance `d`.
 */
export function corruption_histogram(rate: number, seed: number): Uint32Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_heatmap_free: (a: number, b: number) => void;
    readonly __wbg_patternrun_free: (a: number, b: number) => void;
    readonly corruption_histogram: (a: number, b: number) => [number, number, number, number];
    readonly heatmap_entries: (a: number) => [number, number];
    readonly heatmap_marginal: (a: number) => [number, number];
    readonly heatmap_new: (a: number, b: number, c: number) => [number, number, number];
    readonly heatmap_size: (a: number) => number;
    readonly heatmap_top: (a: number) => [number, number];
    readonly patternrun_best: (a: number) => [number, number];
    readonly patternrun_done: (a: number) => number;
    readonly patternrun_evaluations: (a: number) => number;
    readonly patternrun_generation: (a: number) => number;
    readonly patternrun_new: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly patternrun_reconstruction: (a: number) => [number, number, number, number];
    readonly patternrun_side: () => number;
    readonly patternrun_step: (a: number) => [number, number, number];
    readonly patternrun_target: (a: number) => [number, number];
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
