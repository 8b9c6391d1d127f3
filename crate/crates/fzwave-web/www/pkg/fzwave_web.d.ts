/* tslint:disable */
/* eslint-disable */

/**
 * Phase velocity, group velocity and attenuation at `n` log-spaced
 * frequencies in `[10^log_min, 10^log_max]`, concatenated in that order.
 */
export function dispersion_curves(alpha: number, tau: number, log_min: number, log_max: number, n: number): Float64Array;

/**
 * Front speed `1/√τ`.
 */
export function front_speed(tau: number): number;

/**
 * `k_∞(ν)` at `n` equally spaced `ν` in `[nu_min, nu_max]`.
 */
export function k_infinity_curve(alpha: number, tau: number, nu_min: number, nu_max: number, n: number): Float64Array;

/**
 * `K(x, t)` at `n` equally spaced `x` in `[0, x_max]`.
 */
export function k_profile(alpha: number, tau: number, t: number, x_max: number, n: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly dispersion_curves: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly front_speed: (a: number) => number;
    readonly k_infinity_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly k_profile: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
