/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const dispersion_curves: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const front_speed: (a: number) => number;
export const k_infinity_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const k_profile: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
