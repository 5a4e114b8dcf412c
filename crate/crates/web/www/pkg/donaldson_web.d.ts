/* tslint:disable */
/* eslint-disable */

/**
 * Newline-separated catalog names.
 */
export function catalog_names(): string;

/**
 * The series of a catalog entry followed by its expansion along `along`
 * (e.g. `t:D,s:Sigma`). With `two_sector` the transformed series is used.
 */
export function expand_entry(name: string, w: string, two_sector: boolean, along: string, degree: number): string;

/**
 * Glues two catalog entries along their fibers (`direct`) or along the
 * cappings of their stored `X #_Sigma B` (`via-b`), then expands the
 * two-sector series of the result along `along`.
 */
export function glue_entries(a: string, b: string, mode: string, along: string, degree: number): string;

/**
 * The vectors, their pairing and `l`.
 */
export function verify_l(): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly catalog_names: () => [number, number];
    readonly expand_entry: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
    readonly glue_entries: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number, number];
    readonly verify_l: () => [number, number, number, number];
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
