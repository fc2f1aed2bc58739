/* @ts-self-types="./fastrip_wasm_demo.d.ts" */

export class ChainResponse {
    static __wrap(ptr) {
        const obj = Object.create(ChainResponse.prototype);
        obj.__wbg_ptr = ptr;
        ChainResponseFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        ChainResponseFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_chainresponse_free(ptr, 0);
    }
    /**
     * `|y_i|` for each output coordinate.
     * @returns {Float64Array}
     */
    get magnitudes() {
        const ret = wasm.__wbg_get_chainresponse_magnitudes(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get norm() {
        const ret = wasm.__wbg_get_chainresponse_norm(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get ops() {
        const ret = wasm.__wbg_get_chainresponse_ops(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get transforms() {
        const ret = wasm.__wbg_get_chainresponse_transforms(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * `|y_i|` for each output coordinate.
     * @param {Float64Array} arg0
     */
    set magnitudes(arg0) {
        const ptr0 = passArrayF64ToWasm0(arg0, wasm.__wbindgen_malloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_chainresponse_magnitudes(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * @param {number} arg0
     */
    set norm(arg0) {
        wasm.__wbg_set_chainresponse_norm(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set ops(arg0) {
        wasm.__wbg_set_chainresponse_ops(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set transforms(arg0) {
        wasm.__wbg_set_chainresponse_transforms(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) ChainResponse.prototype[Symbol.dispose] = ChainResponse.prototype.free;

export class Histogram {
    static __wrap(ptr) {
        const obj = Object.create(Histogram.prototype);
        obj.__wbg_ptr = ptr;
        HistogramFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        HistogramFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_histogram_free(ptr, 0);
    }
    /**
     * @returns {Uint32Array}
     */
    get counts() {
        const ret = wasm.__wbg_get_histogram_counts(this.__wbg_ptr);
        var v1 = getArrayU32FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 4, 4);
        return v1;
    }
    /**
     * @returns {number}
     */
    get hi() {
        const ret = wasm.__wbg_get_histogram_hi(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get lo() {
        const ret = wasm.__wbg_get_histogram_lo(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get mean_alpha_sq() {
        const ret = wasm.__wbg_get_histogram_mean_alpha_sq(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get median() {
        const ret = wasm.__wbg_get_histogram_median(this.__wbg_ptr);
        return ret;
    }
    /**
     * @param {Uint32Array} arg0
     */
    set counts(arg0) {
        const ptr0 = passArray32ToWasm0(arg0, wasm.__wbindgen_malloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_histogram_counts(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * @param {number} arg0
     */
    set hi(arg0) {
        wasm.__wbg_set_histogram_hi(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set lo(arg0) {
        wasm.__wbg_set_histogram_lo(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set mean_alpha_sq(arg0) {
        wasm.__wbg_set_histogram_mean_alpha_sq(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set median(arg0) {
        wasm.__wbg_set_histogram_median(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) Histogram.prototype[Symbol.dispose] = Histogram.prototype.free;

/**
 * @param {string} construction
 * @param {string} transform
 * @param {number} n
 * @param {number} k
 * @param {bigint} seed
 * @param {Uint32Array} support
 * @returns {ChainResponse}
 */
export function chain_response(construction, transform, n, k, seed, support) {
    const ptr0 = passStringToWasm0(construction, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
    const len0 = WASM_VECTOR_LEN;
    const ptr1 = passStringToWasm0(transform, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
    const len1 = WASM_VECTOR_LEN;
    const ptr2 = passArray32ToWasm0(support, wasm.__wbindgen_malloc);
    const len2 = WASM_VECTOR_LEN;
    const ret = wasm.chain_response(ptr0, len0, ptr1, len1, n, k, seed, ptr2, len2);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return ChainResponse.__wrap(ret[0]);
}

/**
 * @param {number} n
 * @param {number} k
 * @param {number} trials
 * @param {number} bins
 * @param {bigint} seed
 * @returns {Histogram}
 */
export function chaos_histogram(n, k, trials, bins, seed) {
    const ret = wasm.chaos_histogram(n, k, trials, bins, seed);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return Histogram.__wrap(ret[0]);
}

/**
 * @param {number} n
 * @param {number} s
 * @param {Uint32Array} ks
 * @param {number} trials
 * @param {bigint} seed
 * @returns {Float64Array}
 */
export function rip_curve(n, s, ks, trials, seed) {
    const ptr0 = passArray32ToWasm0(ks, wasm.__wbindgen_malloc);
    const len0 = WASM_VECTOR_LEN;
    const ret = wasm.rip_curve(n, s, ptr0, len0, trials, seed);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v2 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v2;
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_generic_0000000000000001: function(arg0, arg1) {
            // Cast intrinsic for `Ref(String) -> Externref`.
            const ret = getStringFromWasm0(arg0, arg1);
            return ret;
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./fastrip_wasm_demo_bg.js": import0,
    };
}

const ChainResponseFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_chainresponse_free(ptr, 1));
const HistogramFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_histogram_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

function getArrayU32FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getUint32ArrayMemory0().subarray(ptr / 4, ptr / 4 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint32ArrayMemory0 = null;
function getUint32ArrayMemory0() {
    if (cachedUint32ArrayMemory0 === null || cachedUint32ArrayMemory0.byteLength === 0) {
        cachedUint32ArrayMemory0 = new Uint32Array(wasm.memory.buffer);
    }
    return cachedUint32ArrayMemory0;
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function passArray32ToWasm0(arg, malloc) {
    const ptr = malloc(arg.length * 4, 4) >>> 0;
    getUint32ArrayMemory0().set(arg, ptr / 4);
    WASM_VECTOR_LEN = arg.length;
    return ptr;
}

function passArrayF64ToWasm0(arg, malloc) {
    const ptr = malloc(arg.length * 8, 8) >>> 0;
    getFloat64ArrayMemory0().set(arg, ptr / 8);
    WASM_VECTOR_LEN = arg.length;
    return ptr;
}

function passStringToWasm0(arg, malloc, realloc) {
    if (realloc === undefined) {
        const buf = cachedTextEncoder.encode(arg);
        const ptr = malloc(buf.length, 1) >>> 0;
        getUint8ArrayMemory0().subarray(ptr, ptr + buf.length).set(buf);
        WASM_VECTOR_LEN = buf.length;
        return ptr;
    }

    let len = arg.length;
    let ptr = malloc(len, 1) >>> 0;

    const mem = getUint8ArrayMemory0();

    let offset = 0;

    for (; offset < len; offset++) {
        const code = arg.charCodeAt(offset);
        if (code > 0x7F) break;
        mem[ptr + offset] = code;
    }
    if (offset !== len) {
        if (offset !== 0) {
            arg = arg.slice(offset);
        }
        ptr = realloc(ptr, len, len = offset + arg.length * 3, 1) >>> 0;
        const view = getUint8ArrayMemory0().subarray(ptr + offset, ptr + len);
        const ret = cachedTextEncoder.encodeInto(arg, view);

        offset += ret.written;
        ptr = realloc(ptr, len, offset, 1) >>> 0;
    }

    WASM_VECTOR_LEN = offset;
    return ptr;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

const cachedTextEncoder = new TextEncoder();

if (!('encodeInto' in cachedTextEncoder)) {
    cachedTextEncoder.encodeInto = function (arg, view) {
        const buf = cachedTextEncoder.encode(arg);
        view.set(buf);
        return {
            read: arg.length,
            written: buf.length
        };
    };
}

let WASM_VECTOR_LEN = 0;

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint32ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('fastrip_wasm_demo_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
