//! Browser bindings: apply a chain to a sparse vector, sweep the estimated
//! RIP constant against `k`, and histogram the chain norm over sign draws.

use fastrip_core::bench::count_operations;
use fastrip_core::operators::{ChainSpec, Construction};
use fastrip_core::rip::{chaos_statistics, monte_carlo_rip};
use fastrip_core::scalar::DenseVector;
use fastrip_core::transforms::{Direction, TransformKind};
use wasm_bindgen::prelude::*;

#[wasm_bindgen(getter_with_clone)]
#[derive(Debug, Clone, PartialEq)]
pub struct ChainResponse {
    pub norm: f64,
    /// `|y_i|` for each output coordinate.
    pub magnitudes: Vec<f64>,
    pub ops: f64,
    pub transforms: u32,
}

#[wasm_bindgen(getter_with_clone)]
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u32>,
    pub mean_alpha_sq: f64,
    pub median: f64,
}

fn spec(construction: &str, transform: &str, n: usize, k: usize, seed: u64) -> Result<ChainSpec, String> {
    let construction: Construction = construction.parse().map_err(|e| format!("{e}"))?;
    let transform: TransformKind = transform.parse().map_err(|e| format!("{e}"))?;
    Ok(ChainSpec {
        construction,
        transform,
        n,
        k,
        s: 1,
        seed,
        ..ChainSpec::default()
    })
}

pub fn chain_response_impl(
    construction: &str,
    transform: &str,
    n: usize,
    k: usize,
    seed: u64,
    support: &[u32],
) -> Result<ChainResponse, String> {
    let chain = spec(construction, transform, n, k, seed)?
        .build()
        .map_err(|e| e.to_string())?;
    if support.is_empty() {
        return Err("pick at least one coordinate".into());
    }
    let mut x = vec![0.0; n];
    let w = 1.0 / (support.len() as f64).sqrt();
    for &j in support {
        let j = j as usize;
        if j >= n {
            return Err(format!("coordinate {j} outside 0..{n}"));
        }
        x[j] = w;
    }
    let y = chain
        .apply(&DenseVector::Real(x), Direction::Forward)
        .map_err(|e| e.to_string())?;
    Ok(ChainResponse {
        norm: y.norm(),
        magnitudes: y.to_complex().iter().map(|z| z.norm()).collect(),
        ops: count_operations(&chain).map_err(|e| e.to_string())? as f64,
        transforms: chain.transform_count() as u32,
    })
}

/// Monte-Carlo `δ_s` of the first-`k` Walsh-Hadamard chain for each `k`.
pub fn rip_curve_impl(n: usize, s: usize, ks: &[u32], trials: u64, seed: u64) -> Result<Vec<f64>, String> {
    ks.iter()
        .map(|&k| {
            let chain = spec("theorem1", "wht", n, k as usize, seed)?
                .build()
                .map_err(|e| e.to_string())?;
            monte_carlo_rip(&chain, s, trials, seed)
                .map(|e| e.delta)
                .map_err(|e| e.to_string())
        })
        .collect()
}

pub fn chaos_histogram_impl(
    n: usize,
    k: usize,
    trials: u64,
    bins: usize,
    seed: u64,
) -> Result<Histogram, String> {
    let template = spec("theorem1", "wht", n, k, seed)?;
    let stats = chaos_statistics(&template, &DenseVector::basis(n, 0), trials, seed)
        .map_err(|e| e.to_string())?;
    let bins = bins.max(1);
    let lo = stats.samples.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = stats.samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = (hi - lo).max(1e-12) / bins as f64;
    let mut counts = vec![0u32; bins];
    for a in &stats.samples {
        let b = (((a - lo) / width) as usize).min(bins - 1);
        counts[b] += 1;
    }
    Ok(Histogram {
        lo,
        hi,
        counts,
        mean_alpha_sq: stats.mean_alpha_sq,
        median: stats.median_alpha,
    })
}

#[wasm_bindgen]
pub fn chain_response(
    construction: &str,
    transform: &str,
    n: u32,
    k: u32,
    seed: u64,
    support: &[u32],
) -> Result<ChainResponse, JsValue> {
    chain_response_impl(construction, transform, n as usize, k as usize, seed, support)
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn rip_curve(n: u32, s: u32, ks: &[u32], trials: u32, seed: u64) -> Result<Vec<f64>, JsValue> {
    rip_curve_impl(n as usize, s as usize, ks, trials as u64, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn chaos_histogram(n: u32, k: u32, trials: u32, bins: u32, seed: u64) -> Result<Histogram, JsValue> {
    chaos_histogram_impl(n as usize, k as usize, trials as u64, bins as usize, seed)
        .map_err(|e| JsValue::from_str(&e))
}
