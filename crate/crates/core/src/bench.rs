//! Operation counts and wall-clock scaling of chain application.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::operators::{ChainSpec, Construction, OperatorChain, Stage};
use crate::scalar::{Field, Scalar};
use crate::transforms::{OpCount, TransformKind};

/// Multiply-adds for one application of a unitary transform of length `n`
/// to a vector over `field`.
pub fn transform_ops(kind: TransformKind, n: usize, field: Field) -> u64 {
    let n = n as u64;
    let log = n.trailing_zeros() as u64;
    match kind {
        TransformKind::WalshHadamard | TransformKind::Dft => n * log,
        // Real and imaginary parts go through separate real transforms.
        TransformKind::Dct2 => {
            let per_real = if n == 1 { 0 } else { n * log + n };
            match field {
                Field::Real => per_real,
                Field::Complex => 2 * per_real,
            }
        }
    }
}

/// Closed-form count of one forward application: `n` per sign diagonal,
/// the transform cost per transform, `k·n` for a dense projector, nothing
/// for subsampling, and `k` for the final scaling.
pub fn predicted_operations(chain: &OperatorChain) -> u64 {
    let n = chain.n() as u64;
    let mut ops = chain.k() as u64;
    for stage in chain.stages() {
        ops += match stage {
            Stage::SignDiag(_) => n,
            Stage::Transform(t) => transform_ops(t.kind(), chain.n(), chain.field()),
            Stage::Subsample(_) => 0,
            Stage::DenseProjector(p) => (p.rows() * p.cols()) as u64,
        };
    }
    ops
}

fn counted<T: Scalar>(chain: &OperatorChain) -> Result<u64> {
    let mut count = OpCount::default();
    chain.forward_counted(&vec![T::zero(); chain.n()], &mut count)?;
    Ok(count.0)
}

/// Multiply-adds reported by the instrumented kernels for one forward
/// application.
pub fn count_operations(chain: &OperatorChain) -> Result<u64> {
    match chain.field() {
        Field::Real => counted::<f64>(chain),
        Field::Complex => counted::<num_complex::Complex64>(chain),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub construction: Construction,
    pub n: usize,
    pub k: usize,
    /// Bootstrap rounds, for the iterated construction.
    pub r: Option<usize>,
    pub ops: u64,
    pub median_ms: Option<f64>,
    /// `median_ms(n) / median_ms(previous n)`.
    pub ratio: Option<f64>,
    /// Median time of the materialized matvec, when requested.
    pub dense_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
}

impl ScalingReport {
    /// Least-squares slope of `log ops` against `log n`.
    pub fn ops_slope(&self) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .map(|r| (r.n as f64, r.ops as f64))
            .collect();
        loglog_slope(&pts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub repeats: usize,
    /// Measure wall-clock time at all.
    pub timing: bool,
    /// Also time the dense matvec where the matrix can be materialized.
    pub dense_up_to: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            repeats: 5,
            timing: true,
            dense_up_to: 0,
        }
    }
}

/// Slope of the least-squares line through `(ln x, ln y)`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    crate::rip::quantile(&v, 0.5)
}

/// Median milliseconds per call of `f`, batching calls so each sample
/// covers roughly `2^20` elements of work.
fn time_median<F: FnMut() -> Result<()>>(n: usize, repeats: usize, mut f: F) -> Result<f64> {
    let inner = ((1usize << 20) / n.max(1)).max(1);
    let mut samples = Vec::with_capacity(repeats);
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        for _ in 0..inner {
            f()?;
        }
        samples.push(start.elapsed().as_secs_f64() * 1e3 / inner as f64);
    }
    Ok(median(samples))
}

fn time_chain<T: Scalar>(chain: &OperatorChain, opts: &SweepOptions) -> Result<(f64, Option<f64>)> {
    let x: Vec<T> = (0..chain.n()).map(|i| T::from_real(((i % 7) as f64) - 3.0)).collect();
    let fast = time_median(chain.n(), opts.repeats, || {
        std::hint::black_box(chain.forward(std::hint::black_box(&x))?);
        Ok(())
    })?;
    let dense = if chain.n() <= opts.dense_up_to {
        let m = chain.materialize::<T>()?;
        Some(time_median(chain.n() * chain.k(), opts.repeats, || {
            std::hint::black_box(m.matvec(std::hint::black_box(&x))?);
            Ok(())
        })?)
    } else {
        None
    };
    Ok((fast, dense))
}

/// Builds `template` at each `n` (with `k` capped at `n`) and records the
/// operation count and, optionally, timings.
pub fn scaling_sweep(
    template: &ChainSpec,
    n_list: &[usize],
    opts: &SweepOptions,
) -> Result<ScalingReport> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("n_list must be strictly increasing".into()));
    }
    let mut rows: Vec<ScalingRow> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        let spec = ChainSpec {
            n,
            k: template.k.min(n),
            ..template.clone()
        };
        let chain = spec.build()?;
        let ops = count_operations(&chain)?;
        let (median_ms, dense_ms) = if opts.timing {
            let (fast, dense) = match chain.field() {
                Field::Real => time_chain::<f64>(&chain, opts)?,
                Field::Complex => time_chain::<num_complex::Complex64>(&chain, opts)?,
            };
            (Some(fast), dense)
        } else {
            (None, None)
        };
        let ratio = match (rows.last().and_then(|r| r.median_ms), median_ms) {
            (Some(prev), Some(cur)) if prev > 0.0 => Some(cur / prev),
            _ => None,
        };
        rows.push(ScalingRow {
            construction: chain.construction(),
            n,
            k: chain.k(),
            r: chain.block_count().map(|b| b - 1),
            ops,
            median_ms,
            ratio,
            dense_ms,
        });
    }
    Ok(ScalingReport { rows })
}
