//! Restricted isometry constants: exact enumeration, Monte-Carlo lower
//! bounds, and the combinatorial tools around them.
//!
//! The RIP constant uses non-squared norms: `δ_s(A)` is the smallest `δ`
//! with `1 - δ ≤ ‖Ax‖₂ ≤ 1 + δ` for every `s`-sparse unit `x`, so it may
//! exceed 1. The squared-norm variant is reported alongside for comparison
//! with the more common convention.

mod blocks;
mod chaos;
mod net;

pub use blocks::block_decompose;
pub use chaos::{chaos_statistics, quantile, ChaosStats, CHAOS_LEVELS};
pub use net::{build_separated_net, SeparatedNet, NET_DIMENSION_CAP};

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{gram_extremes, DenseMatrix, SINGULAR_VALUE_COLS_CAP};
use crate::operators::{OperatorChain, SupportSet};
use crate::rng::{Role, SplitMix64};
use crate::sampling::sparse_unit;
use crate::scalar::{norm2, DenseVector, Field, Scalar};

/// Largest number of supports [`exact_rip_constant`] will enumerate.
pub const MAX_SUPPORTS: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RipMethod {
    ExactEnumeration,
    MonteCarlo,
}

impl RipMethod {
    pub fn name(self) -> &'static str {
        match self {
            RipMethod::ExactEnumeration => "exact",
            RipMethod::MonteCarlo => "monte-carlo",
        }
    }
}

impl fmt::Display for RipMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RipEstimate {
    pub s: usize,
    /// Non-squared constant.
    pub delta: f64,
    /// `max |‖Ax‖² - 1|` over the same set.
    pub delta_squared: f64,
    pub method: RipMethod,
    pub witness_support: Option<SupportSet>,
    pub witness_vector: Option<DenseVector>,
    pub trials: Option<u64>,
}

/// `C(n, s)`, saturating.
pub fn binomial(n: usize, s: usize) -> u128 {
    if s > n {
        return 0;
    }
    let s = s.min(n - s);
    let mut acc: u128 = 1;
    for i in 0..s {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// The `rank`-th `s`-subset of `{0..n}` in lexicographic order.
fn unrank_combination(mut rank: u128, n: usize, s: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(s);
    let mut next = 0;
    for slot in 0..s {
        let remaining = s - slot;
        loop {
            let count = binomial(n - next - 1, remaining - 1);
            if rank < count {
                out.push(next);
                next += 1;
                break;
            }
            rank -= count;
            next += 1;
        }
    }
    out
}

/// Advances to the next combination in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let s = c.len();
    for i in (0..s).rev() {
        if c[i] < n - s + i {
            c[i] += 1;
            for j in i + 1..s {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Debug, Clone)]
struct SupportScore {
    delta: f64,
    delta_squared: f64,
    support: Vec<usize>,
}

fn score_support<T: Scalar>(columns: &[Vec<T>], support: &[usize]) -> Result<(f64, f64)> {
    let s = support.len();
    let mut gram = DenseMatrix::<T>::zeros(s, s);
    for (a, &i) in support.iter().enumerate() {
        for (b, &j) in support.iter().enumerate().skip(a) {
            let v = columns[i]
                .iter()
                .zip(&columns[j])
                .fold(T::zero(), |acc, (&x, &y)| acc + x.conj() * y);
            gram[(a, b)] = v;
            gram[(b, a)] = v.conj();
        }
    }
    let (lo, hi) = gram_extremes(&gram)?;
    Ok((
        (hi - 1.0).max(1.0 - lo),
        (hi * hi - 1.0).max(1.0 - lo * lo),
    ))
}

/// `δ_s(A)` by enumerating all `C(n, s)` supports and taking the extreme
/// singular values of each column submatrix.
pub fn exact_rip_constant<T: Scalar>(a: &DenseMatrix<T>, s: usize) -> Result<RipEstimate> {
    let n = a.cols();
    if s == 0 || s > n {
        return Err(Error::DegenerateInput(format!("sparsity {s} outside 1..={n}")));
    }
    if s > SINGULAR_VALUE_COLS_CAP {
        return Err(Error::SizeGuard {
            size: s,
            cap: SINGULAR_VALUE_COLS_CAP,
        });
    }
    let count = binomial(n, s);
    if count > MAX_SUPPORTS {
        return Err(Error::TooManySupports {
            count,
            cap: MAX_SUPPORTS,
        });
    }
    let columns: Vec<Vec<T>> = (0..n).map(|j| a.column(j)).collect();

    let chunks = (count as usize).min(256);
    let per_chunk = count.div_ceil(chunks as u128);
    let partial = crate::par::map_indices(chunks, |c| -> Result<Option<SupportScore>> {
        let lo = c as u128 * per_chunk;
        let hi = (lo + per_chunk).min(count);
        if lo >= hi {
            return Ok(None);
        }
        let mut comb = unrank_combination(lo, n, s);
        let mut best: Option<SupportScore> = None;
        for _ in lo..hi {
            let (delta, delta_squared) = score_support(&columns, &comb)?;
            match &mut best {
                Some(b) => {
                    b.delta_squared = b.delta_squared.max(delta_squared);
                    if delta > b.delta {
                        b.delta = delta;
                        b.support.copy_from_slice(&comb);
                    }
                }
                None => {
                    best = Some(SupportScore {
                        delta,
                        delta_squared,
                        support: comb.clone(),
                    })
                }
            }
            next_combination(&mut comb, n);
        }
        Ok(best)
    });

    let mut best: Option<SupportScore> = None;
    for p in partial {
        let Some(p) = p? else { continue };
        best = Some(match best {
            None => p,
            Some(b) => {
                let delta_squared = b.delta_squared.max(p.delta_squared);
                let mut winner = if p.delta > b.delta { p } else { b };
                winner.delta_squared = delta_squared;
                winner
            }
        });
    }
    let best = best.expect("at least one support");
    Ok(RipEstimate {
        s,
        delta: best.delta,
        delta_squared: best.delta_squared,
        method: RipMethod::ExactEnumeration,
        witness_support: Some(SupportSet::new(best.support, n)?),
        witness_vector: None,
        trials: None,
    })
}

/// Exact constant of a chain via its dense materialization.
pub fn exact_rip_for_chain(chain: &OperatorChain, s: usize) -> Result<RipEstimate> {
    match chain.field() {
        Field::Real => exact_rip_constant(&chain.materialize::<f64>()?, s),
        Field::Complex => exact_rip_constant(&chain.materialize::<num_complex::Complex64>()?, s),
    }
}

/// Lower bound on `δ_s` from `trials` random `s`-sparse unit vectors.
///
/// Trial `t` draws its vector from `SplitMix64::stream(seed, t, Trial)`, so
/// the first `m` trials of a longer run are exactly a shorter run.
pub fn monte_carlo_rip(
    chain: &OperatorChain,
    s: usize,
    trials: u64,
    seed: u64,
) -> Result<RipEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if s == 0 || s > chain.n() {
        return Err(Error::DegenerateInput(format!(
            "sparsity {s} outside 1..={}",
            chain.n()
        )));
    }
    match chain.field() {
        Field::Real => monte_carlo_typed::<f64>(chain, s, trials, seed),
        Field::Complex => monte_carlo_typed::<num_complex::Complex64>(chain, s, trials, seed),
    }
}

fn trial_vector<T: Scalar>(n: usize, s: usize, seed: u64, t: u64) -> (Vec<T>, Vec<usize>) {
    let mut rng = SplitMix64::stream(seed, t, Role::Trial);
    sparse_unit(&mut rng, n, s)
}

fn monte_carlo_typed<T: Scalar>(
    chain: &OperatorChain,
    s: usize,
    trials: u64,
    seed: u64,
) -> Result<RipEstimate> {
    let n = chain.n();
    // Chunked so a long run does not hold one result per trial.
    const CHUNK: u64 = 4096;
    let chunks = trials.div_ceil(CHUNK) as usize;
    let partial = crate::par::map_indices(chunks, |c| -> Result<(f64, f64, u64)> {
        let lo = c as u64 * CHUNK;
        let hi = (lo + CHUNK).min(trials);
        let mut best = (-1.0f64, 0.0f64, lo);
        for t in lo..hi {
            let (x, _) = trial_vector::<T>(n, s, seed, t);
            let norm = norm2(&chain.forward(&x)?);
            let dev = (norm - 1.0).abs();
            best.1 = best.1.max((norm * norm - 1.0).abs());
            if dev > best.0 {
                best.0 = dev;
                best.2 = t;
            }
        }
        Ok(best)
    });
    let mut best = (-1.0f64, 0.0f64, 0u64);
    for p in partial {
        let p = p?;
        best.1 = best.1.max(p.1);
        if p.0 > best.0 {
            best.0 = p.0;
            best.2 = p.2;
        }
    }
    let (x, support) = trial_vector::<T>(n, s, seed, best.2);
    Ok(RipEstimate {
        s,
        delta: best.0,
        delta_squared: best.1,
        method: RipMethod::MonteCarlo,
        witness_support: Some(SupportSet::new(support, n)?),
        witness_vector: Some(T::into_dense(x)),
        trials: Some(trials),
    })
}
