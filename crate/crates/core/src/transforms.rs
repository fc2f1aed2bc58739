//! Unitary fast transforms `H` with `O(n log n)` application.
//!
//! All three kernels are radix-2 and unitary: the `n^{-1/2}` normalization
//! is applied inside the last butterfly stage rather than as a separate
//! pass. Walsh–Hadamard uses natural (Hadamard) ordering.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::{DenseVector, Scalar};

/// Largest `n` that [`materialize_transform`] will allocate.
pub const MATERIALIZE_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TransformKind {
    #[default]
    WalshHadamard,
    Dft,
    Dct2,
}

impl TransformKind {
    pub fn name(self) -> &'static str {
        match self {
            TransformKind::WalshHadamard => "wht",
            TransformKind::Dft => "dft",
            TransformKind::Dct2 => "dct2",
        }
    }

    /// `K` in `max |H_ij| = K n^{-1/2}`.
    pub fn entry_bound(self) -> f64 {
        match self {
            TransformKind::WalshHadamard | TransformKind::Dft => 1.0,
            TransformKind::Dct2 => std::f64::consts::SQRT_2,
        }
    }

    /// Whether the transform maps real vectors to real vectors.
    pub fn is_real(self) -> bool {
        !matches!(self, TransformKind::Dft)
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "wht" | "walsh-hadamard" | "hadamard" => Ok(TransformKind::WalshHadamard),
            "dft" | "fourier" => Ok(TransformKind::Dft),
            "dct2" | "dct" => Ok(TransformKind::Dct2),
            other => Err(Error::InvalidParameter(format!(
                "unknown transform `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Adjoint,
}

/// Which transform, at which length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FastTransformSpec {
    pub kind: TransformKind,
    pub n: usize,
}

impl FastTransformSpec {
    /// Every kernel is radix-2, so `n` must be a power of two.
    pub fn new(kind: TransformKind, n: usize) -> Result<Self> {
        if !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        Ok(Self { kind, n })
    }

    pub fn entry_bound(&self) -> f64 {
        self.kind.entry_bound()
    }
}

/// Receives the multiply-add counts reported by the kernels.
pub trait OpCounter {
    fn add(&mut self, ops: u64);
}

/// Counter that discards everything.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoCount;

impl OpCounter for NoCount {
    #[inline(always)]
    fn add(&mut self, _: u64) {}
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCount(pub u64);

impl OpCounter for OpCount {
    #[inline]
    fn add(&mut self, ops: u64) {
        self.0 += ops;
    }
}

/// A transform with its twiddle tables, ready to apply.
#[derive(Debug, Clone)]
pub struct FastTransform {
    spec: FastTransformSpec,
    /// `exp(-2πi m / n)` for `m < n/2`.
    twiddles: Arc<[Complex64]>,
    /// `s_k exp(-iπk / 2n)`, the DCT-II output rotation including the
    /// orthonormal scaling.
    dct_rotation: Arc<[Complex64]>,
}

impl PartialEq for FastTransform {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl FastTransform {
    pub fn new(spec: FastTransformSpec) -> Result<Self> {
        let spec = FastTransformSpec::new(spec.kind, spec.n)?;
        let n = spec.n;
        let needs_fft = spec.kind != TransformKind::WalshHadamard;
        let twiddles: Arc<[Complex64]> = if needs_fft {
            (0..n / 2)
                .map(|m| Complex64::from_polar(1.0, -2.0 * PI * m as f64 / n as f64))
                .collect()
        } else {
            Arc::from(Vec::new())
        };
        let dct_rotation: Arc<[Complex64]> = if spec.kind == TransformKind::Dct2 {
            (0..n)
                .map(|k| {
                    let s = if k == 0 {
                        (1.0 / n as f64).sqrt()
                    } else {
                        (2.0 / n as f64).sqrt()
                    };
                    Complex64::from_polar(s, -PI * k as f64 / (2.0 * n as f64))
                })
                .collect()
        } else {
            Arc::from(Vec::new())
        };
        Ok(Self {
            spec,
            twiddles,
            dct_rotation,
        })
    }

    pub fn spec(&self) -> FastTransformSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn kind(&self) -> TransformKind {
        self.spec.kind
    }

    pub fn apply_in_place<T: Scalar>(&self, buf: &mut [T], dir: Direction) -> Result<()> {
        self.apply_counted(buf, dir, &mut NoCount)
    }

    /// Applies `H` or `H*` in place, reporting multiply-adds to `counter`.
    pub fn apply_counted<T: Scalar, C: OpCounter>(
        &self,
        buf: &mut [T],
        dir: Direction,
        counter: &mut C,
    ) -> Result<()> {
        if buf.len() != self.spec.n {
            return Err(Error::LengthMismatch {
                expected: self.spec.n,
                got: buf.len(),
            });
        }
        match self.spec.kind {
            TransformKind::WalshHadamard => {
                wht(buf, counter);
                Ok(())
            }
            TransformKind::Dft => {
                let buf = T::as_complex_mut(buf).ok_or_else(|| {
                    Error::FieldMismatch("the DFT requires complex scalars".into())
                })?;
                let norm = (1.0 / self.spec.n as f64).sqrt();
                fft(buf, &self.twiddles, dir == Direction::Adjoint, norm, counter);
                Ok(())
            }
            TransformKind::Dct2 => {
                if let Some(re) = T::as_real_mut(buf) {
                    self.dct_real(re, dir, counter);
                } else if let Some(c) = T::as_complex_mut(buf) {
                    let mut re: Vec<f64> = c.iter().map(|z| z.re).collect();
                    let mut im: Vec<f64> = c.iter().map(|z| z.im).collect();
                    self.dct_real(&mut re, dir, counter);
                    self.dct_real(&mut im, dir, counter);
                    for ((z, r), i) in c.iter_mut().zip(re).zip(im) {
                        *z = Complex64::new(r, i);
                    }
                }
                Ok(())
            }
        }
    }

    /// Orthonormal DCT-II (forward) or DCT-III (adjoint) through one complex
    /// FFT of length `n` on the even/odd reordered input.
    fn dct_real<C: OpCounter>(&self, x: &mut [f64], dir: Direction, counter: &mut C) {
        let n = x.len();
        if n == 1 {
            return;
        }
        let half = n / 2;
        match dir {
            Direction::Forward => {
                let mut v = vec![Complex64::default(); n];
                for i in 0..half {
                    v[i] = Complex64::new(x[2 * i], 0.0);
                    v[n - 1 - i] = Complex64::new(x[2 * i + 1], 0.0);
                }
                fft(&mut v, &self.twiddles, false, 1.0, counter);
                for (k, out) in x.iter_mut().enumerate() {
                    *out = (self.dct_rotation[k] * v[k]).re;
                }
                counter.add(n as u64);
            }
            Direction::Adjoint => {
                // Undo the rotation: V_k = e^{iπk/2n} (Y_k - i Y_{n-k}),
                // with Y = X / s and the inverse FFT's 1/n folded in.
                let mut v = vec![Complex64::default(); n];
                let inv_n = 1.0 / n as f64;
                for k in 0..n {
                    let rot = self.dct_rotation[k];
                    let s = rot.norm();
                    let yk = x[k] / s;
                    let ynk = if k == 0 {
                        0.0
                    } else {
                        let r = self.dct_rotation[n - k].norm();
                        x[n - k] / r
                    };
                    let unit = rot.conj() / s;
                    v[k] = unit * Complex64::new(yk, -ynk) * inv_n;
                }
                counter.add(n as u64);
                fft(&mut v, &self.twiddles, true, 1.0, counter);
                for i in 0..half {
                    x[2 * i] = v[i].re;
                    x[2 * i + 1] = v[n - 1 - i].re;
                }
            }
        }
    }

    /// Dense `n × n` matrix whose column `j` is `H e_j`.
    pub fn materialize<T: Scalar>(&self) -> Result<DenseMatrix<T>> {
        let n = self.spec.n;
        if n > MATERIALIZE_CAP {
            return Err(Error::SizeGuard {
                size: n,
                cap: MATERIALIZE_CAP,
            });
        }
        let mut m = DenseMatrix::zeros(n, n);
        let mut col = vec![T::zero(); n];
        for j in 0..n {
            col.iter_mut().for_each(|v| *v = T::zero());
            col[j] = T::from_real(1.0);
            self.apply_in_place(&mut col, Direction::Forward)?;
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }
}

/// In-place natural-order Walsh–Hadamard butterflies, unitary.
fn wht<T: Scalar, C: OpCounter>(x: &mut [T], counter: &mut C) {
    let n = x.len();
    if n <= 1 {
        return;
    }
    let norm = (1.0 / n as f64).sqrt();
    let mut h = 1;
    while h < n {
        let last = 2 * h == n;
        for block in x.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*a, *b);
                if last {
                    *a = (u + v) * norm;
                    *b = (u - v) * norm;
                } else {
                    *a = u + v;
                    *b = u - v;
                }
            }
        }
        counter.add(n as u64);
        h *= 2;
    }
}

/// Iterative radix-2 decimation-in-time FFT. `inverse` conjugates the
/// twiddles; `final_scale` multiplies the last stage's outputs.
fn fft<C: OpCounter>(
    x: &mut [Complex64],
    twiddles: &[Complex64],
    inverse: bool,
    final_scale: f64,
    counter: &mut C,
) {
    let n = x.len();
    if n <= 1 {
        if n == 1 {
            x[0] *= final_scale;
        }
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            x.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        let scale = if len == n { final_scale } else { 1.0 };
        for block in x.chunks_exact_mut(len) {
            let (lo, hi) = block.split_at_mut(half);
            for (j, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                let w = twiddles[j * stride];
                let w = if inverse { w.conj() } else { w };
                let t = w * *b;
                let u = *a;
                *a = (u + t) * scale;
                *b = (u - t) * scale;
            }
        }
        counter.add(n as u64);
        len *= 2;
    }
}

/// `H x` or `H* x` for a vector of either field. Real input to the DFT is
/// promoted to complex.
pub fn apply_transform(
    spec: FastTransformSpec,
    x: &DenseVector,
    dir: Direction,
) -> Result<DenseVector> {
    let t = FastTransform::new(spec)?;
    if x.len() != spec.n {
        return Err(Error::LengthMismatch {
            expected: spec.n,
            got: x.len(),
        });
    }
    match (x, spec.kind.is_real()) {
        (DenseVector::Real(v), true) => {
            let mut out = v.clone();
            t.apply_in_place(&mut out, dir)?;
            Ok(DenseVector::Real(out))
        }
        _ => {
            let mut out = x.to_complex();
            t.apply_in_place(&mut out, dir)?;
            Ok(DenseVector::Complex(out))
        }
    }
}

/// Dense matrix of `H` (complex entries for every kind).
pub fn materialize_transform(spec: FastTransformSpec) -> Result<DenseMatrix<Complex64>> {
    if spec.n > MATERIALIZE_CAP {
        return Err(Error::SizeGuard {
            size: spec.n,
            cap: MATERIALIZE_CAP,
        });
    }
    FastTransform::new(spec)?.materialize()
}
