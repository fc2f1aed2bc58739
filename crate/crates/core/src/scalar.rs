use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Scalar field a pipeline operates over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Real,
    Complex,
}

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

/// Element type of vectors and matrices: `f64` or `Complex64`.
pub trait Scalar:
    Copy
    + Send
    + Sync
    + Debug
    + PartialEq
    + Default
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Mul<f64, Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    const FIELD: Field;

    fn zero() -> Self {
        Self::default()
    }
    fn from_real(re: f64) -> Self;
    fn conj(self) -> Self;
    fn norm_sqr(self) -> f64;
    fn abs(self) -> f64 {
        self.norm_sqr().sqrt()
    }
    fn re(self) -> f64;
    fn to_complex(self) -> Complex64;

    /// Standard normal over the field; complex draws have `E|z|² = 1`.
    fn sample_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// View of a buffer as complex numbers, if the field is complex.
    fn as_complex_mut(buf: &mut [Self]) -> Option<&mut [Complex64]>;
    /// View of a buffer as reals, if the field is real.
    fn as_real_mut(buf: &mut [Self]) -> Option<&mut [f64]>;

    fn into_dense(v: Vec<Self>) -> DenseVector;
}

impl Scalar for f64 {
    const FIELD: Field = Field::Real;

    fn from_real(re: f64) -> Self {
        re
    }
    fn conj(self) -> Self {
        self
    }
    fn norm_sqr(self) -> f64 {
        self * self
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn re(self) -> f64 {
        self
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn sample_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
    fn as_complex_mut(_: &mut [Self]) -> Option<&mut [Complex64]> {
        None
    }
    fn as_real_mut(buf: &mut [Self]) -> Option<&mut [f64]> {
        Some(buf)
    }
    fn into_dense(v: Vec<Self>) -> DenseVector {
        DenseVector::Real(v)
    }
}

impl Scalar for Complex64 {
    const FIELD: Field = Field::Complex;

    fn from_real(re: f64) -> Self {
        Complex64::new(re, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn to_complex(self) -> Complex64 {
        self
    }
    fn sample_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
    fn as_complex_mut(buf: &mut [Self]) -> Option<&mut [Complex64]> {
        Some(buf)
    }
    fn as_real_mut(_: &mut [Self]) -> Option<&mut [f64]> {
        None
    }
    fn into_dense(v: Vec<Self>) -> DenseVector {
        DenseVector::Complex(v)
    }
}

pub fn norm2<T: Scalar>(x: &[T]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨x, y⟩ = Σ conj(x_i) y_i`.
pub fn inner<T: Scalar>(x: &[T], y: &[T]) -> T {
    x.iter()
        .zip(y)
        .fold(T::zero(), |acc, (&a, &b)| acc + a.conj() * b)
}

/// A vector over either field, the currency of the untyped public API.
#[derive(Debug, Clone, PartialEq)]
pub enum DenseVector {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

impl DenseVector {
    pub fn len(&self) -> usize {
        match self {
            DenseVector::Real(v) => v.len(),
            DenseVector::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn field(&self) -> Field {
        match self {
            DenseVector::Real(_) => Field::Real,
            DenseVector::Complex(_) => Field::Complex,
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            DenseVector::Real(v) => norm2(v),
            DenseVector::Complex(v) => norm2(v),
        }
    }

    pub fn basis(n: usize, j: usize) -> Self {
        let mut v = vec![0.0; n];
        v[j] = 1.0;
        DenseVector::Real(v)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            DenseVector::Real(v) => v.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            DenseVector::Complex(v) => v.clone(),
        }
    }

    pub fn as_real(&self) -> Option<&[f64]> {
        match self {
            DenseVector::Real(v) => Some(v),
            DenseVector::Complex(_) => None,
        }
    }

    pub fn as_complex(&self) -> Option<&[Complex64]> {
        match self {
            DenseVector::Complex(v) => Some(v),
            DenseVector::Real(_) => None,
        }
    }
}

impl From<Vec<f64>> for DenseVector {
    fn from(v: Vec<f64>) -> Self {
        DenseVector::Real(v)
    }
}

impl From<Vec<Complex64>> for DenseVector {
    fn from(v: Vec<Complex64>) -> Self {
        DenseVector::Complex(v)
    }
}
