//! Random test vectors.

use rand::seq::index;
use rand::Rng;

use crate::scalar::{norm2, Scalar};

/// Unit vector with uniformly random support of size `s` and coefficients
/// uniform on the sphere of that support (normalized Gaussians). Returns the
/// vector and its sorted support.
pub fn sparse_unit<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize, s: usize) -> (Vec<T>, Vec<usize>) {
    let mut support = index::sample(rng, n, s).into_vec();
    support.sort_unstable();
    let coeffs: Vec<T> = (0..s).map(|_| T::sample_gaussian(rng)).collect();
    let nrm = norm2(&coeffs);
    let mut x = vec![T::zero(); n];
    for (&i, &c) in support.iter().zip(&coeffs) {
        x[i] = c * (1.0 / nrm);
    }
    (x, support)
}

/// Uniform unit vector in the full space.
pub fn dense_unit<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<T> {
    let v: Vec<T> = (0..n).map(|_| T::sample_gaussian(rng)).collect();
    let nrm = norm2(&v);
    v.into_iter().map(|c| c * (1.0 / nrm)).collect()
}
