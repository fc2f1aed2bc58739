use crate::error::{Error, Result};
use crate::scalar::{DenseVector, Scalar};

fn decompose<T: Scalar>(w: &[T], s: usize) -> Vec<Vec<T>> {
    let n = w.len();
    let mut order: Vec<usize> = (0..n).collect();
    // Decreasing magnitude, lowest index first on ties.
    order.sort_by(|&a, &b| w[b].abs().total_cmp(&w[a].abs()).then(a.cmp(&b)));
    order
        .chunks(s)
        .map(|chunk| {
            let mut block = vec![T::zero(); n];
            for &i in chunk {
                block[i] = w[i];
            }
            block
        })
        .collect()
}

/// Splits `w` into `⌈n/s⌉` disjoint `s`-sparse pieces: the `s` largest
/// coordinates, then the next `s`, and so on. The pieces sum to `w`
/// exactly, and `Σ ‖w⁽ⁱ⁾‖₂ ≤ ‖w‖₂ + ‖w‖₁/√s`.
pub fn block_decompose(w: &DenseVector, s: usize) -> Result<Vec<DenseVector>> {
    if s == 0 {
        return Err(Error::InvalidParameter("block size must be at least 1".into()));
    }
    if w.is_empty() {
        return Ok(Vec::new());
    }
    Ok(match w {
        DenseVector::Real(v) => decompose(v, s).into_iter().map(DenseVector::Real).collect(),
        DenseVector::Complex(v) => decompose(v, s)
            .into_iter()
            .map(DenseVector::Complex)
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use num_complex::Complex64;
    use rand::Rng;

    fn nnz(v: &DenseVector) -> usize {
        v.to_complex().iter().filter(|z| z.norm() > 0.0).count()
    }

    #[test]
    fn sparse_input_lands_in_first_block() {
        let mut w = vec![0.0; 10];
        w[7] = -3.0;
        w[2] = 1.0;
        let blocks = block_decompose(&DenseVector::Real(w.clone()), 3).unwrap();
        assert_eq!(blocks.len(), 4);
        assert_eq!(blocks[0].as_real().unwrap(), w.as_slice());
        let total: f64 = blocks.iter().map(DenseVector::norm).sum();
        assert!((total - 10f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn full_block_is_identity() {
        let n = 8;
        let w = DenseVector::Real(vec![1.0 / (n as f64).sqrt(); n]);
        let blocks = block_decompose(&w, n).unwrap();
        assert_eq!(blocks, vec![w]);
    }

    #[test]
    fn blocks_partition_and_sum_exactly() {
        let mut rng = SplitMix64::new(8);
        for &(n, s) in &[(10usize, 3usize), (16, 4), (7, 1), (5, 9)] {
            let w: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let blocks = block_decompose(&DenseVector::Complex(w.clone()), s).unwrap();
            assert_eq!(blocks.len(), n.div_ceil(s));
            let mut sum = vec![Complex64::new(0.0, 0.0); n];
            for b in &blocks {
                assert!(nnz(b) <= s);
                for (acc, z) in sum.iter_mut().zip(b.to_complex()) {
                    // At most one block is non-zero per coordinate.
                    assert!(acc.norm() == 0.0 || z.norm() == 0.0);
                    *acc += z;
                }
            }
            assert_eq!(sum, w);
        }
    }

    #[test]
    fn magnitudes_are_non_increasing_across_blocks() {
        let w: Vec<f64> = vec![0.1, -5.0, 2.0, 0.0, 3.0, -0.5, 1.0];
        let blocks = block_decompose(&DenseVector::Real(w), 2).unwrap();
        let maxes: Vec<f64> = blocks
            .iter()
            .map(|b| b.as_real().unwrap().iter().fold(0.0f64, |m, x| m.max(x.abs())))
            .collect();
        let mins: Vec<f64> = blocks
            .iter()
            .map(|b| {
                b.as_real()
                    .unwrap()
                    .iter()
                    .filter(|x| **x != 0.0)
                    .fold(f64::INFINITY, |m, x| m.min(x.abs()))
            })
            .collect();
        for i in 1..blocks.len() {
            if maxes[i] > 0.0 {
                assert!(maxes[i] <= mins[i - 1]);
            }
        }
    }

    #[test]
    fn zero_block_size_is_rejected() {
        assert!(block_decompose(&DenseVector::Real(vec![1.0]), 0).is_err());
    }
}
