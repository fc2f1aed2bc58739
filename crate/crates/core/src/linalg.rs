//! Small dense linear algebra: matrices, Jacobi eigenvalues, Cholesky.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::from_real(1.0);
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from its columns, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::LengthMismatch {
                    expected: rows,
                    got: c.len(),
                });
            }
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Columns `idx` as a new `rows × idx.len()` matrix.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                m[(i, c)] = self[(i, j)];
            }
        }
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn matvec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect())
    }

    /// `A* y`.
    pub fn adjoint_matvec(&self, y: &[T]) -> Result<Vec<T>> {
        if y.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                got: y.len(),
            });
        }
        let mut out = vec![T::zero(); self.cols];
        for (i, &yi) in y.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += a.conj() * yi;
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                let out = &mut m.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in out.iter_mut().zip(other.row(l)) {
                    *o += a * b;
                }
            }
        }
        Ok(m)
    }

    /// `A A*`.
    pub fn row_gram(&self) -> Self {
        let mut g = Self::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let v = self
                    .row(i)
                    .iter()
                    .zip(self.row(j))
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b.conj());
                g[(i, j)] = v;
                g[(j, i)] = v.conj();
            }
        }
        g
    }

    /// `A* A`.
    pub fn column_gram(&self) -> Self {
        self.adjoint().row_gram()
    }

    /// `max_ij |A_ij - c δ_ij|` for a square matrix.
    pub fn max_deviation_from_scaled_identity(&self, c: f64) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { c } else { 0.0 };
                worst = worst.max((self[(i, j)] - T::from_real(target)).abs());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(&mut self, c: f64) {
        for v in &mut self.data {
            *v = *v * c;
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
pub const SINGULAR_VALUE_COLS_CAP: usize = 64;

/// Eigenvalues of a real symmetric `m × m` matrix (row-major) by cyclic
/// Jacobi rotations, ascending. Iterates until the off-diagonal Frobenius
/// norm is at most `JACOBI_TOL` times the full Frobenius norm.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, m: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), m * m);
    let fro: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let threshold = JACOBI_TOL * fro.max(f64::MIN_POSITIVE);
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    s += a[i * m + j] * a[i * m + j];
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * m + p];
                let aqq = a[q * m + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..m {
                    let arp = a[r * m + p];
                    let arq = a[r * m + q];
                    a[r * m + p] = c * arp - s * arq;
                    a[r * m + q] = s * arp + c * arq;
                }
                for r in 0..m {
                    let apr = a[p * m + r];
                    let aqr = a[q * m + r];
                    a[p * m + r] = c * apr - s * aqr;
                    a[q * m + r] = s * apr + c * aqr;
                }
            }
        }
        sweeps += 1;
        converged = off(&a) <= threshold;
    }
    let mut eig: Vec<f64> = (0..m).map(|i| a[i * m + i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Real symmetric matrix with the same spectrum as a Hermitian one.
///
/// Real input is returned as is. A complex Hermitian `G = X + iY` becomes
/// `[[X, -Y], [Y, X]]`, whose eigenvalues are those of `G`, each twice.
pub fn hermitian_as_real_symmetric<T: Scalar>(g: &DenseMatrix<T>) -> (Vec<f64>, usize) {
    let m = g.rows();
    match T::FIELD {
        crate::scalar::Field::Real => (g.as_slice().iter().map(|v| v.re()).collect(), m),
        crate::scalar::Field::Complex => {
            let d = 2 * m;
            let mut out = vec![0.0; d * d];
            for i in 0..m {
                for j in 0..m {
                    let z = g[(i, j)].to_complex();
                    out[i * d + j] = z.re;
                    out[i * d + j + m] = -z.im;
                    out[(i + m) * d + j] = z.im;
                    out[(i + m) * d + j + m] = z.re;
                }
            }
            (out, d)
        }
    }
}

/// `(σ_min, σ_max)` of a `k × s` matrix from the extreme eigenvalues of
/// its Gram matrix.
pub fn extremal_singular_values<T: Scalar>(m: &DenseMatrix<T>) -> Result<(f64, f64)> {
    if m.cols() > SINGULAR_VALUE_COLS_CAP {
        return Err(Error::SizeGuard {
            size: m.cols(),
            cap: SINGULAR_VALUE_COLS_CAP,
        });
    }
    if m.cols() == 0 {
        return Err(Error::DegenerateInput("matrix has no columns".into()));
    }
    gram_extremes(&m.column_gram())
}

pub(crate) fn gram_extremes<T: Scalar>(gram: &DenseMatrix<T>) -> Result<(f64, f64)> {
    let (sym, d) = hermitian_as_real_symmetric(gram);
    let eig = symmetric_eigenvalues(sym, d)?;
    let lo = eig[0].max(0.0).sqrt();
    let hi = eig[d - 1].max(0.0).sqrt();
    Ok((lo, hi))
}

/// Solves `G z = b` for Hermitian positive definite `G`. Fails with
/// `SingularSubproblem` when a pivot falls below `1e-12` times the largest
/// diagonal entry.
pub fn cholesky_solve<T: Scalar>(g: &DenseMatrix<T>, b: &[T]) -> Result<Vec<T>> {
    let m = g.rows();
    let scale = (0..m).fold(0.0f64, |acc, i| acc.max(g[(i, i)].re()));
    let mut l = DenseMatrix::<T>::zeros(m, m);
    for j in 0..m {
        let mut d = g[(j, j)].re();
        for p in 0..j {
            d -= l[(j, p)].norm_sqr();
        }
        if !(d > 1e-12 * scale) {
            return Err(Error::SingularSubproblem);
        }
        let d = d.sqrt();
        l[(j, j)] = T::from_real(d);
        for i in j + 1..m {
            let mut v = g[(i, j)];
            for p in 0..j {
                v -= l[(i, p)] * l[(j, p)].conj();
            }
            l[(i, j)] = v * (1.0 / d);
        }
    }
    let mut y = b.to_vec();
    for i in 0..m {
        let mut v = y[i];
        for p in 0..i {
            v -= l[(i, p)] * y[p];
        }
        y[i] = v * (1.0 / l[(i, i)].re());
    }
    for i in (0..m).rev() {
        let mut v = y[i];
        for p in i + 1..m {
            v -= l[(p, i)].conj() * y[p];
        }
        y[i] = v * (1.0 / l[(i, i)].re());
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use num_complex::Complex64;

    #[test]
    fn identity_has_unit_singular_values() {
        let m = DenseMatrix::<f64>::identity(3);
        let (lo, hi) = extremal_singular_values(&m).unwrap();
        assert!((lo - 1.0).abs() < 1e-15 && (hi - 1.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_singular_values() {
        let m = DenseMatrix::from_row_major(2, 2, vec![2.0, 0.0, 0.0, 0.5]).unwrap();
        let (lo, hi) = extremal_singular_values(&m).unwrap();
        assert!((lo - 0.5).abs() < 1e-14);
        assert!((hi - 2.0).abs() < 1e-14);
    }

    /// Power iteration on `G` and on `λ_max I - G`, written independently of
    /// the Jacobi path.
    fn power_iteration_extremes(g: &[f64], m: usize) -> (f64, f64) {
        let apply = |g: &[f64], v: &[f64]| -> Vec<f64> {
            (0..m)
                .map(|i| (0..m).map(|j| g[i * m + j] * v[j]).sum())
                .collect()
        };
        let top = |g: &[f64]| -> f64 {
            let mut v: Vec<f64> = (0..m).map(|i| 1.0 + 0.1 * i as f64).collect();
            let mut lambda = 0.0;
            for _ in 0..20000 {
                let w = apply(g, &v);
                let nrm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
                lambda = v.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>()
                    / v.iter().map(|x| x * x).sum::<f64>();
                v = w.iter().map(|x| x / nrm).collect();
            }
            lambda
        };
        let hi = top(g);
        let mut shifted = g.to_vec();
        for (idx, v) in shifted.iter_mut().enumerate() {
            *v = if idx % (m + 1) == 0 { hi - *v } else { -*v };
        }
        let lo = hi - top(&shifted);
        (lo.max(0.0).sqrt(), hi.sqrt())
    }

    #[test]
    fn random_tall_matrix_matches_power_iteration() {
        use rand::Rng;
        let mut rng = SplitMix64::new(11);
        let data: Vec<f64> = (0..24).map(|_| rng.random_range(-1.0..1.0)).collect();
        let m = DenseMatrix::from_row_major(8, 3, data).unwrap();
        let (lo, hi) = extremal_singular_values(&m).unwrap();
        let g = m.column_gram();
        let (plo, phi) = power_iteration_extremes(g.as_slice(), 3);
        assert!((lo - plo).abs() < 1e-8, "{lo} vs {plo}");
        assert!((hi - phi).abs() < 1e-8, "{hi} vs {phi}");
    }

    #[test]
    fn complex_gram_embedding_preserves_spectrum() {
        // Columns (1, i) and (1, -i) are orthogonal with norm √2.
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let m = DenseMatrix::from_row_major(2, 2, vec![one, one, i, -i]).unwrap();
        let (lo, hi) = extremal_singular_values(&m).unwrap();
        assert!((lo - 2f64.sqrt()).abs() < 1e-14);
        assert!((hi - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn too_many_columns_is_guarded() {
        let m = DenseMatrix::<f64>::zeros(2, 65);
        assert!(matches!(
            extremal_singular_values(&m),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn cholesky_solves_and_detects_rank_deficiency() {
        let g = DenseMatrix::from_row_major(2, 2, vec![4.0, 2.0, 2.0, 3.0]).unwrap();
        let z = cholesky_solve(&g, &[2.0, 1.0]).unwrap();
        assert!((4.0 * z[0] + 2.0 * z[1] - 2.0).abs() < 1e-14);
        assert!((2.0 * z[0] + 3.0 * z[1] - 1.0).abs() < 1e-14);

        let singular = DenseMatrix::from_row_major(2, 2, vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(
            cholesky_solve(&singular, &[1.0, 1.0]),
            Err(Error::SingularSubproblem)
        );
    }
}
