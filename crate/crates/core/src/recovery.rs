//! Sparse recovery from `y = A x` using only forward and adjoint
//! applications: iterative hard thresholding and orthogonal matching
//! pursuit. OMP additionally reads the `s` columns it selects.

use crate::error::{Error, Result};
use crate::linalg::{cholesky_solve, DenseMatrix};
use crate::operators::OperatorChain;
use crate::rng::{Role, SplitMix64};
use crate::sampling::sparse_unit;
use crate::scalar::{norm2, DenseVector, Field, Scalar};

/// The access a recovery algorithm has to the measurement operator.
pub trait LinearOperator {
    fn n(&self) -> usize;
    fn k(&self) -> usize;
    fn field(&self) -> Field;
    fn forward<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>>;
    fn adjoint<T: Scalar>(&self, y: &[T]) -> Result<Vec<T>>;
    /// `A e_j`.
    fn column<T: Scalar>(&self, j: usize) -> Result<Vec<T>> {
        let mut e = vec![T::zero(); self.n()];
        e[j] = T::from_real(1.0);
        self.forward(&e)
    }
}

impl LinearOperator for OperatorChain {
    fn n(&self) -> usize {
        OperatorChain::n(self)
    }
    fn k(&self) -> usize {
        OperatorChain::k(self)
    }
    fn field(&self) -> Field {
        OperatorChain::field(self)
    }
    fn forward<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>> {
        OperatorChain::forward(self, x)
    }
    fn adjoint<T: Scalar>(&self, y: &[T]) -> Result<Vec<T>> {
        OperatorChain::adjoint(self, y)
    }
    fn column<T: Scalar>(&self, j: usize) -> Result<Vec<T>> {
        OperatorChain::column(self, j)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryResult {
    pub x_hat: DenseVector,
    pub iterations: usize,
    /// `‖A x_hat - y‖₂`.
    pub residual_norm: f64,
    /// Filled in by [`RecoveryResult::evaluate`].
    pub support_recovered: Option<bool>,
    pub relative_error: Option<f64>,
}

/// Relative error at or below which a run counts as a success.
pub const SUCCESS_TOLERANCE: f64 = 1e-6;

impl RecoveryResult {
    /// Compares against the true signal.
    pub fn evaluate(mut self, truth: &DenseVector) -> Result<Self> {
        let t = truth.to_complex();
        let h = self.x_hat.to_complex();
        if t.len() != h.len() {
            return Err(Error::LengthMismatch {
                expected: h.len(),
                got: t.len(),
            });
        }
        let diff: f64 = t.iter().zip(&h).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        let tn = norm2(&t);
        self.relative_error = Some(if tn > 0.0 { diff / tn } else { diff });
        let hn = norm2(&h);
        let supp = |v: &[num_complex::Complex64], scale: f64| -> Vec<usize> {
            (0..v.len()).filter(|&i| v[i].norm() > 1e-8 * scale).collect()
        };
        self.support_recovered = Some(supp(&t, tn) == supp(&h, hn));
        Ok(self)
    }

    pub fn succeeded(&self) -> bool {
        self.relative_error.is_some_and(|e| e <= SUCCESS_TOLERANCE)
    }
}

fn threshold_in_place<T: Scalar>(x: &mut [T], s: usize) {
    if s >= x.len() {
        return;
    }
    let mut order: Vec<usize> = (0..x.len()).collect();
    // Largest magnitude first, lowest index on ties.
    order.sort_by(|&a, &b| x[b].abs().total_cmp(&x[a].abs()).then(a.cmp(&b)));
    for &i in &order[s..] {
        x[i] = T::zero();
    }
}

/// Keeps the `s` largest-magnitude entries; ties go to the lowest index.
pub fn hard_threshold(x: &DenseVector, s: usize) -> DenseVector {
    let mut out = x.clone();
    match &mut out {
        DenseVector::Real(v) => threshold_in_place(v, s),
        DenseVector::Complex(v) => threshold_in_place(v, s),
    }
    out
}

fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

fn typed_y<T: Scalar>(y: &DenseVector) -> Result<Vec<T>> {
    match (T::FIELD, y) {
        (Field::Real, DenseVector::Real(v)) => {
            Ok(v.iter().map(|&r| T::from_real(r)).collect())
        }
        (Field::Real, DenseVector::Complex(_)) => Err(Error::FieldMismatch(
            "complex measurements given to a real operator".into(),
        )),
        (Field::Complex, _) => {
            let mut out = vec![T::zero(); y.len()];
            T::as_complex_mut(&mut out)
                .expect("complex scalar")
                .copy_from_slice(&y.to_complex());
            Ok(out)
        }
    }
}

fn check_y<A: LinearOperator>(op: &A, y: &DenseVector) -> Result<()> {
    if y.len() != op.k() {
        return Err(Error::LengthMismatch {
            expected: op.k(),
            got: y.len(),
        });
    }
    Ok(())
}

/// `x ← H_s(x + step · A*(y - A x))` from `x = 0`, stopping once the
/// residual is at most `tol` (absolute) or after `max_iters` updates.
pub fn iht_recover<A: LinearOperator>(
    op: &A,
    y: &DenseVector,
    s: usize,
    max_iters: usize,
    tol: f64,
    step: f64,
) -> Result<RecoveryResult> {
    check_y(op, y)?;
    match op.field() {
        Field::Real => iht_typed::<f64, A>(op, &typed_y(y)?, s, max_iters, tol, step),
        Field::Complex => {
            iht_typed::<num_complex::Complex64, A>(op, &typed_y(y)?, s, max_iters, tol, step)
        }
    }
}

fn iht_typed<T: Scalar, A: LinearOperator>(
    op: &A,
    y: &[T],
    s: usize,
    max_iters: usize,
    tol: f64,
    step: f64,
) -> Result<RecoveryResult> {
    let mut x = vec![T::zero(); op.n()];
    let mut residual = y.to_vec();
    let mut iterations = 0;
    while iterations < max_iters.max(1) {
        iterations += 1;
        let g = op.adjoint(&residual)?;
        for (xi, gi) in x.iter_mut().zip(&g) {
            *xi = *xi + *gi * step;
        }
        threshold_in_place(&mut x, s);
        residual = sub(y, &op.forward(&x)?);
        if norm2(&residual) <= tol {
            break;
        }
    }
    Ok(RecoveryResult {
        x_hat: T::into_dense(x),
        iterations,
        residual_norm: norm2(&residual),
        support_recovered: None,
        relative_error: None,
    })
}

/// `s` rounds of greedy selection with a least-squares refit on the chosen
/// columns. Stops early once the residual is negligible.
pub fn omp_recover<A: LinearOperator>(op: &A, y: &DenseVector, s: usize) -> Result<RecoveryResult> {
    check_y(op, y)?;
    if s > op.k() {
        return Err(Error::InvalidParameter(format!(
            "OMP needs s ≤ k, got s = {s}, k = {}",
            op.k()
        )));
    }
    match op.field() {
        Field::Real => omp_typed::<f64, A>(op, &typed_y(y)?, s),
        Field::Complex => omp_typed::<num_complex::Complex64, A>(op, &typed_y(y)?, s),
    }
}

fn omp_typed<T: Scalar, A: LinearOperator>(op: &A, y: &[T], s: usize) -> Result<RecoveryResult> {
    let n = op.n();
    let y_norm = norm2(y);
    let mut support: Vec<usize> = Vec::with_capacity(s);
    let mut columns: Vec<Vec<T>> = Vec::with_capacity(s);
    let mut coeffs: Vec<T> = Vec::new();
    let mut residual = y.to_vec();
    let mut rounds = 0;
    while rounds < s && norm2(&residual) > 1e-14 * y_norm.max(f64::MIN_POSITIVE) {
        rounds += 1;
        let corr = op.adjoint(&residual)?;
        let pick = (0..n)
            .filter(|j| !support.contains(j))
            .max_by(|&a, &b| corr[a].abs().total_cmp(&corr[b].abs()).then(b.cmp(&a)))
            .expect("fewer than n columns chosen");
        support.push(pick);
        columns.push(op.column(pick)?);
        let a_s = DenseMatrix::from_columns(op.k(), &columns)?;
        let gram = a_s.column_gram();
        let rhs = a_s.adjoint_matvec(y)?;
        coeffs = cholesky_solve(&gram, &rhs)?;
        residual = sub(y, &a_s.matvec(&coeffs)?);
    }
    let mut x = vec![T::zero(); n];
    for (&j, &c) in support.iter().zip(&coeffs) {
        x[j] = c;
    }
    Ok(RecoveryResult {
        x_hat: T::into_dense(x),
        iterations: rounds,
        residual_norm: norm2(&residual),
        support_recovered: None,
        relative_error: None,
    })
}

/// Test signal `index` for a recovery experiment: uniform random support,
/// normalized Gaussian coefficients, drawn from stream `(seed, index, Signal)`.
pub fn sparse_signal(field: Field, n: usize, s: usize, seed: u64, index: u64) -> DenseVector {
    let mut rng = SplitMix64::stream(seed, index, Role::Signal);
    match field {
        Field::Real => DenseVector::Real(sparse_unit::<f64, _>(&mut rng, n, s).0),
        Field::Complex => {
            DenseVector::Complex(sparse_unit::<num_complex::Complex64, _>(&mut rng, n, s).0)
        }
    }
}
