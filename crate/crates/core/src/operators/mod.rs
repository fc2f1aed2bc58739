//! Structured linear operators built from sign diagonals, fast transforms
//! and a final `n → k` projection.

mod builders;
mod chain_spec;

pub use builders::{
    bootstrap_rounds, build_gaussian_baseline, build_theorem1, build_theorem1_with_signs, build_theorem2,
    contraction_kappa, plan_theorem2, PlanOptions, RegimePolicy, TheoremTwoBase, TheoremTwoPlan, KAPPA_LIMIT,
};
pub use chain_spec::{ChainSpec, OmegaPolicy};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::seq::index;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::rng::SplitMix64;
use crate::scalar::{DenseVector, Field, Scalar};
use crate::transforms::{
    Direction, FastTransform, FastTransformSpec, NoCount, OpCounter, MATERIALIZE_CAP,
};

/// Rademacher vector stored as `±1` bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVector {
    signs: Vec<i8>,
    seed: Option<u64>,
}

impl SignVector {
    /// Sign `i` is `-1` when bit `i % 64` of word `i / 64` of the
    /// `SplitMix64(seed)` stream is set.
    pub fn draw(seed: u64, n: usize) -> Self {
        let mut rng = SplitMix64::new(seed);
        let mut signs = Vec::with_capacity(n);
        while signs.len() < n {
            let word = rng.next_word();
            let take = (n - signs.len()).min(64);
            signs.extend((0..take).map(|b| if (word >> b) & 1 == 1 { -1 } else { 1 }));
        }
        Self {
            signs,
            seed: Some(seed),
        }
    }

    pub fn from_signs(signs: Vec<i8>) -> Result<Self> {
        if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidParameter(format!("sign entry {bad} is not ±1")));
        }
        Ok(Self { signs, seed: None })
    }

    pub fn ones(n: usize) -> Self {
        Self {
            signs: vec![1; n],
            seed: None,
        }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    #[inline]
    pub fn apply<T: Scalar>(&self, x: &mut [T]) {
        for (v, &s) in x.iter_mut().zip(&self.signs) {
            if s < 0 {
                *v = -*v;
            }
        }
    }
}

pub fn draw_sign_vector(seed: u64, n: usize) -> SignVector {
    SignVector::draw(seed, n)
}

/// Strictly increasing subset of `{0, …, n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportSet {
    indices: Vec<usize>,
    n: usize,
}

impl SupportSet {
    /// Sorts the indices; duplicates and out-of-range entries are errors.
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::BadSupport(format!("duplicate index {}", w[0])));
        }
        if let Some(&last) = indices.last() {
            if last >= n {
                return Err(Error::BadSupport(format!("index {last} out of range for n = {n}")));
            }
        }
        Ok(Self { indices, n })
    }

    pub fn first_k(k: usize, n: usize) -> Result<Self> {
        Self::range(0, k, n)
    }

    pub fn range(start: usize, end: usize, n: usize) -> Result<Self> {
        if start > end || end > n {
            return Err(Error::BadSupport(format!("range {start}..{end} not inside 0..{n}")));
        }
        Ok(Self {
            indices: (start..end).collect(),
            n,
        })
    }

    /// Uniformly random `k`-subset drawn from `SplitMix64(seed)`.
    pub fn random(k: usize, n: usize, seed: u64) -> Result<Self> {
        if k > n {
            return Err(Error::BadSupport(format!("cannot draw {k} of {n} indices")));
        }
        let mut rng = SplitMix64::new(seed);
        Self::new(index::sample(&mut rng, n, k).into_vec(), n)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
}

/// A fixed `k × n` matrix used as the final stage.
#[derive(Debug, Clone, PartialEq)]
pub enum Projector {
    Real(DenseMatrix<f64>),
    Complex(DenseMatrix<Complex64>),
}

impl Projector {
    pub fn rows(&self) -> usize {
        match self {
            Projector::Real(m) => m.rows(),
            Projector::Complex(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Projector::Real(m) => m.cols(),
            Projector::Complex(m) => m.cols(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Projector::Real(_) => Field::Real,
            Projector::Complex(_) => Field::Complex,
        }
    }

    /// `max |P P* - c I|`.
    pub fn row_gram_deviation(&self, c: f64) -> f64 {
        match self {
            Projector::Real(m) => m.row_gram().max_deviation_from_scaled_identity(c),
            Projector::Complex(m) => m.row_gram().max_deviation_from_scaled_identity(c),
        }
    }

    fn scaled(&self, c: f64) -> Self {
        let mut p = self.clone();
        match &mut p {
            Projector::Real(m) => m.scale(c),
            Projector::Complex(m) => m.scale(c),
        }
        p
    }

    fn forward<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>> {
        match self {
            Projector::Real(m) => Ok((0..m.rows())
                .map(|i| {
                    m.row(i)
                        .iter()
                        .zip(x)
                        .fold(T::zero(), |acc, (&a, &b)| acc + b * a)
                })
                .collect()),
            Projector::Complex(m) => {
                let xc: Vec<Complex64> = x.iter().map(|v| v.to_complex()).collect();
                let yc = m.matvec(&xc)?;
                let mut out = vec![T::zero(); m.rows()];
                let slot = T::as_complex_mut(&mut out).ok_or_else(|| {
                    Error::FieldMismatch("complex projector needs complex scalars".into())
                })?;
                slot.copy_from_slice(&yc);
                Ok(out)
            }
        }
    }

    fn adjoint<T: Scalar>(&self, y: &[T]) -> Result<Vec<T>> {
        match self {
            Projector::Real(m) => {
                let mut out = vec![T::zero(); m.cols()];
                for (i, &yi) in y.iter().enumerate() {
                    for (o, &a) in out.iter_mut().zip(m.row(i)) {
                        *o += yi * a;
                    }
                }
                Ok(out)
            }
            Projector::Complex(m) => {
                let yc: Vec<Complex64> = y.iter().map(|v| v.to_complex()).collect();
                let xc = m.adjoint_matvec(&yc)?;
                let mut out = vec![T::zero(); m.cols()];
                let slot = T::as_complex_mut(&mut out).ok_or_else(|| {
                    Error::FieldMismatch("complex projector needs complex scalars".into())
                })?;
                slot.copy_from_slice(&xc);
                Ok(out)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stage {
    SignDiag(SignVector),
    Transform(FastTransform),
    Subsample(SupportSet),
    DenseProjector(Projector),
}

impl Stage {
    fn is_terminal(&self) -> bool {
        matches!(self, Stage::Subsample(_) | Stage::DenseProjector(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Construction {
    #[default]
    Theorem1,
    Theorem2,
    GaussianBaseline,
    Custom,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::Theorem1 => "theorem1",
            Construction::Theorem2 => "theorem2",
            Construction::GaussianBaseline => "gaussian-baseline",
            Construction::Custom => "custom",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "theorem1" => Ok(Construction::Theorem1),
            "theorem2" => Ok(Construction::Theorem2),
            "gaussian-baseline" | "gaussian" => Ok(Construction::GaussianBaseline),
            "custom" => Ok(Construction::Custom),
            other => Err(Error::InvalidParameter(format!(
                "unknown construction `{other}`"
            ))),
        }
    }
}

/// A composed linear map `x ↦ scale · S_m ⋯ S_1 x`.
///
/// `stages` are stored in application order: `stages[0]` acts on the input
/// first. Every stage except a terminal `Subsample`/`DenseProjector` maps
/// `n → n`. The global scale is kept out of the stages so that each stage
/// stays exactly unitary (or has orthonormal rows).
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorChain {
    n: usize,
    k: usize,
    scale: f64,
    stages: Vec<Stage>,
    construction: Construction,
    field: Field,
    blocks: Option<usize>,
}

impl OperatorChain {
    pub fn new(
        n: usize,
        stages: Vec<Stage>,
        scale: f64,
        construction: Construction,
        field: Field,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegenerateInput("n must be positive".into()));
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidParameter(format!("scale {scale} must be positive")));
        }
        let mut k = n;
        for (i, stage) in stages.iter().enumerate() {
            if stage.is_terminal() && i + 1 != stages.len() {
                return Err(Error::InvalidParameter(
                    "an n → k stage must be the last stage".into(),
                ));
            }
            match stage {
                Stage::SignDiag(s) if s.len() != n => {
                    return Err(Error::LengthMismatch { expected: n, got: s.len() })
                }
                Stage::Transform(t) => {
                    if t.n() != n {
                        return Err(Error::LengthMismatch { expected: n, got: t.n() });
                    }
                    if field == Field::Real && !t.kind().is_real() {
                        return Err(Error::FieldMismatch(format!(
                            "{} is complex-valued; the chain must be complex",
                            t.kind()
                        )));
                    }
                }
                Stage::Subsample(o) => {
                    if o.n() != n {
                        return Err(Error::LengthMismatch { expected: n, got: o.n() });
                    }
                    k = o.len();
                }
                Stage::DenseProjector(p) => {
                    if p.cols() != n {
                        return Err(Error::LengthMismatch { expected: n, got: p.cols() });
                    }
                    if field == Field::Real && p.field() == Field::Complex {
                        return Err(Error::FieldMismatch(
                            "complex projector in a real chain".into(),
                        ));
                    }
                    k = p.rows();
                }
                _ => {}
            }
        }
        Ok(Self {
            n,
            k,
            scale,
            stages,
            construction,
            field,
            blocks: None,
        })
    }

    pub(crate) fn with_blocks(mut self, blocks: usize) -> Self {
        self.blocks = Some(blocks);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of `D H D′ H` blocks (iterated chains only).
    pub fn block_count(&self) -> Option<usize> {
        self.blocks
    }

    pub fn transform_count(&self) -> usize {
        self.stages
            .iter()
            .filter(|s| matches!(s, Stage::Transform(_)))
            .count()
    }

    /// Reinterprets a real chain over the complex field.
    pub fn into_complex(mut self) -> Self {
        self.field = Field::Complex;
        self
    }

    fn check_field<T: Scalar>(&self) -> Result<()> {
        match (self.field, T::FIELD) {
            (Field::Real, Field::Complex) => Err(Error::FieldMismatch(
                "complex input given to a real pipeline".into(),
            )),
            (Field::Complex, Field::Real) => Err(Error::FieldMismatch(
                "complex pipeline applied to real scalars".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn forward<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>> {
        self.forward_counted(x, &mut NoCount)
    }

    pub fn adjoint<T: Scalar>(&self, y: &[T]) -> Result<Vec<T>> {
        self.adjoint_counted(y, &mut NoCount)
    }

    pub fn forward_counted<T: Scalar, C: OpCounter>(
        &self,
        x: &[T],
        counter: &mut C,
    ) -> Result<Vec<T>> {
        self.check_field::<T>()?;
        if x.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: x.len() });
        }
        let mut buf = x.to_vec();
        for stage in &self.stages {
            match stage {
                Stage::SignDiag(s) => {
                    s.apply(&mut buf);
                    counter.add(self.n as u64);
                }
                Stage::Transform(t) => t.apply_counted(&mut buf, Direction::Forward, counter)?,
                Stage::Subsample(o) => buf = o.indices().iter().map(|&i| buf[i]).collect(),
                Stage::DenseProjector(p) => {
                    buf = p.forward(&buf)?;
                    counter.add((p.rows() * p.cols()) as u64);
                }
            }
        }
        for v in &mut buf {
            *v = *v * self.scale;
        }
        counter.add(self.k as u64);
        Ok(buf)
    }

    pub fn adjoint_counted<T: Scalar, C: OpCounter>(
        &self,
        y: &[T],
        counter: &mut C,
    ) -> Result<Vec<T>> {
        self.check_field::<T>()?;
        if y.len() != self.k {
            return Err(Error::LengthMismatch { expected: self.k, got: y.len() });
        }
        let mut buf: Vec<T> = y.iter().map(|&v| v * self.scale).collect();
        counter.add(self.k as u64);
        for stage in self.stages.iter().rev() {
            match stage {
                Stage::SignDiag(s) => {
                    s.apply(&mut buf);
                    counter.add(self.n as u64);
                }
                Stage::Transform(t) => t.apply_counted(&mut buf, Direction::Adjoint, counter)?,
                Stage::Subsample(o) => {
                    let mut full = vec![T::zero(); self.n];
                    for (&i, &v) in o.indices().iter().zip(&buf) {
                        full[i] = v;
                    }
                    buf = full;
                }
                Stage::DenseProjector(p) => {
                    buf = p.adjoint(&buf)?;
                    counter.add((p.rows() * p.cols()) as u64);
                }
            }
        }
        Ok(buf)
    }

    /// `A x` or `A* x` on an untyped vector. Real input to a complex chain
    /// is promoted; complex input to a real chain is a `FieldMismatch`.
    pub fn apply(&self, x: &DenseVector, dir: Direction) -> Result<DenseVector> {
        match (self.field, x) {
            (Field::Real, DenseVector::Real(v)) => Ok(DenseVector::Real(match dir {
                Direction::Forward => self.forward(v)?,
                Direction::Adjoint => self.adjoint(v)?,
            })),
            (Field::Real, DenseVector::Complex(_)) => Err(Error::FieldMismatch(
                "complex input given to a real pipeline".into(),
            )),
            (Field::Complex, _) => {
                let v = x.to_complex();
                Ok(DenseVector::Complex(match dir {
                    Direction::Forward => self.forward(&v)?,
                    Direction::Adjoint => self.adjoint(&v)?,
                }))
            }
        }
    }

    /// `A e_j`.
    pub fn column<T: Scalar>(&self, j: usize) -> Result<Vec<T>> {
        if j >= self.n {
            return Err(Error::InvalidParameter(format!("column {j} out of range")));
        }
        let mut e = vec![T::zero(); self.n];
        e[j] = T::from_real(1.0);
        self.forward(&e)
    }

    /// Dense `k × n` matrix with column `j` equal to `A e_j`.
    pub fn materialize<T: Scalar>(&self) -> Result<DenseMatrix<T>> {
        if self.n > MATERIALIZE_CAP {
            return Err(Error::SizeGuard { size: self.n, cap: MATERIALIZE_CAP });
        }
        let columns = crate::par::map_indices(self.n, |j| self.column::<T>(j))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        DenseMatrix::from_columns(self.k, &columns)
    }
}

/// Forward or adjoint application, the free-function form.
pub fn apply_chain(chain: &OperatorChain, x: &DenseVector, dir: Direction) -> Result<DenseVector> {
    chain.apply(x, dir)
}

pub fn materialize_chain<T: Scalar>(chain: &OperatorChain) -> Result<DenseMatrix<T>> {
    chain.materialize()
}

pub(crate) fn transform_stage(spec: FastTransformSpec) -> Result<Stage> {
    Ok(Stage::Transform(FastTransform::new(spec)?))
}

#[cfg(test)]
mod tests;
