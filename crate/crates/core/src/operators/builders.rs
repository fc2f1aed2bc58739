use rand::Rng;
use rand_distr::StandardNormal;

use super::{
    transform_stage, Construction, OperatorChain, Projector, SignVector, Stage, SupportSet,
};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::rng::{derive_seed, Role, SplitMix64};
use crate::scalar::Field;
use crate::transforms::{FastTransformSpec, TransformKind};

/// `κ` must stay strictly below this value.
pub const KAPPA_LIMIT: f64 = 0.5;

/// Tolerance on `max |A A* - (n/k) I|` for a user-supplied base.
const BASE_TOLERANCE: f64 = 1e-8;

fn field_for(kind: TransformKind) -> Field {
    if kind.is_real() {
        Field::Real
    } else {
        Field::Complex
    }
}

/// `√(n/k) · R_Ω H D_ε H D_ε′ H` with explicit sign vectors.
pub fn build_theorem1_with_signs(
    omega: &SupportSet,
    eps: SignVector,
    eps_prime: SignVector,
    h: FastTransformSpec,
) -> Result<OperatorChain> {
    let n = h.n;
    if omega.n() != n {
        return Err(Error::BadSupport(format!(
            "support lives in dimension {}, transform in {n}",
            omega.n()
        )));
    }
    let k = omega.len();
    if k == 0 {
        return Err(Error::BadSupport("Ω is empty".into()));
    }
    let stages = vec![
        transform_stage(h)?,
        Stage::SignDiag(eps_prime),
        transform_stage(h)?,
        Stage::SignDiag(eps),
        transform_stage(h)?,
        Stage::Subsample(omega.clone()),
    ];
    let scale = (n as f64 / k as f64).sqrt();
    OperatorChain::new(n, stages, scale, Construction::Theorem1, field_for(h.kind))
}

/// Single-block chain with sign vectors drawn from the two seeds.
pub fn build_theorem1(
    n: usize,
    k: usize,
    omega: &SupportSet,
    seed_eps: u64,
    seed_eps_prime: u64,
    h: FastTransformSpec,
) -> Result<OperatorChain> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    if h.n != n {
        return Err(Error::LengthMismatch { expected: n, got: h.n });
    }
    if omega.len() != k {
        return Err(Error::BadSupport(format!("|Ω| = {} but k = {k}", omega.len())));
    }
    build_theorem1_with_signs(
        omega,
        SignVector::draw(seed_eps, n),
        SignVector::draw(seed_eps_prime, n),
        h,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RegimePolicy {
    /// Out-of-regime parameters are errors.
    #[default]
    Strict,
    /// Out-of-regime parameters are recorded as warnings.
    Advisory,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanOptions {
    /// Use this `κ` instead of `C_κ · K · √(s k ln n / n)`.
    pub kappa_override: Option<f64>,
    /// Smallest admissible sparsity.
    pub s_min: usize,
    pub regime: RegimePolicy,
}

impl Default for PlanOptions {
    fn default() -> Self {
        Self {
            kappa_override: None,
            s_min: 1,
            regime: RegimePolicy::Strict,
        }
    }
}

/// Parameters of the iterated construction `A · Π_{i=1}^{r+1} D_i H D′_i H`.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremTwoPlan {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub c_kappa: f64,
    pub entry_bound: f64,
    pub kappa: f64,
    pub r: usize,
    pub master_seed: u64,
    /// `(ε_i, ε′_i)` seeds for blocks `i = 1, …, r+1`, in that order.
    pub seeds: Vec<(u64, u64)>,
    pub warnings: Vec<String>,
}

impl TheoremTwoPlan {
    pub fn block_count(&self) -> usize {
        self.r + 1
    }
}

/// `κ = C_κ K √(s k ln n / n)`.
pub fn contraction_kappa(n: usize, k: usize, s: usize, c_kappa: f64, entry_bound: f64) -> f64 {
    let (n, k, s) = (n as f64, k as f64, s as f64);
    c_kappa * entry_bound * (s * k * n.ln() / n).sqrt()
}

/// `r = ⌈ -ln(2√(n/k)) / ln κ ⌉`, at least 1.
pub fn bootstrap_rounds(n: usize, k: usize, kappa: f64) -> usize {
    let ratio = -(2.0 * (n as f64 / k as f64).sqrt()).ln() / kappa.ln();
    (ratio.ceil() as usize).max(1)
}

pub fn plan_theorem2(
    n: usize,
    k: usize,
    s: usize,
    c_kappa: f64,
    h: FastTransformSpec,
    master_seed: u64,
    opts: &PlanOptions,
) -> Result<TheoremTwoPlan> {
    if h.n != n {
        return Err(Error::LengthMismatch { expected: n, got: h.n });
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    if s == 0 {
        return Err(Error::InvalidParameter("sparsity must be positive".into()));
    }
    if !(c_kappa > 0.0) {
        return Err(Error::InvalidParameter(format!("C_kappa = {c_kappa} must be positive")));
    }
    let entry_bound = h.entry_bound();
    let kappa = opts
        .kappa_override
        .unwrap_or_else(|| contraction_kappa(n, k, s, c_kappa, entry_bound));
    if !(kappa < KAPPA_LIMIT) {
        return Err(Error::KappaTooLarge { kappa });
    }
    if !(kappa > 0.0) {
        return Err(Error::InvalidParameter(format!("kappa = {kappa} must be positive")));
    }

    let mut violations = Vec::new();
    let s_log_n = s as f64 * (n as f64).ln();
    if s_log_n > k as f64 {
        violations.push(format!("s ln n = {s_log_n:.3} exceeds k = {k}"));
    }
    if (k as f64) > (n as f64).sqrt() {
        violations.push(format!("k = {k} exceeds √n = {:.3}", (n as f64).sqrt()));
    }
    if s < opts.s_min {
        violations.push(format!("s = {s} is below s_min = {}", opts.s_min));
    }
    if !violations.is_empty() && opts.regime == RegimePolicy::Strict {
        return Err(Error::RegimeViolation(violations.join("; ")));
    }

    let r = bootstrap_rounds(n, k, kappa);
    let seeds = (0..=r as u64)
        .map(|b| {
            (
                derive_seed(master_seed, b, Role::Eps),
                derive_seed(master_seed, b, Role::EpsPrime),
            )
        })
        .collect();
    Ok(TheoremTwoPlan {
        n,
        k,
        s,
        c_kappa,
        entry_bound,
        kappa,
        r,
        master_seed,
        seeds,
        warnings: violations,
    })
}

/// The `k × n` base matrix `A` with `A A* = (n/k) Id`.
#[derive(Debug, Clone, PartialEq)]
pub enum TheoremTwoBase {
    /// `√(n/k) R_Ω H`.
    Subsample(SupportSet),
    /// Any matrix satisfying the row condition.
    Dense(Projector),
}

pub fn build_theorem2(
    plan: &TheoremTwoPlan,
    base: &TheoremTwoBase,
    h: FastTransformSpec,
) -> Result<OperatorChain> {
    let n = plan.n;
    if h.n != n {
        return Err(Error::LengthMismatch { expected: n, got: h.n });
    }
    let mut field = field_for(h.kind);
    let mut stages = Vec::with_capacity(4 * plan.block_count() + 2);
    // Rightmost block first: H, D′_{r+1}, H, D_{r+1}, …, H, D′_1, H, D_1.
    for &(eps, eps_prime) in plan.seeds.iter().rev() {
        stages.push(transform_stage(h)?);
        stages.push(Stage::SignDiag(SignVector::draw(eps_prime, n)));
        stages.push(transform_stage(h)?);
        stages.push(Stage::SignDiag(SignVector::draw(eps, n)));
    }
    let k = match base {
        TheoremTwoBase::Subsample(omega) => {
            if omega.n() != n {
                return Err(Error::BadSupport(format!(
                    "support lives in dimension {}, plan in {n}",
                    omega.n()
                )));
            }
            if omega.len() != plan.k {
                return Err(Error::BadSupport(format!(
                    "|Ω| = {} but k = {}",
                    omega.len(),
                    plan.k
                )));
            }
            stages.push(transform_stage(h)?);
            stages.push(Stage::Subsample(omega.clone()));
            plan.k
        }
        TheoremTwoBase::Dense(p) => {
            if p.cols() != n || p.rows() != plan.k {
                return Err(Error::InvalidParameter(format!(
                    "base is {}×{}, expected {}×{n}",
                    p.rows(),
                    p.cols(),
                    plan.k
                )));
            }
            let target = n as f64 / plan.k as f64;
            let deviation = p.row_gram_deviation(target);
            if !(deviation <= BASE_TOLERANCE) {
                return Err(Error::BaseNotScaledOrthonormal { deviation });
            }
            if p.field() == Field::Complex {
                field = Field::Complex;
            }
            stages.push(Stage::DenseProjector(p.scaled(target.sqrt().recip())));
            plan.k
        }
    };
    let scale = (n as f64 / k as f64).sqrt();
    Ok(
        OperatorChain::new(n, stages, scale, Construction::Theorem2, field)?
            .with_blocks(plan.block_count()),
    )
}

/// Dense `k × n` matrix with i.i.d. `N(0, 1/k)` entries, row-major from
/// `SplitMix64(derive_seed(seed, 0, Gaussian))`.
pub fn build_gaussian_baseline(n: usize, k: usize, seed: u64) -> Result<OperatorChain> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let mut rng = SplitMix64::stream(seed, 0, Role::Gaussian);
    let sd = (1.0 / k as f64).sqrt();
    let data = (0..n * k)
        .map(|_| sd * rng.sample::<f64, _>(StandardNormal))
        .collect();
    let m = DenseMatrix::from_row_major(k, n, data)?;
    OperatorChain::new(
        n,
        vec![Stage::DenseProjector(Projector::Real(m))],
        1.0,
        Construction::GaussianBaseline,
        Field::Real,
    )
}
