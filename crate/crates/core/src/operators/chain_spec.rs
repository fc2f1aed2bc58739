//! Text description of an operator that rebuilds it bit for bit.
//!
//! ```text
//! construction = theorem2
//! n = 1024
//! k = 32
//! s = 2
//! seed = 42
//! omega = first-k
//! transform = wht
//! field = real
//! C_kappa = 1
//! kappa = 0.25
//! s_min = 1
//! ```
//!
//! `omega` is `first-k`, `random`, a range `a..b`, or a comma-separated
//! index list. `kappa` is optional and overrides the computed contraction
//! factor.

use std::fmt::Write as _;

use super::builders::{build_gaussian_baseline, build_theorem1, build_theorem2, plan_theorem2};
use super::{
    Construction, OperatorChain, PlanOptions, RegimePolicy, SupportSet, TheoremTwoBase,
    TheoremTwoPlan,
};
use crate::error::{Error, Result};
use crate::kv;
use crate::rng::{derive_seed, Role};
use crate::scalar::Field;
use crate::transforms::{FastTransformSpec, TransformKind};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum OmegaPolicy {
    #[default]
    FirstK,
    Random,
    Range(usize, usize),
    Explicit(Vec<usize>),
}

impl OmegaPolicy {
    pub fn resolve(&self, k: usize, n: usize, seed: u64) -> Result<SupportSet> {
        let omega = match self {
            OmegaPolicy::FirstK => SupportSet::first_k(k, n)?,
            OmegaPolicy::Random => SupportSet::random(k, n, derive_seed(seed, 0, Role::Omega))?,
            OmegaPolicy::Range(a, b) => SupportSet::range(*a, *b, n)?,
            OmegaPolicy::Explicit(list) => SupportSet::new(list.clone(), n)?,
        };
        if omega.len() != k {
            return Err(Error::BadSupport(format!("|Ω| = {} but k = {k}", omega.len())));
        }
        Ok(omega)
    }

    pub fn emit(&self) -> String {
        match self {
            OmegaPolicy::FirstK => "first-k".into(),
            OmegaPolicy::Random => "random".into(),
            OmegaPolicy::Range(a, b) => format!("{a}..{b}"),
            OmegaPolicy::Explicit(list) => list
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(","),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("invalid omega `{s}`"));
        match s {
            "first-k" => Ok(OmegaPolicy::FirstK),
            "random" => Ok(OmegaPolicy::Random),
            _ => {
                if let Some((a, b)) = s.split_once("..") {
                    let a = a.trim().parse().map_err(|_| bad())?;
                    let b = b.trim().parse().map_err(|_| bad())?;
                    Ok(OmegaPolicy::Range(a, b))
                } else {
                    let list = s
                        .trim_start_matches('[')
                        .trim_end_matches(']')
                        .split(',')
                        .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(OmegaPolicy::Explicit(list))
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    pub construction: Construction,
    pub n: usize,
    pub k: usize,
    /// Sparsity the construction is planned for (enters the iterated construction's `κ`).
    pub s: usize,
    pub seed: u64,
    pub omega: OmegaPolicy,
    pub transform: TransformKind,
    pub field: Field,
    pub c_kappa: f64,
    pub kappa_override: Option<f64>,
    pub s_min: usize,
}

impl Default for ChainSpec {
    fn default() -> Self {
        Self {
            construction: Construction::Theorem1,
            n: 16,
            k: 4,
            s: 1,
            seed: 0,
            omega: OmegaPolicy::FirstK,
            transform: TransformKind::WalshHadamard,
            field: Field::Real,
            c_kappa: 1.0,
            kappa_override: None,
            s_min: 1,
        }
    }
}

impl ChainSpec {
    pub fn transform_spec(&self) -> Result<FastTransformSpec> {
        FastTransformSpec::new(self.transform, self.n)
    }

    pub fn effective_field(&self) -> Field {
        if self.transform == TransformKind::Dft {
            Field::Complex
        } else {
            self.field
        }
    }

    pub fn plan_options(&self) -> PlanOptions {
        PlanOptions {
            kappa_override: self.kappa_override,
            s_min: self.s_min,
            regime: RegimePolicy::Advisory,
        }
    }

    /// The iterated-construction plan (advisory regime checks), if that is the
    /// construction.
    pub fn plan(&self) -> Result<Option<TheoremTwoPlan>> {
        if self.construction != Construction::Theorem2 {
            return Ok(None);
        }
        plan_theorem2(
            self.n,
            self.k,
            self.s,
            self.c_kappa,
            self.transform_spec()?,
            self.seed,
            &self.plan_options(),
        )
        .map(Some)
    }

    pub fn build(&self) -> Result<OperatorChain> {
        let chain = match self.construction {
            Construction::Theorem1 => {
                let omega = self.omega.resolve(self.k, self.n, self.seed)?;
                build_theorem1(
                    self.n,
                    self.k,
                    &omega,
                    derive_seed(self.seed, 0, Role::Eps),
                    derive_seed(self.seed, 0, Role::EpsPrime),
                    self.transform_spec()?,
                )?
            }
            Construction::Theorem2 => {
                let plan = self.plan()?.expect("theorem2 always has a plan");
                let omega = self.omega.resolve(self.k, self.n, self.seed)?;
                build_theorem2(&plan, &TheoremTwoBase::Subsample(omega), self.transform_spec()?)?
            }
            Construction::GaussianBaseline => build_gaussian_baseline(self.n, self.k, self.seed)?,
            Construction::Custom => {
                return Err(Error::InvalidParameter(
                    "custom chains cannot be built from a spec".into(),
                ))
            }
        };
        Ok(match self.effective_field() {
            Field::Complex => chain.into_complex(),
            Field::Real => chain,
        })
    }

    /// Same operator family with a different seed but the same `Ω`.
    pub fn reseeded(&self, seed: u64) -> Result<Self> {
        let mut out = self.clone();
        if self.construction != Construction::GaussianBaseline {
            let omega = self.omega.resolve(self.k, self.n, self.seed)?;
            out.omega = OmegaPolicy::Explicit(omega.indices().to_vec());
        }
        out.seed = seed;
        Ok(out)
    }

    pub fn emit(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "construction = {}", self.construction);
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "k = {}", self.k);
        let _ = writeln!(s, "s = {}", self.s);
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "omega = {}", self.omega.emit());
        let _ = writeln!(s, "transform = {}", self.transform);
        let _ = writeln!(s, "field = {}", self.field.name());
        let _ = writeln!(s, "C_kappa = {:?}", self.c_kappa);
        if let Some(kappa) = self.kappa_override {
            let _ = writeln!(s, "kappa = {kappa:?}");
        }
        let _ = writeln!(s, "s_min = {}", self.s_min);
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = ChainSpec::default();
        for e in kv::parse(text)? {
            spec.set(&e)?;
        }
        Ok(spec)
    }

    pub(crate) fn set(&mut self, e: &kv::Entry) -> Result<()> {
        match e.key.as_str() {
            "construction" => self.construction = kv::at_line(e, e.value.parse())?,
            "n" => self.n = kv::value(e)?,
            "k" => self.k = kv::value(e)?,
            "s" => self.s = kv::value(e)?,
            "seed" | "master_seed" => self.seed = kv::value(e)?,
            "omega" => self.omega = kv::at_line(e, OmegaPolicy::parse(&e.value))?,
            "transform" => self.transform = kv::at_line(e, e.value.parse())?,
            "field" => {
                self.field = match e.value.as_str() {
                    "real" => Field::Real,
                    "complex" => Field::Complex,
                    _ => {
                        return Err(Error::ConfigParse {
                            line: e.line,
                            msg: format!("field must be real or complex, got `{}`", e.value),
                        })
                    }
                }
            }
            "C_kappa" => self.c_kappa = kv::value(e)?,
            "kappa" | "kappa_override" => self.kappa_override = Some(kv::value(e)?),
            "s_min" => self.s_min = kv::value(e)?,
            other => {
                return Err(Error::ConfigParse {
                    line: e.line,
                    msg: format!("unknown key `{other}`"),
                })
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_forms_round_trip() {
        for text in ["first-k", "random", "3..7", "1,5,9"] {
            assert_eq!(OmegaPolicy::parse(text).unwrap().emit(), text);
        }
        assert_eq!(
            OmegaPolicy::parse("[2, 4]").unwrap(),
            OmegaPolicy::Explicit(vec![2, 4])
        );
        assert!(OmegaPolicy::parse("a..b").is_err());
    }

    #[test]
    fn unknown_key_is_rejected() {
        let err = ChainSpec::parse("n = 16\nk = 4\ntransfrom = wht\n").unwrap_err();
        assert!(matches!(err, Error::ConfigParse { line: 3, .. }), "{err}");
    }

    #[test]
    fn spec_round_trips_to_identical_operator() {
        let spec = ChainSpec {
            construction: Construction::Theorem2,
            n: 64,
            k: 8,
            s: 1,
            seed: 99,
            omega: OmegaPolicy::Random,
            kappa_override: Some(0.3),
            c_kappa: 0.75,
            ..ChainSpec::default()
        };
        let text = spec.emit();
        let back = ChainSpec::parse(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.emit(), text);
        let a = spec.build().unwrap().materialize::<f64>().unwrap();
        let b = back.build().unwrap().materialize::<f64>().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reseeding_keeps_random_omega() {
        let spec = ChainSpec {
            n: 32,
            k: 8,
            seed: 5,
            omega: OmegaPolicy::Random,
            ..ChainSpec::default()
        };
        let original = spec.omega.resolve(8, 32, 5).unwrap();
        let re = spec.reseeded(6).unwrap();
        assert_eq!(re.omega.resolve(8, 32, 6).unwrap(), original);
        assert_eq!(re.seed, 6);
    }
}
