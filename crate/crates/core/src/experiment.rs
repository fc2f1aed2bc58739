//! Config-driven experiments producing CSV and a short text summary.
//!
//! A config is flat `key = value` text. Chain keys are those of
//! [`ChainSpec`]; the rest are listed on [`ExperimentConfig`]. Unknown keys
//! are rejected. Every CSV starts with one `#` line holding the normalized
//! config, which [`ExperimentConfig::from_header`] reads back.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use crate::bench::{scaling_sweep, SweepOptions};
use crate::error::{Error, Result};
use crate::kv;
use crate::operators::{ChainSpec, Construction, OperatorChain};
use crate::recovery::{iht_recover, omp_recover, sparse_signal, RecoveryResult};
use crate::rip::{
    binomial, chaos_statistics, exact_rip_for_chain, monte_carlo_rip, RipEstimate, MAX_SUPPORTS,
};
use crate::rng::{derive_seed, Role, SplitMix64};
use crate::sampling::dense_unit;
use crate::scalar::{DenseVector, Field};
use crate::transforms::{Direction, MATERIALIZE_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Build,
    Rip,
    Chaos,
    Recover,
    Bench,
}

impl Subcommand {
    pub const ALL: [Subcommand; 5] = [
        Subcommand::Build,
        Subcommand::Rip,
        Subcommand::Chaos,
        Subcommand::Recover,
        Subcommand::Bench,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Build => "build",
            Subcommand::Rip => "rip",
            Subcommand::Chaos => "chaos",
            Subcommand::Recover => "recover",
            Subcommand::Bench => "bench",
        }
    }
}

impl FromStr for Subcommand {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown subcommand `{s}`")))
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RipChoice {
    /// Exact when the support count allows it, otherwise Monte-Carlo.
    #[default]
    Auto,
    Exact,
    MonteCarlo,
}

impl RipChoice {
    fn name(self) -> &'static str {
        match self {
            RipChoice::Auto => "auto",
            RipChoice::Exact => "exact",
            RipChoice::MonteCarlo => "monte-carlo",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(RipChoice::Auto),
            "exact" => Ok(RipChoice::Exact),
            "monte-carlo" | "mc" => Ok(RipChoice::MonteCarlo),
            _ => Err(Error::InvalidParameter(format!("unknown method `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithms {
    #[default]
    Both,
    Iht,
    Omp,
}

impl Algorithms {
    fn name(self) -> &'static str {
        match self {
            Algorithms::Both => "both",
            Algorithms::Iht => "iht",
            Algorithms::Omp => "omp",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "both" => Ok(Algorithms::Both),
            "iht" => Ok(Algorithms::Iht),
            "omp" => Ok(Algorithms::Omp),
            _ => Err(Error::InvalidParameter(format!("unknown algorithm `{s}`"))),
        }
    }
}

/// Test vector for `chaos`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    Basis(usize),
    /// Uniform on the sphere, from stream `(seed, 0, Signal)`.
    Random,
}

impl Default for Probe {
    fn default() -> Self {
        Probe::Basis(0)
    }
}

impl Probe {
    fn emit(self) -> String {
        match self {
            Probe::Basis(j) => format!("e{j}"),
            Probe::Random => "random".into(),
        }
    }

    fn parse(s: &str) -> Result<Self> {
        if s == "random" {
            return Ok(Probe::Random);
        }
        s.strip_prefix('e')
            .and_then(|j| j.parse().ok())
            .map(Probe::Basis)
            .ok_or_else(|| Error::InvalidParameter(format!("probe must be e<j> or random, got `{s}`")))
    }

    pub fn vector(self, field: Field, n: usize, seed: u64) -> Result<DenseVector> {
        match self {
            Probe::Basis(j) if j < n => Ok(DenseVector::basis(n, j)),
            Probe::Basis(j) => Err(Error::InvalidParameter(format!("probe e{j} outside dimension {n}"))),
            Probe::Random => {
                let mut rng = SplitMix64::stream(seed, 0, Role::Signal);
                Ok(match field {
                    Field::Real => DenseVector::Real(dense_unit(&mut rng, n)),
                    Field::Complex => DenseVector::Complex(dense_unit(&mut rng, n)),
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub chain: ChainSpec,
    /// Monte-Carlo trials (`rip`) or sign redraws (`chaos`).
    pub trials: u64,
    pub method: RipChoice,
    pub probe: Probe,
    /// Recovery problems per algorithm.
    pub instances: u64,
    pub algorithm: Algorithms,
    pub max_iters: usize,
    pub step: f64,
    /// IHT stops once `‖y - A x‖ ≤ tol · ‖y‖`.
    pub tol: f64,
    /// Relative error counted as a successful recovery.
    pub success_tol: f64,
    pub n_list: Vec<usize>,
    pub repeats: usize,
    /// Include wall-clock columns. Off by default so CSVs are reproducible.
    pub timing: bool,
    pub out: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            chain: ChainSpec::default(),
            trials: 1000,
            method: RipChoice::Auto,
            probe: Probe::default(),
            instances: 100,
            algorithm: Algorithms::Both,
            max_iters: 200,
            step: 1.0,
            tol: 1e-10,
            success_tol: crate::recovery::SUCCESS_TOLERANCE,
            n_list: vec![256, 512, 1024, 2048, 4096],
            repeats: 5,
            timing: false,
            out: None,
        }
    }
}

fn bool_value(e: &kv::Entry) -> Result<bool> {
    match e.value.as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::ConfigParse {
            line: e.line,
            msg: format!("`{}` must be true or false", e.key),
        }),
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for e in kv::parse(text)? {
            match e.key.as_str() {
                "trials" => cfg.trials = kv::value(&e)?,
                "method" => cfg.method = kv::at_line(&e, RipChoice::parse(&e.value))?,
                "probe" => cfg.probe = kv::at_line(&e, Probe::parse(&e.value))?,
                "instances" => cfg.instances = kv::value(&e)?,
                "algorithm" => cfg.algorithm = kv::at_line(&e, Algorithms::parse(&e.value))?,
                "max_iters" => cfg.max_iters = kv::value(&e)?,
                "step" => cfg.step = kv::value(&e)?,
                "tol" => cfg.tol = kv::value(&e)?,
                "success_tol" => cfg.success_tol = kv::value(&e)?,
                "n_list" => {
                    cfg.n_list = e
                        .value
                        .split(',')
                        .map(|t| {
                            t.trim().parse().map_err(|_| Error::ConfigParse {
                                line: e.line,
                                msg: format!("invalid n_list entry `{}`", t.trim()),
                            })
                        })
                        .collect::<Result<_>>()?
                }
                "repeats" => cfg.repeats = kv::value(&e)?,
                "timing" => cfg.timing = bool_value(&e)?,
                "out" | "output" => cfg.out = Some(e.value.clone()),
                _ => cfg.chain.set(&e)?,
            }
        }
        Ok(cfg)
    }

    /// Every key in canonical order, defaults included.
    pub fn emit(&self) -> String {
        let mut s = self.chain.emit();
        let _ = writeln!(s, "trials = {}", self.trials);
        let _ = writeln!(s, "method = {}", self.method.name());
        let _ = writeln!(s, "probe = {}", self.probe.emit());
        let _ = writeln!(s, "instances = {}", self.instances);
        let _ = writeln!(s, "algorithm = {}", self.algorithm.name());
        let _ = writeln!(s, "max_iters = {}", self.max_iters);
        let _ = writeln!(s, "step = {:?}", self.step);
        let _ = writeln!(s, "tol = {:?}", self.tol);
        let _ = writeln!(s, "success_tol = {:?}", self.success_tol);
        let list: Vec<String> = self.n_list.iter().map(|n| n.to_string()).collect();
        let _ = writeln!(s, "n_list = {}", list.join(","));
        let _ = writeln!(s, "repeats = {}", self.repeats);
        let _ = writeln!(s, "timing = {}", self.timing);
        if let Some(out) = &self.out {
            let _ = writeln!(s, "out = {out}");
        }
        s
    }

    /// The normalized config on one `#` line, `;`-separated. The output
    /// path is left out so the file content does not depend on it.
    pub fn header(&self, cmd: Subcommand) -> String {
        let text = ExperimentConfig { out: None, ..self.clone() }.emit();
        let body: Vec<&str> = text.lines().collect();
        format!("# fastrip {cmd}: {}", body.join("; "))
    }

    /// Reads the config back from a CSV header line.
    pub fn from_header(line: &str) -> Result<(Subcommand, Self)> {
        let bad = || Error::ConfigParse { line: 1, msg: "not a fastrip header".into() };
        let rest = line.strip_prefix("# fastrip ").ok_or_else(bad)?;
        let (cmd, body) = rest.split_once(": ").ok_or_else(bad)?;
        let text = body.replace("; ", "\n");
        Ok((cmd.parse()?, Self::parse(&text)?))
    }

    /// Theorem preconditions that do not hold, as human-readable warnings.
    pub fn regime_warnings(&self) -> Result<Vec<String>> {
        let c = &self.chain;
        let (n, k, s) = (c.n as f64, c.k as f64, c.s as f64);
        Ok(match c.construction {
            Construction::Theorem1 => {
                let mut w = Vec::new();
                if k > (n / s).sqrt() {
                    w.push(format!("k = {} exceeds √(n/s) = {:.3}", c.k, (n / s).sqrt()));
                }
                let entry = c.transform_spec()?.entry_bound();
                if k < entry * s * n.ln() {
                    w.push(format!(
                        "k = {} is below K s ln n = {:.3}",
                        c.k,
                        entry * s * n.ln()
                    ));
                }
                w
            }
            Construction::Theorem2 => c.plan()?.map(|p| p.warnings).unwrap_or_default(),
            _ => Vec::new(),
        })
    }
}

/// Exit status for a failed run: 3 for numerical failures, 2 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NoConvergence { .. }
        | Error::SingularSubproblem
        | Error::BudgetExhaustedBeforeAnyPoint => 3,
        _ => 2,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    /// Header line, column names and rows.
    pub csv: String,
    pub summary: String,
    pub warnings: Vec<String>,
}

fn fmt_opt<T: fmt::Display>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

struct Table {
    text: String,
}

impl Table {
    fn new(header: String, columns: &[&str]) -> Self {
        let mut text = header;
        text.push('\n');
        text.push_str(&columns.join(","));
        text.push('\n');
        Self { text }
    }

    fn row(&mut self, fields: &[String]) {
        self.text.push_str(&fields.join(","));
        self.text.push('\n');
    }
}

pub fn run(cfg: &ExperimentConfig, cmd: Subcommand) -> Result<RunOutput> {
    let warnings = cfg.regime_warnings()?;
    let header = cfg.header(cmd);
    let (csv, summary) = match cmd {
        Subcommand::Build => run_build(cfg, header)?,
        Subcommand::Rip => run_rip(cfg, header)?,
        Subcommand::Chaos => run_chaos(cfg, header)?,
        Subcommand::Recover => run_recover(cfg, header)?,
        Subcommand::Bench => run_bench(cfg, header)?,
    };
    Ok(RunOutput { csv, summary, warnings })
}

fn run_build(cfg: &ExperimentConfig, header: String) -> Result<(String, String)> {
    let c = &cfg.chain;
    let plan = c.plan()?;
    let chain = c.build()?;
    let ops = crate::bench::count_operations(&chain)?;
    let mut t = Table::new(
        header,
        &["construction", "n", "k", "s", "field", "r", "kappa", "transforms", "ops"],
    );
    t.row(&[
        c.construction.to_string(),
        c.n.to_string(),
        c.k.to_string(),
        c.s.to_string(),
        chain.field().name().into(),
        fmt_opt(plan.as_ref().map(|p| p.r)),
        fmt_opt(plan.as_ref().map(|p| p.kappa)),
        chain.transform_count().to_string(),
        ops.to_string(),
    ]);
    let mut summary = format!(
        "{} chain: {}×{} over {}, scale {:.6}, {} transforms, {} multiply-adds per forward application\n",
        c.construction,
        chain.k(),
        chain.n(),
        chain.field().name(),
        chain.scale(),
        chain.transform_count(),
        ops
    );
    if let Some(p) = plan {
        let _ = writeln!(summary, "kappa = {:.6}, r = {}, blocks = {}", p.kappa, p.r, p.block_count());
    }
    summary.push_str("\nchain spec:\n");
    summary.push_str(&c.emit());
    Ok((t.text, summary))
}

fn estimate_rip(cfg: &ExperimentConfig, chain: &OperatorChain) -> Result<RipEstimate> {
    let c = &cfg.chain;
    let exact_ok = binomial(c.n, c.s) <= MAX_SUPPORTS && c.n <= MATERIALIZE_CAP;
    match cfg.method {
        RipChoice::Exact => exact_rip_for_chain(chain, c.s),
        RipChoice::Auto if exact_ok => exact_rip_for_chain(chain, c.s),
        _ => monte_carlo_rip(chain, c.s, cfg.trials, derive_seed(c.seed, 0, Role::Trial)),
    }
}

fn run_rip(cfg: &ExperimentConfig, header: String) -> Result<(String, String)> {
    let c = &cfg.chain;
    let chain = c.build()?;
    let start = Instant::now();
    let est = estimate_rip(cfg, &chain)?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let mut t = Table::new(
        header,
        &["construction", "n", "k", "s", "method", "delta", "trials", "seed", "wall_time_ms"],
    );
    t.row(&[
        c.construction.to_string(),
        c.n.to_string(),
        c.k.to_string(),
        c.s.to_string(),
        est.method.to_string(),
        est.delta.to_string(),
        fmt_opt(est.trials),
        c.seed.to_string(),
        if cfg.timing { format!("{elapsed:.3}") } else { String::new() },
    ]);
    let mut summary = format!(
        "delta_{} = {:.6} ({}), squared-norm delta = {:.6}\n",
        est.s, est.delta, est.method, est.delta_squared
    );
    if let Some(w) = &est.witness_support {
        let _ = writeln!(summary, "witness support: {:?}", w.indices());
    }
    Ok((t.text, summary))
}

fn run_chaos(cfg: &ExperimentConfig, header: String) -> Result<(String, String)> {
    let c = &cfg.chain;
    let x = cfg.probe.vector(c.effective_field(), c.n, c.seed)?;
    let stats = chaos_statistics(c, &x, cfg.trials, derive_seed(c.seed, 1, Role::Trial))?;
    let q = |l: f64| stats.quantile(l).map(|v| v.to_string()).unwrap_or_default();
    let mut t = Table::new(
        header,
        &[
            "construction", "n", "k", "trials", "seed", "mean_alpha_sq", "variance", "median",
            "q90", "q99", "q999",
        ],
    );
    t.row(&[
        c.construction.to_string(),
        c.n.to_string(),
        c.k.to_string(),
        stats.trials.to_string(),
        c.seed.to_string(),
        stats.mean_alpha_sq.to_string(),
        stats.variance.to_string(),
        stats.median_alpha.to_string(),
        q(0.9),
        q(0.99),
        q(0.999),
    ]);
    let summary = format!(
        "alpha(x) over {} sign draws: mean alpha^2 = {:.6}, variance = {:.8}, median = {:.6}, q99 = {}\n",
        stats.trials,
        stats.mean_alpha_sq,
        stats.variance,
        stats.median_alpha,
        q(0.99)
    );
    Ok((t.text, summary))
}

struct Instance {
    seed: u64,
    iht: Option<Result<RecoveryResult>>,
    omp: Option<Result<RecoveryResult>>,
}

fn run_recover(cfg: &ExperimentConfig, header: String) -> Result<(String, String)> {
    let c = &cfg.chain;
    let field = c.effective_field();
    let template = c.reseeded(c.seed)?;
    let instances = crate::par::map_indices(cfg.instances as usize, |i| -> Result<Instance> {
        let seed = derive_seed(c.seed, i as u64, Role::Operator);
        let chain = ChainSpec { seed, ..template.clone() }.build()?;
        let x = sparse_signal(field, c.n, c.s, c.seed, i as u64);
        let y = chain.apply(&x, Direction::Forward)?;
        let tol = cfg.tol * y.norm();
        let eval = |r: Result<RecoveryResult>| r.and_then(|r| r.evaluate(&x));
        Ok(Instance {
            seed,
            iht: (cfg.algorithm != Algorithms::Omp)
                .then(|| eval(iht_recover(&chain, &y, c.s, cfg.max_iters, tol, cfg.step))),
            omp: (cfg.algorithm != Algorithms::Iht).then(|| eval(omp_recover(&chain, &y, c.s))),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let mut t = Table::new(
        header,
        &["algorithm", "n", "k", "s", "seed", "success", "iters", "rel_error"],
    );
    let mut summary = String::new();
    for (name, pick) in [
        ("iht", (|i: &Instance| i.iht.as_ref()) as fn(&Instance) -> Option<&Result<RecoveryResult>>),
        ("omp", |i: &Instance| i.omp.as_ref()),
    ] {
        let mut successes = 0;
        let mut failed_numerically = 0;
        let mut total = 0;
        for inst in &instances {
            let Some(r) = pick(inst) else { continue };
            total += 1;
            let (success, iters, err) = match r {
                Ok(r) => {
                    let ok = r.relative_error.is_some_and(|e| e <= cfg.success_tol);
                    (ok, r.iterations.to_string(), fmt_opt(r.relative_error))
                }
                Err(e) if exit_code(e) == 3 => {
                    failed_numerically += 1;
                    (false, String::new(), String::new())
                }
                Err(e) => return Err(e.clone()),
            };
            successes += usize::from(success);
            t.row(&[
                name.into(),
                c.n.to_string(),
                c.k.to_string(),
                c.s.to_string(),
                inst.seed.to_string(),
                success.to_string(),
                iters,
                err,
            ]);
        }
        if total > 0 {
            let _ = write!(summary, "{name}: {successes}/{total} recovered");
            if failed_numerically > 0 {
                let _ = write!(summary, " ({failed_numerically} numerically singular)");
            }
            summary.push('\n');
        }
    }
    Ok((t.text, summary))
}

fn run_bench(cfg: &ExperimentConfig, header: String) -> Result<(String, String)> {
    let opts = SweepOptions {
        repeats: cfg.repeats,
        timing: cfg.timing,
        dense_up_to: 0,
    };
    let report = scaling_sweep(&cfg.chain, &cfg.n_list, &opts)?;
    let mut t = Table::new(header, &["construction", "n", "k", "r", "ops", "median_ms", "ratio"]);
    for r in &report.rows {
        t.row(&[
            r.construction.to_string(),
            r.n.to_string(),
            r.k.to_string(),
            fmt_opt(r.r),
            r.ops.to_string(),
            fmt_opt(r.median_ms.map(|v| format!("{v:.6}"))),
            fmt_opt(r.ratio.map(|v| format!("{v:.4}"))),
        ]);
    }
    let summary = format!(
        "ops log-log slope over n = {:?}: {}\n",
        cfg.n_list,
        report
            .ops_slope()
            .map(|s| format!("{s:.4}"))
            .unwrap_or_else(|| "n/a".into())
    );
    Ok((t.text, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> ExperimentConfig {
        ExperimentConfig::parse(text).unwrap()
    }

    #[test]
    fn emit_parse_round_trip() {
        let c = cfg("construction = theorem2\nn = 64\nk = 8\ns = 1\nkappa = 0.3\nomega = random\n\
                     trials = 77\nprobe = random\nn_list = 64,128\ntiming = yes\nout = r.csv\n");
        let text = c.emit();
        assert_eq!(cfg(&text), c);
        assert_eq!(cfg(&text).emit(), text);
        let defaults = ExperimentConfig::default().emit();
        assert_eq!(cfg("# nothing\n").emit(), defaults);
    }

    #[test]
    fn unknown_keys_are_errors() {
        let err = ExperimentConfig::parse("n = 16\ntrails = 5\n").unwrap_err();
        assert!(matches!(err, Error::ConfigParse { line: 2, .. }));
        assert_eq!(exit_code(&err), 2);
    }

    #[test]
    fn header_reproduces_config() {
        let c = cfg("n = 32\nk = 8\nomega = 1,3,5,7,9,11,13,15\nseed = 4\n");
        let (cmd, back) = ExperimentConfig::from_header(&c.header(Subcommand::Rip)).unwrap();
        assert_eq!(cmd, Subcommand::Rip);
        assert_eq!(back, c);
        assert!(!c.header(Subcommand::Rip).contains('\n'));
    }

    #[test]
    fn rip_is_deterministic() {
        let c = cfg("n = 16\nk = 8\ns = 2\nseed = 42\n");
        let a = run(&c, Subcommand::Rip).unwrap();
        let b = run(&c, Subcommand::Rip).unwrap();
        assert_eq!(a.csv, b.csv);
        assert!(a.csv.lines().nth(2).unwrap().contains(",exact,"));
    }

    #[test]
    fn kappa_failure_reports_value() {
        let c = cfg("construction = theorem2\nn = 1024\nk = 40\ns = 8\n");
        let err = run(&c, Subcommand::Build).unwrap_err();
        assert_eq!(exit_code(&err), 2);
        assert!(err.to_string().contains("1.47"), "{err}");
    }

    #[test]
    fn chaos_on_unitary_chain_has_zero_variance() {
        let c = cfg("n = 32\nk = 32\ntrials = 200\n");
        let out = run(&c, Subcommand::Chaos).unwrap();
        assert!(out.summary.contains("variance = 0"), "{}", out.summary);
    }

    #[test]
    fn every_subcommand_runs() {
        let c = cfg("n = 64\nk = 16\ns = 2\ntrials = 200\ninstances = 4\nn_list = 64,128\n");
        for cmd in Subcommand::ALL {
            let out = run(&c, cmd).unwrap();
            assert!(out.csv.starts_with("# fastrip "), "{cmd}");
            let widths: Vec<usize> = out.csv.lines().skip(1).map(|l| l.split(',').count()).collect();
            assert!(widths.windows(2).all(|w| w[0] == w[1]), "{cmd}: {}", out.csv);
        }
    }

    #[test]
    fn regime_warnings_do_not_block() {
        let c = cfg("construction = theorem2\nn = 64\nk = 8\ns = 2\nkappa = 0.3\n");
        let out = run(&c, Subcommand::Build).unwrap();
        assert!(!out.warnings.is_empty());
        let t1 = cfg("n = 64\nk = 60\ns = 2\n");
        assert!(!t1.regime_warnings().unwrap().is_empty());
    }

    #[test]
    fn timing_columns_only_when_requested() {
        let c = cfg("n = 64\nk = 16\nn_list = 64,128\n");
        let quiet = run(&c, Subcommand::Bench).unwrap();
        assert!(quiet.csv.lines().nth(2).unwrap().ends_with(",,"));
        let timed = run(&ExperimentConfig { timing: true, ..c }, Subcommand::Bench).unwrap();
        assert!(!timed.csv.lines().nth(3).unwrap().ends_with(','));
    }
}
