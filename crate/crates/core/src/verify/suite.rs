use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde_json::{json, Value};

use super::checks::{DaykinPair, Pair, Verifier};
use super::report::{Outcome, PairJson, TolerancePolicy, Trial, VerificationReport};
use crate::error::{Error, Result};
use crate::instances::{rng_for, split, EigRange, InstanceSpec};
use crate::scalar::{MeanDescriptor, SpectralBounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteKind {
    Superadditivity,
    ReverseSuperadditivity,
    CallebautChain,
    PathMonotonicity,
    Theorem22,
    MilneReverse,
    Theorem25,
    ScalarLemma31,
    TensorLemma32,
    HadamardRefinement,
    GmFactorization,
    ScalarDaykinChain,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 12] = [
        SuiteKind::Superadditivity,
        SuiteKind::ReverseSuperadditivity,
        SuiteKind::CallebautChain,
        SuiteKind::PathMonotonicity,
        SuiteKind::Theorem22,
        SuiteKind::MilneReverse,
        SuiteKind::Theorem25,
        SuiteKind::ScalarLemma31,
        SuiteKind::TensorLemma32,
        SuiteKind::HadamardRefinement,
        SuiteKind::GmFactorization,
        SuiteKind::ScalarDaykinChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Superadditivity => "superadditivity",
            SuiteKind::ReverseSuperadditivity => "reverse_superadditivity",
            SuiteKind::CallebautChain => "callebaut_chain",
            SuiteKind::PathMonotonicity => "path_monotonicity",
            SuiteKind::Theorem22 => "theorem22",
            SuiteKind::MilneReverse => "milne_reverse",
            SuiteKind::Theorem25 => "theorem25",
            SuiteKind::ScalarLemma31 => "scalar_lemma31",
            SuiteKind::TensorLemma32 => "tensor_lemma32",
            SuiteKind::HadamardRefinement => "hadamard_refinement",
            SuiteKind::GmFactorization => "gm_factorization",
            SuiteKind::ScalarDaykinChain => "scalar_daykin_chain",
        }
    }

    fn uses_mean(self) -> bool {
        matches!(
            self,
            SuiteKind::Superadditivity
                | SuiteKind::ReverseSuperadditivity
                | SuiteKind::CallebautChain
                | SuiteKind::Theorem22
                | SuiteKind::GmFactorization
        )
    }

    fn is_scalar(self) -> bool {
        matches!(self, SuiteKind::ScalarLemma31 | SuiteKind::ScalarDaykinChain)
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteKind {
    type Err = Error;

    /// Accepts the suite name with or without a `verify_` prefix.
    fn from_str(s: &str) -> Result<Self> {
        let key = s.strip_prefix("verify_").unwrap_or(s);
        SuiteKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

/// Means cycled through when a mean-based suite is run without `--mean`.
pub struct MeanCycle;

impl MeanCycle {
    pub fn default_means() -> Vec<MeanDescriptor> {
        let ok = |d: Result<MeanDescriptor>| d.expect("catalog parameters are valid");
        vec![
            MeanDescriptor::arithmetic_mean(),
            MeanDescriptor::geometric_mean(),
            MeanDescriptor::harmonic_mean(),
            ok(MeanDescriptor::geometric(0.3)),
            ok(MeanDescriptor::power_path(0.5, 0.3)),
            ok(MeanDescriptor::power_path(-0.5, 0.8)),
            ok(MeanDescriptor::arithmetic(0.25)),
        ]
    }
}

/// `(t, s)` with `s` between `t` and `1 - t`.
const PATH_GRID: [(f64, f64); 6] = [
    (0.9, 0.6),
    (0.9, 0.5),
    (0.7, 0.4),
    (0.2, 0.5),
    (1.0, 0.3),
    (0.8, 0.8),
];

/// `(s, t)` in both branches of the admissible region.
const TENSOR_GRID: [(f64, f64); 6] = [
    (0.6, 0.8),
    (0.6, 1.0),
    (0.75, 0.9),
    (0.4, 0.2),
    (0.4, 0.0),
    (0.25, 0.1),
];

const HADAMARD_GRID: [(f64, f64); 4] = [(0.6, 0.8), (0.6, 1.0), (0.4, 0.2), (0.4, 0.0)];

const THEOREM25_R: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];
const THEOREM25_T: [f64; 3] = [0.7, 0.9, 1.0];
const THEOREM25_S0: [f64; 3] = [0.75, 0.5, 0.25];

const DAYKIN_S: [f64; 4] = [0.0, 0.3, 0.7, 1.0];

/// Everything needed to reproduce a suite run.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: SuiteKind,
    /// Trial `i` uses `dims[i % dims.len()]`.
    pub dims: Vec<usize>,
    /// Trial `i` uses `n_terms[(i / dims.len()) % n_terms.len()]`.
    pub n_terms: Vec<usize>,
    pub bounds: SpectralBounds,
    pub seed: u64,
    pub reps: usize,
    pub complex: bool,
    pub eig_range: EigRange,
    /// Draw every instance from a shared eigenbasis.
    pub commuting: bool,
    pub mean: Option<MeanDescriptor>,
    pub r: Option<f64>,
    pub t: Option<f64>,
    pub s: Option<f64>,
    pub s0: Option<f64>,
    pub pair: Option<DaykinPair>,
    pub policy: TolerancePolicy,
}

impl SuiteConfig {
    /// Dims {2,3,4,6}, n_terms {1,2,5}, m = 1, M = 4, 200 repetitions, seed 42.
    pub fn new(suite: SuiteKind) -> Self {
        Self {
            suite,
            dims: vec![2, 3, 4, 6],
            n_terms: vec![1, 2, 5],
            bounds: SpectralBounds::new(1.0, 4.0).expect("valid default bounds"),
            seed: 42,
            reps: 200,
            complex: false,
            eig_range: EigRange::default(),
            commuting: false,
            mean: None,
            r: None,
            t: None,
            s: None,
            s0: None,
            pair: None,
            policy: TolerancePolicy::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::Precondition("repetitions must be at least 1".into()));
        }
        if self.dims.is_empty() || self.n_terms.is_empty() {
            return Err(Error::Precondition("dims and n_terms must be non-empty".into()));
        }
        if self.n_terms.contains(&0) {
            return Err(Error::Precondition("n_terms must be at least 1".into()));
        }
        EigRange::new(self.eig_range.lo, self.eig_range.hi)?;
        let need = |names: &[(&str, bool)]| -> Result<()> {
            let given = names.iter().filter(|(_, g)| *g).count();
            if given == 0 || given == names.len() {
                Ok(())
            } else {
                let list: Vec<&str> = names.iter().map(|(n, _)| *n).collect();
                Err(Error::Precondition(format!(
                    "suite {} needs all of {} or none of them",
                    self.suite,
                    list.join(", ")
                )))
            }
        };
        match self.suite {
            SuiteKind::PathMonotonicity | SuiteKind::TensorLemma32 | SuiteKind::HadamardRefinement => {
                need(&[("t", self.t.is_some()), ("s", self.s.is_some())])
            }
            SuiteKind::Theorem25 => {
                if self.s.is_some() && self.s0.is_some() {
                    return Err(Error::Precondition("give either s or s0, not both".into()));
                }
                need(&[
                    ("r", self.r.is_some()),
                    ("t", self.t.is_some()),
                    ("s or s0", self.s.is_some() || self.s0.is_some()),
                ])
            }
            _ => Ok(()),
        }
    }

    fn shape(&self, i: usize) -> (usize, usize) {
        let nd = self.dims.len();
        (self.dims[i % nd], self.n_terms[(i / nd) % self.n_terms.len()])
    }

    fn report_params(&self) -> BTreeMap<String, Value> {
        let mut p = BTreeMap::new();
        p.insert("seed".into(), json!(self.seed));
        p.insert("reps".into(), json!(self.reps));
        if !self.suite.is_scalar() {
            p.insert("dims".into(), json!(self.dims));
            p.insert("n_terms".into(), json!(self.n_terms));
            p.insert("m".into(), json!(self.bounds.lower()));
            p.insert("M".into(), json!(self.bounds.upper()));
            p.insert("complex".into(), json!(self.complex));
            p.insert("commuting".into(), json!(self.commuting));
            p.insert("eig_range".into(), json!([self.eig_range.lo, self.eig_range.hi]));
        }
        if let Some(d) = &self.mean {
            p.insert("mean".into(), json!(d.label()));
        }
        for (k, v) in [("r", self.r), ("t", self.t), ("s", self.s), ("s0", self.s0)] {
            if let Some(v) = v {
                p.insert(k.into(), json!(v));
            }
        }
        if let Some(pair) = &self.pair {
            p.insert("pair".into(), json!(pair.label()));
        }
        p
    }

    fn theorem25_params(&self, i: usize) -> (f64, f64, f64) {
        let (r, t, s0) = match (self.r, self.t) {
            (Some(r), Some(t)) => (r, t, self.s0),
            _ => {
                let n_t = THEOREM25_T.len();
                let n_s0 = THEOREM25_S0.len();
                let k = i % (THEOREM25_R.len() * n_t * n_s0);
                (
                    THEOREM25_R[k / (n_t * n_s0)],
                    THEOREM25_T[(k / n_s0) % n_t],
                    Some(THEOREM25_S0[k % n_s0]),
                )
            }
        };
        let s = match (self.s, s0) {
            (Some(s), _) if self.r.is_some() => s,
            (_, Some(s0)) => s0 * t + (1.0 - s0) * (1.0 - t),
            _ => unreachable!("validated"),
        };
        (r, t, s)
    }
}

fn pick<T: Copy>(fixed: Option<T>, grid: &[T], i: usize) -> T {
    fixed.unwrap_or(grid[i % grid.len()])
}

fn pair_grid(t: Option<f64>, s: Option<f64>) -> Option<(f64, f64)> {
    t.zip(s)
}

/// Runs `config.reps` trials. Trial `i` draws its instance from
/// `split(config.seed, i)`, so the report depends only on the config.
pub fn run_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    config.validate()?;
    let verifier = Verifier::new(config.policy);
    let means = MeanCycle::default_means();
    let mut trials = Vec::with_capacity(config.reps);
    for i in 0..config.reps {
        let seed = split(config.seed, i as u64);
        let trial = if config.suite.is_scalar() {
            scalar_trial(config, &verifier, i, seed)?
        } else {
            let desc = config.mean.clone().unwrap_or_else(|| means[i % means.len()].clone());
            matrix_trial(config, &verifier, i, seed, &desc)?
        };
        trials.push(trial);
    }
    Ok(VerificationReport::new(
        config.suite.name(),
        config.report_params(),
        trials,
        config.policy,
    ))
}

fn instance(config: &SuiteConfig, seed: u64, dim: usize, n_terms: usize) -> Result<Vec<Pair>> {
    let spec = InstanceSpec {
        dim,
        n_terms,
        bounds: config.bounds,
        seed,
        complex: config.complex,
        eig_range: config.eig_range,
    };
    if config.commuting {
        Ok(spec.commuting_family()?.pairs)
    } else {
        spec.generate()
    }
}

fn matrix_trial(
    config: &SuiteConfig,
    v: &Verifier,
    i: usize,
    seed: u64,
    desc: &MeanDescriptor,
) -> Result<Trial> {
    let (dim, mut n_terms) = config.shape(i);
    if config.suite == SuiteKind::TensorLemma32 {
        n_terms = 1;
    }
    let pairs = instance(config, seed, dim, n_terms)?;
    let b = config.bounds;
    let fixed_ts = pair_grid(config.t, config.s);
    let outcome = match config.suite {
        SuiteKind::Superadditivity => v.superadditivity(&pairs, desc)?,
        SuiteKind::ReverseSuperadditivity => v.reverse_superadditivity(&pairs, desc, b)?,
        SuiteKind::CallebautChain => v.callebaut_chain(&pairs, desc)?,
        SuiteKind::Theorem22 => v.theorem22(&pairs, desc, b)?,
        SuiteKind::MilneReverse => v.milne_reverse(&pairs, b)?,
        SuiteKind::PathMonotonicity => {
            let (t, s) = pick(fixed_ts, &PATH_GRID, i);
            v.path_monotonicity(&pairs, t, s)?
        }
        SuiteKind::Theorem25 => {
            let (r, t, s) = config.theorem25_params(i);
            v.theorem25(&pairs, r, t, s, b)?
        }
        SuiteKind::TensorLemma32 => {
            let (s, t) = pick(fixed_ts.map(|(t, s)| (s, t)), &TENSOR_GRID, i);
            let (a, bm) = &pairs[0];
            v.tensor_lemma32(a, bm, s, t)?
        }
        SuiteKind::HadamardRefinement => {
            let (s, t) = pick(fixed_ts.map(|(t, s)| (s, t)), &HADAMARD_GRID, i);
            v.hadamard_refinement(&pairs, s, t)?
        }
        SuiteKind::GmFactorization => {
            let mut out = Outcome::default();
            for (j, (a, bm)) in pairs.iter().enumerate() {
                let mut link = v.gm_factorization(a, bm, desc)?;
                link.name = format!("factorization_{j}");
                out.push(link);
            }
            out
        }
        SuiteKind::ScalarLemma31 | SuiteKind::ScalarDaykinChain => unreachable!("scalar suite"),
    };
    let mut trial = Trial::new(Some(seed), dim, n_terms, outcome);
    if config.suite.uses_mean() {
        trial.mean = Some(desc.label());
    }
    if !trial.holds {
        trial.instance = Some(pairs.iter().map(|(a, b)| PairJson::from_pair(a, b)).collect());
    }
    Ok(trial)
}

fn scalar_trial(config: &SuiteConfig, v: &Verifier, i: usize, seed: u64) -> Result<Trial> {
    let mut rng = rng_for(seed);
    match config.suite {
        SuiteKind::ScalarLemma31 => {
            // a, b uniform on (0, 100]; ν uniform on [-3, -0.01] ∪ [1.01, 4].
            let a = 100.0 * (1.0 - rng.random::<f64>());
            let b = 100.0 * (1.0 - rng.random::<f64>());
            let nu = if rng.random::<bool>() {
                rng.random_range(-3.0..=-0.01)
            } else {
                rng.random_range(1.01..=4.0)
            };
            let mut out = Outcome::default();
            out.param("a", a);
            out.param("b", b);
            out.param("nu", nu);
            out.push(v.scalar_lemma31_link(a, b, nu)?);
            Ok(Trial::new(Some(seed), 1, 1, out))
        }
        SuiteKind::ScalarDaykinChain => {
            let (_, len) = config.shape(i);
            let pair = config.pair.unwrap_or_else(|| match i % (DAYKIN_S.len() + 1) {
                k if k < DAYKIN_S.len() => DaykinPair::Callebaut { s: DAYKIN_S[k] },
                _ => DaykinPair::Milne,
            });
            let xs: Vec<f64> = (0..len).map(|_| 10.0 * (1.0 - rng.random::<f64>())).collect();
            let ys: Vec<f64> = (0..len).map(|_| 10.0 * (1.0 - rng.random::<f64>())).collect();
            let out = v.scalar_daykin_chain(&xs, &ys, pair)?;
            let mut trial = Trial::new(Some(seed), 1, len, out);
            trial.mean = Some(pair.label());
            Ok(trial)
        }
        _ => unreachable!("matrix suite"),
    }
}
