use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::matrix::{HpdMatrix, LoewnerVerdict, MatrixJson};

/// Tolerances applied by every check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    /// Loewner links pass iff `λ_min(rhs − lhs) ≥ −loewner_rel · max(‖lhs‖₂, ‖rhs‖₂, 1)`.
    pub loewner_rel: f64,
    /// Scalar links pass iff `rhs − lhs ≥ −scalar_rel · max(|lhs|, |rhs|, 1)`.
    pub scalar_rel: f64,
    /// Matrix identities pass iff `‖lhs − rhs‖_F ≤ identity_rel · max(‖rhs‖_F, 1)`.
    pub identity_rel: f64,
    /// Scalar constants cross-checked against a closed form.
    pub closed_form_abs: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            loewner_rel: 1e-9,
            scalar_rel: 1e-12,
            identity_rel: 1e-10,
            closed_form_abs: 1e-7,
        }
    }
}

/// One comparison `lhs ≤ rhs` (or `lhs = rhs` for identities).
///
/// `min_gap` is `λ_min(rhs − lhs)` for Loewner links, `rhs − lhs` for scalar
/// links and minus the discrepancy for identities and cross-checks, so a
/// link holds iff `min_gap ≥ −tol`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub name: String,
    pub min_gap: f64,
    pub tol: f64,
    pub holds: bool,
}

impl Link {
    pub fn new(name: impl Into<String>, min_gap: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            min_gap,
            tol,
            holds: min_gap >= -tol,
        }
    }

    pub fn from_verdict(name: impl Into<String>, v: &LoewnerVerdict) -> Self {
        Self {
            name: name.into(),
            min_gap: v.min_gap_eigenvalue,
            tol: v.tolerance_used,
            holds: v.holds,
        }
    }

    /// A discrepancy `|x − y|` reported as `min_gap = −|x − y|`.
    pub fn discrepancy(name: impl Into<String>, err: f64, tol: f64) -> Self {
        let err = if err.is_nan() { f64::INFINITY } else { err.abs() };
        Self::new(name, -err, tol)
    }
}

/// Links produced by a check together with the parameters it resolved.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub links: Vec<Link>,
    pub params: BTreeMap<String, f64>,
}

impl Outcome {
    pub fn holds(&self) -> bool {
        self.links.iter().all(|l| l.holds)
    }

    /// Smallest `min_gap` over the links.
    pub fn worst_gap(&self) -> Option<f64> {
        self.links.iter().map(|l| l.min_gap).reduce(f64::min)
    }

    pub(crate) fn push(&mut self, link: Link) {
        self.links.push(link);
    }

    pub(crate) fn param(&mut self, key: &str, value: f64) {
        self.params.insert(key.to_string(), value);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairJson {
    pub a: MatrixJson,
    pub b: MatrixJson,
}

impl PairJson {
    pub fn from_pair(a: &HpdMatrix, b: &HpdMatrix) -> Self {
        Self {
            a: MatrixJson::from_matrix(a),
            b: MatrixJson::from_matrix(b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trial {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub dim: usize,
    pub n_terms: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean: Option<String>,
    pub params: BTreeMap<String, f64>,
    pub links: Vec<Link>,
    pub holds: bool,
    /// The matrices of a failed trial, for reproduction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<Vec<PairJson>>,
}

impl Trial {
    pub fn new(seed: Option<u64>, dim: usize, n_terms: usize, outcome: Outcome) -> Self {
        let holds = outcome.holds();
        Self {
            seed,
            dim,
            n_terms,
            mean: None,
            params: outcome.params,
            links: outcome.links,
            holds,
            instance: None,
        }
    }

    pub fn worst_gap(&self) -> Option<f64> {
        self.links.iter().map(|l| l.min_gap).reduce(f64::min)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n_pass: usize,
    pub n_fail: usize,
    pub worst_gap: Option<f64>,
    pub tolerance_policy: TolerancePolicy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub trials: Vec<Trial>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(
        suite: impl Into<String>,
        params: BTreeMap<String, serde_json::Value>,
        trials: Vec<Trial>,
        policy: TolerancePolicy,
    ) -> Self {
        let n_pass = trials.iter().filter(|t| t.holds).count();
        let worst_gap = trials.iter().filter_map(Trial::worst_gap).reduce(f64::min);
        Self {
            suite: suite.into(),
            params,
            summary: Summary {
                n_pass,
                n_fail: trials.len() - n_pass,
                worst_gap,
                tolerance_policy: policy,
            },
            trials,
        }
    }

    /// Single-trial report for a direct call.
    pub fn single(suite: &str, dim: usize, n_terms: usize, outcome: Outcome, policy: TolerancePolicy) -> Self {
        Self::new(
            suite,
            BTreeMap::new(),
            vec![Trial::new(None, dim, n_terms, outcome)],
            policy,
        )
    }

    pub fn all_hold(&self) -> bool {
        self.summary.n_fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per trial: `suite, seed, dim, n_terms, mean, <params…>, worst_link_gap, holds`.
    pub fn to_csv(&self) -> String {
        let mut keys: Vec<&str> = self
            .trials
            .iter()
            .flat_map(|t| t.params.keys().map(String::as_str))
            .collect();
        keys.sort_unstable();
        keys.dedup();

        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["suite", "seed", "dim", "n_terms", "mean"];
        header.extend(keys.iter().copied());
        header.extend(["worst_link_gap", "holds"]);
        w.write_record(&header).expect("in-memory csv");
        for t in &self.trials {
            let mut row = vec![
                self.suite.clone(),
                t.seed.map(|s| s.to_string()).unwrap_or_default(),
                t.dim.to_string(),
                t.n_terms.to_string(),
                t.mean.clone().unwrap_or_default(),
            ];
            row.extend(
                keys.iter()
                    .map(|k| t.params.get(*k).map(|v| v.to_string()).unwrap_or_default()),
            );
            row.push(t.worst_gap().map(|g| g.to_string()).unwrap_or_default());
            row.push(t.holds.to_string());
            w.write_record(&row).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
    }
}
