//! Numerical certificates for the Callebaut-type inequalities and their
//! reverses.
//!
//! Each `verify_*` function checks one inequality chain on the given
//! instance with the default [`TolerancePolicy`] and returns a one-trial
//! report. [`Verifier`] exposes the same checks with a custom policy, and
//! [`run_suite`] drives them over seeded random instances.

mod checks;
mod report;
mod suite;

pub use checks::{DaykinPair, Pair, Verifier};
pub use report::{Link, Outcome, PairJson, Summary, TolerancePolicy, Trial, VerificationReport};
pub use suite::{run_suite, MeanCycle, SuiteConfig, SuiteKind};

use crate::error::Result;
use crate::matrix::HpdMatrix;
use crate::scalar::{MeanDescriptor, SpectralBounds};

fn single(suite: SuiteKind, pairs: &[Pair], outcome: Outcome) -> VerificationReport {
    let dim = pairs.first().map_or(0, |(a, _)| a.dim());
    VerificationReport::single(suite.name(), dim, pairs.len(), outcome, TolerancePolicy::default())
}

pub fn verify_superadditivity(pairs: &[Pair], desc: &MeanDescriptor) -> Result<VerificationReport> {
    let out = Verifier::default().superadditivity(pairs, desc)?;
    Ok(single(SuiteKind::Superadditivity, pairs, out))
}

pub fn verify_reverse_superadditivity(
    pairs: &[Pair],
    desc: &MeanDescriptor,
    bounds: SpectralBounds,
) -> Result<VerificationReport> {
    let out = Verifier::default().reverse_superadditivity(pairs, desc, bounds)?;
    Ok(single(SuiteKind::ReverseSuperadditivity, pairs, out))
}

pub fn verify_callebaut_chain(pairs: &[Pair], desc: &MeanDescriptor) -> Result<VerificationReport> {
    let out = Verifier::default().callebaut_chain(pairs, desc)?;
    Ok(single(SuiteKind::CallebautChain, pairs, out))
}

pub fn verify_path_monotonicity(pairs: &[Pair], t: f64, s: f64) -> Result<VerificationReport> {
    let out = Verifier::default().path_monotonicity(pairs, t, s)?;
    Ok(single(SuiteKind::PathMonotonicity, pairs, out))
}

pub fn verify_theorem22(
    pairs: &[Pair],
    desc: &MeanDescriptor,
    bounds: SpectralBounds,
) -> Result<VerificationReport> {
    let out = Verifier::default().theorem22(pairs, desc, bounds)?;
    Ok(single(SuiteKind::Theorem22, pairs, out))
}

pub fn verify_milne_reverse(pairs: &[Pair], bounds: SpectralBounds) -> Result<VerificationReport> {
    let out = Verifier::default().milne_reverse(pairs, bounds)?;
    Ok(single(SuiteKind::MilneReverse, pairs, out))
}

pub fn verify_theorem25(
    pairs: &[Pair],
    r: f64,
    t: f64,
    s: f64,
    bounds: SpectralBounds,
) -> Result<VerificationReport> {
    let out = Verifier::default().theorem25(pairs, r, t, s, bounds)?;
    Ok(single(SuiteKind::Theorem25, pairs, out))
}

pub fn verify_scalar_lemma31(a: f64, b: f64, nu: f64) -> Result<bool> {
    Verifier::default().scalar_lemma31(a, b, nu)
}

pub fn verify_tensor_lemma32(a: &HpdMatrix, b: &HpdMatrix, s: f64, t: f64) -> Result<VerificationReport> {
    let out = Verifier::default().tensor_lemma32(a, b, s, t)?;
    Ok(VerificationReport::single(
        SuiteKind::TensorLemma32.name(),
        a.dim(),
        1,
        out,
        TolerancePolicy::default(),
    ))
}

pub fn verify_hadamard_refinement(pairs: &[Pair], s: f64, t: f64) -> Result<VerificationReport> {
    let out = Verifier::default().hadamard_refinement(pairs, s, t)?;
    Ok(single(SuiteKind::HadamardRefinement, pairs, out))
}

pub fn verify_gm_factorization(
    a: &HpdMatrix,
    b: &HpdMatrix,
    desc: &MeanDescriptor,
) -> Result<VerificationReport> {
    let link = Verifier::default().gm_factorization(a, b, desc)?;
    let out = Outcome {
        links: vec![link],
        ..Outcome::default()
    };
    Ok(VerificationReport::single(
        SuiteKind::GmFactorization.name(),
        a.dim(),
        1,
        out,
        TolerancePolicy::default(),
    ))
}

pub fn verify_scalar_daykin_chain(xs: &[f64], ys: &[f64], pair: DaykinPair) -> Result<VerificationReport> {
    let out = Verifier::default().scalar_daykin_chain(xs, ys, pair)?;
    Ok(VerificationReport::single(
        SuiteKind::ScalarDaykinChain.name(),
        1,
        xs.len(),
        out,
        TolerancePolicy::default(),
    ))
}
