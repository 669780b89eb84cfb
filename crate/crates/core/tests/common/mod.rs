//! Scalar oracles written directly from the defining formulas, independent
//! of the library's representing-function code.

#![allow(dead_code)]

use opmeans::instances::{split, InstanceSpec};
use opmeans::matrix::HpdMatrix;
use opmeans::scalar::{MeanDescriptor, MeanKind, SpectralBounds};

/// `a σ b` for positive scalars, weight on `b`.
pub fn mean2(desc: &MeanDescriptor, a: f64, b: f64) -> f64 {
    match desc.kind() {
        MeanKind::Arithmetic { w } => (1.0 - w) * a + w * b,
        MeanKind::Geometric { w } => a.powf(1.0 - w) * b.powf(*w),
        MeanKind::Harmonic { w } => 1.0 / ((1.0 - w) / a + w / b),
        MeanKind::PowerPath { r, t } => power2(*r, *t, a, b),
        MeanKind::Custom { f, .. } => a * f(b / a),
    }
}

/// `((1 - t) a^r + t b^r)^(1/r)`, `a^(1-t) b^t` at `r = 0`.
pub fn power2(r: f64, t: f64, a: f64, b: f64) -> f64 {
    if r == 0.0 {
        a.powf(1.0 - t) * b.powf(t)
    } else {
        ((1.0 - t) * a.powf(r) + t * b.powf(r)).powf(1.0 / r)
    }
}

/// `a σ^⊥ b = a b / (a σ b)`.
pub fn dual2(desc: &MeanDescriptor, a: f64, b: f64) -> f64 {
    a * b / mean2(desc, a, b)
}

pub fn gm2(a: f64, b: f64) -> f64 {
    (a * b).sqrt()
}

pub fn bounds(m: f64, big_m: f64) -> SpectralBounds {
    SpectralBounds::new(m, big_m).unwrap()
}

/// 20 `(m, M)` pairs with `m < M`.
pub fn bounds_grid() -> Vec<SpectralBounds> {
    let mut out = Vec::new();
    for m in [0.1, 0.5, 1.0, 2.0, 7.5] {
        for ratio in [1.5, 2.0, 4.0, 12.0] {
            out.push(bounds(m, m * ratio));
        }
    }
    out
}

pub fn catalog_means() -> Vec<MeanDescriptor> {
    vec![
        MeanDescriptor::arithmetic_mean(),
        MeanDescriptor::geometric_mean(),
        MeanDescriptor::harmonic_mean(),
        MeanDescriptor::arithmetic(0.25).unwrap(),
        MeanDescriptor::geometric(0.3).unwrap(),
        MeanDescriptor::harmonic(0.8).unwrap(),
        MeanDescriptor::power_path(0.5, 0.3).unwrap(),
        MeanDescriptor::power_path(-0.5, 0.8).unwrap(),
        MeanDescriptor::power_path(1.0, 0.6).unwrap(),
        MeanDescriptor::power_path(-1.0, 0.4).unwrap(),
    ]
}

/// A commuting family for oracle checks, cycling dims {2,3,4,6} and
/// n_terms {1,2,5}.
pub struct Family {
    pub pairs: Vec<(HpdMatrix, HpdMatrix)>,
    pub spectra: Vec<(Vec<f64>, Vec<f64>)>,
}

pub fn commuting(i: usize, b: SpectralBounds, diagonal: bool) -> Family {
    let dims = [2, 3, 4, 6];
    let terms = [1, 2, 5];
    let spec = InstanceSpec {
        complex: i % 2 == 1,
        ..InstanceSpec::new(dims[i % 4], terms[(i / 4) % 3], b, split(2024, i as u64)).unwrap()
    };
    let fam = spec.commuting_family().unwrap();
    let pairs = if diagonal {
        fam.spectra
            .iter()
            .map(|(a, b)| {
                (
                    HpdMatrix::from_diagonal(a).unwrap(),
                    HpdMatrix::from_diagonal(b).unwrap(),
                )
            })
            .collect()
    } else {
        fam.pairs
    };
    Family {
        pairs,
        spectra: fam.spectra,
    }
}

impl Family {
    pub fn dim(&self) -> usize {
        self.spectra[0].0.len()
    }

    /// `min_k (rhs_k − lhs_k)` where `side(k)` returns `(lhs_k, rhs_k)` at
    /// eigen-index `k`.
    pub fn min_gap(&self, side: impl Fn(&[f64], &[f64]) -> (f64, f64)) -> f64 {
        (0..self.dim())
            .map(|k| {
                let a: Vec<f64> = self.spectra.iter().map(|(a, _)| a[k]).collect();
                let b: Vec<f64> = self.spectra.iter().map(|(_, b)| b[k]).collect();
                let (l, r) = side(&a, &b);
                r - l
            })
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn sum_over(a: &[f64], b: &[f64], f: impl Fn(f64, f64) -> f64) -> f64 {
    a.iter().zip(b).map(|(x, y)| f(*x, *y)).sum()
}
