//! Seeded random positive-definite instances.
//!
//! Every generator is a pure function of its arguments. Randomness comes from
//! ChaCha8 streams seeded through [`split`], so trial `i` of a suite uses
//! `split(seed, i)` no matter which order trials are evaluated in.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix, HermitianMatrix, HpdMatrix, MAX_DIM};
use crate::scalar::SpectralBounds;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed `i` of `seed`: `mix64(mix64(seed) ^ mix64(i + φ))`, with `mix64`
/// the SplitMix64 finalizer and `φ = 0x9E3779B97F4A7C15`.
pub fn split(seed: u64, i: u64) -> u64 {
    mix64(mix64(seed) ^ mix64(i.wrapping_add(GOLDEN_GAMMA)))
}

pub(crate) fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Range the base-matrix eigenvalues are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigRange {
    pub lo: f64,
    pub hi: f64,
}

impl EigRange {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::InvalidParameter {
                name: "eig_range.lo",
                value: lo,
                reason: "need 0 < lo <= hi",
            })
        }
    }
}

impl Default for EigRange {
    fn default() -> Self {
        Self { lo: 0.5, hi: 2.0 }
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension { dim, max: MAX_DIM })
    }
}

fn gaussian(rng: &mut ChaCha8Rng, complex: bool) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = if complex { rng.sample(StandardNormal) } else { 0.0 };
    Complex64::new(re, im)
}

/// Orthonormalizes the columns of a Gaussian matrix (Gram–Schmidt, applied twice).
fn random_unitary(dim: usize, rng: &mut ChaCha8Rng, complex: bool) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..dim).map(|_| gaussian(rng, complex)).collect())
        .collect();
    for k in 0..dim {
        for _ in 0..2 {
            for j in 0..k {
                let proj: Complex64 = cols[j]
                    .iter()
                    .zip(&cols[k])
                    .map(|(q, v)| q.conj() * v)
                    .sum();
                let (done, rest) = cols.split_at_mut(k);
                for (v, q) in rest[0].iter_mut().zip(&done[j]) {
                    *v -= proj * q;
                }
            }
        }
        let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for v in cols[k].iter_mut() {
            *v /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

fn draw_spectrum(rng: &mut ChaCha8Rng, dim: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..dim)
        .map(|_| {
            if lo == hi {
                lo
            } else {
                lo + (hi - lo) * rng.random::<f64>()
            }
        })
        .collect()
}

fn hpd_from_spectrum(q: &ComplexMatrix, spectrum: &[f64]) -> Result<HpdMatrix> {
    let m = ComplexMatrix::congruence_diag(q, spectrum);
    HpdMatrix::from_computed(HermitianMatrix::from_complex(m))
}

/// `Q diag(λ) Q*` with `λ` uniform on `range` and `Q` a random orthogonal
/// (or unitary, when `complex`) matrix.
pub fn random_hpd(dim: usize, seed: u64, range: EigRange, complex: bool) -> Result<HpdMatrix> {
    check_dim(dim)?;
    let mut rng = rng_for(seed);
    if range.lo == range.hi {
        return HpdMatrix::identity(dim).scale(range.lo);
    }
    let q = random_unitary(dim, &mut rng, complex);
    let spectrum = draw_spectrum(&mut rng, dim, range.lo, range.hi);
    hpd_from_spectrum(&q, &spectrum)
}

/// A pair with `m A ≤ B ≤ M A`: `B = A^½ C A^½` where `C` has spectrum in `[m, M]`.
pub fn random_constrained_pair(
    dim: usize,
    bounds: SpectralBounds,
    seed: u64,
    complex: bool,
    range: EigRange,
) -> Result<(HpdMatrix, HpdMatrix)> {
    let a = random_hpd(dim, split(seed, 0), range, complex)?;
    if bounds.is_degenerate() {
        let b = a.scale(bounds.lower())?;
        return Ok((a, b));
    }
    let c = random_hpd(
        dim,
        split(seed, 1),
        EigRange::new(bounds.lower(), bounds.upper())?,
        complex,
    )?;
    let half = a.sqrt();
    let b = half
        .as_complex()
        .matmul(c.as_complex())
        .matmul(half.as_complex());
    let b = HpdMatrix::from_computed(HermitianMatrix::from_complex(b))?;
    Ok((a, b))
}

/// Pairs sharing one eigenbasis, with their spectra kept for scalar oracles.
#[derive(Debug, Clone)]
pub struct CommutingFamily {
    pub basis: ComplexMatrix,
    /// `(spectrum of A_j, spectrum of B_j)` in the shared basis.
    pub spectra: Vec<(Vec<f64>, Vec<f64>)>,
    pub pairs: Vec<(HpdMatrix, HpdMatrix)>,
}

/// `A_j = Q diag(a_j) Q*`, `B_j = Q diag(a_j ∘ c_j) Q*` with `c_j ∈ [m, M]`
/// entrywise and one shared `Q`.
pub fn random_commuting_family(
    dim: usize,
    n_terms: usize,
    bounds: SpectralBounds,
    seed: u64,
    complex: bool,
    range: EigRange,
) -> Result<CommutingFamily> {
    check_dim(dim)?;
    if n_terms == 0 {
        return Err(Error::InvalidParameter {
            name: "n_terms",
            value: 0.0,
            reason: "must be at least 1",
        });
    }
    let mut rng = rng_for(split(seed, 0));
    let basis = random_unitary(dim, &mut rng, complex);
    let mut spectra = Vec::with_capacity(n_terms);
    let mut pairs = Vec::with_capacity(n_terms);
    for j in 0..n_terms {
        let mut rng = rng_for(split(seed, 1 + j as u64));
        let a = draw_spectrum(&mut rng, dim, range.lo, range.hi);
        let c = draw_spectrum(&mut rng, dim, bounds.lower(), bounds.upper());
        let b: Vec<f64> = a.iter().zip(&c).map(|(x, y)| x * y).collect();
        pairs.push((hpd_from_spectrum(&basis, &a)?, hpd_from_spectrum(&basis, &b)?));
        spectra.push((a, b));
    }
    Ok(CommutingFamily {
        basis,
        spectra,
        pairs,
    })
}

/// Parameters of one random instance: `n_terms` constrained pairs of size `dim`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceSpec {
    pub dim: usize,
    pub n_terms: usize,
    pub bounds: SpectralBounds,
    pub seed: u64,
    pub complex: bool,
    pub eig_range: EigRange,
}

#[derive(Serialize, Deserialize)]
struct InstanceSpecJson {
    dim: usize,
    n_terms: usize,
    m: f64,
    #[serde(rename = "M")]
    big_m: f64,
    seed: u64,
    #[serde(default)]
    complex: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eig_range: Option<(f64, f64)>,
}

impl InstanceSpec {
    pub fn new(dim: usize, n_terms: usize, bounds: SpectralBounds, seed: u64) -> Result<Self> {
        let spec = Self {
            dim,
            n_terms,
            bounds,
            seed,
            complex: false,
            eig_range: EigRange::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_dim(self.dim)?;
        if self.n_terms == 0 {
            return Err(Error::InvalidParameter {
                name: "n_terms",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        EigRange::new(self.eig_range.lo, self.eig_range.hi)?;
        Ok(())
    }

    /// Pair `j` is `random_constrained_pair(.., split(seed, j), ..)`.
    pub fn generate(&self) -> Result<Vec<(HpdMatrix, HpdMatrix)>> {
        self.validate()?;
        (0..self.n_terms)
            .map(|j| {
                random_constrained_pair(
                    self.dim,
                    self.bounds,
                    split(self.seed, j as u64),
                    self.complex,
                    self.eig_range,
                )
            })
            .collect()
    }

    pub fn commuting_family(&self) -> Result<CommutingFamily> {
        self.validate()?;
        random_commuting_family(
            self.dim,
            self.n_terms,
            self.bounds,
            self.seed,
            self.complex,
            self.eig_range,
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: InstanceSpecJson =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let eig_range = match raw.eig_range {
            Some((lo, hi)) => EigRange::new(lo, hi)?,
            None => EigRange::default(),
        };
        let spec = Self {
            dim: raw.dim,
            n_terms: raw.n_terms,
            bounds: SpectralBounds::new(raw.m, raw.big_m)?,
            seed: raw.seed,
            complex: raw.complex,
            eig_range,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        let raw = InstanceSpecJson {
            dim: self.dim,
            n_terms: self.n_terms,
            m: self.bounds.lower(),
            big_m: self.bounds.upper(),
            seed: self.seed,
            complex: self.complex,
            eig_range: (self.eig_range != EigRange::default())
                .then_some((self.eig_range.lo, self.eig_range.hi)),
        };
        serde_json::to_string(&raw).expect("instance spec serializes")
    }
}
