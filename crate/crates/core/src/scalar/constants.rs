//! Mond–Pečarić style reverse constants for operator means.
//!
//! For a positive concave representing function `f` on `[m, M]` the chord
//! `μ_f x + ν_f` lies below `f`, and the constants
//!
//! ```text
//! γ = max_{m≤x≤M} f(x) / (μ_f x + ν_f)
//! ζ = max_{m≤x≤M} f(M) f(m) x / (f(x) (ν_f x + M m μ_f))
//! ```
//!
//! bound how far `f` (resp. its dual `x / f(x)`) rises above that chord.
//! Both objectives equal 1 at the endpoints, so `γ, ζ ≥ 1`.

use serde::{Deserialize, Serialize};

use super::maximize::maximize;
use super::mean::{representing_value, MeanDescriptor};
use super::path::{path_value, ratio_value};
use crate::error::{Error, Result};

/// Spectral bounds `(m, M)` with `0 < m ≤ M`, typically from `m A ≤ B ≤ M A`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralBounds {
    #[serde(rename = "m")]
    lower: f64,
    #[serde(rename = "M")]
    upper: f64,
}

impl SpectralBounds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if lower.is_finite() && upper.is_finite() && lower > 0.0 && lower <= upper {
            Ok(Self { lower, upper })
        } else {
            Err(Error::InvalidBounds {
                m: lower,
                big_m: upper,
            })
        }
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn is_degenerate(&self) -> bool {
        self.lower == self.upper
    }

    fn require_proper(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateInterval(self.lower))
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReverseConstants {
    pub mu: f64,
    pub nu: f64,
    pub gamma: f64,
    pub zeta: f64,
    pub sqrt_gamma_zeta: f64,
}

impl ReverseConstants {
    fn identity(mu: f64, nu: f64) -> Self {
        Self {
            mu,
            nu,
            gamma: 1.0,
            zeta: 1.0,
            sqrt_gamma_zeta: 1.0,
        }
    }
}

/// Chord `(μ_f, ν_f)` of `f` through `(m, f(m))` and `(M, f(M))`.
pub fn secant_coefficients(desc: &MeanDescriptor, b: SpectralBounds) -> Result<(f64, f64)> {
    b.require_proper()?;
    let (m, big_m) = (b.lower, b.upper);
    let fm = representing_value(desc, m)?;
    let f_big = representing_value(desc, big_m)?;
    let mu = (f_big - fm) / (big_m - m);
    let nu = (big_m * fm - m * f_big) / (big_m - m);
    Ok((mu, nu))
}

fn check_affine_positive(what: &str, slope: f64, intercept: f64, b: SpectralBounds) -> Result<()> {
    // An affine function is positive on [m, M] iff it is positive at both ends.
    for x in [b.lower, b.upper] {
        let v = slope * x + intercept;
        if !(v > 0.0) {
            return Err(Error::InvalidMean(format!(
                "{what} is {v} at x = {x}; the representing function is not positive and concave"
            )));
        }
    }
    Ok(())
}

fn checked_objective<F>(desc: &MeanDescriptor, b: SpectralBounds, objective: F) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    // Non-positive f anywhere on the grid surfaces as an InvalidMean instead
    // of a silently wrong maximum.
    let bad = std::cell::Cell::new(None);
    let result = maximize(
        |x| {
            let fx = desc.eval(x);
            if !(fx.is_finite() && fx > 0.0) {
                bad.set(Some((x, fx)));
                return f64::NAN;
            }
            objective(x, fx)
        },
        b.lower,
        b.upper,
    );
    if let Some((x, fx)) = bad.get() {
        return Err(Error::InvalidMean(format!(
            "{} evaluates to {fx} at x = {x}",
            desc.label()
        )));
    }
    Ok(result?.value)
}

/// `γ = max_{[m,M]} f(x) / (μ_f x + ν_f)`.
pub fn gamma_constant(desc: &MeanDescriptor, b: SpectralBounds) -> Result<f64> {
    let (mu, nu) = secant_coefficients(desc, b)?;
    check_affine_positive("the chord μ_f x + ν_f", mu, nu, b)?;
    checked_objective(desc, b, |x, fx| fx / (mu * x + nu))
}

/// `ζ = max_{[m,M]} f(M) f(m) x / (f(x) (ν_f x + M m μ_f))`, the `γ` of the dual mean.
pub fn zeta_constant(desc: &MeanDescriptor, b: SpectralBounds) -> Result<f64> {
    let (mu, nu) = secant_coefficients(desc, b)?;
    let (m, big_m) = (b.lower, b.upper);
    let mm = big_m * m;
    check_affine_positive("ν_f x + M m μ_f", nu, mm * mu, b)?;
    let scale = representing_value(desc, big_m)? * representing_value(desc, m)?;
    checked_objective(desc, b, |x, fx| scale * x / (fx * (nu * x + mm * mu)))
}

/// All of `μ_f, ν_f, γ, ζ, √(γζ)` for `desc` on `b`.
pub fn reverse_constants(desc: &MeanDescriptor, b: SpectralBounds) -> Result<ReverseConstants> {
    let (mu, nu) = secant_coefficients(desc, b)?;
    let gamma = gamma_constant(desc, b)?;
    let zeta = zeta_constant(desc, b)?;
    Ok(ReverseConstants {
        mu,
        nu,
        gamma,
        zeta,
        sqrt_gamma_zeta: (gamma * zeta).sqrt(),
    })
}

/// Closed-form reverse constant for the weighted geometric mean `♯_α`:
///
/// ```text
/// α^α (M - m) (M m^α - m M^α)^(α-1) / ((1 - α)^(α-1) (M^α - m^α)^α)
/// ```
///
/// Returns 1 for `α ∈ {0, 1}`, where `♯_α` just selects an argument.
pub fn closed_form_weighted_constant(alpha: f64, b: SpectralBounds) -> Result<f64> {
    if !(alpha.is_finite() && (0.0..=1.0).contains(&alpha)) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "must lie in [0, 1]",
        });
    }
    if alpha == 0.0 || alpha == 1.0 {
        return Ok(1.0);
    }
    b.require_proper()?;
    let (m, big_m) = (b.lower, b.upper);
    let m_a = m.powf(alpha);
    let big_a = big_m.powf(alpha);
    let num = alpha.powf(alpha) * (big_m - m) * (big_m * m_a - m * big_a).powf(alpha - 1.0);
    let den = (1.0 - alpha).powf(alpha - 1.0) * (big_a - m_a).powf(alpha);
    Ok(num / den)
}

/// `(√M + √m) / (2 (Mm)^¼)`, the reverse constant of `♯`. Equals 1 iff `m = M`.
pub fn lee_constant(b: SpectralBounds) -> f64 {
    let (m, big_m) = (b.lower, b.upper);
    (big_m.sqrt() + m.sqrt()) / (2.0 * (big_m * m).sqrt().sqrt())
}

/// Width below which the `H_{r,t}` image of `[m, M]` is treated as a point.
pub const COLLAPSE_WIDTH: f64 = 1e-12;

fn check_path_params(r: f64, t: f64) -> Result<()> {
    MeanDescriptor::power_path(r, t).map(|_| ())
}

/// Reverse constants for comparing the reflected power-path pairs
/// `m_{r,s}, m_{r,1-s}` against `m_{r,t}, m_{r,1-t}`.
///
/// `γ` and `ζ` are those of `F_{r,s0}` on the interval spanned by
/// `H_{r,t}(m)` and `H_{r,t}(M)`, where `s = s0 t + (1 - s0)(1 - t)`. When
/// that interval collapses (`t = 1/2`) both sides coincide and every constant is 1.
pub fn theorem25_constants(r: f64, t: f64, s0: f64, b: SpectralBounds) -> Result<ReverseConstants> {
    check_path_params(r, t)?;
    let desc = MeanDescriptor::power_path(r, s0)?;
    let h1 = ratio_value(r, t, b.lower);
    let h2 = ratio_value(r, t, b.upper);
    if (h1 - h2).abs() < COLLAPSE_WIDTH {
        return Ok(ReverseConstants::identity(0.0, path_value(r, s0, h1)));
    }
    let interval = SpectralBounds::new(h1.min(h2), h1.max(h2))?;
    reverse_constants(&desc, interval)
}

/// The `H_{r,t}` image of `[m, M]`, sorted.
pub fn ratio_interval(r: f64, t: f64, b: SpectralBounds) -> (f64, f64) {
    let h1 = ratio_value(r, t, b.lower);
    let h2 = ratio_value(r, t, b.upper);
    (h1.min(h2), h1.max(h2))
}

/// Recovers `s0` from `s = s0 t + (1 - s0)(1 - t)`.
///
/// Requires `s` between `t` and `1 - t`. For `t = 1/2` the only admissible
/// `s` is `1/2` and `s0` is reported as `1/2`.
pub fn path_composition_weight(t: f64, s: f64) -> Result<f64> {
    let lo = t.min(1.0 - t);
    let hi = t.max(1.0 - t);
    const EDGE: f64 = 1e-12;
    if !(s.is_finite() && s >= lo - EDGE && s <= hi + EDGE) {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s,
            reason: "must lie between t and 1 - t",
        });
    }
    if (2.0 * t - 1.0).abs() < EDGE {
        return Ok(0.5);
    }
    Ok(((s + t - 1.0) / (2.0 * t - 1.0)).clamp(0.0, 1.0))
}

/// Closed form for `r = 0`: the `♯_{s0}` constant on the interval spanned by
/// `m^(2t-1)` and `M^(2t-1)`.
pub fn geometric_path_closed_form(t: f64, s0: f64, b: SpectralBounds) -> Result<f64> {
    let (lo, hi) = ratio_interval(0.0, t, b);
    if hi - lo < COLLAPSE_WIDTH {
        return Ok(1.0);
    }
    closed_form_weighted_constant(s0, SpectralBounds::new(lo, hi)?)
}
