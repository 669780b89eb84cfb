use std::fmt;
use std::sync::Arc;

use super::path::path_value;
use crate::error::{Error, Result};

/// Scalar function handle used by custom means.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// The family a [`MeanDescriptor`] belongs to.
#[derive(Clone)]
pub enum MeanKind {
    /// `1 - w + w x`
    Arithmetic { w: f64 },
    /// `x^w`
    Geometric { w: f64 },
    /// `((1 - w) + w / x)^-1`
    Harmonic { w: f64 },
    /// `F_{r,t}(x) = (1 - t + t x^r)^(1/r)`, with `x^t` at `r = 0`.
    PowerPath { r: f64, t: f64 },
    /// Caller-supplied representing function. Nothing about it is checked
    /// beyond positivity at the points where it is evaluated.
    Custom { label: String, f: ScalarFn },
}

/// An operator mean identified by its representing function `f`, where
/// `f(x) I = I σ (x I)` and `A σ B = A^½ f(A^-½ B A^-½) A^½`.
///
/// Weights always apply to the second argument: `1 σ_w x = f_w(x)`.
#[derive(Clone)]
pub struct MeanDescriptor {
    kind: MeanKind,
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must lie in [0, 1]",
        })
    }
}

impl MeanDescriptor {
    pub fn arithmetic(w: f64) -> Result<Self> {
        check_unit("w", w)?;
        Ok(Self {
            kind: MeanKind::Arithmetic { w },
        })
    }

    pub fn geometric(w: f64) -> Result<Self> {
        check_unit("w", w)?;
        Ok(Self {
            kind: MeanKind::Geometric { w },
        })
    }

    pub fn harmonic(w: f64) -> Result<Self> {
        check_unit("w", w)?;
        Ok(Self {
            kind: MeanKind::Harmonic { w },
        })
    }

    pub fn power_path(r: f64, t: f64) -> Result<Self> {
        if !(r.is_finite() && (-1.0..=1.0).contains(&r)) {
            return Err(Error::InvalidParameter {
                name: "r",
                value: r,
                reason: "must lie in [-1, 1]",
            });
        }
        check_unit("t", t)?;
        Ok(Self {
            kind: MeanKind::PowerPath { r, t },
        })
    }

    pub fn custom<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            kind: MeanKind::Custom {
                label: label.into(),
                f: Arc::new(f),
            },
        }
    }

    /// `A ∇ B`, `A ♯ B` and `A ! B` with equal weights.
    pub fn arithmetic_mean() -> Self {
        Self {
            kind: MeanKind::Arithmetic { w: 0.5 },
        }
    }

    pub fn geometric_mean() -> Self {
        Self {
            kind: MeanKind::Geometric { w: 0.5 },
        }
    }

    pub fn harmonic_mean() -> Self {
        Self {
            kind: MeanKind::Harmonic { w: 0.5 },
        }
    }

    pub fn kind(&self) -> &MeanKind {
        &self.kind
    }

    pub fn is_catalog(&self) -> bool {
        !matches!(self.kind, MeanKind::Custom { .. })
    }

    /// Evaluates the representing function without checking `x`.
    pub(crate) fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            MeanKind::Arithmetic { w } => 1.0 - w + w * x,
            MeanKind::Geometric { w } => geometric_power(x, *w),
            MeanKind::Harmonic { w } => {
                if *w == 0.0 {
                    1.0
                } else if *w == 1.0 {
                    x
                } else {
                    1.0 / ((1.0 - w) + w / x)
                }
            }
            MeanKind::PowerPath { r, t } => path_value(*r, *t, x),
            MeanKind::Custom { f, .. } => f(x),
        }
    }

    /// Short human-readable name, e.g. `geometric(0.5)`.
    pub fn label(&self) -> String {
        match &self.kind {
            MeanKind::Arithmetic { w } => format!("arithmetic({w})"),
            MeanKind::Geometric { w } => format!("geometric({w})"),
            MeanKind::Harmonic { w } => format!("harmonic({w})"),
            MeanKind::PowerPath { r, t } => format!("power_path({r},{t})"),
            MeanKind::Custom { label, .. } => format!("custom({label})"),
        }
    }
}

fn geometric_power(x: f64, w: f64) -> f64 {
    if w == 0.0 {
        1.0
    } else if w == 1.0 {
        x
    } else if w == 0.5 {
        x.sqrt()
    } else {
        x.powf(w)
    }
}

impl fmt::Debug for MeanDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Display for MeanDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl PartialEq for MeanDescriptor {
    fn eq(&self, other: &Self) -> bool {
        use MeanKind::*;
        match (&self.kind, &other.kind) {
            (Arithmetic { w: a }, Arithmetic { w: b }) => a == b,
            (Geometric { w: a }, Geometric { w: b }) => a == b,
            (Harmonic { w: a }, Harmonic { w: b }) => a == b,
            (PowerPath { r: r1, t: t1 }, PowerPath { r: r2, t: t2 }) => r1 == r2 && t1 == t2,
            (Custom { label: l1, f: f1 }, Custom { label: l2, f: f2 }) => {
                l1 == l2 && Arc::ptr_eq(f1, f2)
            }
            _ => false,
        }
    }
}

/// `f(x)` for the descriptor's representing function.
pub fn representing_value(desc: &MeanDescriptor, x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain {
            what: "a representing function",
            value: x,
        });
    }
    let y = desc.eval(x);
    if !(y.is_finite() && y > 0.0) {
        return Err(Error::InvalidMean(format!(
            "{} evaluates to {y} at x = {x}",
            desc.label()
        )));
    }
    Ok(y)
}

/// The dual mean `σ^⊥`, whose representing function is `x / f(x)`.
pub fn dual_descriptor(desc: &MeanDescriptor) -> MeanDescriptor {
    let kind = match &desc.kind {
        // x / (1 - w + w x) = ((1 - (1 - w)) + (1 - w) / x)^-1
        MeanKind::Arithmetic { w } => MeanKind::Harmonic { w: 1.0 - w },
        MeanKind::Harmonic { w } => MeanKind::Arithmetic { w: 1.0 - w },
        MeanKind::Geometric { w } => MeanKind::Geometric { w: 1.0 - w },
        // x / F_{r,t}(x) = F_{-r,1-t}(x); -0.0 is normalized so r = 0 stays r = 0.
        MeanKind::PowerPath { r, t } => MeanKind::PowerPath {
            r: if *r == 0.0 { 0.0 } else { -r },
            t: 1.0 - t,
        },
        MeanKind::Custom { label, f } => {
            let inner = Arc::clone(f);
            let label = match label.strip_prefix("dual:") {
                Some(rest) => rest.to_string(),
                None => format!("dual:{label}"),
            };
            MeanKind::Custom {
                label,
                f: Arc::new(move |x| x / inner(x)),
            }
        }
    };
    MeanDescriptor { kind }
}
