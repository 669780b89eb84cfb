use serde::{Deserialize, Serialize};

use super::report::{Link, Outcome, TolerancePolicy};
use crate::error::{Error, Result};
use crate::matrix::{
    hadamard_product, loewner_leq, mean, tensor_product, HermitianMatrix, HpdMatrix,
};
use crate::scalar::{
    closed_form_weighted_constant, dual_descriptor, gamma_constant, geometric_path_closed_form,
    lee_constant, path_composition_weight, reverse_constants, theorem25_constants,
    MeanDescriptor, MeanKind, SpectralBounds,
};

pub type Pair = (HpdMatrix, HpdMatrix);

/// Runs the individual inequality checks under a tolerance policy.
///
/// `constant_inflation` multiplies every reverse constant (and divides the
/// lower Milne constant). It is 1 in normal use; values above 1 only loosen
/// the reverse inequalities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verifier {
    pub policy: TolerancePolicy,
    pub constant_inflation: f64,
}

impl Default for Verifier {
    fn default() -> Self {
        Self::new(TolerancePolicy::default())
    }
}

/// Which Cauchy–Schwarz refinement pair `(f, g)` to test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DaykinPair {
    /// `f = x^(1+s) y^(1-s)`, `g = x^(1-s) y^(1+s)`.
    Callebaut { s: f64 },
    /// `f = x² + y²`, `g = x² y² / (x² + y²)`.
    Milne,
}

impl DaykinPair {
    fn f(&self, x: f64, y: f64) -> f64 {
        match *self {
            DaykinPair::Callebaut { s } => x.powf(1.0 + s) * y.powf(1.0 - s),
            DaykinPair::Milne => x * x + y * y,
        }
    }

    fn g(&self, x: f64, y: f64) -> f64 {
        match *self {
            DaykinPair::Callebaut { s } => x.powf(1.0 - s) * y.powf(1.0 + s),
            DaykinPair::Milne => x * x * y * y / (x * x + y * y),
        }
    }

    pub fn label(&self) -> String {
        match self {
            DaykinPair::Callebaut { s } => format!("callebaut({s})"),
            DaykinPair::Milne => "milne".to_string(),
        }
    }
}

const HYPOTHESIS_GRID: [f64; 8] = [0.05, 0.2, 0.5, 1.0, 1.7, 3.0, 8.0, 40.0];
const HYPOTHESIS_SCALES: [f64; 3] = [0.3, 2.5, 11.0];

fn common_dim(pairs: &[Pair]) -> Result<usize> {
    let Some((a0, _)) = pairs.first() else {
        return Err(Error::Precondition("at least one pair is required".into()));
    };
    let n = a0.dim();
    for (a, b) in pairs {
        for m in [a, b] {
            if m.dim() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: m.dim(),
                });
            }
        }
    }
    Ok(n)
}

fn sum_of(pairs: &[Pair], mut f: impl FnMut(&HpdMatrix, &HpdMatrix) -> Result<HpdMatrix>) -> Result<HpdMatrix> {
    let terms = pairs
        .iter()
        .map(|(a, b)| f(a, b))
        .collect::<Result<Vec<_>>>()?;
    HpdMatrix::sum(&terms)
}

fn sum_means(pairs: &[Pair], desc: &MeanDescriptor) -> Result<HpdMatrix> {
    sum_of(pairs, |a, b| mean(a, b, desc))
}

fn sum_firsts(pairs: &[Pair]) -> Result<HpdMatrix> {
    HpdMatrix::sum(pairs.iter().map(|(a, _)| a))
}

fn sum_seconds(pairs: &[Pair]) -> Result<HpdMatrix> {
    HpdMatrix::sum(pairs.iter().map(|(_, b)| b))
}

fn gm(x: &HpdMatrix, y: &HpdMatrix) -> Result<HpdMatrix> {
    mean(x, y, &MeanDescriptor::geometric_mean())
}

fn weighted_gm(w: f64) -> Result<MeanDescriptor> {
    MeanDescriptor::geometric(w)
}

/// `(Σ A σ B) ♯ (Σ A σ^⊥ B)`.
fn callebaut_middle(pairs: &[Pair], desc: &MeanDescriptor) -> Result<HpdMatrix> {
    let dual = dual_descriptor(desc);
    gm(&sum_means(pairs, desc)?, &sum_means(pairs, &dual)?)
}

/// `(Σ A σ_p B) ♯ (Σ A σ_{1-p} B)` along the power path of exponent `r`.
fn reflected_pair(pairs: &[Pair], r: f64, p: f64) -> Result<HpdMatrix> {
    let lo = sum_means(pairs, &MeanDescriptor::power_path(r, p)?)?;
    let hi = sum_means(pairs, &MeanDescriptor::power_path(r, 1.0 - p)?)?;
    gm(&lo, &hi)
}

fn put_bounds(out: &mut Outcome, b: SpectralBounds) {
    out.param("m", b.lower());
    out.param("M", b.upper());
}

fn in_lemma32_region(s: f64, t: f64) -> Result<()> {
    if s == 0.5 {
        return Err(Error::Precondition("s = 1/2 is excluded".into()));
    }
    let upper = s > 0.5 && s <= t && t <= 1.0;
    let lower = s < 0.5 && t <= s && t >= 0.0;
    if upper || lower {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "(s, t) = ({s}, {t}) is outside 1 >= t >= s > 1/2 and 0 <= t <= s < 1/2"
        )))
    }
}

impl Verifier {
    pub fn new(policy: TolerancePolicy) -> Self {
        Self {
            policy,
            constant_inflation: 1.0,
        }
    }

    pub fn with_inflation(mut self, factor: f64) -> Self {
        self.constant_inflation = factor;
        self
    }

    /// Loewner link `lhs ≤ rhs`.
    fn leq(&self, name: &str, lhs: &HermitianMatrix, rhs: &HermitianMatrix) -> Result<Link> {
        let v = loewner_leq(lhs, rhs, self.policy.loewner_rel)?;
        Ok(Link::from_verdict(name, &v))
    }

    /// Identity link `lhs = rhs` in relative Frobenius norm.
    fn same(&self, name: &str, lhs: &HermitianMatrix, rhs: &HermitianMatrix) -> Result<Link> {
        let err = lhs.sub(rhs)?.frobenius_norm() / rhs.frobenius_norm().max(1.0);
        Ok(Link::discrepancy(name, err, self.policy.identity_rel))
    }

    /// Scalar link `lhs ≤ rhs`.
    fn scalar_leq(&self, name: &str, lhs: f64, rhs: f64) -> Link {
        let tol = self.policy.scalar_rel * lhs.abs().max(rhs.abs()).max(1.0);
        Link::new(name, rhs - lhs, tol)
    }

    /// Fails unless every pair satisfies `m A ≤ B ≤ M A` at the Loewner tolerance.
    pub fn check_constraint(&self, pairs: &[Pair], b: SpectralBounds) -> Result<()> {
        for (j, (a, bj)) in pairs.iter().enumerate() {
            let low = loewner_leq(&a.as_hermitian().scale(b.lower()), bj, self.policy.loewner_rel)?;
            let high = loewner_leq(bj, &a.as_hermitian().scale(b.upper()), self.policy.loewner_rel)?;
            if !(low.holds && high.holds) {
                return Err(Error::Precondition(format!(
                    "pair {j} violates m A <= B <= M A (gaps {:e}, {:e})",
                    low.min_gap_eigenvalue, high.min_gap_eigenvalue
                )));
            }
        }
        Ok(())
    }

    /// `Σ A_j σ B_j ≤ (Σ A_j) σ (Σ B_j)`.
    pub fn superadditivity(&self, pairs: &[Pair], desc: &MeanDescriptor) -> Result<Outcome> {
        common_dim(pairs)?;
        let lhs = sum_means(pairs, desc)?;
        let rhs = mean(&sum_firsts(pairs)?, &sum_seconds(pairs)?, desc)?;
        let mut out = Outcome::default();
        out.push(self.leq("superadditive", &lhs, &rhs)?);
        Ok(out)
    }

    /// `(Σ A_j) σ (Σ B_j) ≤ γ Σ A_j σ B_j`, plus a closed-form cross-check of
    /// `γ` for weighted geometric means.
    pub fn reverse_superadditivity(
        &self,
        pairs: &[Pair],
        desc: &MeanDescriptor,
        b: SpectralBounds,
    ) -> Result<Outcome> {
        common_dim(pairs)?;
        self.check_constraint(pairs, b)?;
        let gamma = gamma_constant(desc, b)?;
        let mut out = Outcome::default();
        put_bounds(&mut out, b);
        out.param("gamma", gamma);
        let lhs = mean(&sum_firsts(pairs)?, &sum_seconds(pairs)?, desc)?;
        let rhs = sum_means(pairs, desc)?
            .as_hermitian()
            .scale(gamma * self.constant_inflation);
        out.push(self.leq("reverse", &lhs, &rhs)?);
        if let MeanKind::Geometric { w } = desc.kind() {
            let closed = closed_form_weighted_constant(*w, b)?;
            out.param("closed_form", closed);
            out.push(Link::discrepancy(
                "closed_form",
                gamma - closed,
                self.policy.closed_form_abs,
            ));
        }
        Ok(out)
    }

    /// `Σ A♯B ≤ (Σ AσB) ♯ (Σ Aσ^⊥B) ≤ (Σ A) ♯ (Σ B)`.
    pub fn callebaut_chain(&self, pairs: &[Pair], desc: &MeanDescriptor) -> Result<Outcome> {
        common_dim(pairs)?;
        let low = sum_of(pairs, gm)?;
        let mid = callebaut_middle(pairs, desc)?;
        let high = gm(&sum_firsts(pairs)?, &sum_seconds(pairs)?)?;
        let mut out = Outcome::default();
        out.push(self.leq("lower", &low, &mid)?);
        out.push(self.leq("upper", &mid, &high)?);
        Ok(out)
    }

    /// `(Σ A♯_s B) ♯ (Σ A♯_{1-s} B) ≤ (Σ A♯_t B) ♯ (Σ A♯_{1-t} B)` for `s`
    /// between `t` and `1 - t`.
    pub fn path_monotonicity(&self, pairs: &[Pair], t: f64, s: f64) -> Result<Outcome> {
        common_dim(pairs)?;
        weighted_gm(t)?;
        let s0 = path_composition_weight(t, s)?;
        let lhs = reflected_pair(pairs, 0.0, s)?;
        let rhs = reflected_pair(pairs, 0.0, t)?;
        let mut out = Outcome::default();
        out.param("t", t);
        out.param("s", s);
        out.param("s0", s0);
        out.push(self.leq("monotone", &lhs, &rhs)?);
        Ok(out)
    }

    /// With `mid = (Σ AσB) ♯ (Σ Aσ^⊥B)`, `G = (Σ A) ♯ (Σ B)` and `k` the Lee
    /// constant:
    /// (a) `G ≤ √(γζ) mid`, (b) `mid ≤ k Σ A♯B`, (c) `G ≤ k mid`.
    pub fn theorem22(&self, pairs: &[Pair], desc: &MeanDescriptor, b: SpectralBounds) -> Result<Outcome> {
        common_dim(pairs)?;
        self.check_constraint(pairs, b)?;
        let c = reverse_constants(desc, b)?;
        let lee = lee_constant(b);
        let mut out = Outcome::default();
        put_bounds(&mut out, b);
        out.param("gamma", c.gamma);
        out.param("zeta", c.zeta);
        out.param("sqrt_gamma_zeta", c.sqrt_gamma_zeta);
        out.param("lee", lee);

        let mid = callebaut_middle(pairs, desc)?;
        let g = gm(&sum_firsts(pairs)?, &sum_seconds(pairs)?)?;
        let s = sum_of(pairs, gm)?;
        let k = c.sqrt_gamma_zeta * self.constant_inflation;
        let lee = lee * self.constant_inflation;
        out.push(self.leq("a", &g, &mid.as_hermitian().scale(k))?);
        out.push(self.leq("b", &mid, &s.as_hermitian().scale(lee))?);
        out.push(self.leq("c", &g, &mid.as_hermitian().scale(lee))?);
        Ok(out)
    }

    /// `c (Σ A) ♯ (Σ B) ≤ (Σ A∇B) ♯ (Σ A!B) ≤ k Σ A♯B` with `k` the Lee
    /// constant and `c = (1 + √(mM)) / √((1 + M)(1 + m))`.
    pub fn milne_reverse(&self, pairs: &[Pair], b: SpectralBounds) -> Result<Outcome> {
        common_dim(pairs)?;
        self.check_constraint(pairs, b)?;
        if b.is_degenerate() {
            return Err(Error::DegenerateInterval(b.lower()));
        }
        let (m, big_m) = (b.lower(), b.upper());
        let lee = lee_constant(b);
        let c = (1.0 + (m * big_m).sqrt()) / ((1.0 + big_m) * (1.0 + m)).sqrt();
        let mut out = Outcome::default();
        put_bounds(&mut out, b);
        out.param("lee", lee);
        out.param("lower_constant", c);

        let mid = callebaut_middle(pairs, &MeanDescriptor::arithmetic_mean())?;
        let s = sum_of(pairs, gm)?;
        let g = gm(&sum_firsts(pairs)?, &sum_seconds(pairs)?)?;
        out.push(self.leq(
            "upper",
            &mid,
            &s.as_hermitian().scale(lee * self.constant_inflation),
        )?);
        out.push(self.leq(
            "lower",
            &g.as_hermitian().scale(c / self.constant_inflation),
            &mid,
        )?);
        Ok(out)
    }

    /// `(Σ A m_{r,t} B) ♯ (Σ A m_{r,1-t} B) ≤ √(γζ) (Σ A m_{r,s} B) ♯ (Σ A m_{r,1-s} B)`
    /// with `s = s0 t + (1 - s0)(1 - t)`. For `r = 0` the constant is also
    /// compared with its closed form.
    pub fn theorem25(&self, pairs: &[Pair], r: f64, t: f64, s: f64, b: SpectralBounds) -> Result<Outcome> {
        common_dim(pairs)?;
        MeanDescriptor::power_path(r, t)?;
        self.check_constraint(pairs, b)?;
        let s0 = path_composition_weight(t, s)?;
        let c = theorem25_constants(r, t, s0, b)?;
        let mut out = Outcome::default();
        put_bounds(&mut out, b);
        out.param("r", r);
        out.param("t", t);
        out.param("s", s);
        out.param("s0", s0);
        out.param("gamma", c.gamma);
        out.param("zeta", c.zeta);
        out.param("sqrt_gamma_zeta", c.sqrt_gamma_zeta);

        let lhs = reflected_pair(pairs, r, t)?;
        let rhs = reflected_pair(pairs, r, s)?;
        out.push(self.leq(
            "reverse",
            &lhs,
            &rhs.as_hermitian().scale(c.sqrt_gamma_zeta * self.constant_inflation),
        )?);
        if r == 0.0 {
            let closed = geometric_path_closed_form(t, s0, b)?;
            out.param("closed_form", closed);
            out.push(Link::discrepancy(
                "closed_form",
                c.sqrt_gamma_zeta - closed,
                self.policy.closed_form_abs,
            ));
        }
        Ok(out)
    }

    /// `(a + b) + 2(ν − 1)(√a − √b)² ≤ a^ν b^(1−ν) + b^ν a^(1−ν)` for `ν ∉ [0, 1]`.
    pub fn scalar_lemma31_link(&self, a: f64, b: f64, nu: f64) -> Result<Link> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::Domain {
                what: "the scalar lemma (a, b > 0)",
                value: a.min(b),
            });
        }
        if !nu.is_finite() || (0.0..=1.0).contains(&nu) {
            return Err(Error::Precondition(format!("nu = {nu} must lie outside [0, 1]")));
        }
        let d = a.sqrt() - b.sqrt();
        let lhs = (a + b) + 2.0 * (nu - 1.0) * d * d;
        let rhs = a.powf(nu) * b.powf(1.0 - nu) + b.powf(nu) * a.powf(1.0 - nu);
        Ok(self.scalar_leq("lemma", lhs, rhs))
    }

    pub fn scalar_lemma31(&self, a: f64, b: f64, nu: f64) -> Result<bool> {
        Ok(self.scalar_lemma31_link(a, b, nu)?.holds)
    }

    /// `P_s + k (P_s − 2 A^½ ⊗ B^½) ≤ P_t` with
    /// `P_p = A^p ⊗ B^(1−p) + A^(1−p) ⊗ B^p` and `k = (t − s) / (s − 1/2)`.
    pub fn tensor_lemma32(&self, a: &HpdMatrix, b: &HpdMatrix, s: f64, t: f64) -> Result<Outcome> {
        in_lemma32_region(s, t)?;
        let reflected = |p: f64| -> Result<HermitianMatrix> {
            tensor_product(&a.power(p), &b.power(1.0 - p))?
                .add(&tensor_product(&a.power(1.0 - p), &b.power(p))?)
        };
        let k = (t - s) / (s - 0.5);
        let ps = reflected(s)?;
        let centre = tensor_product(&a.sqrt(), &b.sqrt())?.scale(2.0);
        let lhs = ps.add(&ps.sub(&centre)?.scale(k))?;
        let rhs = reflected(t)?;
        let mut out = Outcome::default();
        out.param("s", s);
        out.param("t", t);
        out.push(self.leq("tensor", &lhs, &rhs)?);
        Ok(out)
    }

    /// With `X_p = Σ(A♯_p B) ∘ Σ(A♯_{1−p} B)`, `X = X_s`, `Y = X_{1/2}`,
    /// `Z = X_t` and `k = (t − s) / (s − 1/2)`:
    /// `Y ≤ X ≤ X + k (X − Y) ≤ Z`.
    pub fn hadamard_refinement(&self, pairs: &[Pair], s: f64, t: f64) -> Result<Outcome> {
        common_dim(pairs)?;
        in_lemma32_region(s, t)?;
        let filtered = |p: f64| -> Result<HermitianMatrix> {
            let lo = sum_means(pairs, &weighted_gm(p)?)?;
            let hi = sum_means(pairs, &weighted_gm(1.0 - p)?)?;
            hadamard_product(&lo, &hi)
        };
        let k = (t - s) / (s - 0.5);
        let x = filtered(s)?;
        let y = filtered(0.5)?;
        let z = filtered(t)?;
        let mid = x.add(&x.sub(&y)?.scale(k))?;
        let mut out = Outcome::default();
        out.param("s", s);
        out.param("t", t);
        out.push(self.leq("y_le_x", &y, &x)?);
        out.push(self.leq("x_le_mid", &x, &mid)?);
        out.push(self.leq("mid_le_z", &mid, &z)?);
        Ok(out)
    }

    /// `(A σ B) ♯ (A σ^⊥ B) = A ♯ B`.
    pub fn gm_factorization(&self, a: &HpdMatrix, b: &HpdMatrix, desc: &MeanDescriptor) -> Result<Link> {
        let lhs = gm(&mean(a, b, desc)?, &mean(a, b, &dual_descriptor(desc))?)?;
        let rhs = gm(a, b)?;
        self.same("factorization", &lhs, &rhs)
    }

    /// Hypotheses of the Daykin refinement on a fixed grid, then the chain
    /// `(Σ x y)² ≤ Σ f · Σ g ≤ Σ x² · Σ y²`.
    pub fn scalar_daykin_chain(&self, xs: &[f64], ys: &[f64], pair: DaykinPair) -> Result<Outcome> {
        if xs.is_empty() {
            return Err(Error::Precondition("empty input".into()));
        }
        if xs.len() != ys.len() {
            return Err(Error::DimensionMismatch {
                left: xs.len(),
                right: ys.len(),
            });
        }
        if let Some(&bad) = xs.iter().chain(ys).find(|v| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::Domain {
                what: "the Daykin chain (positive reals)",
                value: bad,
            });
        }
        if let DaykinPair::Callebaut { s } = pair {
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::InvalidParameter {
                    name: "s",
                    value: s,
                    reason: "must lie in [0, 1]",
                });
            }
        }

        let mut out = Outcome::default();
        if let DaykinPair::Callebaut { s } = pair {
            out.param("s", s);
        }
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1.0);
        let (mut product, mut homogeneous, mut cross) = (0.0f64, 0.0f64, f64::INFINITY);
        for &x in &HYPOTHESIS_GRID {
            for &y in &HYPOTHESIS_GRID {
                product = product.max(rel(pair.f(x, y) * pair.g(x, y), x * x * y * y));
                for &l in &HYPOTHESIS_SCALES {
                    homogeneous = homogeneous.max(rel(pair.f(l * x, l * y), l * l * pair.f(x, y)));
                }
                let (fx, fy) = (pair.f(x, 1.0), pair.f(y, 1.0));
                let lhs = y * fx / (x * fy) + x * fy / (y * fx);
                let rhs = x / y + y / x;
                cross = cross.min((rhs - lhs) / lhs.abs().max(rhs.abs()).max(1.0));
            }
        }
        let tol = self.policy.scalar_rel;
        out.push(Link::discrepancy("hyp_product", product, tol));
        out.push(Link::discrepancy("hyp_homogeneous", homogeneous, tol));
        out.push(Link::new("hyp_cross_ratio", cross, tol));

        let dot: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
        let sf: f64 = xs.iter().zip(ys).map(|(x, y)| pair.f(*x, *y)).sum();
        let sg: f64 = xs.iter().zip(ys).map(|(x, y)| pair.g(*x, *y)).sum();
        let sxx: f64 = xs.iter().map(|x| x * x).sum();
        let syy: f64 = ys.iter().map(|y| y * y).sum();
        out.push(self.scalar_leq("cauchy_lower", dot * dot, sf * sg));
        out.push(self.scalar_leq("cauchy_upper", sf * sg, sxx * syy));
        Ok(out)
    }
}
