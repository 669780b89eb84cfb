//! Power-mean interpolation paths `F_{r,t}` and their reflection ratios `H_{r,t}`.

/// `F_{r,t}(x) = (1 - t + t x^r)^(1/r)`, the representing function of the
/// power-mean path `m_{r,t}`; `x^t` at `r = 0`.
///
/// `x` must be positive. The endpoints `t = 0` and `t = 1` return exactly
/// `1` and `x`. Away from them the value is computed as
/// `exp(log1p(t·expm1(r ln x)) / r)`, which stays accurate as `r → 0`.
pub fn path_value(r: f64, t: f64, x: f64) -> f64 {
    if t == 0.0 {
        return 1.0;
    }
    if t == 1.0 {
        return x;
    }
    let ln_x = x.ln();
    if r == 0.0 {
        return (t * ln_x).exp();
    }
    ((t * (r * ln_x).exp_m1()).ln_1p() / r).exp()
}

/// `H_{r,t}(x) = F_{r,t}(x) / F_{r,1-t}(x)`.
pub fn ratio_value(r: f64, t: f64, x: f64) -> f64 {
    if r == 0.0 {
        return ((2.0 * t - 1.0) * x.ln()).exp();
    }
    if t == 0.5 {
        return 1.0;
    }
    path_value(r, t, x) / path_value(r, 1.0 - t, x)
}

/// The `r`-power mean of `a` and `b` with weight `w` on `b`; this is
/// `a · F_{r,w}(b / a)`.
pub fn power_mean(r: f64, w: f64, a: f64, b: f64) -> f64 {
    a * path_value(r, w, b / a)
}
