mod common;

use common::*;
use opmeans::scalar::{
    closed_form_weighted_constant, dual_descriptor, gamma_constant, geometric_path_closed_form,
    lee_constant, path_composition_weight, path_value, ratio_value, representing_value,
    reverse_constants, secant_coefficients, theorem25_constants, zeta_constant, MeanDescriptor,
    SpectralBounds,
};
use proptest::prelude::*;

/// Brute-force maximum: a uniform grid, then two rounds of local
/// re-gridding around the best sample.
fn grid_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let (mut a, mut b) = (lo, hi);
    let mut best = f64::NEG_INFINITY;
    for n in [50_000usize, 2_000, 2_000] {
        let h = (b - a) / n as f64;
        let mut arg = a;
        for i in 0..=n {
            let x = a + h * i as f64;
            let v = f(x);
            if v > best {
                best = v;
                arg = x;
            }
        }
        a = (arg - h).max(lo);
        b = (arg + h).min(hi);
    }
    best
}

fn f_of(desc: &MeanDescriptor) -> impl Fn(f64) -> f64 + '_ {
    move |x| mean2(desc, 1.0, x)
}

fn gamma_oracle(desc: &MeanDescriptor, b: SpectralBounds) -> f64 {
    let (m, big_m) = (b.lower(), b.upper());
    let f = f_of(desc);
    let (fm, f_big) = (f(m), f(big_m));
    // Chord through the end points, written in two-point form.
    let chord = |x: f64| fm + (f_big - fm) * (x - m) / (big_m - m);
    grid_max(|x| f(x) / chord(x), m, big_m)
}

fn zeta_oracle(desc: &MeanDescriptor, b: SpectralBounds) -> f64 {
    // ζ_f is γ for the dual representing function x / f(x).
    let (m, big_m) = (b.lower(), b.upper());
    let g = |x: f64| dual2(desc, 1.0, x);
    let (gm, g_big) = (g(m), g(big_m));
    let chord = |x: f64| gm + (g_big - gm) * (x - m) / (big_m - m);
    grid_max(|x| g(x) / chord(x), m, big_m)
}

#[test]
fn gamma_and_zeta_match_brute_force() {
    let mut worst: f64 = 0.0;
    for desc in catalog_means() {
        for b in bounds_grid() {
            let g = gamma_constant(&desc, b).unwrap();
            let z = zeta_constant(&desc, b).unwrap();
            let eg = (g - gamma_oracle(&desc, b)).abs() / g;
            let ez = (z - zeta_oracle(&desc, b)).abs() / z;
            assert!(eg <= 1e-7, "{desc} {b:?} gamma err {eg}");
            assert!(ez <= 1e-7, "{desc} {b:?} zeta err {ez}");
            worst = worst.max(eg).max(ez);
        }
    }
    println!("worst relative error {worst:e}");
}

#[test]
fn geometric_closed_form_matches_gamma() {
    for b in bounds_grid() {
        for alpha in [0.1, 0.25, 0.5, 0.7, 0.95] {
            let desc = MeanDescriptor::geometric(alpha).unwrap();
            let g = gamma_constant(&desc, b).unwrap();
            let cf = closed_form_weighted_constant(alpha, b).unwrap();
            assert!((g - cf).abs() <= 1e-7, "{alpha} {b:?}: {g} vs {cf}");
            // The dual of ♯_α is ♯_{1-α}, and its γ is the same number.
            let z = zeta_constant(&desc, b).unwrap();
            assert!((z - closed_form_weighted_constant(1.0 - alpha, b).unwrap()).abs() <= 1e-7);
        }
        let half = gamma_constant(&MeanDescriptor::geometric_mean(), b).unwrap();
        assert!((half - lee_constant(b)).abs() <= 1e-9);
    }
}

#[test]
fn closed_form_endpoints() {
    let b = bounds(1.0, 4.0);
    assert_eq!(closed_form_weighted_constant(0.0, b).unwrap(), 1.0);
    assert_eq!(closed_form_weighted_constant(1.0, b).unwrap(), 1.0);
    assert!(closed_form_weighted_constant(1.2, b).is_err());
}

#[test]
fn arithmetic_harmonic_pair() {
    // On [1, 4]: γ(∇) = 1 and ζ(∇) = γ(!) = 10/9.
    let b = bounds(1.0, 4.0);
    let a = reverse_constants(&MeanDescriptor::arithmetic_mean(), b).unwrap();
    assert!((a.gamma - 1.0).abs() <= 1e-12);
    assert!((a.zeta - 10.0 / 9.0).abs() <= 1e-10);
    let h = reverse_constants(&MeanDescriptor::harmonic_mean(), b).unwrap();
    assert!((h.gamma - a.zeta).abs() <= 1e-10);
    assert!((h.zeta - a.gamma).abs() <= 1e-10);
}

#[test]
fn secant_passes_through_end_points() {
    for desc in catalog_means() {
        for b in bounds_grid() {
            let (mu, nu) = secant_coefficients(&desc, b).unwrap();
            for x in [b.lower(), b.upper()] {
                let want = mean2(&desc, 1.0, x);
                assert!((mu * x + nu - want).abs() <= 1e-12 * want.max(1.0));
            }
        }
    }
}

#[test]
fn representing_functions_match_formulas() {
    for desc in catalog_means() {
        let dual = dual_descriptor(&desc);
        for x in [0.01, 0.3, 1.0, 2.7, 55.0] {
            let f = representing_value(&desc, x).unwrap();
            assert!((f - mean2(&desc, 1.0, x)).abs() <= 1e-13 * f.max(1.0), "{desc}");
            let fd = representing_value(&dual, x).unwrap();
            assert!((fd - x / f).abs() <= 1e-13 * fd.max(1.0), "{desc} dual");
        }
    }
    assert!(representing_value(&MeanDescriptor::geometric_mean(), -1.0).is_err());
}

#[test]
fn path_values_match_power_means() {
    for r in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        for t in [0.0, 0.3, 0.5, 1.0] {
            for x in [0.2, 1.0, 4.0, 9.0] {
                let want = power2(r, t, 1.0, x);
                assert!((path_value(r, t, x) - want).abs() <= 1e-13 * want);
                let h = power2(r, t, 1.0, x) / power2(r, 1.0 - t, 1.0, x);
                assert!((ratio_value(r, t, x) - h).abs() <= 1e-13 * h);
            }
        }
    }
}

#[test]
fn theorem25_r0_t1_is_weighted_geometric() {
    // H_{0,1}(x) = x, so the interval is [m, M] itself.
    for b in bounds_grid() {
        for s0 in [0.25, 0.5, 0.75] {
            let c = theorem25_constants(0.0, 1.0, s0, b).unwrap();
            let want = closed_form_weighted_constant(s0, b).unwrap();
            assert!((c.gamma - want).abs() <= 1e-7);
            assert!((c.sqrt_gamma_zeta - want).abs() <= 1e-7);
            assert!((geometric_path_closed_form(1.0, s0, b).unwrap() - want).abs() <= 1e-15);
        }
    }
}

#[test]
fn theorem25_constants_match_brute_force() {
    for r in [-1.0, -0.5, 0.5, 1.0] {
        for t in [0.7, 0.9, 1.0] {
            for s0 in [0.25, 0.75] {
                let b = bounds(1.0, 4.0);
                let c = theorem25_constants(r, t, s0, b).unwrap();
                let h = |x: f64| power2(r, t, 1.0, x) / power2(r, 1.0 - t, 1.0, x);
                let (lo, hi) = (h(1.0).min(h(4.0)), h(1.0).max(h(4.0)));
                let desc = MeanDescriptor::power_path(r, s0).unwrap();
                let sb = bounds(lo, hi);
                assert!((c.gamma - gamma_oracle(&desc, sb)).abs() <= 1e-7);
                assert!((c.zeta - zeta_oracle(&desc, sb)).abs() <= 1e-7);
            }
        }
    }
    let half = theorem25_constants(-1.0, 0.5, 0.5, bounds(1.0, 4.0)).unwrap();
    assert_eq!(half.sqrt_gamma_zeta, 1.0);
}

#[test]
fn composition_weight_round_trip() {
    for t in [0.0, 0.2, 0.7, 0.9, 1.0] {
        for s0 in [0.0, 0.25, 0.5, 1.0] {
            let s = s0 * t + (1.0 - s0) * (1.0 - t);
            let back = path_composition_weight(t, s).unwrap();
            assert!((back - s0).abs() <= 1e-12, "{t} {s0} {back}");
        }
    }
    assert!(path_composition_weight(0.9, 0.95).is_err());
    assert!(path_composition_weight(0.9, 0.05).is_err());
}

#[test]
fn degenerate_interval_is_rejected() {
    let b = SpectralBounds::new(2.0, 2.0).unwrap();
    assert!(gamma_constant(&MeanDescriptor::arithmetic_mean(), b).is_err());
    assert_eq!(lee_constant(b), 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn constants_are_at_least_one(k in 0usize..10, m in 0.05f64..10.0, ratio in 1.01f64..30.0) {
        let b = bounds(m, m * ratio);
        let c = reverse_constants(&catalog_means()[k], b).unwrap();
        prop_assert!(c.gamma >= 1.0 - 1e-12 && c.zeta >= 1.0 - 1e-12);
        prop_assert!((c.sqrt_gamma_zeta.powi(2) - c.gamma * c.zeta).abs() <= 1e-12 * c.gamma * c.zeta);
        prop_assert!(lee_constant(b) >= 1.0);
    }

    #[test]
    fn dual_swaps_gamma_and_zeta(k in 0usize..10, m in 0.05f64..10.0, ratio in 1.01f64..30.0) {
        let b = bounds(m, m * ratio);
        let desc = &catalog_means()[k];
        let c = reverse_constants(desc, b).unwrap();
        let d = reverse_constants(&dual_descriptor(desc), b).unwrap();
        prop_assert!((c.gamma - d.zeta).abs() <= 1e-9 * c.gamma);
        prop_assert!((c.zeta - d.gamma).abs() <= 1e-9 * c.zeta);
    }

    #[test]
    fn gamma_grows_with_the_interval(k in 0usize..10, m in 0.1f64..5.0, r1 in 1.01f64..5.0, extra in 1.0f64..4.0) {
        let desc = &catalog_means()[k];
        let small = gamma_constant(desc, bounds(m, m * r1)).unwrap();
        let large = gamma_constant(desc, bounds(m, m * r1 * extra)).unwrap();
        prop_assert!(large >= small * (1.0 - 1e-9));
    }
}
