mod common;

use common::*;
use nalgebra::DMatrix;
use opmeans::instances::{random_hpd, split, EigRange};
use opmeans::matrix::{
    hadamard_product, loewner_leq, mean, relative_spectral_bounds, spectral_map, tensor_product,
    Complex64, ComplexMatrix, HermitianMatrix, HpdMatrix,
};
use opmeans::scalar::{dual_descriptor, path_value, MeanDescriptor};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn hpd(dim: usize, seed: u64, complex: bool) -> HpdMatrix {
    random_hpd(dim, seed, EigRange::new(0.3, 3.0).unwrap(), complex).unwrap()
}

fn gaussian(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ComplexMatrix::from_fn(dim, |_, _| {
        Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
    })
}

fn rel_diff(x: &HermitianMatrix, y: &HermitianMatrix) -> f64 {
    x.sub(y).unwrap().frobenius_norm() / y.frobenius_norm().max(1.0)
}

fn to_nalgebra(m: &HermitianMatrix) -> DMatrix<Complex64> {
    let n = m.dim();
    DMatrix::from_fn(n, n, |i, j| m.get(i, j))
}

fn means() -> Vec<MeanDescriptor> {
    catalog_means()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transformer_equality(seed in any::<u64>(), dim in 1usize..=5, k in 0usize..10) {
        let desc = &means()[k];
        let a = hpd(dim, split(seed, 0), true);
        let b = hpd(dim, split(seed, 1), true);
        // Shift keeps T comfortably invertible.
        let t = gaussian(dim, split(seed, 2)).add(&ComplexMatrix::identity(dim).scale(3.0));
        let lhs = mean(&a, &b, desc).unwrap().congruence(&t).unwrap();
        let ta = HpdMatrix::from_computed(a.congruence(&t).unwrap()).unwrap();
        let tb = HpdMatrix::from_computed(b.congruence(&t).unwrap()).unwrap();
        let rhs = mean(&ta, &tb, desc).unwrap();
        prop_assert!(rel_diff(&lhs, &rhs) <= 1e-9, "{}", rel_diff(&lhs, &rhs));
    }

    #[test]
    fn monotone_in_both_arguments(seed in any::<u64>(), dim in 1usize..=5, k in 0usize..10) {
        let desc = &means()[k];
        let a = hpd(dim, split(seed, 0), false);
        let b = hpd(dim, split(seed, 1), false);
        let p = gaussian(dim, split(seed, 2));
        let q = gaussian(dim, split(seed, 3));
        // P P* and Q Q* are positive semidefinite.
        let c = HpdMatrix::from_computed(a.add(&HermitianMatrix::from_complex(p.matmul(&p.adjoint()))).unwrap()).unwrap();
        let d = HpdMatrix::from_computed(b.add(&HermitianMatrix::from_complex(q.matmul(&q.adjoint()).scale(0.5))).unwrap()).unwrap();
        let low = mean(&a, &b, desc).unwrap();
        let high = mean(&c, &d, desc).unwrap();
        let v = loewner_leq(&low, &high, 1e-9).unwrap();
        prop_assert!(v.holds, "gap {}", v.min_gap_eigenvalue);
    }

    #[test]
    fn geometric_mean_factorization(seed in any::<u64>(), dim in 1usize..=6, k in 0usize..10) {
        let desc = &means()[k];
        let a = hpd(dim, split(seed, 0), seed % 2 == 0);
        let b = hpd(dim, split(seed, 1), seed % 2 == 0);
        let g = MeanDescriptor::geometric_mean();
        let lhs = mean(&mean(&a, &b, desc).unwrap(), &mean(&a, &b, &dual_descriptor(desc)).unwrap(), &g).unwrap();
        let rhs = mean(&a, &b, &g).unwrap();
        prop_assert!(rel_diff(&lhs, &rhs) <= 1e-10);
    }

    #[test]
    fn power_path_axioms(seed in any::<u64>(), dim in 1usize..=5, r in -1.0f64..=1.0, p in 0.0f64..=1.0, q in 0.0f64..=1.0) {
        let a = hpd(dim, split(seed, 0), true);
        let b = hpd(dim, split(seed, 1), true);
        let path = |t: f64| MeanDescriptor::power_path(r, t).unwrap();
        prop_assert!(rel_diff(&mean(&a, &b, &path(0.0)).unwrap(), &a) <= 1e-12);
        prop_assert!(rel_diff(&mean(&a, &b, &path(1.0)).unwrap(), &b) <= 1e-12);
        let x = mean(&a, &b, &path(p)).unwrap();
        let y = mean(&a, &b, &path(q)).unwrap();
        let composed = mean(&x, &y, &path(0.5)).unwrap();
        let direct = mean(&a, &b, &path((p + q) / 2.0)).unwrap();
        prop_assert!(rel_diff(&composed, &direct) <= 1e-9, "{}", rel_diff(&composed, &direct));
    }

    #[test]
    fn eigenvalues_match_nalgebra(seed in any::<u64>(), dim in 1usize..=12) {
        let g = gaussian(dim, seed);
        let m = HermitianMatrix::from_complex(g.add(&g.adjoint()));
        let ours = m.eigenvalues();
        let mut theirs: Vec<f64> = to_nalgebra(&m).symmetric_eigenvalues().iter().copied().collect();
        theirs.sort_by(f64::total_cmp);
        let scale = m.frobenius_norm().max(1.0);
        for (x, y) in ours.iter().zip(&theirs) {
            prop_assert!((x - y).abs() <= 1e-11 * scale, "{x} vs {y}");
        }
    }

    #[test]
    fn hadamard_is_isometric_compression(seed in any::<u64>(), dim in 1usize..=5) {
        let a = hpd(dim, split(seed, 0), true);
        let b = hpd(dim, split(seed, 1), true);
        let n = dim;
        // U e_j = e_j ⊗ e_j, built explicitly.
        let u = DMatrix::<Complex64>::from_fn(n * n, n, |row, col| {
            if row == col * n + col { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }
        });
        let kron = to_nalgebra(&a).kronecker(&to_nalgebra(&b));
        let compressed = u.adjoint() * kron * u;
        let ours = hadamard_product(&a, &b).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert!((compressed[(i, j)] - ours.get(i, j)).norm() <= 1e-12);
            }
        }
        // Schur product theorem.
        prop_assert!(ours.eigh().min() > 0.0);
    }

    #[test]
    fn tensor_acts_on_product_vectors(seed in any::<u64>(), n in 1usize..=4, p in 1usize..=4) {
        let a = hpd(n, split(seed, 0), true);
        let b = hpd(p, split(seed, 1), true);
        let t = tensor_product(&a, &b).unwrap();
        let x: Vec<Complex64> = gaussian(n, split(seed, 2)).as_slice()[..n].to_vec();
        let y: Vec<Complex64> = gaussian(p, split(seed, 3)).as_slice()[..p].to_vec();
        let lhs = t.as_complex().mul_vec(&opmeans::matrix::kron_vec(&x, &y));
        let rhs = opmeans::matrix::kron_vec(&a.as_complex().mul_vec(&x), &b.as_complex().mul_vec(&y));
        let scale: f64 = rhs.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for (l, r) in lhs.iter().zip(&rhs) {
            prop_assert!((l - r).norm() <= 1e-12 * scale);
        }
        prop_assert!(t.eigh().min() > 0.0);
    }

    #[test]
    fn identity_map_reconstructs(seed in any::<u64>(), dim in 1usize..=8) {
        let g = gaussian(dim, seed);
        let m = HermitianMatrix::from_complex(g.add(&g.adjoint()));
        let back = spectral_map(&m, |x| x).unwrap();
        prop_assert!(m.sub(&back).unwrap().frobenius_norm() <= 1e-12 * m.frobenius_norm().max(1.0));
    }

    #[test]
    fn identity_first_argument_is_spectral_map(seed in any::<u64>(), dim in 1usize..=5, r in -1.0f64..=1.0, t in 0.0f64..=1.0) {
        let b = hpd(dim, seed, true);
        let lhs = mean(&HpdMatrix::identity(dim), &b, &MeanDescriptor::power_path(r, t).unwrap()).unwrap();
        let rhs = spectral_map(&b, |x| path_value(r, t, x)).unwrap();
        prop_assert!(rel_diff(&lhs, &rhs) <= 1e-12);
    }

    #[test]
    fn constrained_pairs_respect_bounds(seed in any::<u64>(), dim in 1usize..=6, m in 0.2f64..2.0, ratio in 1.0f64..8.0) {
        let b = bounds(m, m * ratio);
        let (x, y) = opmeans::instances::random_constrained_pair(dim, b, seed, seed % 2 == 0, EigRange::default()).unwrap();
        prop_assert!(loewner_leq(&x.as_hermitian().scale(m), &y, 1e-9).unwrap().holds);
        prop_assert!(loewner_leq(&y, &x.as_hermitian().scale(m * ratio), 1e-9).unwrap().holds);
        let rb = relative_spectral_bounds(&x, &y).unwrap();
        prop_assert!(rb.lower() >= m - 1e-9 * m * ratio && rb.upper() <= m * ratio * (1.0 + 1e-9));
    }
}

#[test]
fn commuting_means_are_entrywise() {
    let b = bounds(0.5, 3.0);
    for i in 0..24 {
        let fam = commuting(i, b, false);
        let desc = &means()[i % 10];
        for ((a, bm), (sa, sb)) in fam.pairs.iter().zip(&fam.spectra) {
            let got = mean(a, bm, desc).unwrap();
            let want: Vec<f64> = sa.iter().zip(sb).map(|(x, y)| mean2(desc, *x, *y)).collect();
            let mut got_eigs = got.eigenvalues();
            let mut want = want;
            want.sort_by(f64::total_cmp);
            got_eigs.sort_by(f64::total_cmp);
            for (g, w) in got_eigs.iter().zip(&want) {
                assert!((g - w).abs() <= 1e-12 * w.max(1.0), "{g} vs {w}");
            }
        }
    }
}

#[test]
fn commuting_family_commutes() {
    let fam = commuting(5, bounds(1.0, 4.0), false);
    let mats: Vec<&HpdMatrix> = fam.pairs.iter().flat_map(|(a, b)| [a, b]).collect();
    for x in &mats {
        for y in &mats {
            let xy = x.as_complex().matmul(y.as_complex());
            let yx = y.as_complex().matmul(x.as_complex());
            let scale = x.frobenius_norm() * y.frobenius_norm();
            assert!(xy.sub(&yx).frobenius_norm() <= 1e-11 * scale);
        }
    }
}
