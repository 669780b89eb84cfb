//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies a real Givens rotation that zeroes it. Sweeps run
//! until no off-diagonal entry is above the relative threshold.

use num_complex::Complex64;

use super::dense::ComplexMatrix;

const MAX_SWEEPS: usize = 100;

/// `A = V diag(values) V*`, eigenvalues ascending, eigenvectors in the columns of `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigh {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    /// `V diag(f(λ)) V*`; `f` is applied to each eigenvalue in ascending order.
    pub fn reconstruct_with(&self, mut f: impl FnMut(f64) -> f64) -> ComplexMatrix {
        let d: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        ComplexMatrix::congruence_diag(&self.vectors, &d)
    }
}

/// Eigendecomposition of the Hermitian part of `a`.
pub fn jacobi_eigh(a: &ComplexMatrix) -> Eigh {
    let n = a.dim();
    let mut a = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let floor = 1e-18 * a.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if g <= floor || g <= 0.5 * f64::EPSILON * (app * aqq).abs().sqrt() {
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                rotated = true;
                rotate(&mut a, &mut v, p, q, apq, g, app, aqq);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, k| v[(i, order[k])]);
    Eigh { values, vectors }
}

#[allow(clippy::too_many_arguments)]
fn rotate(
    a: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    p: usize,
    q: usize,
    apq: Complex64,
    g: f64,
    app: f64,
    aqq: f64,
) {
    let n = a.dim();
    // D = diag(.., conj(e) at q, ..) makes the (p, q) entry of D* A D equal to |a_pq|.
    let e = apq / g;
    let ec = e.conj();
    for k in 0..n {
        a[(k, q)] *= ec;
        v[(k, q)] *= ec;
    }
    for k in 0..n {
        a[(q, k)] *= e;
    }

    let theta = (aqq - app) / (2.0 * g);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * s;
        a[(k, q)] = akp * s + akq * c;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s;
        v[(k, q)] = vkp * s + vkq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * s;
        a[(q, k)] = apk * s + aqk * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * g, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * g, 0.0);
}
