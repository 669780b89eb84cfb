//! Spectral calculus and the operations built on it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dense::ComplexMatrix;
use super::hermitian::{check_same_dim, HermitianMatrix, HpdMatrix, MAX_TENSOR_DIM, ROUNDOFF_CLAMP};
use crate::error::{Error, Result};
use crate::scalar::{MeanDescriptor, SpectralBounds};

/// Default relative tolerance for Loewner comparisons.
pub const DEFAULT_LOEWNER_TOL: f64 = 1e-9;

/// Outcome of testing `A ≤ B` in the Loewner order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoewnerVerdict {
    pub holds: bool,
    /// `λ_min(B − A)`.
    pub min_gap_eigenvalue: f64,
    /// `max(‖A‖₂, ‖B‖₂, 1)`.
    pub scale: f64,
    pub tolerance_used: f64,
}

/// `U f(Λ) U*` for `A = U Λ U*`.
///
/// Fails with [`Error::SpectralDomain`] naming the first eigenvalue at which
/// `f` is not finite.
pub fn spectral_map<F>(a: &HermitianMatrix, f: F) -> Result<HermitianMatrix>
where
    F: Fn(f64) -> f64,
{
    let eig = a.eigh();
    let mut values = Vec::with_capacity(eig.values.len());
    for &x in &eig.values {
        let y = f(x);
        if !y.is_finite() {
            return Err(Error::SpectralDomain(x));
        }
        values.push(y);
    }
    Ok(HermitianMatrix::from_complex(ComplexMatrix::congruence_diag(
        &eig.vectors,
        &values,
    )))
}

/// `A^-½ B A^-½` for the relative spectrum of `B` with respect to `A`.
fn relative_operator(a: &HpdMatrix, b: &HermitianMatrix) -> Result<HermitianMatrix> {
    check_same_dim(a, b)?;
    let inv_half = a.inv_sqrt();
    Ok(HermitianMatrix::from_complex(
        inv_half
            .as_complex()
            .matmul(b.as_complex())
            .matmul(inv_half.as_complex()),
    ))
}

/// Kubo–Ando mean `A σ B = A^½ f(A^-½ B A^-½) A^½`.
pub fn mean(a: &HpdMatrix, b: &HpdMatrix, desc: &MeanDescriptor) -> Result<HpdMatrix> {
    let c = relative_operator(a, b)?;
    let eig = c.eigh();
    let top = eig.max();
    if !(top > 0.0) || eig.min() <= -ROUNDOFF_CLAMP * top {
        return Err(Error::NumericalDegeneracy(format!(
            "relative operator A^-½ B A^-½ has spectrum [{:e}, {top:e}]",
            eig.min()
        )));
    }
    let floor = ROUNDOFF_CLAMP * top;
    let mut values = Vec::with_capacity(eig.values.len());
    for &x in &eig.values {
        let x = x.max(floor);
        let y = desc.eval(x);
        if !(y.is_finite() && y > 0.0) {
            return Err(Error::InvalidMean(format!(
                "{} evaluates to {y} at x = {x}",
                desc.label()
            )));
        }
        values.push(y);
    }
    let fc = ComplexMatrix::congruence_diag(&eig.vectors, &values);
    let half = a.sqrt();
    let out = half.as_complex().matmul(&fc).matmul(half.as_complex());
    HpdMatrix::from_computed(HermitianMatrix::from_complex(out))
}

/// Kronecker product `A ⊗ B = (a_ij B)`.
pub fn tensor_product(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<HermitianMatrix> {
    let (n, p) = (a.dim(), b.dim());
    let dim = n * p;
    if dim > MAX_TENSOR_DIM {
        return Err(Error::UnsupportedDimension {
            dim,
            max: MAX_TENSOR_DIM,
        });
    }
    let m = ComplexMatrix::from_fn(dim, |row, col| {
        a.get(row / p, col / p) * b.get(row % p, col % p)
    });
    Ok(HermitianMatrix::from_complex(m))
}

/// Entrywise (Schur) product.
pub fn hadamard_product(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<HermitianMatrix> {
    check_same_dim(a, b)?;
    Ok(HermitianMatrix::from_complex(
        a.as_complex().zip_with(b.as_complex(), |x, y| x * y),
    ))
}

/// Tests `A ≤ B`: holds iff `λ_min(B − A) ≥ −rel_tol · max(‖A‖₂, ‖B‖₂, 1)`.
pub fn loewner_leq(a: &HermitianMatrix, b: &HermitianMatrix, rel_tol: f64) -> Result<LoewnerVerdict> {
    if !(rel_tol > 0.0 && rel_tol.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "rel_tol",
            value: rel_tol,
            reason: "must be positive",
        });
    }
    let diff = b.sub(a)?;
    let gap = diff.eigh().min();
    let scale = a.spectral_norm().max(b.spectral_norm()).max(1.0);
    let tolerance_used = rel_tol * scale;
    Ok(LoewnerVerdict {
        holds: gap >= -tolerance_used,
        min_gap_eigenvalue: gap,
        scale,
        tolerance_used,
    })
}

/// Tightest `(m, M)` with `m A ≤ B ≤ M A`: the extreme eigenvalues of `A^-½ B A^-½`.
pub fn relative_spectral_bounds(a: &HpdMatrix, b: &HpdMatrix) -> Result<SpectralBounds> {
    let c = relative_operator(a, b)?;
    let eig = c.eigh();
    let (lo, hi) = (eig.min(), eig.max());
    if !(lo > 0.0) {
        return Err(Error::NumericalDegeneracy(format!(
            "relative spectrum [{lo:e}, {hi:e}] is not positive"
        )));
    }
    SpectralBounds::new(lo, hi)
}

/// `U* T U` with `U e_j = e_j ⊗ e_j`: the principal submatrix of an
/// `n² × n²` matrix on the indices `j n + j`.
pub fn diagonal_compression(t: &HermitianMatrix, n: usize) -> Result<HermitianMatrix> {
    if t.dim() != n * n {
        return Err(Error::DimensionMismatch {
            left: t.dim(),
            right: n * n,
        });
    }
    let idx = |j: usize| j * n + j;
    Ok(HermitianMatrix::from_complex(ComplexMatrix::from_fn(n, |i, j| {
        t.get(idx(i), idx(j))
    })))
}

/// `x ⊗ y` for vectors.
pub fn kron_vec(x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    x.iter().flat_map(|&a| y.iter().map(move |&b| a * b)).collect()
}
