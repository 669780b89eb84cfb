use std::ops::Deref;

use num_complex::Complex64;

use super::dense::ComplexMatrix;
use super::eigen::{jacobi_eigh, Eigh};
use crate::error::{Error, Result};

/// Largest dimension accepted for input matrices.
pub const MAX_DIM: usize = 64;

/// Largest dimension a tensor product may reach.
pub const MAX_TENSOR_DIM: usize = MAX_DIM * MAX_DIM;

/// Relative floor on `λ_min / λ_max` for validated positive-definite input.
pub const HPD_CONDITION_FLOOR: f64 = 1e-10;

/// Negative eigenvalues above `-ROUNDOFF_CLAMP · λ_max` in computed results
/// are treated as round-off and clamped to `+ROUNDOFF_CLAMP · λ_max`.
pub const ROUNDOFF_CLAMP: f64 = 1e-13;

/// Raw data that is further than this from Hermitian (relative Frobenius) is rejected.
const HERMITIAN_INPUT_TOL: f64 = 1e-8;

/// Dense complex Hermitian matrix. Always exactly conjugate-symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: ComplexMatrix,
}

impl HermitianMatrix {
    /// Takes the Hermitian part of `m`. No closeness check is made.
    pub fn from_complex(m: ComplexMatrix) -> Self {
        Self {
            inner: m.hermitian_part(),
        }
    }

    /// Like [`from_complex`](Self::from_complex) but rejects data that is
    /// not close to Hermitian.
    pub fn try_from_complex(m: ComplexMatrix) -> Result<Self> {
        let drift = m.sub(&m.adjoint()).frobenius_norm();
        let norm = m.frobenius_norm().max(1.0);
        if !m.as_slice().iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Format("matrix has non-finite entries".into()));
        }
        if drift > HERMITIAN_INPUT_TOL * norm {
            return Err(Error::Format(format!(
                "matrix is not Hermitian: ‖A − A*‖_F = {drift:e}"
            )));
        }
        Ok(Self::from_complex(m))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_parts(rows, None)
    }

    /// Builds from row-major real and (optional) imaginary parts.
    pub fn from_parts(re: &[Vec<f64>], im: Option<&[Vec<f64>]>) -> Result<Self> {
        let n = re.len();
        if n == 0 {
            return Err(Error::Format("empty matrix".into()));
        }
        if n > MAX_DIM {
            return Err(Error::UnsupportedDimension { dim: n, max: MAX_DIM });
        }
        let check_rows = |rows: &[Vec<f64>], what: &str| -> Result<()> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Format(format!("{what} part is not {n}x{n}")));
            }
            Ok(())
        };
        check_rows(re, "real")?;
        if let Some(im) = im {
            check_rows(im, "imaginary")?;
        }
        let m = ComplexMatrix::from_fn(n, |i, j| {
            Complex64::new(re[i][j], im.map_or(0.0, |im| im[i][j]))
        });
        Self::try_from_complex(m)
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let n = d.len();
        let m = ComplexMatrix::from_fn(n, |i, j| {
            if i == j {
                Complex64::new(d[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self { inner: m }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: ComplexMatrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    pub fn as_complex(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn real_rows(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j).re).collect()).collect()
    }

    pub fn imag_rows(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j).im).collect()).collect()
    }

    pub fn is_real(&self) -> bool {
        self.inner.as_slice().iter().all(|z| z.im == 0.0)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        check_same_dim(self, rhs)?;
        Ok(Self {
            inner: self.inner.add(&rhs.inner),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        check_same_dim(self, rhs)?;
        Ok(Self {
            inner: self.inner.sub(&rhs.inner),
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            inner: self.inner.scale(s),
        }
    }

    /// `T* A T` for an arbitrary square `T`.
    pub fn congruence(&self, t: &ComplexMatrix) -> Result<Self> {
        if t.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: t.dim(),
            });
        }
        Ok(Self::from_complex(t.adjoint().matmul(&self.inner).matmul(t)))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }

    pub fn eigh(&self) -> Eigh {
        jacobi_eigh(&self.inner)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigh().values
    }

    /// Largest absolute eigenvalue.
    pub fn spectral_norm(&self) -> f64 {
        let eig = self.eigh();
        eig.min().abs().max(eig.max().abs())
    }
}

pub(crate) fn check_same_dim(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<()> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        })
    }
}

/// Hermitian positive-definite matrix, carrying its eigendecomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct HpdMatrix {
    matrix: HermitianMatrix,
    eig: Eigh,
}

impl HpdMatrix {
    /// Validates `λ_min > HPD_CONDITION_FLOOR · λ_max > 0`.
    pub fn new(matrix: HermitianMatrix) -> Result<Self> {
        let eig = matrix.eigh();
        let (lo, hi) = (eig.min(), eig.max());
        if !(hi > 0.0 && lo > HPD_CONDITION_FLOOR * hi) {
            return Err(Error::NotPositiveDefinite { min: lo, max: hi });
        }
        Ok(Self { matrix, eig })
    }

    /// Wraps the result of a computation that is positive definite in exact
    /// arithmetic. Round-off negativity is clamped (see [`ROUNDOFF_CLAMP`]);
    /// anything beyond that is a numerical-degeneracy error.
    pub fn from_computed(matrix: HermitianMatrix) -> Result<Self> {
        let eig = matrix.eigh();
        let (lo, hi) = (eig.min(), eig.max());
        if !(hi > 0.0) || lo <= -ROUNDOFF_CLAMP * hi {
            return Err(Error::NumericalDegeneracy(format!(
                "positive definiteness lost: eigenvalues span [{lo:e}, {hi:e}]"
            )));
        }
        if lo > 0.0 {
            return Ok(Self { matrix, eig });
        }
        let floor = ROUNDOFF_CLAMP * hi;
        let values: Vec<f64> = eig.values.iter().map(|&x| x.max(floor)).collect();
        let matrix = HermitianMatrix::from_complex(ComplexMatrix::congruence_diag(&eig.vectors, &values));
        let eig = Eigh {
            values,
            vectors: eig.vectors,
        };
        Ok(Self { matrix, eig })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(HermitianMatrix::from_real_rows(rows)?)
    }

    pub fn from_diagonal(d: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_diagonal(d))
    }

    pub fn identity(n: usize) -> Self {
        Self::new(HermitianMatrix::identity(n)).expect("identity is positive definite")
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn into_hermitian(self) -> HermitianMatrix {
        self.matrix
    }

    pub fn spectrum(&self) -> &Eigh {
        &self.eig
    }

    /// `A^p` through the stored eigendecomposition.
    pub fn power(&self, p: f64) -> HermitianMatrix {
        HermitianMatrix::from_complex(self.eig.reconstruct_with(|x| pow_positive(x, p)))
    }

    pub fn sqrt(&self) -> HermitianMatrix {
        HermitianMatrix::from_complex(self.eig.reconstruct_with(f64::sqrt))
    }

    pub fn inv_sqrt(&self) -> HermitianMatrix {
        HermitianMatrix::from_complex(self.eig.reconstruct_with(|x| 1.0 / x.sqrt()))
    }

    pub fn scale(&self, s: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "scale",
                value: s,
                reason: "must be positive",
            });
        }
        Ok(Self {
            matrix: self.matrix.scale(s),
            eig: Eigh {
                values: self.eig.values.iter().map(|x| x * s).collect(),
                vectors: self.eig.vectors.clone(),
            },
        })
    }

    /// Sum of positive-definite matrices; panics on an empty list.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a HpdMatrix>) -> Result<Self> {
        let mut iter = items.into_iter();
        let first = iter.next().expect("sum of an empty list");
        let mut acc = first.matrix.clone();
        for m in iter {
            acc = acc.add(&m.matrix)?;
        }
        Self::from_computed(acc)
    }
}

fn pow_positive(x: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else if p == 1.0 {
        x
    } else if p == 0.5 {
        x.sqrt()
    } else {
        x.powf(p)
    }
}

impl Deref for HpdMatrix {
    type Target = HermitianMatrix;

    fn deref(&self) -> &HermitianMatrix {
        &self.matrix
    }
}

impl AsRef<HermitianMatrix> for HpdMatrix {
    fn as_ref(&self) -> &HermitianMatrix {
        &self.matrix
    }
}

impl AsRef<HermitianMatrix> for HermitianMatrix {
    fn as_ref(&self) -> &HermitianMatrix {
        self
    }
}
