//! Dense Hermitian matrices and the spectral calculus on them.

mod dense;
mod eigen;
mod hermitian;
mod json;
mod ops;

pub use dense::ComplexMatrix;
pub use eigen::{jacobi_eigh, Eigh};
pub use hermitian::{
    HermitianMatrix, HpdMatrix, HPD_CONDITION_FLOOR, MAX_DIM, MAX_TENSOR_DIM, ROUNDOFF_CLAMP,
};
pub use json::{matrix_from_json, matrix_to_json, MatrixJson};
pub use ops::{
    diagonal_compression, hadamard_product, kron_vec, loewner_leq, mean, relative_spectral_bounds,
    spectral_map, tensor_product, LoewnerVerdict, DEFAULT_LOEWNER_TOL,
};
pub use num_complex::Complex64;
