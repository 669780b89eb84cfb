//! `{"n": int, "re": [[...]], "im": [[...]]}` matrix files. `im` is optional
//! on input and omitted on output for real matrices.

use serde::{Deserialize, Serialize};

use super::hermitian::HermitianMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &HermitianMatrix) -> Self {
        Self {
            n: m.dim(),
            re: m.real_rows(),
            im: if m.is_real() { None } else { Some(m.imag_rows()) },
        }
    }

    pub fn to_matrix(&self) -> Result<HermitianMatrix> {
        if self.re.len() != self.n {
            return Err(Error::Format(format!(
                "declared n = {} but found {} rows",
                self.n,
                self.re.len()
            )));
        }
        HermitianMatrix::from_parts(&self.re, self.im.as_deref())
    }
}

pub fn matrix_from_json(text: &str) -> Result<HermitianMatrix> {
    let raw: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    raw.to_matrix()
}

pub fn matrix_to_json(m: &HermitianMatrix) -> String {
    serde_json::to_string(&MatrixJson::from_matrix(m)).expect("matrix serializes")
}
