//! JSON tuple files.

use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, GeneralTuple, HermitianTuple};

pub const FORMAT_VERSION: &str = "1";

/// `matrices[k][row][col] = [re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleFile {
    pub format_version: String,
    pub size: usize,
    pub length: usize,
    pub hermitian: bool,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

fn encode(mats: &[ComplexMatrix<f64>]) -> Vec<Vec<Vec<[f64; 2]>>> {
    mats.iter()
        .map(|m| {
            (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
                .collect()
        })
        .collect()
}

impl TupleFile {
    pub fn from_hermitian(t: &HermitianTuple<f64>, comment: Option<String>) -> Self {
        Self {
            format_version: FORMAT_VERSION.into(),
            size: t.size(),
            length: t.length(),
            hermitian: true,
            matrices: encode(t.matrices()),
            comment,
        }
    }

    pub fn from_general(t: &GeneralTuple<f64>, comment: Option<String>) -> Self {
        Self {
            format_version: FORMAT_VERSION.into(),
            size: t.size(),
            length: t.length(),
            hermitian: false,
            matrices: encode(t.matrices()),
            comment,
        }
    }

    fn decode(&self) -> Result<Vec<ComplexMatrix<f64>>> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Malformed(format!("unsupported format_version '{}'", self.format_version)));
        }
        if self.matrices.len() != self.length {
            return Err(Error::Malformed(format!(
                "length is {} but {} matrices are present",
                self.length,
                self.matrices.len()
            )));
        }
        let n = self.size;
        self.matrices
            .iter()
            .enumerate()
            .map(|(k, rows)| {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::Malformed(format!("matrix {k} is not {n}x{n}")));
                }
                let data = rows.iter().flatten().map(|[re, im]| Complex::new(*re, *im)).collect();
                ComplexMatrix::from_vec(n, n, data).map_err(|e| Error::Malformed(format!("matrix {k}: {e}")))
            })
            .collect()
    }

    pub fn to_hermitian(&self) -> Result<HermitianTuple<f64>> {
        if !self.hermitian {
            return Err(Error::Malformed("file holds a general tuple".into()));
        }
        HermitianTuple::new(self.decode()?).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn to_general(&self) -> Result<GeneralTuple<f64>> {
        GeneralTuple::new(self.decode()?).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tuple files serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: Self = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        f.decode()?;
        Ok(f)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}
