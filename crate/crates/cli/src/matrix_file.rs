//! One matrix per file: `{"rows": m, "cols": n, "entries": [[re, im], ...]}`, row-major.

use std::fs;
use std::path::Path;

use banach_mp::matcore::{c, Matrix};
use serde::{Deserialize, Serialize};

use crate::failure::Failure;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<Matrix, Failure> {
        let data = self.entries.iter().map(|[re, im]| c(*re, *im)).collect();
        Matrix::new(self.rows, self.cols, data).map_err(|e| Failure::Parse(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<Matrix, Failure> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| Failure::Parse(e.to_string()))?;
        file.to_matrix()
    }

    pub fn read(path: &Path) -> Result<Matrix, Failure> {
        let text = fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|f| match f {
            Failure::Parse(m) => Failure::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn serialize(m: &Matrix) -> String {
        serde_json::to_string(&MatrixFile::from(m)).expect("plain data serializes")
    }
}

impl From<&Matrix> for MatrixFile {
    fn from(m: &Matrix) -> Self {
        MatrixFile { rows: m.rows(), cols: m.cols(), entries: m.entries().iter().map(|z| [z.re, z.im]).collect() }
    }
}
