//! JSON matrix files: `{"n": 2, "entries": [[re, im], ...]}`, row-major.

use std::fs;
use std::path::Path;

use gershgorin::{Complex64, ComplexMatrix};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(a: &ComplexMatrix) -> Self {
        Self {
            n: a.dim(),
            entries: a.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn into_matrix(self) -> Result<ComplexMatrix, CliError> {
        let expected = self.n * self.n;
        if self.entries.len() != expected {
            return Err(CliError::EntryCount {
                expected,
                found: self.entries.len(),
            });
        }
        let entries = self
            .entries
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::new(self.n, entries).map_err(|e| CliError::Parse(e.to_string()))
    }
}

pub fn parse_matrix_str(text: &str) -> Result<ComplexMatrix, CliError> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    file.into_matrix()
}

pub fn parse_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_matrix_str(&text).map_err(|e| match e {
        CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Compact single-line JSON followed by a newline. Files in this form
/// survive a parse/serialize round trip byte for byte.
pub fn to_canonical_string(a: &ComplexMatrix) -> String {
    let mut s =
        serde_json::to_string(&MatrixFile::from_matrix(a)).expect("finite entries serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_family_file() {
        let a = parse_matrix_str(r#"{"n":2,"entries":[[0,0],[1,0],[0.25,0],[0,0]]}"#).unwrap();
        assert_eq!(
            a,
            ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.25, 0.0]]).unwrap()
        );
    }

    #[test]
    fn scalar_file() {
        let a = parse_matrix_str(r#"{"n":1,"entries":[[3,4]]}"#).unwrap();
        assert_eq!(a[(0, 0)], Complex64::new(3.0, 4.0));
    }

    #[test]
    fn entry_count_mismatch() {
        let err = parse_matrix_str(r#"{"n":2,"entries":[[0,0]]}"#).unwrap_err();
        assert_eq!(err.to_string(), "expected 4 entries, found 1");
    }

    #[test]
    fn malformed_input_reports_position() {
        let err = parse_matrix_str("{\"n\":2,\n\"entries\":[[0,0],[1]]}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");

        let err = parse_matrix_str(r#"{"n":1}"#).unwrap_err();
        assert!(err.to_string().contains("missing field `entries`"));

        let err = parse_matrix_str(r#"{"n":1,"entries":[[1e999,0]]}"#).unwrap_err();
        assert!(matches!(err, CliError::Parse(_)));

        assert!(parse_matrix_str(r#"{"n":0,"entries":[]}"#).is_err());
    }

    #[test]
    fn canonical_form() {
        let a = parse_matrix_str(r#"{"n":1,"entries":[[3,4]]}"#).unwrap();
        assert_eq!(
            to_canonical_string(&a),
            "{\"n\":1,\"entries\":[[3.0,4.0]]}\n"
        );
    }
}
