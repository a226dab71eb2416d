//! JSON code files: a GRS code with its field, plus optional construction
//! metadata.
//!
//! ```json
//! { "field": {"p": 3, "e": 1, "modulus": [2, 2, 1]},
//!   "a": [..], "v": [..], "k": 2, "extended": false,
//!   "quantum": {"n": 9, "k": 5, "d": 3, "q": 3},
//!   "provenance": "theorem1",
//!   "witnesses": {"w": [..], "m_coeffs": [], "gamma": []} }
//! ```
//!
//! Elements are written as their integer codes (0 is zero, `1 + j` is
//! `w^j`).

use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::construct::{ConstructionResult, Provenance, QuantumParams, Witnesses};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec, FieldTower};
use crate::grs::GrsCode;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub field: FieldSpec,
    pub a: Vec<Elem>,
    pub v: Vec<Elem>,
    pub k: usize,
    pub extended: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantum: Option<QuantumParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Witnesses>,
}

impl CodeFile {
    pub fn from_code(code: &GrsCode) -> Self {
        CodeFile {
            field: code.field().spec(),
            a: code.points().to_vec(),
            v: code.multipliers().to_vec(),
            k: code.dimension(),
            extended: code.is_extended(),
            quantum: None,
            provenance: None,
            witnesses: None,
        }
    }

    pub fn from_construction(result: &ConstructionResult) -> Self {
        CodeFile {
            quantum: Some(result.quantum),
            provenance: Some(result.provenance),
            witnesses: Some(result.witnesses.clone()),
            ..CodeFile::from_code(&result.code)
        }
    }

    /// Rebuilds the code, checking every invariant. `bound` caps `q^2`.
    pub fn to_code(&self, bound: u64) -> Result<GrsCode> {
        let field = Arc::new(FieldTower::from_spec(&self.field, bound)?);
        GrsCode::new(field, self.a.clone(), self.v.clone(), self.k, self.extended)
    }

    /// Rebuilds the full construction when the metadata is present.
    pub fn to_construction(&self, bound: u64) -> Result<Option<ConstructionResult>> {
        let (Some(quantum), Some(provenance), Some(witnesses)) =
            (self.quantum, self.provenance, self.witnesses.clone())
        else {
            return Ok(None);
        };
        let code = self.to_code(bound)?;
        let q = code.field().q() as usize;
        let t = match provenance {
            Provenance::Additive if code.num_points() % q == 0 => code.num_points() / q,
            Provenance::Extended | Provenance::ExtendedBoundary if (code.num_points() - 1) % (q + 1) == 0 => {
                (code.num_points() - 1) / (q + 1)
            }
            _ => {
                return Err(Error::Format(format!(
                    "{} points do not fit a {provenance} evaluation set over q = {q}",
                    code.num_points()
                )))
            }
        };
        Ok(Some(ConstructionResult { code, quantum, provenance, t, witnesses }))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Reads a code file without building the code.
pub fn read_code_file(path: impl AsRef<Path>) -> Result<CodeFile> {
    CodeFile::from_json(&fs::read_to_string(path)?)
}

/// Reads and validates a code file.
pub fn parse_code_file(path: impl AsRef<Path>, bound: u64) -> Result<GrsCode> {
    read_code_file(path)?.to_code(bound)
}

pub fn write_code_file(path: impl AsRef<Path>, file: &CodeFile) -> Result<()> {
    let mut out = fs::File::create(path)?;
    out.write_all(file.to_json()?.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{additive_code, extended_code};
    use crate::field::DEFAULT_MAX_FIELD_SIZE;

    fn tower(q: u64) -> Arc<FieldTower> {
        Arc::new(FieldTower::for_order(q).unwrap())
    }

    #[test]
    fn construction_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        for result in [additive_code(&tower(3), 3, 2).unwrap(), extended_code(&tower(3), 2, 2).unwrap()] {
            let path = dir.path().join("code.json");
            write_code_file(&path, &CodeFile::from_construction(&result)).unwrap();
            assert_eq!(parse_code_file(&path, DEFAULT_MAX_FIELD_SIZE).unwrap(), result.code);
            let back = read_code_file(&path).unwrap().to_construction(DEFAULT_MAX_FIELD_SIZE).unwrap();
            assert_eq!(back.unwrap(), result);
        }
    }

    #[test]
    fn plain_code_has_no_construction() {
        let result = additive_code(&tower(2), 2, 1).unwrap();
        let file = CodeFile::from_code(&result.code);
        let text = file.to_json().unwrap();
        assert!(!text.contains("quantum"));
        let back = CodeFile::from_json(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_construction(DEFAULT_MAX_FIELD_SIZE).unwrap(), None);
    }

    #[test]
    fn invariant_violations_are_reported() {
        let mut file = CodeFile::from_code(&additive_code(&tower(3), 3, 2).unwrap().code);
        let good = file.clone();
        file.a[1] = file.a[0];
        assert!(matches!(file.to_code(DEFAULT_MAX_FIELD_SIZE), Err(Error::DuplicatePoint { .. })));
        let mut file = good.clone();
        file.v[4] = Elem::ZERO;
        assert!(matches!(file.to_code(DEFAULT_MAX_FIELD_SIZE), Err(Error::ZeroMultiplier(4))));
        assert!(matches!(good.to_code(4), Err(Error::FieldTooLarge { .. })));
        let mut file = good;
        file.a[0] = Elem::from_code(9);
        assert!(matches!(file.to_code(DEFAULT_MAX_FIELD_SIZE), Err(Error::ElementOutOfRange { .. })));
    }

    #[test]
    fn malformed_json_is_an_error() {
        assert!(matches!(CodeFile::from_json("{\"field\": 3}"), Err(Error::Json(_))));
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(read_code_file(dir.path().join("missing.json")), Err(Error::Io(_))));
    }
}
