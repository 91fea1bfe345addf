//! JSON group files:
//!
//! ```json
//! { "name": "heis27", "dimension": 3,
//!   "generators": [[["1","0","0"],["0","E(3)","0"],["0","0","E(3)^2"]], ...],
//!   "cap": 1000, "class_cap": 2000 }
//! ```
//!
//! Entries are cyclotomic expressions; `cap` and `class_cap` are optional.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::parse_cyclotomic;
use crate::error::{Error, Result};
use crate::matgroup::{MatGroup, DEFAULT_CLASS_CAP, DEFAULT_CLOSURE_CAP};
use crate::CycMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub dimension: usize,
    pub generators: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_cap: Option<usize>,
}

impl GroupFile {
    pub fn closure_cap(&self) -> usize {
        self.cap.unwrap_or(DEFAULT_CLOSURE_CAP)
    }

    pub fn class_cap(&self) -> usize {
        self.class_cap.unwrap_or(DEFAULT_CLASS_CAP)
    }

    pub fn matrices(&self) -> Result<Vec<CycMatrix>> {
        let n = self.dimension;
        if n == 0 {
            return Err(Error::GroupFile("dimension must be positive".into()));
        }
        if self.generators.is_empty() {
            return Err(Error::GroupFile("no generators".into()));
        }
        let mut out = Vec::with_capacity(self.generators.len());
        for (gi, rows) in self.generators.iter().enumerate() {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
                return Err(Error::Shape(format!(
                    "generator {gi} has row lengths {shape:?}, expected {n} rows of {n}"
                )));
            }
            let mut parsed = Vec::with_capacity(n);
            for (ri, row) in rows.iter().enumerate() {
                let mut r = Vec::with_capacity(n);
                for (ci, text) in row.iter().enumerate() {
                    let x = parse_cyclotomic(text).map_err(|e| match e {
                        Error::Parse { position, message } => Error::Parse {
                            position,
                            message: format!("generator {gi}, row {ri}, column {ci}: {message}"),
                        },
                        other => other,
                    })?;
                    r.push(x);
                }
                parsed.push(r);
            }
            out.push(CycMatrix::from_rows(parsed)?);
        }
        Ok(out)
    }

    pub fn close(&self) -> Result<MatGroup> {
        MatGroup::close(self.matrices()?, self.closure_cap())
    }

    pub fn from_generators(name: &str, gens: &[CycMatrix]) -> Self {
        GroupFile {
            name: name.to_string(),
            dimension: gens.first().map_or(0, |g| g.rows()),
            generators: gens
                .iter()
                .map(|m| m.row_vecs().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect())
                .collect(),
            cap: None,
            class_cap: None,
        }
    }
}

/// Parses and closes a group file.
pub fn parse_group_file(text: &str) -> Result<(GroupFile, MatGroup)> {
    let file: GroupFile = serde_json::from_str(text)
        .map_err(|e| Error::GroupFile(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let g = file.close()?;
    Ok((file, g))
}

pub fn write_group_file(name: &str, g: &MatGroup) -> String {
    serde_json::to_string_pretty(&GroupFile::from_generators(name, g.generators())).expect("serializable")
}
