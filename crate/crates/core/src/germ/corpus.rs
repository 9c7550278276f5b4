//! Line-delimited JSON corpus of germs with known invariants.
//!
//! One object per line; blank lines and lines starting with `#` are skipped.
//!
//! ```text
//! {"name": "A2", "poly": "y^2 - x^3",
//!  "branches": [{"x": "t^2", "y": "t^3"}], "truncation": 20,
//!  "expected": {"mu": 2, "tau": 2, "delta": 1, "r": 1}}
//! ```
//!
//! `poly` uses the grammar of [`Poly::parse`](super::Poly::parse) in `x, y`;
//! branch coordinates use the same grammar in `t`. `truncation` is the power
//! of `t` up to which the parametrizations are exact.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{BranchSet, CurveGerm, GermError, GermInvariants};

const SHIPPED: &str = include_str!("../../data/ade_corpus.jsonl");

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error("line {line} ({name}): {source}")]
    Germ { line: usize, name: String, source: GermError },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchSpec {
    pub x: String,
    pub y: String,
}

pub type Expected = GermInvariants;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub poly: String,
    pub branches: Vec<BranchSpec>,
    pub truncation: u32,
    pub expected: Expected,
}

impl CorpusEntry {
    pub fn germ(&self) -> Result<CurveGerm, GermError> {
        CurveGerm::parse(&self.poly)
    }

    pub fn branch_set(&self) -> Result<BranchSet, GermError> {
        let pairs: Vec<(&str, &str)> = self.branches.iter().map(|b| (b.x.as_str(), b.y.as_str())).collect();
        BranchSet::parse(&pairs, self.truncation)
    }
}

/// Parses a corpus and checks that every polynomial and branch set is well formed.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut entries = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let entry: CorpusEntry =
            serde_json::from_str(trimmed).map_err(|source| CorpusError::Json { line, source })?;
        let check = entry.germ().and_then(|_| entry.branch_set());
        if let Err(source) = check {
            return Err(CorpusError::Germ {
                line,
                name: entry.name,
                source,
            });
        }
        entries.push(entry);
    }
    Ok(entries)
}

/// The simple singularities `A1..A4, D4, D5, E6` bundled with the crate.
pub fn shipped_corpus() -> Vec<CorpusEntry> {
    parse_corpus(SHIPPED).expect("bundled corpus is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_corpus_loads() {
        let names: Vec<_> = shipped_corpus().into_iter().map(|e| e.name).collect();
        assert_eq!(names, ["A1", "A2", "A3", "A4", "D4", "D5", "E6"]);
    }

    #[test]
    fn bad_lines_are_located() {
        let text = "# comment\n\n{\"name\": 1}\n";
        assert!(matches!(parse_corpus(text), Err(CorpusError::Json { line: 3, .. })));
        let text = r#"{"name":"bad","poly":"1+x","branches":[],"truncation":3,"expected":{"mu":0,"tau":0,"delta":0,"r":0}}"#;
        assert!(matches!(parse_corpus(text), Err(CorpusError::Germ { line: 1, .. })));
    }
}
