//! A small knot table in CSV form, validated on load, and the invariant search
//! used to pick concrete knots for the assumptions.

use std::collections::BTreeSet;
use std::io::{Read, Write};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactError, RootOfUnity, SignatureConfig};
use crate::knots::{arf_from_determinant, KnotExpression, SeifertMatrix};

/// Knots through seven crossings, shipped with the crate.
pub const FIXTURE_CSV: &str = include_str!("../data/knots.csv");

const HEADER: [&str; 7] = ["name", "genus", "seifert_dim", "seifert_entries", "g4", "arf", "signature"];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KnotDbError {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("invalid Seifert matrix for {name}: {reason}")]
    InvalidSeifertMatrix { name: String, reason: String },
    #[error("{name}: reported {field} disagrees with the Seifert matrix")]
    InconsistentInvariant { name: String, field: &'static str },
    #[error("duplicate knot name {0}")]
    DuplicateName(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub seifert: SeifertMatrix,
    /// Smooth 4-genus as reported by the table; the one invariant not recomputed.
    pub g4: u32,
    pub reported_arf: Option<u8>,
    pub reported_signature: Option<i64>,
}

impl KnotRecord {
    /// Checks the reported invariants against the matrix.
    pub fn validated(self) -> Result<Self, KnotDbError> {
        let inconsistent = |field| KnotDbError::InconsistentInvariant { name: self.name.clone(), field };
        if self.reported_arf.is_some_and(|a| a != self.arf()) {
            return Err(inconsistent("arf"));
        }
        let sigma = self.seifert.signature(RootOfUnity::zeta(2), SignatureConfig::default())?;
        if self.reported_signature.is_some_and(|s| s != sigma) {
            return Err(inconsistent("signature"));
        }
        if 2 * i64::from(self.g4) < sigma.abs() {
            return Err(inconsistent("g4"));
        }
        Ok(self)
    }

    pub fn determinant(&self) -> BigInt {
        self.seifert.determinant()
    }

    pub fn arf(&self) -> u8 {
        arf_from_determinant(&self.determinant())
    }

    pub fn signature(&self, root: RootOfUnity, config: SignatureConfig) -> Result<i64, ExactError> {
        self.seifert.signature(root, config)
    }

    pub fn expression(&self) -> KnotExpression {
        KnotExpression::atom(self.name.clone(), self.seifert.clone())
    }
}

#[derive(Debug, Deserialize)]
struct Row {
    name: String,
    genus: usize,
    seifert_dim: usize,
    seifert_entries: String,
    g4: u32,
    arf: Option<u8>,
    signature: Option<i64>,
}

fn parse_entries(s: &str) -> Result<Vec<i64>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad matrix entry {t:?}: {e}")))
        .collect()
}

/// Reads a CSV knot table: header row, then
/// `name,genus,seifert_dim,seifert_entries,g4,arf,signature` with the matrix
/// row-major and `;`-separated. `arf` and `signature` may be empty.
pub fn load_table(source: impl Read) -> Result<Vec<KnotRecord>, KnotDbError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(source);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for result in reader.deserialize::<Row>() {
        let row = result.map_err(|e| KnotDbError::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let entries = parse_entries(&row.seifert_entries)
            .map_err(|reason| KnotDbError::InvalidSeifertMatrix { name: row.name.clone(), reason })?;
        let seifert = SeifertMatrix::new(row.seifert_dim, entries).map_err(|e| {
            KnotDbError::InvalidSeifertMatrix { name: row.name.clone(), reason: e.to_string() }
        })?;
        if seifert.genus() != row.genus {
            return Err(KnotDbError::InconsistentInvariant { name: row.name, field: "genus" });
        }
        if !seen.insert(row.name.clone()) {
            return Err(KnotDbError::DuplicateName(row.name));
        }
        let record = KnotRecord {
            name: row.name,
            seifert,
            g4: row.g4,
            reported_arf: row.arf,
            reported_signature: row.signature,
        };
        out.push(record.validated()?);
    }
    Ok(out)
}

pub fn fixture_table() -> Vec<KnotRecord> {
    load_table(FIXTURE_CSV.as_bytes()).expect("shipped knot table is valid")
}

/// Writes records in the format read by [`load_table`].
pub fn serialize(records: &[KnotRecord], sink: impl Write) -> Result<(), KnotDbError> {
    let io = |e: csv::Error| KnotDbError::Parse { line: 0, message: e.to_string() };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(HEADER).map_err(io)?;
    for r in records {
        let entries: Vec<String> = r.seifert.entries().iter().map(i64::to_string).collect();
        w.write_record([
            r.name.clone(),
            r.seifert.genus().to_string(),
            r.seifert.dim().to_string(),
            entries.join(";"),
            r.g4.to_string(),
            r.reported_arf.map(|a| a.to_string()).unwrap_or_default(),
            r.reported_signature.map(|s| s.to_string()).unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| KnotDbError::Parse { line: 0, message: e.to_string() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchPredicate {
    pub g4: Option<u32>,
    pub arf: Option<u8>,
    pub sigma: Vec<(RootOfUnity, i64)>,
    pub allow_mirror: bool,
}

impl SearchPredicate {
    /// 4-genus 1, Arf 1 and `σ = 2` at `ζ₂`, `ζ₄` and `ζ₈`.
    pub fn standard() -> Self {
        Self {
            g4: Some(1),
            arf: Some(1),
            sigma: [2, 4, 8].map(|m| (RootOfUnity::zeta(m), 2)).to_vec(),
            allow_mirror: true,
        }
    }

    /// The same search on mirror images: every `σ` requirement negated.
    pub fn mirrored(&self) -> Self {
        Self { sigma: self.sigma.iter().map(|&(w, s)| (w, -s)).collect(), ..self.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit<'a> {
    pub record: &'a KnotRecord,
    pub mirrored: bool,
}

impl SearchHit<'_> {
    pub fn display_name(&self) -> String {
        if self.mirrored {
            format!("m({})", self.record.name)
        } else {
            self.record.name.clone()
        }
    }

    pub fn expression(&self) -> KnotExpression {
        let e = self.record.expression();
        if self.mirrored {
            e.mirror()
        } else {
            e
        }
    }

    /// `σ` of the hit itself, mirror included.
    pub fn signature(&self, root: RootOfUnity, config: SignatureConfig) -> Result<i64, ExactError> {
        let s = self.record.signature(root, config)?;
        Ok(if self.mirrored { -s } else { s })
    }
}

fn matches(
    record: &KnotRecord,
    mirrored: bool,
    predicate: &SearchPredicate,
    config: SignatureConfig,
) -> Result<bool, ExactError> {
    if predicate.g4.is_some_and(|g| g != record.g4) || predicate.arf.is_some_and(|a| a != record.arf()) {
        return Ok(false);
    }
    let hit = SearchHit { record, mirrored };
    for &(root, want) in &predicate.sigma {
        match hit.signature(root, config) {
            Ok(s) if s == want => {}
            // undefined at an Alexander root, so it cannot match
            Ok(_) | Err(ExactError::SingularForm) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// Records (and, if allowed, mirror images) whose computed invariants meet
/// `predicate`, in table order with the unmirrored knot first.
pub fn search<'a>(
    records: &'a [KnotRecord],
    predicate: &SearchPredicate,
    config: SignatureConfig,
) -> Result<Vec<SearchHit<'a>>, KnotDbError> {
    let mut hits = Vec::new();
    for record in records {
        for mirrored in [false, true] {
            if mirrored && !predicate.allow_mirror {
                continue;
            }
            if matches(record, mirrored, predicate, config)? {
                hits.push(SearchHit { record, mirrored });
            }
        }
    }
    Ok(hits)
}
