use serde::{Deserialize, Serialize};

use super::assumptions::Assumptions;
use super::eliminate::{eliminate_case_with, CaseOutcome};
use super::solve::{dedupe_solutions, solve_cell, Absorption, CellSolutions, Unresolved};
use super::table::{build_table, check_table_symmetries, SymmetryCheck, TableCell};
use super::SolverError;
use crate::exact::SignatureConfig;
use crate::fourmanifold::CasePair;
use crate::obstructions::{required_intersection, AmbientData};

pub const CERTIFICATE_FORMAT: &str = "knotslice-certificate/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCellRecord {
    pub row: usize,
    pub col: usize,
    pub alpha: String,
    pub beta: String,
    pub value: String,
    pub highlighted: bool,
    pub branches: Vec<String>,
}

impl From<&TableCell> for TableCellRecord {
    fn from(c: &TableCell) -> Self {
        Self {
            row: c.row,
            col: c.col,
            alpha: c.alpha.to_string(),
            beta: c.beta.to_string(),
            value: c.value.clone(),
            highlighted: c.highlighted,
            branches: c.branches.iter().map(|b| format!("{}: {}", b.describe(), b.value)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseKind {
    Family,
    Sporadic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub id: usize,
    pub kind: CaseKind,
    pub pair: CasePair,
    pub text: String,
    pub canonical: CasePair,
    pub sources: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub absorbed: Vec<Absorption>,
    pub outcome: CaseOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ProofVerdict {
    Proven,
    Gap { surviving: Vec<String>, unresolved: Vec<String> },
}

impl ProofVerdict {
    pub fn is_proven(&self) -> bool {
        matches!(self, ProofVerdict::Proven)
    }
}

/// Everything needed to re-check the non-sliceness argument without
/// repeating the search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofCertificate {
    pub format: String,
    pub assumptions: Assumptions,
    pub ambient: AmbientData,
    pub target: i64,
    pub table: Vec<TableCellRecord>,
    pub symmetry_checks: Vec<SymmetryCheck>,
    pub cells: Vec<CellSolutions>,
    pub cases: Vec<CaseRecord>,
    pub unresolved: Vec<Unresolved>,
    pub verdict: ProofVerdict,
}

impl ProofCertificate {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

pub fn verify_proof(assumptions: &Assumptions) -> Result<ProofCertificate, SolverError> {
    verify_proof_with(assumptions, SignatureConfig::default())
}

/// Table, symmetry reduction, cell solutions, dedupe and elimination.
pub fn verify_proof_with(assumptions: &Assumptions, config: SignatureConfig) -> Result<ProofCertificate, SolverError> {
    assumptions.validate()?;
    let target = required_intersection(assumptions.lk);
    let table = build_table(assumptions)?;
    let symmetry_checks = check_table_symmetries(&table)?;
    let cells = table
        .iter()
        .filter(|c| !c.highlighted)
        .map(|c| solve_cell(c, target, assumptions))
        .collect::<Result<Vec<_>, _>>()?;
    let set = dedupe_solutions(&cells);

    let mut cases = Vec::new();
    let entries = set
        .families
        .iter()
        .map(|e| (CaseKind::Family, e))
        .chain(set.sporadics.iter().map(|e| (CaseKind::Sporadic, e)));
    for (i, (kind, entry)) in entries.enumerate() {
        let absorbed = match kind {
            CaseKind::Family => set.absorbed.iter().filter(|a| a.family == i + 1).cloned().collect(),
            CaseKind::Sporadic => Vec::new(),
        };
        cases.push(CaseRecord {
            id: i + 1,
            kind,
            pair: entry.pair,
            text: entry.pair.to_string(),
            canonical: entry.canonical,
            sources: entry.sources.clone(),
            absorbed,
            outcome: eliminate_case_with(&entry.pair, assumptions, config)?,
        });
    }

    let surviving: Vec<String> = cases.iter().filter(|c| !c.outcome.eliminated).map(|c| c.text.clone()).collect();
    let verdict = if surviving.is_empty() && set.unresolved.is_empty() {
        ProofVerdict::Proven
    } else {
        ProofVerdict::Gap {
            surviving,
            unresolved: set.unresolved.iter().map(|u| format!("cell {:?}: {}", u.cell, u.branch)).collect(),
        }
    };
    Ok(ProofCertificate {
        format: CERTIFICATE_FORMAT.into(),
        assumptions: assumptions.clone(),
        ambient: AmbientData::S2_X_S2,
        target,
        table: table.iter().map(TableCellRecord::from).collect(),
        symmetry_checks,
        cells,
        cases,
        unresolved: set.unresolved,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::RootOfUnity;

    #[test]
    fn standard_assumptions_prove() {
        let cert = verify_proof(&Assumptions::standard()).unwrap();
        assert_eq!(cert.verdict, ProofVerdict::Proven);
        assert_eq!(cert.table.len(), 15);
        assert_eq!(cert.symmetry_checks.len(), 6);
        let texts: Vec<_> = cert.cases.iter().map(|c| c.text.as_str()).collect();
        assert_eq!(
            texts,
            [
                "((1,x),(1,4-x))",
                "((1,x),(-1,4+x))",
                "((2,2),(1,1))",
                "((2,2),(-1,3))",
                "((2,-2),(1,3))",
                "((2,-2),(-1,1))"
            ]
        );
    }

    #[test]
    fn negative_controls_leave_gaps() {
        let mut arf = Assumptions::standard();
        arf.arf_a = 0;
        arf.arf_b = 0;
        let mut sigma = Assumptions::standard();
        sigma.set_sigma(RootOfUnity::zeta(2), 0);
        let mut lk = Assumptions::standard();
        lk.lk = -2;
        for a in [arf, sigma, lk] {
            let cert = verify_proof(&a).unwrap();
            match cert.verdict {
                ProofVerdict::Gap { surviving, .. } => assert!(!surviving.is_empty()),
                ProofVerdict::Proven => panic!("expected a gap for {a:?}"),
            }
        }
    }

    #[test]
    fn deterministic_json() {
        let a = verify_proof(&Assumptions::standard()).unwrap().to_json();
        let b = verify_proof(&Assumptions::standard()).unwrap().to_json();
        assert_eq!(a, b);
        let back: ProofCertificate = serde_json::from_str(&a).unwrap();
        assert_eq!(back.to_json(), a);
    }
}
