use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::expr::KnotExpression;
use super::seifert::{torus_seifert, SeifertMatrix};
use super::KnotError;
use crate::exact::{ExactError, RootOfUnity, SignatureConfig};

/// Invariants of symbolic atoms: σ at chosen roots of unity and Arf.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AtomValues {
    sigma: BTreeMap<String, BTreeMap<RootOfUnity, i64>>,
    arf: BTreeMap<String, u8>,
}

impl AtomValues {
    pub fn set_sigma(&mut self, name: &str, root: RootOfUnity, value: i64) {
        self.sigma.entry(name.to_owned()).or_default().insert(root.normalized(), value);
    }

    pub fn set_arf(&mut self, name: &str, value: u8) {
        self.arf.insert(name.to_owned(), value & 1);
    }

    /// Looks up `σ(ω)`, falling back to `σ(ω̄)`, which is always equal.
    pub fn sigma(&self, name: &str, root: RootOfUnity) -> Option<i64> {
        let root = root.normalized();
        if root.is_one() {
            return Some(0);
        }
        let table = self.sigma.get(name)?;
        table.get(&root).or_else(|| table.get(&root.conj().normalized())).copied()
    }

    pub fn arf(&self, name: &str) -> Option<u8> {
        self.arf.get(name).copied()
    }
}

/// One summand of a signature evaluation: `σ_knot(root) = value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureTerm {
    pub knot: String,
    pub root: RootOfUnity,
    pub value: i64,
}

/// Splits `σ_e(ω)` into its atom and torus-knot summands. Connected sums add,
/// mirrors negate, and a cable `e_(p,q)` contributes `σ_e(ω^p)` plus
/// `σ_T(p,q)(ω)`.
pub fn signature_terms(
    e: &KnotExpression,
    root: RootOfUnity,
    values: &AtomValues,
    config: SignatureConfig,
) -> Result<Vec<SignatureTerm>, KnotError> {
    let root = root.normalized();
    Ok(match e {
        KnotExpression::Unknot => Vec::new(),
        KnotExpression::Atom { name, seifert: Some(v) } => {
            vec![SignatureTerm { knot: name.clone(), root, value: matrix_signature(name, v, root, config)? }]
        }
        KnotExpression::Atom { name, seifert: None } => {
            let value = values
                .sigma(name, root)
                .ok_or_else(|| KnotError::MissingSignature { name: name.clone(), root })?;
            vec![SignatureTerm { knot: name.clone(), root, value }]
        }
        KnotExpression::Mirror(inner) => signature_terms(inner, root, values, config)?
            .into_iter()
            .map(|t| SignatureTerm { knot: format!("m({})", t.knot), value: -t.value, ..t })
            .collect(),
        KnotExpression::Reverse(inner) => signature_terms(inner, root, values, config)?
            .into_iter()
            .map(|t| SignatureTerm { knot: format!("{}^r", t.knot), ..t })
            .collect(),
        KnotExpression::Sum(a, b) => {
            let mut terms = signature_terms(a, root, values, config)?;
            terms.extend(signature_terms(b, root, values, config)?);
            terms
        }
        KnotExpression::Cable { companion, p, q } => {
            let mut terms = signature_terms(companion, root.pow(*p), values, config)?;
            terms.push(torus_term(*p, *q, root, config)?);
            terms
        }
        KnotExpression::Torus { p, q } => vec![torus_term(*p, *q, root, config)?],
    })
}

fn torus_term(p: i64, q: i64, root: RootOfUnity, config: SignatureConfig) -> Result<SignatureTerm, KnotError> {
    let name = format!("T({p},{q})");
    let v = torus_seifert(p, q)?;
    Ok(SignatureTerm { value: matrix_signature(&name, &v, root, config)?, knot: name, root })
}

fn matrix_signature(
    name: &str,
    v: &SeifertMatrix,
    root: RootOfUnity,
    config: SignatureConfig,
) -> Result<i64, KnotError> {
    v.signature(root, config).map_err(|e| match e {
        ExactError::SingularForm => KnotError::SignatureAtAlexanderRoot { knot: name.to_owned(), root },
        other => KnotError::Exact(other),
    })
}

/// Levine–Tristram signature `σ_e(ω)` of an expression whose atoms all carry
/// Seifert matrices.
pub fn lt_signature(e: &KnotExpression, root: RootOfUnity) -> Result<i64, KnotError> {
    lt_signature_with(e, root, &AtomValues::default(), SignatureConfig::default())
}

pub fn lt_signature_with(
    e: &KnotExpression,
    root: RootOfUnity,
    values: &AtomValues,
    config: SignatureConfig,
) -> Result<i64, KnotError> {
    Ok(signature_terms(e, root, values, config)?.iter().map(|t| t.value).sum())
}

/// `|Δ_e(−1)|`. For a cable with winding number `p` the companion contributes
/// `Δ(1) = 1` when `p` is even.
pub fn determinant_at_minus_one(e: &KnotExpression) -> Result<BigInt, KnotError> {
    use KnotExpression::*;
    match e {
        Unknot => Ok(BigInt::one()),
        Atom { seifert: Some(v), .. } => Ok(v.determinant()),
        Atom { name, seifert: None } => Err(KnotError::SymbolicDeterminant(name.clone())),
        Mirror(inner) | Reverse(inner) => determinant_at_minus_one(inner),
        Sum(a, b) => Ok(determinant_at_minus_one(a)? * determinant_at_minus_one(b)?),
        Torus { p, q } => Ok(torus_seifert(*p, *q)?.determinant()),
        Cable { companion, p, q } => {
            let pattern = torus_seifert(*p, *q)?.determinant();
            if p.is_odd() {
                Ok(pattern * determinant_at_minus_one(companion)?)
            } else {
                Ok(pattern)
            }
        }
    }
}

/// Arf invariant from the determinant: 0 iff `det ≡ ±1 (mod 8)`.
pub fn arf_from_determinant(det: &BigInt) -> u8 {
    let r = det.mod_floor(&BigInt::from(8)).to_u8().unwrap_or(0);
    u8::from(r == 3 || r == 5)
}

pub fn arf(e: &KnotExpression) -> Result<u8, KnotError> {
    arf_with(e, &AtomValues::default())
}

/// Arf invariant; symbolic atoms take their value from `values`.
pub fn arf_with(e: &KnotExpression, values: &AtomValues) -> Result<u8, KnotError> {
    use KnotExpression::*;
    match e {
        Unknot => Ok(0),
        Atom { seifert: Some(v), .. } => Ok(arf_from_determinant(&v.determinant())),
        Atom { name, seifert: None } => values.arf(name).ok_or_else(|| KnotError::MissingArf(name.clone())),
        Mirror(inner) | Reverse(inner) => arf_with(inner, values),
        Sum(a, b) => Ok(arf_with(a, values)? ^ arf_with(b, values)?),
        Torus { p, q } => Ok(arf_from_determinant(&torus_seifert(*p, *q)?.determinant())),
        Cable { companion, p, q } => {
            let pattern = arf_from_determinant(&torus_seifert(*p, *q)?.determinant());
            if p.is_odd() {
                Ok(pattern ^ arf_with(companion, values)?)
            } else {
                Ok(pattern)
            }
        }
    }
}

/// Determinant, Arf and a table of signatures of a concrete knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotInvariants {
    pub arf: u8,
    pub determinant: BigInt,
    pub sigma: BTreeMap<RootOfUnity, i64>,
}

impl KnotInvariants {
    pub fn compute(
        e: &KnotExpression,
        roots: &[RootOfUnity],
        config: SignatureConfig,
    ) -> Result<Self, KnotError> {
        let determinant = determinant_at_minus_one(e)?;
        let mut sigma = BTreeMap::new();
        for &root in roots {
            let value = lt_signature_with(e, root, &AtomValues::default(), config)?;
            sigma.insert(root.normalized(), value);
        }
        Ok(Self { arf: arf_from_determinant(&determinant), determinant, sigma })
    }

    /// Cached `σ(ω)`, matching `ω` up to normalization and conjugation.
    pub fn sigma_at(&self, root: RootOfUnity) -> Option<i64> {
        let root = root.normalized();
        self.sigma.get(&root).or_else(|| self.sigma.get(&root.conj().normalized())).copied()
    }
}
