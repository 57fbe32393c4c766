//! Slice-disc obstructions in `S²×S²`, each returning an outcome with the
//! evaluated inequality or congruence as its witness.

use std::fmt;

use num_rational::Ratio;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fourmanifold::{min_genus, ClassValue, QuadPoly};
use crate::knots::KnotExpression;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("class {class} is not divisible by {m}")]
    NotDivisible { class: String, m: u32 },
    #[error("{m} is not a prime power")]
    NotPrimePower { m: u32 },
    #[error("exponent {r} is not in 1..{m}")]
    InvalidExponent { m: u32, r: u32 },
    #[error("sigma(X) - [S]^2 = {sigma_x} - {square} is not divisible by 8")]
    CongruenceUndefined { sigma_x: i64, square: i64 },
}

/// Invariants of the ambient closed 4-manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientData {
    pub sigma_x: i64,
    pub b2: i64,
    pub even_form: bool,
    pub ks: u8,
}

impl AmbientData {
    pub const S2_X_S2: Self = Self { sigma_x: 0, b2: 2, even_form: true, ks: 0 };
}

impl Default for AmbientData {
    fn default() -> Self {
        Self::S2_X_S2
    }
}

/// `knot` bounds a smooth genus-`genus` surface in the punctured ambient
/// manifold, in homology class `class`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceHypothesis {
    pub knot: KnotExpression,
    pub class: ClassValue,
    pub genus: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Eliminated,
    Survives,
    Inapplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Genus,
    Signature,
    Arf,
}

/// The numbers an outcome was decided from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Genus { min_genus: u64, bound: u64 },
    Signature { m: u32, r: u32, sigma: i64, square: i64, genus: u64, sigma_x: i64, b2: i64 },
    Arf { arf: u8, square: i64, sigma_x: i64 },
    Inapplicable { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionOutcome {
    pub verdict: Verdict,
    pub rule: Rule,
    pub witness: String,
    pub detail: Witness,
}

impl ObstructionOutcome {
    pub fn is_eliminated(&self) -> bool {
        self.verdict == Verdict::Eliminated
    }

    fn inapplicable(rule: Rule, reason: impl Into<String>) -> Self {
        let reason = reason.into();
        Self {
            verdict: Verdict::Inapplicable,
            rule,
            witness: reason.clone(),
            detail: Witness::Inapplicable { reason },
        }
    }
}

impl fmt::Display for ObstructionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} by {:?}: {}", self.verdict, self.rule, self.witness)
    }
}

/// Twist parameter `n = −lk`, which is also the forced value of `α·β`.
pub fn required_intersection(lk: i64) -> i64 {
    -lk
}

fn is_prime_power(m: u32) -> bool {
    if m < 2 {
        return false;
    }
    let p = (2..=m).find(|d| m.is_multiple_of(*d)).unwrap_or(m);
    let mut k = m;
    while k.is_multiple_of(p) {
        k /= p;
    }
    k == 1
}

fn paren(x: i64) -> String {
    if x < 0 {
        format!("({x})")
    } else {
        x.to_string()
    }
}

fn ratio_text(x: Ratio<i64>) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// The correction `2r(m−r)·square/m²` as printed in a witness.
pub fn correction_text(m: u32, r: u32, square: i64) -> String {
    if square == 0 {
        "0".into()
    } else if m == 2 {
        format!("{}/2", paren(square))
    } else {
        let k = 2 * r as i64 * (m - r) as i64;
        format!("{k}*{}/{}", paren(square), m as i64 * m as i64)
    }
}

/// `|σ_K(ζ_m^r) + σ(X) − 2r(m−r)·[Σ]²/m²| ≤ b₂(X) + 2g`, for a class divisible
/// by the prime power `m`. Pass the class to have divisibility checked.
pub fn signature_obstruction(
    sigma: i64,
    square: i64,
    genus: u64,
    m: u32,
    r: u32,
    class: Option<&ClassValue>,
    ambient: AmbientData,
) -> Result<ObstructionOutcome, ObstructionError> {
    if !is_prime_power(m) {
        return Err(ObstructionError::NotPrimePower { m });
    }
    if r == 0 || r >= m {
        return Err(ObstructionError::InvalidExponent { m, r });
    }
    if let Some(c) = class {
        if !c.divisible_by(m as i64) {
            return Err(ObstructionError::NotDivisible { class: c.to_string(), m });
        }
    }
    let (mi, ri) = (m as i64, r as i64);
    let correction = Ratio::new(2 * ri * (mi - ri) * square, mi * mi);
    let lhs = (Ratio::from_integer(sigma + ambient.sigma_x) - correction).abs();
    let bound = ambient.b2 + 2 * genus as i64;
    let eliminated = lhs > Ratio::from_integer(bound);
    let shift = if ambient.sigma_x != 0 { format!(" + {}", paren(ambient.sigma_x)) } else { String::new() };
    let witness = format!(
        "|{sigma}{shift} - {}| = {} {} {bound}",
        correction_text(m, r, square),
        ratio_text(lhs),
        if eliminated { ">" } else { "<=" }
    );
    Ok(ObstructionOutcome {
        verdict: if eliminated { Verdict::Eliminated } else { Verdict::Survives },
        rule: Rule::Signature,
        witness,
        detail: Witness::Signature { m, r, sigma, square, genus, sigma_x: ambient.sigma_x, b2: ambient.b2 },
    })
}

/// For a smooth disc in a characteristic class: `(σ(X) − [Σ]²)/8 ≡ Arf(K)`
/// (mod 2). Families must be characteristic with constant square.
pub fn arf_obstruction(
    arf_k: u8,
    class: &ClassValue,
    ambient: AmbientData,
) -> Result<ObstructionOutcome, ObstructionError> {
    if !class.is_characteristic() {
        return Ok(ObstructionOutcome::inapplicable(Rule::Arf, format!("{class} is not characteristic")));
    }
    let Some(square) = class.square().constant() else {
        return Ok(ObstructionOutcome::inapplicable(Rule::Arf, format!("square of {class} depends on x")));
    };
    let diff = ambient.sigma_x - square;
    if diff % 8 != 0 {
        return Err(ObstructionError::CongruenceUndefined { sigma_x: ambient.sigma_x, square });
    }
    let value = (diff / 8).rem_euclid(2);
    let arf_k = arf_k & 1;
    let eliminated = value != arf_k as i64;
    Ok(ObstructionOutcome {
        verdict: if eliminated { Verdict::Eliminated } else { Verdict::Survives },
        rule: Rule::Arf,
        witness: format!(
            "({} - {})/8 = {value} {} {arf_k} = Arf (mod 2)",
            ambient.sigma_x,
            paren(square),
            if eliminated { "!=" } else { "==" }
        ),
        detail: Witness::Arf { arf: arf_k, square, sigma_x: ambient.sigma_x },
    })
}

/// Capping a disc with a minimal surface for `K` gives a closed surface of
/// genus `g4_k` in `class`.
pub fn genus_obstruction(g4_k: u64, class: &ClassValue) -> ObstructionOutcome {
    let Some(c) = class.concrete() else {
        return ObstructionOutcome::inapplicable(Rule::Genus, format!("{class} depends on x"));
    };
    let g = min_genus(c);
    let eliminated = g > g4_k;
    ObstructionOutcome {
        verdict: if eliminated { Verdict::Eliminated } else { Verdict::Survives },
        rule: Rule::Genus,
        witness: format!("g{c} = {g} {} {g4_k}", if eliminated { ">" } else { "<=" }),
        detail: Witness::Genus { min_genus: g, bound: g4_k },
    }
}

/// Discs obtained from `D_A ⊔ D_B` by band sums with the clasp, for
/// `n = −lk`: both signs of every `±` are emitted. Cable facts need a
/// parameter-free `β²` and are omitted otherwise.
pub fn derived_facts(alpha: &ClassValue, beta: &ClassValue, n: i64, beta_square: QuadPoly) -> Vec<SliceHypothesis> {
    derived_facts_with(&KnotExpression::symbol("A"), &KnotExpression::symbol("B"), alpha, beta, n, beta_square)
}

pub fn derived_facts_with(
    a: &KnotExpression,
    b: &KnotExpression,
    alpha: &ClassValue,
    beta: &ClassValue,
    n: i64,
    beta_square: QuadPoly,
) -> Vec<SliceHypothesis> {
    use crate::fourmanifold::family_sum;
    let disc = |knot, class| SliceHypothesis { knot, class, genus: 0 };
    let torus = |q| KnotExpression::torus(2, q).expect("odd q");
    let mut facts = vec![disc(a.clone().sum(b.clone()), family_sum(alpha, beta, 1, 1))];
    for q in [2 * n - 1, 2 * n + 1] {
        let knot = a.clone().sum(b.clone().reverse()).sum(torus(q));
        facts.push(disc(knot, family_sum(alpha, beta, 1, -1)));
    }
    if let Some(sq) = beta_square.constant() {
        for q in [-2 * sq - 2 * n - 1, -2 * sq - 2 * n + 1] {
            let knot = a.clone().sum(b.clone().cable(2, q).expect("odd q"));
            facts.push(disc(knot, family_sum(alpha, beta, 1, 2)));
        }
    }
    facts
}

/// Matrix conditions on `Q = [[f_A, lk], [lk, f_B]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExoticReport {
    pub framings_even: bool,
    pub determinant: i64,
    pub rank_two: bool,
    pub indefinite: bool,
    pub determinant_even: bool,
    pub linking_even: bool,
    pub pass: bool,
}

/// A nonsingular symmetric 2×2 form is indefinite exactly when its
/// determinant is negative.
pub fn exotic_precondition_check(f_a: i64, f_b: i64, lk: i64) -> ExoticReport {
    let determinant = f_a * f_b - lk * lk;
    let framings_even = f_a % 2 == 0 && f_b % 2 == 0;
    let rank_two = determinant != 0;
    let indefinite = determinant < 0;
    ExoticReport {
        framings_even,
        determinant,
        rank_two,
        indefinite,
        determinant_even: determinant % 2 == 0,
        linking_even: lk % 2 == 0,
        pass: framings_even && rank_two && indefinite,
    }
}
