use serde::{Deserialize, Serialize};

use super::assumptions::Assumptions;
use super::SolverError;
use crate::exact::{RootOfUnity, SignatureConfig};
use crate::fourmanifold::{family_sum, CasePair, ClassValue, QuadPoly};
use crate::knots::{signature_terms, AtomValues, KnotError, KnotExpression, SignatureTerm};
use crate::obstructions::{
    arf_obstruction, genus_obstruction, required_intersection, signature_obstruction, AmbientData,
    ObstructionOutcome, Verdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EliminationRule {
    Genus,
    ClassicalSignature,
    CableSignature,
    ComponentArf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Component {
    A,
    B,
}

impl Component {
    fn name(self) -> &'static str {
        match self {
            Component::A => "A",
            Component::B => "B",
        }
    }

    fn other(self) -> Self {
        match self {
            Component::A => Component::B,
            Component::B => Component::A,
        }
    }
}

/// Where a slice disc comes from: a component's own disc, or a band sum of
/// both discs with class `first ± second` or `first + 2·second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fact {
    Component { knot: Component },
    Sum { first: Component },
    ReverseSum { first: Component, q: i64 },
    Cable { first: Component, q: i64 },
}

/// One obstruction applied to one slice disc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub rule: EliminationRule,
    pub fact: Fact,
    pub knot: String,
    pub expression: String,
    pub class: ClassValue,
    pub class_text: String,
    /// `[D]²` as a polynomial in the family parameter.
    pub square: QuadPoly,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub terms: Vec<SignatureTerm>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub evaluation: Option<String>,
    pub outcome: ObstructionOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub attempts: Vec<Attempt>,
    pub eliminated: bool,
}

struct Hypothesis {
    fact: Fact,
    knot: KnotExpression,
    class: ClassValue,
}

fn atom(c: Component) -> KnotExpression {
    KnotExpression::symbol(c.name())
}

/// The classes of `(first, second)` in the order `A, B` or `B, A`.
fn ordered(pair: &CasePair, first: Component) -> (ClassValue, ClassValue) {
    match first {
        Component::A => (pair.alpha(), pair.beta()),
        Component::B => (pair.beta(), pair.alpha()),
    }
}

/// Slice discs for a component, or derived from both discs with the given
/// component first.
fn hypotheses(pair: &CasePair, first: Component, n: i64) -> Vec<Hypothesis> {
    let (a, b) = ordered(pair, first);
    let (ka, kb) = (atom(first), atom(first.other()));
    let mut out = vec![Hypothesis { fact: Fact::Sum { first }, knot: ka.clone().sum(kb.clone()), class: family_sum(&a, &b, 1, 1) }];
    for q in [2 * n - 1, 2 * n + 1] {
        let knot = ka.clone().sum(kb.clone().reverse()).sum(KnotExpression::torus(2, q).expect("odd"));
        out.push(Hypothesis { fact: Fact::ReverseSum { first, q }, knot, class: family_sum(&a, &b, 1, -1) });
    }
    if let Some(sq) = b.square().constant() {
        for q in [-2 * sq - 2 * n - 1, -2 * sq - 2 * n + 1] {
            let knot = ka.clone().sum(kb.clone().cable(2, q).expect("odd"));
            out.push(Hypothesis { fact: Fact::Cable { first, q }, knot, class: family_sum(&a, &b, 1, 2) });
        }
    }
    out
}

fn components(pair: &CasePair) -> Vec<Hypothesis> {
    [Component::A, Component::B]
        .into_iter()
        .map(|c| Hypothesis { fact: Fact::Component { knot: c }, knot: atom(c), class: ordered(pair, c).0 })
        .collect()
}

fn attempt(rule: EliminationRule, h: &Hypothesis, outcome: ObstructionOutcome) -> Attempt {
    Attempt {
        rule,
        fact: h.fact,
        knot: h.knot.to_string(),
        expression: h.knot.to_grammar(),
        class: h.class,
        class_text: h.class.to_string(),
        square: h.class.square(),
        terms: Vec::new(),
        evaluation: None,
        outcome,
    }
}

fn paren(v: i64) -> String {
    if v < 0 {
        format!("({v})")
    } else {
        v.to_string()
    }
}

/// `sigma(zeta_8) = 2 + 2 + 0 = 4`.
pub fn evaluation_text(root: RootOfUnity, terms: &[SignatureTerm]) -> String {
    let total: i64 = terms.iter().map(|t| t.value).sum();
    let parts: Vec<String> = terms.iter().map(|t| paren(t.value)).collect();
    if terms.len() > 1 {
        format!("sigma({root}) = {} = {total}", parts.join(" + "))
    } else {
        format!("sigma({root}) = {total}")
    }
}

/// Applies the signature bound at `ζ_m^r` when the disc's class is
/// `m`-divisible with parameter-free square and every σ value is known.
fn signature_attempt(
    rule: EliminationRule,
    h: &Hypothesis,
    m: u32,
    r: u32,
    values: &AtomValues,
    config: SignatureConfig,
) -> Result<Option<Attempt>, SolverError> {
    let Some(square) = h.class.square().constant() else {
        return Ok(None);
    };
    if !h.class.divisible_by(m as i64) {
        return Ok(None);
    }
    let root = RootOfUnity::new(m, r as i64).expect("m > 0");
    let terms = match signature_terms(&h.knot, root, values, config) {
        Ok(t) => t,
        Err(KnotError::MissingSignature { .. } | KnotError::SignatureAtAlexanderRoot { .. }) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let sigma = terms.iter().map(|t| t.value).sum();
    let outcome = signature_obstruction(sigma, square, 0, m, r, Some(&h.class), AmbientData::S2_X_S2)?;
    let mut a = attempt(rule, h, outcome);
    a.evaluation = Some(evaluation_text(root, &terms));
    a.terms = terms;
    Ok(Some(a))
}

/// Runs the genus, classical-signature, cable-signature and component-Arf
/// rules in that order, stopping at the first elimination.
pub fn eliminate_case(pair: &CasePair, assumptions: &Assumptions) -> Result<CaseOutcome, SolverError> {
    eliminate_case_with(pair, assumptions, SignatureConfig::default())
}

pub fn eliminate_case_with(
    pair: &CasePair,
    assumptions: &Assumptions,
    config: SignatureConfig,
) -> Result<CaseOutcome, SolverError> {
    let n = required_intersection(assumptions.lk);
    let values = assumptions.atom_values();
    let mut attempts = Vec::new();
    let done = |attempts: &Vec<Attempt>| attempts.last().is_some_and(|a: &Attempt| a.outcome.verdict == Verdict::Eliminated);

    let derived: Vec<Hypothesis> = hypotheses(pair, Component::A, n)
        .into_iter()
        .chain(hypotheses(pair, Component::B, n).into_iter().filter(|h| !matches!(h.fact, Fact::Sum { .. })))
        .collect();

    let sum = &derived[0];
    attempts.push(attempt(
        EliminationRule::Genus,
        sum,
        genus_obstruction(assumptions.g4_a + assumptions.g4_b, &sum.class),
    ));
    if done(&attempts) {
        return Ok(CaseOutcome { attempts, eliminated: true });
    }

    for h in components(pair).iter().chain(&derived) {
        if let Some(a) = signature_attempt(EliminationRule::ClassicalSignature, h, 2, 1, &values, config)? {
            attempts.push(a);
            if done(&attempts) {
                return Ok(CaseOutcome { attempts, eliminated: true });
            }
        }
    }

    for m in [4, 8] {
        for h in derived.iter().filter(|h| matches!(h.fact, Fact::Cable { .. })) {
            for r in 1..=m / 2 {
                if let Some(a) = signature_attempt(EliminationRule::CableSignature, h, m, r, &values, config)? {
                    attempts.push(a);
                    if done(&attempts) {
                        return Ok(CaseOutcome { attempts, eliminated: true });
                    }
                }
            }
        }
    }

    for h in components(pair) {
        let Fact::Component { knot } = h.fact else { unreachable!() };
        let arf = match knot {
            Component::A => assumptions.arf_a,
            Component::B => assumptions.arf_b,
        };
        let outcome = arf_obstruction(arf, &h.class, AmbientData::S2_X_S2)?;
        if outcome.verdict != Verdict::Inapplicable {
            attempts.push(attempt(EliminationRule::ComponentArf, &h, outcome));
            if done(&attempts) {
                return Ok(CaseOutcome { attempts, eliminated: true });
            }
        }
    }
    Ok(CaseOutcome { attempts, eliminated: false })
}
