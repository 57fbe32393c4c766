//! Independent re-verification of a certificate. Class arithmetic, genus
//! bounds, squares, divisibility and signature values are recomputed here
//! from first principles; torus-knot signatures use the closed form rather
//! than the matrix engine.

use serde::{Deserialize, Serialize};

use super::certificate::{CaseKind, ProofCertificate, ProofVerdict, TableCellRecord};
use super::eliminate::{Attempt, Component, EliminationRule, Fact};
use super::solve::Side;
use super::table::{build_table, check_table_symmetries};
use crate::exact::RootOfUnity;
use crate::fourmanifold::{AffineClass, CasePair, ClassValue, HomologyClass};
use crate::obstructions::{Verdict, Witness};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub attempts: usize,
    pub prunes: usize,
    pub absorptions: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

fn genus_of(c: HomologyClass) -> i64 {
    if c.a1 == 0 || c.a2 == 0 {
        0
    } else {
        (c.a1.abs() - 1) * (c.a2.abs() - 1)
    }
}

/// `[p1, q1, p2, q2]` of a class.
fn coeffs(c: &ClassValue) -> [i64; 4] {
    match c {
        ClassValue::Concrete(h) => [h.a1, 0, h.a2, 0],
        ClassValue::Family(a) => [a.p1, a.q1, a.p2, a.q2],
    }
}

/// `2(p1 + q1 t)(p2 + q2 t)` when it does not depend on `t`.
fn constant_square(c: &ClassValue) -> Option<i64> {
    let [p1, q1, p2, q2] = coeffs(c);
    (p1 * q2 + q1 * p2 == 0 && q1 * q2 == 0).then_some(2 * p1 * p2)
}

fn combine(a: &ClassValue, ka: i64, b: &ClassValue, kb: i64) -> [i64; 4] {
    let (x, y) = (coeffs(a), coeffs(b));
    [0, 1, 2, 3].map(|i| ka * x[i] + kb * y[i])
}

/// `σ_{T(2,q)}(ζ_m^r)`: minus twice the number of odd `j < |q|` with
/// `j/|q| < θ/π`, negated for `q < 0`.
fn torus_sigma(q: i64, root: RootOfUnity) -> Option<i64> {
    let (m, mut r) = (root.order() as i64, root.numerator() as i64);
    if 2 * r > m {
        r = m - r;
    }
    let aq = q.abs();
    let mut count = 0;
    for j in (1..aq).step_by(2) {
        if j * m == 2 * r * aq {
            return None;
        }
        if j * m < 2 * r * aq {
            count += 1;
        }
    }
    Some(-2 * count * q.signum())
}

fn lookup(cert: &ProofCertificate, c: Component, root: RootOfUnity) -> Option<i64> {
    let table = match c {
        Component::A => &cert.assumptions.sigma_a,
        Component::B => &cert.assumptions.sigma_b,
    };
    let root = root.normalized();
    if root.is_one() {
        return Some(0);
    }
    table.get(&root).or_else(|| table.get(&root.conj().normalized())).copied()
}

fn name(c: Component) -> &'static str {
    match c {
        Component::A => "A",
        Component::B => "B",
    }
}

fn other(c: Component) -> Component {
    match c {
        Component::A => Component::B,
        Component::B => Component::A,
    }
}

/// Class coefficients, grammar string and expected leaves as `(label, power of ω)`.
type ExpectedFact = ([i64; 4], String, Vec<(String, i64)>);

struct Checker<'a> {
    cert: &'a ProofCertificate,
    report: CheckReport,
}

impl Checker<'_> {
    fn fail(&mut self, msg: String) {
        self.report.failures.push(msg);
    }

    fn ensure(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }

    fn check_table(&mut self) {
        let Ok(table) = build_table(&self.cert.assumptions) else {
            return self.fail("table cannot be rebuilt under the stated assumptions".into());
        };
        let records: Vec<TableCellRecord> = table.iter().map(TableCellRecord::from).collect();
        self.ensure(records == self.cert.table, || "table differs from the recomputed table".into());
        match check_table_symmetries(&table) {
            Ok(checks) => self.ensure(checks == self.cert.symmetry_checks, || "symmetry checks differ".into()),
            Err(e) => self.fail(format!("symmetry check: {e}")),
        }
    }

    fn expected_fact(&mut self, pair: &CasePair, fact: Fact) -> Option<ExpectedFact> {
        let n = self.cert.target;
        let (alpha, beta) = (pair.alpha(), pair.beta());
        let order = |first: Component| match first {
            Component::A => (alpha, beta),
            Component::B => (beta, alpha),
        };
        Some(match fact {
            Fact::Component { knot } => {
                let (a, _) = order(knot);
                (coeffs(&a), format!("atom({})", name(knot)), vec![(name(knot).to_string(), 1)])
            }
            Fact::Sum { first } => {
                let (a, b) = order(first);
                let (x, y) = (name(first), name(other(first)));
                (combine(&a, 1, &b, 1), format!("sum(atom({x}),atom({y}))"), vec![(x.into(), 1), (y.into(), 1)])
            }
            Fact::ReverseSum { first, q } => {
                if q != 2 * n - 1 && q != 2 * n + 1 {
                    self.fail(format!("torus parameter {q} is not 2n±1 for n = {n}"));
                    return None;
                }
                let (a, b) = order(first);
                let (x, y) = (name(first), name(other(first)));
                (
                    combine(&a, 1, &b, -1),
                    format!("sum(sum(atom({x}),reverse(atom({y}))),torus(2,{q}))"),
                    vec![(x.into(), 1), (format!("{y}^r"), 1), (format!("T(2,{q})"), 1)],
                )
            }
            Fact::Cable { first, q } => {
                let (a, b) = order(first);
                let Some(sq) = constant_square(&b) else {
                    self.fail("cable fact with a parameter-dependent square".into());
                    return None;
                };
                if q != -2 * sq - 2 * n - 1 && q != -2 * sq - 2 * n + 1 {
                    self.fail(format!("cable parameter {q} is not -2b^2-2n±1 for b^2 = {sq}, n = {n}"));
                    return None;
                }
                let (x, y) = (name(first), name(other(first)));
                (
                    combine(&a, 1, &b, 2),
                    format!("sum(atom({x}),cable(atom({y}),2,{q}))"),
                    vec![(x.into(), 1), (y.into(), 2), (format!("T(2,{q})"), 1)],
                )
            }
        })
    }

    fn check_terms(&mut self, at: &Attempt, leaves: &[(String, i64)], m: u32, r: u32) -> Option<i64> {
        let root = RootOfUnity::new(m, r as i64)?;
        if at.terms.len() != leaves.len() {
            self.fail(format!("{}: expected {} signature terms", at.knot, leaves.len()));
            return None;
        }
        let mut total = 0;
        for (term, (label, power)) in at.terms.iter().zip(leaves) {
            let want_root = root.pow(*power).normalized();
            let value = if let Some(q) = label.strip_prefix("T(2,").and_then(|s| s.strip_suffix(')')) {
                q.parse().ok().and_then(|q| torus_sigma(q, want_root))
            } else {
                let c = if label.starts_with('A') { Component::A } else { Component::B };
                lookup(self.cert, c, want_root)
            };
            let ok = term.knot == *label && term.root.normalized() == want_root && Some(term.value) == value;
            if !ok {
                self.fail(format!("{}: term {} at {} = {} does not check", at.knot, term.knot, term.root, term.value));
                return None;
            }
            total += term.value;
        }
        Some(total)
    }

    fn check_attempt(&mut self, pair: &CasePair, at: &Attempt) {
        self.report.attempts += 1;
        let Some((class, grammar, leaves)) = self.expected_fact(pair, at.fact) else {
            return;
        };
        if coeffs(&at.class) != class {
            return self.fail(format!("{}: class {} does not follow from {pair}", at.knot, at.class));
        }
        self.ensure(at.expression == grammar, || format!("{}: knot is not {grammar}", at.knot));
        let eliminated = at.outcome.verdict == Verdict::Eliminated;
        let ambient = self.cert.ambient;
        match (&at.rule, &at.outcome.detail) {
            (EliminationRule::Genus, Witness::Genus { min_genus, bound }) => {
                let want_bound = self.cert.assumptions.g4_a + self.cert.assumptions.g4_b;
                self.ensure(*bound == want_bound, || format!("genus bound {bound} is not {want_bound}"));
                self.ensure(matches!(at.fact, Fact::Sum { first: Component::A }), || "genus rule on a non-sum disc".into());
                match at.class.concrete() {
                    Some(c) => {
                        let g = genus_of(c);
                        self.ensure(g == *min_genus as i64, || format!("minimal genus of {c} is {g}"));
                        self.ensure(eliminated == (g > *bound as i64), || format!("genus verdict for {c} is wrong"));
                    }
                    None => self.fail("genus witness on a family".into()),
                }
            }
            (EliminationRule::Genus, Witness::Inapplicable { .. }) => {
                self.ensure(at.class.concrete().is_none() && !eliminated, || "inapplicable genus rule on a concrete class".into());
            }
            (
                EliminationRule::ClassicalSignature | EliminationRule::CableSignature,
                Witness::Signature { m, r, sigma, square, genus, sigma_x, b2 },
            ) => {
                let (mi, ri) = (*m as i128, *r as i128);
                if at.rule == EliminationRule::ClassicalSignature {
                    self.ensure((*m, *r) == (2, 1), || "classical rule not at zeta_2".into());
                }
                self.ensure(*sigma_x == ambient.sigma_x && *b2 == ambient.b2 && *genus == 0, || "ambient data mismatch".into());
                self.ensure(coeffs(&at.class).iter().all(|c| c % *m as i64 == 0), || format!("{} not divisible by {m}", at.class));
                self.ensure(constant_square(&at.class) == Some(*square), || format!("square of {} is not {square}", at.class));
                if let Some(total) = self.check_terms(at, &leaves, *m, *r) {
                    self.ensure(total == *sigma, || format!("terms sum to {total}, not {sigma}"));
                }
                let lhs = (mi * mi * (*sigma + *sigma_x) as i128 - 2 * ri * (mi - ri) * *square as i128).abs();
                let rhs = mi * mi * (*b2 + 2 * *genus as i64) as i128;
                self.ensure(eliminated == (lhs > rhs), || format!("{}: signature inequality verdict is wrong", at.knot));
            }
            (EliminationRule::ComponentArf, Witness::Arf { arf, square, sigma_x }) => {
                let Fact::Component { knot } = at.fact else {
                    return self.fail("Arf rule on a derived disc".into());
                };
                let want = match knot {
                    Component::A => self.cert.assumptions.arf_a,
                    Component::B => self.cert.assumptions.arf_b,
                };
                self.check_arf(&at.class, want, *arf, *square, *sigma_x, eliminated);
            }
            _ => self.fail(format!("{}: rule {:?} with mismatched witness", at.knot, at.rule)),
        }
    }

    fn check_arf(&mut self, class: &ClassValue, want_arf: u8, arf: u8, square: i64, sigma_x: i64, eliminated: bool) {
        self.ensure(arf == want_arf, || format!("Arf {arf} is not the assumed {want_arf}"));
        self.ensure(coeffs(class).iter().all(|c| c % 2 == 0), || format!("{class} is not characteristic"));
        self.ensure(constant_square(class) == Some(square), || format!("square of {class} is not {square}"));
        let diff = sigma_x - square;
        if diff % 8 != 0 {
            return self.fail(format!("{diff} is not divisible by 8"));
        }
        self.ensure(eliminated == ((diff / 8).rem_euclid(2) != arf as i64), || "Arf verdict is wrong".into());
    }

    fn check_cells(&mut self) {
        let target = self.cert.target;
        for cell in &self.cert.cells {
            for s in &cell.solutions {
                let (a, b) = (s.pair.alpha().affine(), s.pair.beta().affine());
                let dot = (a.p1 * b.p2 + a.p2 * b.p1, a.p1 * b.q2 + a.q1 * b.p2 + a.p2 * b.q1 + a.q2 * b.p1, a.q1 * b.q2 + a.q2 * b.q1);
                self.ensure(dot == (target, 0, 0), || format!("{}: alpha.beta is not {target}", s.text));
                if let Some(p) = &s.pruned {
                    self.report.prunes += 1;
                    let (class, want) = match p.side {
                        Side::Alpha => (s.pair.alpha(), self.cert.assumptions.arf_a),
                        Side::Beta => (s.pair.beta(), self.cert.assumptions.arf_b),
                    };
                    match &p.outcome.detail {
                        Witness::Arf { arf, square, sigma_x } => {
                            self.ensure(p.outcome.verdict == Verdict::Eliminated, || "prune that does not eliminate".into());
                            self.check_arf(&class, want, *arf, *square, *sigma_x, true);
                        }
                        _ => self.fail(format!("{}: prune without an Arf witness", s.text)),
                    }
                }
            }
        }
    }

    fn check_cases(&mut self) {
        let cert = self.cert;
        for case in &cert.cases {
            let ok = matches!((case.kind, case.pair), (CaseKind::Family, CasePair::Family { .. }) | (CaseKind::Sporadic, CasePair::Concrete { .. }));
            self.ensure(ok, || format!("case {} has the wrong kind", case.id));
            for at in &case.outcome.attempts {
                self.check_attempt(&case.pair, at);
            }
            let verdicts: Vec<bool> = case.outcome.attempts.iter().map(|a| a.outcome.verdict == Verdict::Eliminated).collect();
            let eliminated = verdicts.last().copied().unwrap_or(false);
            self.ensure(case.outcome.eliminated == eliminated, || format!("case {} elimination flag is wrong", case.id));
            self.ensure(verdicts.iter().rev().skip(1).all(|v| !v), || format!("case {} continues after elimination", case.id));
            for ab in &case.absorbed {
                self.report.absorptions += 1;
                let CasePair::Family { alpha, beta } = case.pair else {
                    self.fail(format!("case {} absorbs into a concrete pair", case.id));
                    continue;
                };
                let on = |f: AffineClass| f.at(ab.t);
                let image = ab.pair.apply(ab.element);
                self.ensure(image == CasePair::concrete(on(alpha), on(beta)), || {
                    format!("{} under {} is not the family at t = {}", ab.pair, ab.element, ab.t)
                });
            }
        }
        // every kept solution is a case or absorbed into one
        for cell in &cert.cells {
            for s in cell.solutions.iter().filter(|s| s.pruned.is_none()) {
                let covered = cert.cases.iter().any(|c| {
                    c.canonical == crate::fourmanifold::canonical_pair(&s.pair) || c.absorbed.iter().any(|a| a.pair == s.pair)
                });
                self.ensure(covered, || format!("solution {} is not covered by any case", s.text));
            }
        }
        let surviving: Vec<String> = cert.cases.iter().filter(|c| !c.outcome.eliminated).map(|c| c.text.clone()).collect();
        let proven = surviving.is_empty() && cert.unresolved.is_empty();
        match &cert.verdict {
            ProofVerdict::Proven => self.ensure(proven, || "verdict proven, but cases survive".into()),
            ProofVerdict::Gap { surviving: listed, .. } => {
                self.ensure(!proven && *listed == surviving, || "gap verdict does not match the surviving cases".into())
            }
        }
    }
}

/// Re-verifies every witness in `cert` and the consistency of its verdict.
pub fn check_certificate(cert: &ProofCertificate) -> CheckReport {
    let mut c = Checker { cert, report: CheckReport::default() };
    if let Err(e) = cert.assumptions.validate() {
        c.fail(format!("assumptions: {e}"));
    }
    c.ensure(cert.target == -cert.assumptions.lk, || "target is not -lk".into());
    c.check_table();
    c.check_cells();
    c.check_cases();
    c.report
}
