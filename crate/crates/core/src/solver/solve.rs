use serde::{Deserialize, Serialize};

use super::assumptions::Assumptions;
use super::table::{CellBranch, LinearForm, TableCell};
use super::SolverError;
use crate::fourmanifold::{canonical_pair, family_member, AffineClass, CasePair, GroupElement};
use crate::obstructions::{arf_obstruction, AmbientData, ObstructionOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Alpha,
    Beta,
}

/// A solution discarded because one disc would lie in a characteristic
/// class incompatible with its knot's Arf invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prune {
    pub side: Side,
    pub outcome: ObstructionOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSolution {
    pub branch: usize,
    pub pair: CasePair,
    pub text: String,
    pub pruned: Option<Prune>,
}

/// Solutions of `α·β = target` in one table cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSolutions {
    pub cell: (usize, usize),
    pub equations: Vec<String>,
    pub solutions: Vec<RawSolution>,
    /// Branches whose solutions form a two-parameter set.
    pub unresolved: Vec<String>,
}

/// `x = x0 + xs·t`, `y = y0 + ys·t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Assignment {
    x: (i64, i64),
    y: (i64, i64),
}

enum BranchSolutions {
    Listed(Vec<Assignment>),
    TwoParameter,
}

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Integer solutions of `branch.value = target` for the equation shapes of
/// the table: affine with a unit coefficient, a single variable, `xy = k`,
/// or constant.
fn solve_equation(branch: &CellBranch, target: i64, cell: (usize, usize)) -> Result<BranchSolutions, SolverError> {
    let p = branch.value;
    let unsupported = || SolverError::UnsupportedEquationShape { row: cell.0, col: cell.1, equation: p.to_string() };
    if p.xx != 0 || p.yy != 0 {
        return Err(unsupported());
    }
    let k = target - p.c;
    let has_x = branch.alpha.iter().chain(&branch.beta).any(|f| f.x != 0);
    let has_y = branch.alpha.iter().chain(&branch.beta).any(|f| f.y != 0);
    let point = |x, y| Assignment { x: (x, 0), y: (y, 0) };
    let listed = |v: Vec<Assignment>| Ok(BranchSolutions::Listed(v));
    match (p.x, p.y, p.xy) {
        (0, 0, 0) if k != 0 => listed(vec![]),
        (0, 0, 0) => match (has_x, has_y) {
            (true, true) => Ok(BranchSolutions::TwoParameter),
            (true, false) => listed(vec![Assignment { x: (0, 1), y: (0, 0) }]),
            (false, true) => listed(vec![Assignment { x: (0, 0), y: (0, 1) }]),
            (false, false) => listed(vec![point(0, 0)]),
        },
        (0, 0, cxy) => {
            if k % cxy != 0 {
                return listed(vec![]);
            }
            let q = k / cxy;
            if q == 0 {
                return listed(vec![Assignment { x: (0, 0), y: (0, 1) }, Assignment { x: (0, 1), y: (0, 0) }]);
            }
            listed(divisors(q).into_iter().flat_map(|d| [point(d, q / d), point(-d, -q / d)]).collect())
        }
        (cx, 0, 0) => {
            if k % cx != 0 {
                return listed(vec![]);
            }
            listed(vec![Assignment { x: (k / cx, 0), y: (0, i64::from(has_y)) }])
        }
        (0, cy, 0) => {
            if k % cy != 0 {
                return listed(vec![]);
            }
            listed(vec![Assignment { x: (0, i64::from(has_x)), y: (k / cy, 0) }])
        }
        (cx, cy, 0) if cy.abs() == 1 => listed(vec![Assignment { x: (0, 1), y: (k * cy, -cx * cy) }]),
        (cx, cy, 0) if cx.abs() == 1 => listed(vec![Assignment { x: (k * cx, -cy * cx), y: (0, 1) }]),
        _ => Err(unsupported()),
    }
}

fn substitute(form: &LinearForm, a: &Assignment) -> (i64, i64) {
    (form.c + form.x * a.x.0 + form.y * a.y.0, form.x * a.x.1 + form.y * a.y.1)
}

fn pair_from(branch: &CellBranch, a: &Assignment) -> CasePair {
    let class = |forms: &[LinearForm; 2]| {
        let (p1, q1) = substitute(&forms[0], a);
        let (p2, q2) = substitute(&forms[1], a);
        AffineClass::new(p1, q1, p2, q2)
    };
    let (alpha, beta) = (class(&branch.alpha), class(&branch.beta));
    if alpha.is_constant() && beta.is_constant() {
        CasePair::concrete(alpha.base(), beta.base())
    } else {
        CasePair::family(alpha, beta)
    }
}

/// First component whose class is characteristic with the wrong Arf
/// invariant.
pub fn arf_prune(pair: &CasePair, assumptions: &Assumptions) -> Result<Option<Prune>, SolverError> {
    for (side, class, arf) in [
        (Side::Alpha, pair.alpha(), assumptions.arf_a),
        (Side::Beta, pair.beta(), assumptions.arf_b),
    ] {
        let outcome = arf_obstruction(arf, &class, AmbientData::S2_X_S2)?;
        if outcome.is_eliminated() {
            return Ok(Some(Prune { side, outcome }));
        }
    }
    Ok(None)
}

/// Solves `α·β = target` over every sign branch of `cell`, pruning
/// solutions by the Arf invariant of each component.
pub fn solve_cell(cell: &TableCell, target: i64, assumptions: &Assumptions) -> Result<CellSolutions, SolverError> {
    let mut out = CellSolutions { cell: cell.position(), equations: Vec::new(), solutions: Vec::new(), unresolved: Vec::new() };
    for (i, branch) in cell.branches.iter().enumerate() {
        out.equations.push(format!("{} = {target}", branch.value));
        match solve_equation(branch, target, cell.position())? {
            BranchSolutions::TwoParameter => out.unresolved.push(branch.describe()),
            BranchSolutions::Listed(assignments) => {
                for a in assignments {
                    let pair = pair_from(branch, &a);
                    let pruned = arf_prune(&pair, assumptions)?;
                    out.solutions.push(RawSolution { branch: i, text: pair.to_string(), pair, pruned });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionEntry {
    pub pair: CasePair,
    pub canonical: CasePair,
    pub sources: Vec<(usize, usize)>,
}

/// A concrete solution lying on a family after applying `element`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Absorption {
    pub pair: CasePair,
    pub cell: (usize, usize),
    pub family: usize,
    pub t: i64,
    pub element: GroupElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unresolved {
    pub cell: (usize, usize),
    pub branch: String,
}

/// Pairwise inequivalent families and sporadic pairs, in order of discovery.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub families: Vec<SolutionEntry>,
    pub sporadics: Vec<SolutionEntry>,
    pub absorbed: Vec<Absorption>,
    pub unresolved: Vec<Unresolved>,
}

/// Merges per-cell solutions up to symmetry. Concrete pairs on a family
/// (after any group element) are absorbed into it. The first pair found in
/// row-major cell order is kept as the representative.
pub fn dedupe_solutions(cells: &[CellSolutions]) -> SolutionSet {
    let mut set = SolutionSet { families: Vec::new(), sporadics: Vec::new(), absorbed: Vec::new(), unresolved: Vec::new() };
    let mut ordered: Vec<&CellSolutions> = cells.iter().collect();
    ordered.sort_by_key(|c| c.cell);
    let kept = || ordered.iter().flat_map(|c| c.solutions.iter().filter(|s| s.pruned.is_none()).map(move |s| (c.cell, s.pair)));
    fn record(list: &mut Vec<SolutionEntry>, pair: CasePair, cell: (usize, usize)) -> bool {
        let canonical = canonical_pair(&pair);
        if let Some(e) = list.iter_mut().find(|e| e.canonical == canonical) {
            if !e.sources.contains(&cell) {
                e.sources.push(cell);
            }
            return false;
        }
        list.push(SolutionEntry { pair, canonical, sources: vec![cell] });
        true
    }
    for (cell, pair) in kept().filter(|(_, p)| p.is_family()) {
        record(&mut set.families, pair, cell);
    }
    for (cell, pair) in kept().filter(|(_, p)| !p.is_family()) {
        let absorbed = set
            .families
            .iter()
            .enumerate()
            .find_map(|(i, f)| family_member(&f.pair, &pair).map(|m| (i + 1, m)));
        match absorbed {
            Some((family, m)) => set.absorbed.push(Absorption { pair, cell, family, t: m.t, element: m.element }),
            None => {
                record(&mut set.sporadics, pair, cell);
            }
        }
    }
    for c in ordered {
        set.unresolved.extend(c.unresolved.iter().map(|b| Unresolved { cell: c.cell, branch: b.clone() }));
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourmanifold::HomologyClass;
    use crate::solver::table::build_table;

    fn solved(a: &Assumptions) -> Vec<CellSolutions> {
        build_table(a)
            .unwrap()
            .iter()
            .filter(|c| !c.highlighted)
            .map(|c| solve_cell(c, -a.lk, a).unwrap())
            .collect()
    }

    fn cell(cells: &[CellSolutions], pos: (usize, usize)) -> &CellSolutions {
        cells.iter().find(|c| c.cell == pos).unwrap()
    }

    #[test]
    fn cell_examples() {
        let cells = solved(&Assumptions::standard());
        let fams: Vec<_> = cell(&cells, (2, 3)).solutions.iter().map(|s| s.text.clone()).collect();
        assert_eq!(fams, ["((1,x),(1,4-x))", "((1,x),(-1,4+x))"]);
        let c21 = cell(&cells, (2, 1));
        assert_eq!(c21.solutions.len(), 1);
        assert_eq!(c21.solutions[0].pruned.as_ref().unwrap().side, Side::Beta);
        let spor: Vec<_> = cell(&cells, (3, 3)).solutions.iter().map(|s| s.text.clone()).collect();
        assert_eq!(spor, ["((2,2),(1,1))", "((2,2),(-1,3))", "((2,-2),(1,3))", "((2,-2),(-1,1))"]);
        assert!(cell(&cells, (1, 2)).solutions.iter().all(|s| s.pruned.is_some()));
        assert!(cell(&cells, (1, 1)).solutions.is_empty());
        assert!(cell(&cells, (3, 5)).solutions.is_empty());
        let kept: Vec<_> = cell(&cells, (2, 2))
            .solutions
            .iter()
            .filter(|s| s.pruned.is_none())
            .map(|s| s.text.clone())
            .collect();
        assert_eq!(kept, ["((1,4),(1,0))", "((1,-4),(-1,0))"]);
    }

    #[test]
    fn dedupe_matches_the_case_list() {
        let set = dedupe_solutions(&solved(&Assumptions::standard()));
        let fams: Vec<_> = set.families.iter().map(|e| e.pair.to_string()).collect();
        assert_eq!(fams, ["((1,x),(1,4-x))", "((1,x),(-1,4+x))"]);
        let spor: Vec<_> = set.sporadics.iter().map(|e| e.pair.to_string()).collect();
        assert_eq!(spor, ["((2,2),(1,1))", "((2,2),(-1,3))", "((2,-2),(1,3))", "((2,-2),(-1,1))"]);
        assert!(set.unresolved.is_empty());
        let first = &set.absorbed[0];
        assert_eq!((first.pair.to_string(), first.family, first.t), ("((1,4),(1,0))".to_string(), 1, 4));
        let second = &set.absorbed[1];
        assert_eq!((second.family, second.t), (2, -4));
        assert!(set.absorbed.iter().filter(|a| a.cell == (2, 4)).count() == 8);
    }

    #[test]
    fn duplicate_sporadics_merge() {
        let pair = CasePair::concrete(HomologyClass::new(2, 2), HomologyClass::new(1, 1));
        let twin = pair.apply(GroupElement::S3);
        let raw = |cell, pair: CasePair| CellSolutions {
            cell,
            equations: vec![],
            solutions: vec![RawSolution { branch: 0, text: pair.to_string(), pair, pruned: None }],
            unresolved: vec![],
        };
        let set = dedupe_solutions(&[raw((3, 3), pair), raw((2, 5), twin)]);
        assert_eq!(set.sporadics.len(), 1);
        assert_eq!(set.sporadics[0].sources, [(2, 5), (3, 3)]);
    }

    #[test]
    fn arf_zero_keeps_characteristic_solutions() {
        let mut a = Assumptions::standard();
        a.arf_a = 0;
        a.arf_b = 0;
        let set = dedupe_solutions(&solved(&a));
        assert!(set.families.iter().any(|e| e.pair.to_string() == "((1,x),(0,4))"));
    }

    #[test]
    fn zero_target_is_unresolved() {
        let mut a = Assumptions::standard();
        a.lk = 0;
        let set = dedupe_solutions(&solved(&a));
        assert!(set.unresolved.iter().any(|u| u.cell == (1, 1)));
    }
}
