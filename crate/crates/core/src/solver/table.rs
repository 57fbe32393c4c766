use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::assumptions::Assumptions;
use super::SolverError;
use crate::fourmanifold::GroupElement;

/// `c + x·X + y·Y`, a coordinate of a class pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub c: i64,
    pub x: i64,
    pub y: i64,
}

impl LinearForm {
    pub const fn constant(c: i64) -> Self {
        Self { c, x: 0, y: 0 }
    }

    pub const X: Self = Self { c: 0, x: 1, y: 0 };
    pub const Y: Self = Self { c: 0, x: 0, y: 1 };

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.c + self.x * x + self.y * y
    }

    fn times(&self, o: &Self) -> Poly2 {
        Poly2 {
            c: self.c * o.c,
            x: self.c * o.x + self.x * o.c,
            y: self.c * o.y + self.y * o.c,
            xy: self.x * o.y + self.y * o.x,
            xx: self.x * o.x,
            yy: self.y * o.y,
        }
    }

    /// `None` for a coordinate ranging over all integers.
    fn key(&self) -> Option<i64> {
        (self.x == 0 && self.y == 0).then_some(self.c)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = Poly2 { c: self.c, x: self.x, y: self.y, ..Poly2::default() };
        p.fmt(f)
    }
}

/// A polynomial of degree at most two in `x` and `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    pub c: i64,
    pub x: i64,
    pub y: i64,
    pub xy: i64,
    pub xx: i64,
    pub yy: i64,
}

impl Poly2 {
    fn add(self, o: Self) -> Self {
        Self {
            c: self.c + o.c,
            x: self.x + o.x,
            y: self.y + o.y,
            xy: self.xy + o.xy,
            xx: self.xx + o.xx,
            yy: self.yy + o.yy,
        }
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.c + self.x * x + self.y * y + self.xy * x * y + self.xx * x * x + self.yy * y * y
    }

    pub fn is_constant(&self) -> bool {
        self.monomials()[1..].iter().all(|(c, _)| *c == 0)
    }

    /// Coefficients by increasing degree.
    fn monomials(&self) -> [(i64, &'static str); 6] {
        [(self.c, ""), (self.x, "x"), (self.y, "y"), (self.xx, "x^2"), (self.xy, "xy"), (self.yy, "y^2")]
    }
}

fn term(c: i64, mono: &str) -> String {
    match (c, mono) {
        (_, "") => c.abs().to_string(),
        (1 | -1, _) => mono.to_string(),
        _ => format!("{}{mono}", c.abs()),
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, mono) in self.monomials() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&term(c, mono));
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// One sign choice of a cell: concrete patterns for `α` and `β` and `α·β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellBranch {
    pub alpha: [LinearForm; 2],
    pub beta: [LinearForm; 2],
    pub value: Poly2,
}

type BranchKey = [[Option<i64>; 2]; 2];

impl CellBranch {
    fn key(&self) -> BranchKey {
        [[self.alpha[0].key(), self.alpha[1].key()], [self.beta[0].key(), self.beta[1].key()]]
    }

    pub fn describe(&self) -> String {
        format!("(({},{}),({},{}))", self.alpha[0], self.alpha[1], self.beta[0], self.beta[1])
    }
}

fn act(g: GroupElement, k: BranchKey) -> BranchKey {
    let class = |c: [Option<i64>; 2]| {
        let c = if g.s1 { [c[1], c[0]] } else { c };
        if g.s2 {
            c.map(|v| v.map(|v| -v))
        } else {
            c
        }
    };
    let (a, b) = (class(k[0]), class(k[1]));
    if g.s3 {
        [b, a]
    } else {
        [a, b]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCell {
    pub row: usize,
    pub col: usize,
    pub alpha: &'static str,
    pub beta: &'static str,
    pub branches: Vec<CellBranch>,
    pub value: String,
    pub highlighted: bool,
}

impl TableCell {
    pub fn position(&self) -> (usize, usize) {
        (self.row, self.col)
    }

    fn keys(&self) -> BTreeSet<BranchKey> {
        self.branches.iter().map(CellBranch::key).collect()
    }
}

/// A highlighted cell and a group element carrying each of its sign
/// branches onto a branch of `equivalent`, after composing with `s2` on the
/// branches listed by `with_s2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryCheck {
    pub cell: (usize, usize),
    pub equivalent: (usize, usize),
    pub element: GroupElement,
    pub with_s2: bool,
}

const ROWS: [(&str, &[[LinearForm; 2]]); 3] = [
    ("(0,x)", &[[LinearForm::constant(0), LinearForm::X]]),
    ("(1,x)", &[[LinearForm::constant(1), LinearForm::X]]),
    ("(2,±2)", &[[LinearForm::constant(2), LinearForm::constant(2)], [LinearForm::constant(2), LinearForm::constant(-2)]]),
];

const COLUMNS: [(&str, &[[LinearForm; 2]]); 5] = [
    ("(0,y)", &[[LinearForm::constant(0), LinearForm::Y]]),
    ("(y,0)", &[[LinearForm::Y, LinearForm::constant(0)]]),
    ("(±1,y)", &[[LinearForm::constant(1), LinearForm::Y], [LinearForm::constant(-1), LinearForm::Y]]),
    ("(y,±1)", &[[LinearForm::Y, LinearForm::constant(1)], [LinearForm::Y, LinearForm::constant(-1)]]),
    (
        "(±2,±2)",
        &[
            [LinearForm::constant(2), LinearForm::constant(2)],
            [LinearForm::constant(2), LinearForm::constant(-2)],
            [LinearForm::constant(-2), LinearForm::constant(2)],
            [LinearForm::constant(-2), LinearForm::constant(-2)],
        ],
    ),
];

fn intersection(a: &[LinearForm; 2], b: &[LinearForm; 2]) -> Poly2 {
    a[0].times(&b[1]).add(a[1].times(&b[0]))
}

/// Renders a cell's values: fixed terms first, then `±` terms, each by
/// increasing degree. Constant cells whose values are not of that shape are
/// listed as a set, e.g. `0,±8`.
pub fn render_cell_value(values: &[Poly2]) -> String {
    let mut fixed = Vec::new();
    let mut signed = Vec::new();
    let mut regular = true;
    for i in 0..6 {
        let coeffs: BTreeSet<i64> = values.iter().map(|p| p.monomials()[i].0).collect();
        let mono = values[0].monomials()[i].1;
        let lo = *coeffs.iter().next().expect("nonempty");
        match coeffs.len() {
            1 if lo != 0 => fixed.push((lo, mono)),
            1 => {}
            2 if coeffs.contains(&-lo) => signed.push((lo.abs(), mono)),
            _ => regular = false,
        }
    }
    if !regular {
        if values.iter().all(Poly2::is_constant) {
            let abs: BTreeSet<i64> = values.iter().map(|p| p.c.abs()).collect();
            let parts: Vec<String> = abs
                .iter()
                .map(|&v| {
                    let (neg, pos) = (values.iter().any(|p| p.c == -v), values.iter().any(|p| p.c == v));
                    match (neg && v != 0, pos) {
                        (true, true) => format!("±{v}"),
                        (true, false) => format!("-{v}"),
                        _ => v.to_string(),
                    }
                })
                .collect();
            return parts.join(",");
        }
        let all: Vec<String> = values.iter().map(Poly2::to_string).collect();
        return all.join(",");
    }
    let mut out = String::new();
    for (c, mono) in fixed {
        if c < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&term(c, mono));
    }
    for (c, mono) in signed {
        out.push('±');
        out.push_str(&term(c, mono));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Base elements tried when reducing a cell; `s2` is applied per branch.
const BASES: [GroupElement; 4] = [
    GroupElement::IDENTITY,
    GroupElement::S1,
    GroupElement::S3,
    GroupElement::new(true, false, true),
];

/// Reduces `cell` onto an earlier cell (column-major order) of `cells`.
fn find_reduction(cells: &[TableCell], cell: &TableCell, only_plain_targets: bool) -> Option<SymmetryCheck> {
    let order = |c: &TableCell| (c.col, c.row);
    let mut earlier: Vec<&TableCell> = cells
        .iter()
        .filter(|c| order(c) < order(cell) && !(only_plain_targets && c.highlighted))
        .collect();
    earlier.sort_by_key(|c| order(c));
    for target in earlier {
        let keys = target.keys();
        for base in BASES {
            let mut with_s2 = false;
            let all = cell.keys().into_iter().all(|k| {
                if keys.contains(&act(base, k)) {
                    true
                } else if keys.contains(&act(base.compose(GroupElement::S2), k)) {
                    with_s2 = true;
                    true
                } else {
                    false
                }
            });
            if all {
                return Some(SymmetryCheck { cell: cell.position(), equivalent: target.position(), element: base, with_s2 });
            }
        }
    }
    None
}

/// The fifteen cells, row-major. A cell is highlighted when its pairs are,
/// up to symmetry, those of an earlier cell in column-major order.
pub fn build_table(assumptions: &Assumptions) -> Result<Vec<TableCell>, SolverError> {
    if assumptions.g4_a != 1 || assumptions.g4_b != 1 {
        return Err(SolverError::UnsupportedGenusBound { g4_a: assumptions.g4_a, g4_b: assumptions.g4_b });
    }
    if !assumptions.symmetric_link {
        return Err(SolverError::AsymmetricLink);
    }
    let mut cells = Vec::new();
    for (i, (alpha, rows)) in ROWS.iter().enumerate() {
        for (j, (beta, cols)) in COLUMNS.iter().enumerate() {
            let branches: Vec<CellBranch> = rows
                .iter()
                .flat_map(|a| cols.iter().map(move |b| CellBranch { alpha: *a, beta: *b, value: intersection(a, b) }))
                .collect();
            let values: Vec<Poly2> = branches.iter().map(|b| b.value).collect();
            cells.push(TableCell {
                row: i + 1,
                col: j + 1,
                alpha,
                beta,
                value: render_cell_value(&values),
                branches,
                highlighted: false,
            });
        }
    }
    let flags: Vec<bool> = cells.iter().map(|c| find_reduction(&cells, c, false).is_some()).collect();
    for (cell, flag) in cells.iter_mut().zip(flags) {
        cell.highlighted = flag;
    }
    Ok(cells)
}

/// For each highlighted cell, an explicit group element mapping it onto a
/// cell that is not highlighted.
pub fn check_table_symmetries(table: &[TableCell]) -> Result<Vec<SymmetryCheck>, SolverError> {
    table
        .iter()
        .filter(|c| c.highlighted)
        .map(|c| {
            find_reduction(table, c, true).ok_or(SolverError::SymmetryCheckFailed { row: c.row, col: c.col })
        })
        .collect()
}
