use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A class `(a₁, a₂) ∈ H₂(S²×S²) ≅ ℤ²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct HomologyClass {
    pub a1: i64,
    pub a2: i64,
}

impl From<[i64; 2]> for HomologyClass {
    fn from([a1, a2]: [i64; 2]) -> Self {
        Self { a1, a2 }
    }
}

impl From<HomologyClass> for [i64; 2] {
    fn from(c: HomologyClass) -> Self {
        [c.a1, c.a2]
    }
}

impl HomologyClass {
    pub const fn new(a1: i64, a2: i64) -> Self {
        Self { a1, a2 }
    }

    pub fn swapped(self) -> Self {
        Self::new(self.a2, self.a1)
    }

    pub fn dot(self, other: Self) -> i64 {
        self.a1 * other.a2 + self.a2 * other.a1
    }

    pub fn square(self) -> i64 {
        self.dot(self)
    }

    /// `m` divides the class, i.e. `m | gcd(a₁, a₂)`.
    pub fn divisible_by(self, m: i64) -> bool {
        self.a1 % m == 0 && self.a2 % m == 0
    }
}

impl Add for HomologyClass {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a1 + o.a1, self.a2 + o.a2)
    }
}

impl Sub for HomologyClass {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a1 - o.a1, self.a2 - o.a2)
    }
}

impl Neg for HomologyClass {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a1, -self.a2)
    }
}

impl Mul<HomologyClass> for i64 {
    type Output = HomologyClass;
    fn mul(self, c: HomologyClass) -> HomologyClass {
        HomologyClass::new(self * c.a1, self * c.a2)
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a1, self.a2)
    }
}

/// `Q(x, y) = x₁y₂ + x₂y₁`.
pub fn intersection(x: HomologyClass, y: HomologyClass) -> i64 {
    x.dot(y)
}

/// Both coordinates even.
pub fn is_characteristic(x: HomologyClass) -> bool {
    x.a1 % 2 == 0 && x.a2 % 2 == 0
}

/// Minimal genus of a smooth surface representing `x` in `S²×S²`.
pub fn min_genus(x: HomologyClass) -> u64 {
    if x.a1 == 0 || x.a2 == 0 {
        0
    } else {
        (x.a1.unsigned_abs() - 1) * (x.a2.unsigned_abs() - 1)
    }
}

/// `t ↦ (p1 + q1·t, p2 + q2·t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineClass {
    pub p1: i64,
    pub q1: i64,
    pub p2: i64,
    pub q2: i64,
}

impl AffineClass {
    pub const fn new(p1: i64, q1: i64, p2: i64, q2: i64) -> Self {
        Self { p1, q1, p2, q2 }
    }

    pub fn constant(c: HomologyClass) -> Self {
        Self::new(c.a1, 0, c.a2, 0)
    }

    pub fn at(&self, t: i64) -> HomologyClass {
        HomologyClass::new(self.p1 + self.q1 * t, self.p2 + self.q2 * t)
    }

    pub fn base(&self) -> HomologyClass {
        HomologyClass::new(self.p1, self.p2)
    }

    pub fn step(&self) -> HomologyClass {
        HomologyClass::new(self.q1, self.q2)
    }

    pub fn is_constant(&self) -> bool {
        self.q1 == 0 && self.q2 == 0
    }

    pub fn combine(&self, a: i64, other: &Self, b: i64) -> Self {
        Self::new(
            a * self.p1 + b * other.p1,
            a * self.q1 + b * other.q1,
            a * self.p2 + b * other.p2,
            a * self.q2 + b * other.q2,
        )
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.p2, self.q2, self.p1, self.q1)
    }

    pub fn negated(&self) -> Self {
        Self::new(-self.p1, -self.q1, -self.p2, -self.q2)
    }

    /// Substitutes `t ↦ sign·t + shift`.
    pub fn reparametrize(&self, sign: i64, shift: i64) -> Self {
        Self::new(self.p1 + self.q1 * shift, sign * self.q1, self.p2 + self.q2 * shift, sign * self.q2)
    }

    /// The `t` with `self.at(t) == c`, if there is one. A constant family
    /// containing `c` yields `Some(0)`.
    pub fn solve(&self, c: HomologyClass) -> Option<i64> {
        solve_linear(&[(self.p1, self.q1, c.a1), (self.p2, self.q2, c.a2)])
    }

    pub fn dot(&self, other: &Self) -> QuadPoly {
        // (p1 + q1 t)(p2' + q2' t) + (p2 + q2 t)(p1' + q1' t)
        QuadPoly {
            c0: self.p1 * other.p2 + self.p2 * other.p1,
            c1: self.p1 * other.q2 + self.q1 * other.p2 + self.p2 * other.q1 + self.q2 * other.p1,
            c2: self.q1 * other.q2 + self.q2 * other.q1,
        }
    }
}

/// Common integer solution `t` of `p + q·t = x` over all triples; `Some(0)`
/// when no triple involves `t` and all constants match.
pub(crate) fn solve_linear(eqs: &[(i64, i64, i64)]) -> Option<i64> {
    let mut t = None;
    for &(p, q, x) in eqs {
        if q == 0 {
            if p != x {
                return None;
            }
            continue;
        }
        let (s, rem) = (x - p).div_rem(&q);
        if rem != 0 || t.is_some_and(|t0| t0 != s) {
            return None;
        }
        t = Some(s);
    }
    Some(t.unwrap_or(0))
}

fn fmt_coordinate(f: &mut fmt::Formatter<'_>, p: i64, q: i64, var: &str) -> fmt::Result {
    let term = match q {
        0 => return write!(f, "{p}"),
        1 => var.to_string(),
        -1 => format!("-{var}"),
        _ => format!("{q}{var}"),
    };
    match p {
        0 => write!(f, "{term}"),
        _ if q > 0 => write!(f, "{p}+{term}"),
        _ => write!(f, "{p}{term}"),
    }
}

impl fmt::Display for AffineClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        fmt_coordinate(f, self.p1, self.q1, "x")?;
        write!(f, ",")?;
        fmt_coordinate(f, self.p2, self.q2, "x")?;
        write!(f, ")")
    }
}

/// A concrete class or a genuine one-parameter family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassValue {
    Concrete(HomologyClass),
    Family(AffineClass),
}

impl From<HomologyClass> for ClassValue {
    fn from(c: HomologyClass) -> Self {
        ClassValue::Concrete(c)
    }
}

impl From<AffineClass> for ClassValue {
    fn from(a: AffineClass) -> Self {
        ClassValue::from_affine(a)
    }
}

impl ClassValue {
    /// Collapses families with zero step to concrete classes.
    pub fn from_affine(a: AffineClass) -> Self {
        if a.is_constant() {
            ClassValue::Concrete(a.base())
        } else {
            ClassValue::Family(a)
        }
    }

    pub fn affine(&self) -> AffineClass {
        match self {
            ClassValue::Concrete(c) => AffineClass::constant(*c),
            ClassValue::Family(a) => *a,
        }
    }

    pub fn concrete(&self) -> Option<HomologyClass> {
        match self {
            ClassValue::Concrete(c) => Some(*c),
            ClassValue::Family(_) => None,
        }
    }

    pub fn square(&self) -> QuadPoly {
        family_square(&self.affine())
    }

    /// Divisible by `m` for every value of the parameter.
    pub fn divisible_by(&self, m: i64) -> bool {
        let a = self.affine();
        [a.p1, a.q1, a.p2, a.q2].iter().all(|x| x % m == 0)
    }

    /// Characteristic for every value of the parameter.
    pub fn is_characteristic(&self) -> bool {
        self.divisible_by(2)
    }
}

impl fmt::Display for ClassValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassValue::Concrete(c) => c.fmt(f),
            ClassValue::Family(a) => a.fmt(f),
        }
    }
}

/// `ca·a + cb·b` over a shared parameter.
pub fn family_sum(a: &ClassValue, b: &ClassValue, ca: i64, cb: i64) -> ClassValue {
    ClassValue::from_affine(a.affine().combine(ca, &b.affine(), cb))
}

/// `c0 + c1·t + c2·t²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadPoly {
    pub c0: i64,
    pub c1: i64,
    pub c2: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Degree {
    Constant,
    Affine,
    Quadratic,
}

impl QuadPoly {
    pub fn degree(&self) -> Degree {
        if self.c2 != 0 {
            Degree::Quadratic
        } else if self.c1 != 0 {
            Degree::Affine
        } else {
            Degree::Constant
        }
    }

    /// The value when it does not depend on `t`.
    pub fn constant(&self) -> Option<i64> {
        (self.degree() == Degree::Constant).then_some(self.c0)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.c0 + self.c1 * t + self.c2 * t * t
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.c0 != 0 || self.degree() == Degree::Constant {
            parts.push(self.c0.to_string());
        }
        for (c, var) in [(self.c1, "x"), (self.c2, "x^2")] {
            if c != 0 {
                parts.push(match c {
                    1 => var.to_string(),
                    -1 => format!("-{var}"),
                    _ => format!("{c}{var}"),
                });
            }
        }
        let s = parts.join("+").replace("+-", "-");
        write!(f, "{s}")
    }
}

/// `Q(a, a) = 2(p1 + q1 t)(p2 + q2 t)` as a polynomial in `t`.
pub fn family_square(a: &AffineClass) -> QuadPoly {
    a.dot(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    const fn c(a1: i64, a2: i64) -> HomologyClass {
        HomologyClass::new(a1, a2)
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(intersection(c(2, 2), c(-1, 3)), 4);
        assert_eq!(intersection(c(0, 5), c(0, -7)), 0);
        assert_eq!(intersection(c(2, -2), c(2, -2)), -8);
    }

    #[test]
    fn characteristic_and_genus() {
        assert!(is_characteristic(c(0, 4)));
        assert!(!is_characteristic(c(1, 0)));
        assert!(is_characteristic(c(2, -2)));
        assert_eq!(min_genus(c(2, 4)), 3);
        assert_eq!(min_genus(c(0, 17)), 0);
        assert_eq!(min_genus(c(3, 3)), 4);
        assert_eq!(min_genus(c(-3, 2)), 2);
    }

    #[test]
    fn family_sums() {
        let a = ClassValue::Family(AffineClass::new(1, 0, 0, 1));
        let b = ClassValue::Family(AffineClass::new(1, 0, 4, -1));
        assert_eq!(family_sum(&a, &b, 1, 1), ClassValue::Concrete(c(2, 4)));
        let b2 = ClassValue::Family(AffineClass::new(-1, 0, 4, 1));
        let s = family_sum(&a, &b2, 1, 1);
        assert_eq!(s, ClassValue::Family(AffineClass::new(0, 0, 4, 2)));
        assert_eq!(s.to_string(), "(0,4+2x)");
        let s = family_sum(&ClassValue::Concrete(c(2, 2)), &ClassValue::Concrete(c(-1, 3)), 1, 2);
        assert_eq!(s, ClassValue::Concrete(c(0, 8)));
    }

    #[test]
    fn squares() {
        let sq = family_square(&AffineClass::new(0, 0, 4, 2));
        assert_eq!(sq.constant(), Some(0));
        let sq = family_square(&AffineClass::new(1, 0, 0, 1));
        assert_eq!((sq.degree(), sq.c1), (Degree::Affine, 2));
        assert_eq!(sq.to_string(), "2x");
        let sq = family_square(&AffineClass::new(1, 1, 1, 0));
        assert_eq!((sq.c0, sq.c1, sq.c2), (2, 2, 0));
        assert_eq!(family_square(&AffineClass::new(0, 1, 0, 1)).degree(), Degree::Quadratic);
    }

    #[test]
    fn display_and_solve() {
        assert_eq!(AffineClass::new(1, 0, 4, -1).to_string(), "(1,4-x)");
        assert_eq!(AffineClass::new(-1, 0, 4, 1).to_string(), "(-1,4+x)");
        assert_eq!(AffineClass::new(1, 0, 0, 1).to_string(), "(1,x)");
        assert_eq!(AffineClass::new(1, 0, 4, -1).solve(c(1, 0)), Some(4));
        assert_eq!(AffineClass::new(1, 0, 4, -2).solve(c(1, 1)), None);
        assert_eq!(AffineClass::new(1, 0, 4, -1).solve(c(2, 0)), None);
        assert_eq!(AffineClass::new(0, 2, 0, 1).solve(c(4, 3)), None);
    }

    #[test]
    fn serde_shape() {
        assert_eq!(serde_json::to_string(&c(2, -2)).unwrap(), "[2,-2]");
        let back: HomologyClass = serde_json::from_str("[1,3]").unwrap();
        assert_eq!(back, c(1, 3));
    }
}
