use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::complex::Complex;
use super::root::RootOfUnity;
use super::scalar::{RootScalar, Scalar, Sign};

/// An element `a + b·√D` of the real quadratic field `ℚ(√D)`, `D` squarefree and
/// positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber<const D: i64> {
    pub a: BigRational,
    pub b: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl<const D: i64> QuadraticNumber<D> {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn from_ratios(a: (i64, i64), b: (i64, i64)) -> Self {
        Self { a: rat(a.0, a.1), b: rat(b.0, b.1) }
    }

    pub fn sqrt_d() -> Self {
        Self { a: BigRational::zero(), b: BigRational::one() }
    }

    /// Galois conjugate `a − b√D`.
    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² − D·b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(D)) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn exact_sign(&self) -> Sign {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (s, Sign::Zero) | (Sign::Zero, s) => s,
            (s, t) if s == t => s,
            // Opposite signs: the larger of a² and D·b² wins.
            (s, t) => {
                let a2 = &self.a * &self.a;
                let db2 = BigRational::from_integer(BigInt::from(D)) * &self.b * &self.b;
                if a2 > db2 {
                    s
                } else {
                    t
                }
            }
        }
    }
}

fn rational_sign(x: &BigRational) -> Sign {
    if x.is_zero() {
        Sign::Zero
    } else if x.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

impl<const D: i64> fmt::Debug for QuadraticNumber<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{}", self.a, self.b, D)
    }
}

impl<const D: i64> fmt::Display for QuadraticNumber<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√{}", self.b, D),
            _ => write!(f, "{} + {}√{}", self.a, self.b, D),
        }
    }
}

impl<const D: i64> Add for QuadraticNumber<D> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { a: self.a + o.a, b: self.b + o.b }
    }
}

impl<const D: i64> Sub for QuadraticNumber<D> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { a: self.a - o.a, b: self.b - o.b }
    }
}

impl<const D: i64> Mul for QuadraticNumber<D> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = BigRational::from_integer(BigInt::from(D));
        Self {
            a: &self.a * &o.a + d * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl<const D: i64> Neg for QuadraticNumber<D> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b }
    }
}

impl<const D: i64> Zero for QuadraticNumber<D> {
    fn zero() -> Self {
        Self { a: BigRational::zero(), b: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const D: i64> One for QuadraticNumber<D> {
    fn one() -> Self {
        Self { a: BigRational::one(), b: BigRational::zero() }
    }
}

impl<const D: i64> Scalar for QuadraticNumber<D> {
    fn sign(&self) -> Option<Sign> {
        Some(self.exact_sign())
    }

    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(Self { a: c.a / &n, b: c.b / n })
    }

    fn magnitude(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(0.0);
        let b = self.b.to_f64().unwrap_or(0.0);
        (a + b * (D as f64).sqrt()).abs()
    }

    fn from_int(v: i64) -> Self {
        Self { a: BigRational::from_integer(BigInt::from(v)), b: BigRational::zero() }
    }
}

/// `(cos θ, sin θ)` for `θ = 2πk/8` in `ℚ(√2)`.
fn eighth_turn(k: u32) -> (QuadraticNumber<2>, QuadraticNumber<2>) {
    type Q = QuadraticNumber<2>;
    let h = |s: i64| Q::from_ratios((0, 1), (s, 2));
    let r = |v: i64| Q::from_ratios((v, 1), (0, 1));
    match k % 8 {
        0 => (r(1), r(0)),
        1 => (h(1), h(1)),
        2 => (r(0), r(1)),
        3 => (h(-1), h(1)),
        4 => (r(-1), r(0)),
        5 => (h(-1), h(-1)),
        6 => (r(0), r(-1)),
        _ => (h(1), h(-1)),
    }
}

/// `cos(2πk/12)` in `ℚ(√3)`.
fn twelfth_cos(k: u32) -> QuadraticNumber<3> {
    type Q = QuadraticNumber<3>;
    let k = k % 12;
    let k = if k > 6 { 12 - k } else { k };
    match k {
        0 => Q::from_ratios((1, 1), (0, 1)),
        1 => Q::from_ratios((0, 1), (1, 2)),
        2 => Q::from_ratios((1, 2), (0, 1)),
        3 => Q::zero(),
        4 => Q::from_ratios((-1, 2), (0, 1)),
        5 => Q::from_ratios((0, 1), (-1, 2)),
        _ => Q::from_ratios((-1, 1), (0, 1)),
    }
}

fn one_minus(cos: QuadraticNumber<2>, sin: QuadraticNumber<2>) -> Complex<QuadraticNumber<2>> {
    Complex::new(QuadraticNumber::one() - cos, -sin)
}

impl RootScalar for QuadraticNumber<2> {
    fn one_minus_root(root: RootOfUnity, _: u32) -> Option<Complex<Self>> {
        let w = root.normalized();
        if 8 % w.order() != 0 {
            return None;
        }
        let (c, s) = eighth_turn(w.numerator() * (8 / w.order()));
        Some(one_minus(c, s))
    }
}

impl RootScalar for QuadraticNumber<3> {
    fn one_minus_root(root: RootOfUnity, _: u32) -> Option<Complex<Self>> {
        let w = root.normalized();
        if 12 % w.order() != 0 {
            return None;
        }
        let k = w.numerator() * (12 / w.order());
        // sin θ = cos(π/2 − θ)
        let c = twelfth_cos(k);
        let s = twelfth_cos((15 - k % 12) % 12);
        Some(Complex::new(Self::one() - c, -s))
    }
}
