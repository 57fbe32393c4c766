use std::cmp::max;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::complex::Complex;
use super::root::RootOfUnity;
use super::scalar::{RootScalar, Scalar, Sign};

/// A closed interval `[lo, hi]` with dyadic endpoints, rounded outward to
/// `precision` significant bits after every operation.
///
/// Precision 0 means "no rounding" and is used for exact constants; a binary
/// operation runs at the larger of its operands' precisions.
#[derive(Clone, PartialEq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
    precision: u32,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// Rounds `x` to `bits` significant bits, toward −∞ (`up = false`) or +∞.
fn round_dyadic(x: &BigRational, bits: u32, up: bool) -> BigRational {
    if bits == 0 || x.is_zero() {
        return x.clone();
    }
    let exp = x.numer().bits() as i64 - x.denom().bits() as i64;
    let k = bits as i64 - exp;
    let (num, den) = if k >= 0 {
        (x.numer() << k as u64, x.denom().clone())
    } else {
        (x.numer().clone(), x.denom() << (-k) as u64)
    };
    let q = if up { num.div_ceil(&den) } else { num.div_floor(&den) };
    if k >= 0 {
        BigRational::new(q, pow2(k as u64))
    } else {
        BigRational::from_integer(q << (-k) as u64)
    }
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Self { lo: x.clone(), hi: x, precision: 0 }
    }

    /// Encloses `x` with endpoints rounded outward to `precision` bits.
    pub fn from_rational(x: &BigRational, precision: u32) -> Self {
        Self {
            lo: round_dyadic(x, precision, false),
            hi: round_dyadic(x, precision, true),
            precision,
        }
    }

    pub fn new(lo: BigRational, hi: BigRational, precision: u32) -> Self {
        assert!(lo <= hi, "empty interval");
        Self::rounded(lo, hi, precision)
    }

    fn rounded(lo: BigRational, hi: BigRational, precision: u32) -> Self {
        Self {
            lo: round_dyadic(&lo, precision, false),
            hi: round_dyadic(&hi, precision, true),
            precision,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn with_precision(mut self, precision: u32) -> Self {
        self.precision = precision;
        self
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    /// Upper bound on `|x|` over the interval.
    pub fn abs_upper(&self) -> BigRational {
        max(self.lo.abs(), self.hi.abs())
    }

    /// Hull of `self` widened by `[-r, r]`.
    pub fn widen(&self, r: &BigRational) -> Self {
        Self::rounded(&self.lo - r, &self.hi + r, self.precision)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.6e}, {:.6e}]@{}",
            self.lo.to_f64().unwrap_or(f64::NAN),
            self.hi.to_f64().unwrap_or(f64::NAN),
            self.precision
        )
    }
}

impl Add for Interval {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let p = max(self.precision, o.precision);
        Self::rounded(self.lo + o.lo, self.hi + o.hi, p)
    }
}

impl Sub for Interval {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let p = max(self.precision, o.precision);
        Self::rounded(self.lo - o.hi, self.hi - o.lo, p)
    }
}

impl Mul for Interval {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let p = max(self.precision, o.precision);
        let products = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = products.iter().min().cloned().unwrap();
        let hi = products.iter().max().cloned().unwrap();
        Self::rounded(lo, hi, p)
    }
}

impl Neg for Interval {
    type Output = Self;
    fn neg(self) -> Self {
        Self { lo: -self.hi, hi: -self.lo, precision: self.precision }
    }
}

impl Zero for Interval {
    fn zero() -> Self {
        Self::point(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

impl One for Interval {
    fn one() -> Self {
        Self::point(BigRational::one())
    }
}

impl Scalar for Interval {
    fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    fn recip(&self) -> Option<Self> {
        if self.lo.is_positive() || self.hi.is_negative() {
            let lo = BigRational::one() / &self.hi;
            let hi = BigRational::one() / &self.lo;
            Some(Self::rounded(lo, hi, self.precision))
        } else {
            None
        }
    }

    fn magnitude(&self) -> f64 {
        self.midpoint().abs().to_f64().unwrap_or(f64::MAX)
    }

    fn from_int(v: i64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(v)))
    }
}

impl RootScalar for Interval {
    fn one_minus_root(root: RootOfUnity, precision_bits: u32) -> Option<Complex<Self>> {
        let (c, s) = cos_sin_turn(root.numerator() as i64, root.order() as i64, precision_bits);
        Some(Complex::new(Self::one().with_precision(precision_bits) - c, -s))
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Enclosure of `arctan(1/x)` for an integer `x ≥ 2`.
fn atan_inv(x: u64, precision: u32) -> Interval {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let eps = BigRational::new(BigInt::one(), pow2(precision as u64 + 4));
    let mut sum = Interval::zero().with_precision(precision);
    let mut power = x.clone();
    let mut k: i64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
        if term < eps {
            // Alternating series with decreasing terms: the tail is bounded by
            // the first omitted term.
            return sum.widen(&term);
        }
        let t = Interval::from_rational(&term, precision);
        sum = if k % 2 == 0 { sum + t } else { sum - t };
        power *= &x2;
        k += 1;
    }
}

/// Enclosure of π via Machin's formula.
pub fn pi(precision: u32) -> Interval {
    let w = precision + 16;
    let a = atan_inv(5, w) * Interval::from_int(16);
    let b = atan_inv(239, w) * Interval::from_int(4);
    let p = a - b;
    Interval::rounded(p.lo, p.hi, precision)
}

/// Enclosures of `(cos 2πf, sin 2πf)` with `f = num/den`.
pub fn cos_sin_turn(num: i64, den: i64, precision: u32) -> (Interval, Interval) {
    let f = ratio(num, den);
    let f = &f - BigRational::from_integer(f.floor().to_integer());
    let w = precision + 16;
    let (c, s) = reduce_turn(&f, w);
    (
        Interval::rounded(c.lo, c.hi, precision),
        Interval::rounded(s.lo, s.hi, precision),
    )
}

fn reduce_turn(f: &BigRational, w: u32) -> (Interval, Interval) {
    let half = ratio(1, 2);
    let quarter = ratio(1, 4);
    let eighth = ratio(1, 8);
    if f > &half {
        let (c, s) = reduce_turn(&(BigRational::one() - f), w);
        (c, -s)
    } else if f > &quarter {
        let (c, s) = reduce_turn(&(half - f), w);
        (-c, s)
    } else if f > &eighth {
        let (c, s) = reduce_turn(&(quarter - f), w);
        (s, c)
    } else {
        taylor_cos_sin(f, w)
    }
}

/// Taylor enclosures for `θ = 2πf ∈ [0, π/4]`.
fn taylor_cos_sin(f: &BigRational, w: u32) -> (Interval, Interval) {
    let x = pi(w) * Interval::point(f * BigRational::from_integer(BigInt::from(2)));
    let eps = BigRational::new(BigInt::one(), pow2(w as u64 + 4));
    let mut cos = Interval::zero().with_precision(w);
    let mut sin = Interval::zero().with_precision(w);
    let mut term = Interval::one().with_precision(w);
    let mut j: i64 = 0;
    loop {
        let negate = (j / 2) % 2 == 1;
        let t = if negate { -term.clone() } else { term.clone() };
        if j % 2 == 0 {
            cos = cos + t;
        } else {
            sin = sin + t;
        }
        term = term * x.clone() * Interval::point(ratio(1, j + 1));
        j += 1;
        if term.abs_upper() < eps {
            break;
        }
    }
    // θ < 1 so both alternating tails are bounded by the next term.
    let tail = term.abs_upper();
    (cos.widen(&tail), sin.widen(&tail))
}
