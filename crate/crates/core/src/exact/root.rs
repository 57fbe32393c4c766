use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// The root of unity `exp(2πi·r/m)`.
///
/// `(m, r)` is not required to be in lowest terms; use [`RootOfUnity::normalized`]
/// before comparing, or compare with [`RootOfUnity::same_point`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    m: u32,
    r: u32,
}

impl RootOfUnity {
    /// Builds `exp(2πi·r/m)`, reducing `r` modulo `m`. Returns `None` for `m = 0`.
    pub fn new(m: u32, r: i64) -> Option<Self> {
        if m == 0 {
            return None;
        }
        let r = r.rem_euclid(m as i64) as u32;
        Some(Self { m, r })
    }

    /// `ζ_m = exp(2πi/m)`.
    pub fn zeta(m: u32) -> Self {
        Self::new(m, 1).expect("order must be positive")
    }

    pub fn one() -> Self {
        Self { m: 1, r: 0 }
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn numerator(&self) -> u32 {
        self.r
    }

    /// Lowest-terms representative; `ζ₈²` and `ζ₄` normalize to the same value.
    pub fn normalized(&self) -> Self {
        if self.r == 0 {
            return Self::one();
        }
        let g = self.m.gcd(&self.r);
        Self { m: self.m / g, r: self.r / g }
    }

    pub fn same_point(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn is_one(&self) -> bool {
        self.r == 0
    }

    pub fn conj(&self) -> Self {
        Self { m: self.m, r: (self.m - self.r) % self.m }
    }

    /// `ω^k`, expressed with the same denominator.
    pub fn pow(&self, k: i64) -> Self {
        let r = (self.r as i64 * k).rem_euclid(self.m as i64);
        Self { m: self.m, r: r as u32 }
    }

    /// Whether `r/m ≤ 1/2`, i.e. the point lies on the closed upper half circle.
    pub fn in_upper_half(&self) -> bool {
        2 * self.r <= self.m
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.r {
            1 => write!(f, "zeta_{}", self.m),
            _ => write!(f, "zeta_{}^{}", self.m, self.r),
        }
    }
}
