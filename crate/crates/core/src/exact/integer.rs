//! Exact integer linear algebra and polynomial helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Determinant of a square integer matrix (row-major) by fraction-free
/// Bareiss elimination.
pub fn bareiss_determinant(dim: usize, entries: &[BigInt]) -> BigInt {
    assert_eq!(entries.len(), dim * dim);
    if dim == 0 {
        return BigInt::one();
    }
    let mut a = entries.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..dim - 1 {
        if a[k * dim + k].is_zero() {
            let Some(p) = (k + 1..dim).find(|&i| !a[i * dim + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..dim {
                a.swap(k * dim + j, p * dim + j);
            }
            sign = -sign;
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                let v = &a[i * dim + j] * &a[k * dim + k] - &a[i * dim + k] * &a[k * dim + j];
                a[i * dim + j] = v / &prev;
            }
        }
        prev = a[k * dim + k].clone();
    }
    sign * &a[dim * dim - 1]
}

pub fn determinant_i64(dim: usize, entries: &[i64]) -> BigInt {
    let big: Vec<BigInt> = entries.iter().map(|&v| BigInt::from(v)).collect();
    bareiss_determinant(dim, &big)
}

/// Integer polynomial, coefficients in increasing degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// `t^m − 1`.
    fn x_pow_minus_one(m: usize) -> Self {
        let mut c = vec![BigInt::zero(); m + 1];
        c[0] = -BigInt::one();
        c[m] = BigInt::one();
        Self(c)
    }

    /// Division by a monic divisor; returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        assert!(divisor.0[dd].is_one(), "divisor must be monic");
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (IntPoly::new(vec![]), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c.clone();
            for (j, d) in divisor.0.iter().enumerate() {
                rem[i - dd + j] -= &c * d;
            }
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }
}

/// The `m`-th cyclotomic polynomial.
pub fn cyclotomic(m: u32) -> IntPoly {
    let mut p = IntPoly::x_pow_minus_one(m as usize);
    for d in 1..m {
        if m.is_multiple_of(d) {
            let (q, r) = p.div_rem_monic(&cyclotomic(d));
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

/// `Δ(t) = det(V − t·Vᵀ)` for a square integer matrix, by evaluation at
/// `t = 0..=n` and Lagrange interpolation.
pub fn alexander_polynomial(dim: usize, v: &[i64]) -> IntPoly {
    let points: Vec<(BigInt, BigInt)> = (0..=dim as i64)
        .map(|t| {
            let m: Vec<BigInt> = (0..dim * dim)
                .map(|idx| {
                    let (i, j) = (idx / dim, idx % dim);
                    BigInt::from(v[i * dim + j]) - BigInt::from(t) * BigInt::from(v[j * dim + i])
                })
                .collect();
            (BigInt::from(t), bareiss_determinant(dim, &m))
        })
        .collect();
    interpolate(&points)
}

fn interpolate(points: &[(BigInt, BigInt)]) -> IntPoly {
    let n = points.len();
    let mut acc = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial Π_{j≠i} (t − x_j) / (x_i − x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * BigRational::from_integer(xj.clone());
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = BigRational::new(yi.clone(), denom);
        for (k, b) in basis.iter().enumerate() {
            acc[k] += b * &scale;
        }
    }
    IntPoly::new(
        acc.into_iter()
            .map(|c| {
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect(),
    )
}

/// Whether the primitive `m`-th roots of unity are roots of `p`.
pub fn vanishes_on_primitive_roots(p: &IntPoly, m: u32) -> bool {
    if p.is_zero() {
        return true;
    }
    p.div_rem_monic(&cyclotomic(m)).1.is_zero()
}
