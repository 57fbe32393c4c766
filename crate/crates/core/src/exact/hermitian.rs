use super::complex::Complex;
use super::root::RootOfUnity;
use super::scalar::{RootScalar, Scalar, Sign};
use super::ExactError;

/// Square Hermitian matrix over `T`, stored row-major.
#[derive(Debug, Clone)]
pub struct HermitianMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
    precision_bits: u32,
}

impl<T: Scalar + PartialEq> HermitianMatrix<T> {
    /// Checks `entry(i,j) = conj(entry(j,i))` exactly.
    pub fn new(dim: usize, entries: Vec<Complex<T>>) -> Result<Self, ExactError> {
        if entries.len() != dim * dim {
            return Err(ExactError::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        for i in 0..dim {
            for j in i..dim {
                if entries[i * dim + j] != entries[j * dim + i].conj() {
                    return Err(ExactError::NotHermitian { row: i, col: j });
                }
            }
        }
        Ok(Self { dim, entries, precision_bits: 0 })
    }
}

impl<T: Scalar> HermitianMatrix<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Complex<T> {
        &self.entries[i * self.dim + j]
    }

    /// Working precision of the entries (0 for exact scalars).
    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn negated(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| -e.clone()).collect(),
            precision_bits: self.precision_bits,
        }
    }

    /// Simultaneous row/column permutation `P H Pᵀ`, `perm[i]` = source index.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.entry(perm[i], perm[j]).clone());
            }
        }
        Self { dim: n, entries, precision_bits: self.precision_bits }
    }

    pub fn block_diagonal(&self, other: &Self) -> Self {
        let n = self.dim + other.dim;
        let mut entries = vec![Complex::zero(); n * n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                entries[i * n + j] = self.entry(i, j).clone();
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                entries[(i + self.dim) * n + j + self.dim] = other.entry(i, j).clone();
            }
        }
        Self { dim: n, entries, precision_bits: self.precision_bits.max(other.precision_bits) }
    }
}

/// `H(ω) = (1−ω)·V + (1−ω̄)·Vᵀ` for a square integer matrix `V`.
///
/// With `1−ω = c`, the entries are `Re(c)·(V+Vᵀ) + i·Im(c)·(V−Vᵀ)`.
pub fn hermitian_form<T: RootScalar>(
    dim: usize,
    v: &[i64],
    root: RootOfUnity,
    precision_bits: u32,
) -> Result<HermitianMatrix<T>, ExactError> {
    if v.len() != dim * dim {
        return Err(ExactError::DimensionMismatch { expected: dim * dim, found: v.len() });
    }
    let c = T::one_minus_root(root, precision_bits).ok_or(ExactError::UnsupportedRoot(root))?;
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let sym = T::from_int(v[i * dim + j] + v[j * dim + i]);
            let skew = T::from_int(v[i * dim + j] - v[j * dim + i]);
            entries.push(Complex::new(c.re.clone() * sym, c.im.clone() * skew));
        }
    }
    Ok(HermitianMatrix { dim, entries, precision_bits })
}

enum Stuck {
    Singular,
    Undecided,
}

#[derive(Clone, Copy)]
enum Pivot {
    One(usize),
    Two(usize, usize),
}

/// Bunch–Kaufman threshold `(1 + √17)/8`.
const BLOCK_THRESHOLD: f64 = 0.6404;

/// Signature (#positive − #negative eigenvalues) of a nonsingular Hermitian
/// matrix, by symmetric elimination with 1×1 and 2×2 block pivots.
///
/// Every pivot's sign is certified by [`Scalar::sign`]; nothing is perturbed.
pub fn hermitian_signature<T: Scalar>(h: &HermitianMatrix<T>) -> Result<i64, ExactError> {
    match eliminate(h.dim, h.entries.clone()) {
        Ok(s) => Ok(s),
        Err(Stuck::Singular) => Err(ExactError::SingularForm),
        Err(Stuck::Undecided) => Err(ExactError::PrecisionExhausted { bits: h.precision_bits }),
    }
}

fn eliminate<T: Scalar>(mut n: usize, mut a: Vec<Complex<T>>) -> Result<i64, Stuck> {
    let mut signature = 0;
    while n > 0 {
        let (pivot, contribution) = choose_pivot(n, &a)?;
        signature += contribution;
        a = match pivot {
            Pivot::One(i) => schur_one(n, &a, i),
            Pivot::Two(i, j) => schur_two(n, &a, i, j),
        };
        n -= match pivot {
            Pivot::One(_) => 1,
            Pivot::Two(..) => 2,
        };
    }
    Ok(signature)
}

fn diag<T: Scalar>(n: usize, a: &[Complex<T>], i: usize) -> &T {
    &a[i * n + i].re
}

/// Candidate pivots in preference order. The Bunch–Kaufman comparison only
/// orders the candidates; acceptance always requires a certified sign.
fn candidates<T: Scalar>(n: usize, a: &[Complex<T>]) -> Vec<Pivot> {
    let mut ones: Vec<(f64, usize)> = (0..n).map(|i| (diag(n, a, i).magnitude(), i)).collect();
    ones.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
    let mut twos: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            twos.push((a[i * n + j].norm_sqr().magnitude().sqrt(), i, j));
        }
    }
    twos.sort_by(|x, y| y.0.total_cmp(&x.0).then((x.1, x.2).cmp(&(y.1, y.2))));

    let best_diag = ones.first().map_or(0.0, |o| o.0);
    let best_off = twos.first().map_or(0.0, |t| t.0);
    let mut order = Vec::with_capacity(ones.len() + twos.len());
    let one_iter = ones.iter().map(|o| Pivot::One(o.1));
    let two_iter = twos.iter().map(|t| Pivot::Two(t.1, t.2));
    if best_diag >= BLOCK_THRESHOLD * best_off {
        order.extend(one_iter.clone().take(1));
        order.extend(two_iter.clone().take(1));
    } else {
        order.extend(two_iter.clone().take(1));
        order.extend(one_iter.clone().take(1));
    }
    order.extend(one_iter.skip(1));
    order.extend(two_iter.skip(1));
    order
}

fn choose_pivot<T: Scalar>(n: usize, a: &[Complex<T>]) -> Result<(Pivot, i64), Stuck> {
    let mut undecided = false;
    for pivot in candidates(n, a) {
        match pivot {
            Pivot::One(i) => match diag(n, a, i).sign() {
                Some(s) if s.is_nonzero() => return Ok((pivot, s.value())),
                Some(_) => {}
                None => undecided = true,
            },
            Pivot::Two(i, j) => {
                let det = diag(n, a, i).clone() * diag(n, a, j).clone() - a[i * n + j].norm_sqr();
                match det.sign() {
                    Some(Sign::Negative) => return Ok((pivot, 0)),
                    Some(Sign::Positive) => match diag(n, a, i).sign() {
                        Some(s) if s.is_nonzero() => return Ok((pivot, 2 * s.value())),
                        _ => undecided = true,
                    },
                    Some(Sign::Zero) => {}
                    None => undecided = true,
                }
            }
        }
    }
    if undecided {
        Err(Stuck::Undecided)
    } else {
        Err(Stuck::Singular)
    }
}

fn schur_one<T: Scalar>(n: usize, a: &[Complex<T>], k: usize) -> Vec<Complex<T>> {
    let inv = diag(n, a, k).recip().expect("pivot sign was certified nonzero");
    let rest: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    let mut out = Vec::with_capacity(rest.len() * rest.len());
    for &p in &rest {
        for &q in &rest {
            let update = (a[p * n + k].clone() * a[k * n + q].clone()).scale(&inv);
            out.push(a[p * n + q].clone() - update);
        }
    }
    clean_diagonal(rest.len(), out)
}

fn schur_two<T: Scalar>(n: usize, a: &[Complex<T>], i: usize, j: usize) -> Vec<Complex<T>> {
    let di = diag(n, a, i).clone();
    let dj = diag(n, a, j).clone();
    let b = a[i * n + j].clone();
    let det = di.clone() * dj.clone() - b.norm_sqr();
    let inv_det = det.recip().expect("block determinant was certified nonzero");
    // P⁻¹ = det⁻¹ · [[dj, −b], [−b̄, di]]
    let p00 = Complex::real(dj);
    let p01 = -b.clone();
    let p10 = -b.conj();
    let p11 = Complex::real(di);
    let rest: Vec<usize> = (0..n).filter(|&r| r != i && r != j).collect();
    let mut out = Vec::with_capacity(rest.len() * rest.len());
    for &p in &rest {
        let (cpi, cpj) = (a[p * n + i].clone(), a[p * n + j].clone());
        let left0 = cpi.clone() * p00.clone() + cpj.clone() * p10.clone();
        let left1 = cpi * p01.clone() + cpj * p11.clone();
        for &q in &rest {
            let update = left0.clone() * a[i * n + q].clone() + left1.clone() * a[j * n + q].clone();
            out.push(a[p * n + q].clone() - update.scale(&inv_det));
        }
    }
    clean_diagonal(rest.len(), out)
}

/// Diagonal entries of a Hermitian matrix are real.
fn clean_diagonal<T: Scalar>(n: usize, mut a: Vec<Complex<T>>) -> Vec<Complex<T>> {
    for i in 0..n {
        a[i * n + i].im = T::zero();
    }
    a
}
