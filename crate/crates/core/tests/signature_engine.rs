//! Signature engine against a floating-point eigenvalue oracle, the torus-knot
//! closed form and the algebraic identities of Levine-Tristram signatures.

use knotslice::exact::{hermitian_signature, Complex, HermitianMatrix, SignatureConfig};
use knotslice::knotdb::fixture_table;
use knotslice::knots::{arf, lt_signature, torus_seifert, KnotError, KnotExpression, SeifertMatrix};
use knotslice::{ExactError, Rational, RootOfUnity};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use proptest::prelude::*;

/// Signature of `(1−ω)V + (1−ω̄)Vᵀ` from the eigenvalues of its real
/// `2n×2n` realification, or `None` when an eigenvalue is too close to zero.
fn eigen_signature(v: &SeifertMatrix, m: u32, r: u32) -> Option<i64> {
    let n = v.dim();
    if n == 0 || r.is_multiple_of(m) {
        return Some(0);
    }
    let theta = 2.0 * std::f64::consts::PI * r as f64 / m as f64;
    let (c, s) = (1.0 - theta.cos(), -theta.sin());
    // entry (i,j) = c·(V+Vᵀ)_ij + i·s·(V−Vᵀ)_ij
    let big = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let (bi, bj) = (i / n, j / n);
        let (i, j) = (i % n, j % n);
        let re = c * (v.entry(i, j) + v.entry(j, i)) as f64;
        let im = s * (v.entry(i, j) - v.entry(j, i)) as f64;
        match (bi, bj) {
            (0, 0) | (1, 1) => re,
            (0, 1) => -im,
            _ => im,
        }
    });
    let eig = big.symmetric_eigenvalues();
    if eig.iter().any(|l| l.abs() < 1e-7) {
        return None;
    }
    let pos = eig.iter().filter(|l| **l > 0.0).count() as i64;
    Some((2 * pos - 2 * n as i64) / 2)
}

/// `σ_{T(2,q)}(e^{2πi r/m})` for `q > 0` counts odd `j < q` with
/// `j/q < 2r/m`, using the conjugate root past the half turn.
fn torus_closed_form(q: i64, m: u32, r: u32) -> Option<i64> {
    let (m, mut r) = (m as i64, (r % m) as i64);
    if 2 * r > m {
        r = m - r;
    }
    let aq = q.abs();
    let mut count = 0;
    for j in (1..aq).step_by(2) {
        match (j * m).cmp(&(2 * r * aq)) {
            std::cmp::Ordering::Less => count += 1,
            std::cmp::Ordering::Equal => return None,
            std::cmp::Ordering::Greater => {}
        }
    }
    Some(-2 * count * q.signum())
}

/// `V = S + E` with `S` symmetric and `E` a standard symplectic block
/// pattern, then conjugated by a signed permutation.
fn seifert_strategy() -> impl Strategy<Value = SeifertMatrix> {
    (1usize..=3)
        .prop_flat_map(|g| {
            let n = 2 * g;
            (
                Just(n),
                proptest::collection::vec(-3i64..=2, n * (n + 1) / 2),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                proptest::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|(n, upper, perm, flips)| {
            let mut v = vec![0i64; n * n];
            let mut k = 0;
            for i in 0..n {
                for j in i..n {
                    v[i * n + j] = upper[k];
                    v[j * n + i] = upper[k];
                    k += 1;
                }
            }
            for b in (0..n).step_by(2) {
                v[b * n + b + 1] += 1;
            }
            let sign = |i: usize| if flips[i] { -1 } else { 1 };
            let w: Vec<i64> = (0..n * n)
                .map(|k| {
                    let (i, j) = (k / n, k % n);
                    sign(i) * sign(j) * v[perm[i] * n + perm[j]]
                })
                .collect();
            SeifertMatrix::new(n, w).expect("det(V - V^T) = 1 by construction")
        })
}

fn roots() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![Just(2u32), Just(3), Just(4), Just(5), Just(6), Just(7), Just(8), Just(12)]
        .prop_flat_map(|m| (Just(m), 1..m))
}

fn atom(v: &SeifertMatrix) -> KnotExpression {
    KnotExpression::atom("K", v.clone())
}

fn sig(e: &KnotExpression, m: u32, r: u32) -> Result<i64, KnotError> {
    lt_signature(e, RootOfUnity::new(m, r as i64).unwrap())
}

/// Hermitian rational matrix from an integer pattern: real symmetric part
/// plus an imaginary antisymmetric part.
fn rational_hermitian(n: usize, re: &[i64], im: &[i64]) -> HermitianMatrix<Rational> {
    let q = |x: i64| Rational::from_integer(BigInt::from(x));
    let mut entries = vec![Complex::new(q(0), q(0)); n * n];
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            let b = if i == j { 0 } else { im[k] };
            entries[i * n + j] = Complex::new(q(re[k]), q(b));
            entries[j * n + i] = Complex::new(q(re[k]), q(-b));
            k += 1;
        }
    }
    HermitianMatrix::new(n, entries).unwrap()
}

fn hermitian_strategy() -> impl Strategy<Value = HermitianMatrix<Rational>> {
    (1usize..=5).prop_flat_map(|n| {
        let len = n * (n + 1) / 2;
        (Just(n), proptest::collection::vec(-4i64..=4, len), proptest::collection::vec(-4i64..=4, len))
            .prop_map(|(n, re, im)| rational_hermitian(n, &re, &im))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn matches_eigenvalue_oracle(v in seifert_strategy(), (m, r) in roots()) {
        let got = sig(&atom(&v), m, r);
        match eigen_signature(&v, m, r) {
            Some(want) => prop_assert_eq!(got, Ok(want)),
            None => {
                let at_root = matches!(got, Err(KnotError::SignatureAtAlexanderRoot { .. }));
                prop_assert!(at_root, "expected an Alexander root, got {:?}", got);
            }
        }
    }

    #[test]
    fn exact_and_interval_paths_agree(v in seifert_strategy(), m in prop_oneof![Just(2u32), Just(3), Just(4), Just(6), Just(8), Just(12)], r in 1u32..12) {
        let w = RootOfUnity::new(m, r as i64).unwrap();
        let exact = v.signature(w, SignatureConfig::default());
        let interval = v.signature(w, SignatureConfig::default().interval_only());
        prop_assert_eq!(exact, interval);
    }

    #[test]
    fn conjugation_symmetry(v in seifert_strategy(), (m, r) in roots()) {
        let e = atom(&v);
        prop_assert_eq!(sig(&e, m, r).ok(), sig(&e, m, m - r).ok());
    }

    #[test]
    fn trivial_at_one(v in seifert_strategy()) {
        prop_assert_eq!(lt_signature(&atom(&v), RootOfUnity::one()), Ok(0));
    }

    #[test]
    fn mirror_antisymmetry(v in seifert_strategy(), (m, r) in roots()) {
        let e = atom(&v);
        if let Ok(s) = sig(&e, m, r) {
            prop_assert_eq!(sig(&e.clone().mirror(), m, r), Ok(-s));
        }
    }

    #[test]
    fn sum_is_block_sum(v in seifert_strategy(), w in seifert_strategy(), (m, r) in roots()) {
        let via_sum = sig(&atom(&v).sum(atom(&w)), m, r).ok();
        let block = sig(&atom(&v.block_sum(&w)), m, r).ok();
        prop_assert_eq!(via_sum, block);
    }

    #[test]
    fn values_are_even_and_bounded(v in seifert_strategy(), (m, r) in roots()) {
        if let Ok(s) = sig(&atom(&v), m, r) {
            prop_assert_eq!(s % 2, 0);
            prop_assert!(s.unsigned_abs() as usize <= v.dim());
        }
    }

    #[test]
    fn arf_of_doubled_knot_vanishes(v in seifert_strategy()) {
        let e = atom(&v);
        prop_assert_eq!(arf(&e.clone().sum(e)), Ok(0));
    }

    #[test]
    fn torus_knots_match_closed_form(k in -6i64..=6, (m, r) in roots()) {
        let q = 2 * k + 1;
        let e = KnotExpression::torus(2, q).unwrap();
        match torus_closed_form(q, m, r) {
            Some(want) => prop_assert_eq!(sig(&e, m, r), Ok(want)),
            None => prop_assert!(sig(&e, m, r).is_err()),
        }
        prop_assert_eq!(eigen_signature(&torus_seifert(2, q).unwrap(), m, r), torus_closed_form(q, m, r));
    }

    #[test]
    fn cable_of_unknot_is_torus_knot(k in -5i64..=5, (m, r) in roots()) {
        let q = 2 * k + 1;
        let cable = KnotExpression::Unknot.cable(2, q).unwrap();
        prop_assert_eq!(sig(&cable, m, r).ok(), torus_closed_form(q, m, r));
    }

    #[test]
    fn hermitian_negation(h in hermitian_strategy()) {
        match hermitian_signature(&h) {
            Ok(s) => prop_assert_eq!(hermitian_signature(&h.negated()), Ok(-s)),
            Err(e) => prop_assert_eq!(e, ExactError::SingularForm),
        }
    }

    #[test]
    fn hermitian_permutation_invariance(
        h in hermitian_strategy(),
        seed in proptest::collection::vec(any::<u32>(), 5),
    ) {
        let n = h.dim();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&i| seed[i]);
        prop_assert_eq!(hermitian_signature(&h).ok(), hermitian_signature(&h.permuted(&perm)).ok());
    }

    #[test]
    fn hermitian_block_additivity(a in hermitian_strategy(), b in hermitian_strategy()) {
        if let (Ok(x), Ok(y)) = (hermitian_signature(&a), hermitian_signature(&b)) {
            prop_assert_eq!(hermitian_signature(&a.block_diagonal(&b)), Ok(x + y));
        }
    }
}

#[test]
fn trefoil_values() {
    let t = KnotExpression::torus(2, 3).unwrap();
    assert_eq!(sig(&t, 8, 1), Ok(0));
    assert_eq!(sig(&t, 2, 1), Ok(-2));
    let row: Vec<_> = (1..8).map(|r| sig(&t, 8, r).unwrap()).collect();
    assert_eq!(row, [0, -2, -2, -2, -2, -2, 0]);
    assert_eq!(sig(&KnotExpression::Unknot, 5, 2), Ok(0));
}

#[test]
fn fixture_knots_exact_vs_interval() {
    let points = [(2, 1), (4, 1), (8, 1), (3, 1), (6, 1)];
    let mut compared = 0;
    for record in fixture_table() {
        for (m, r) in points {
            let w = RootOfUnity::new(m, r).unwrap();
            let exact = record.seifert.signature(w, SignatureConfig::default());
            let interval = record.seifert.signature(w, SignatureConfig::default().interval_only());
            assert_eq!(exact, interval, "{} at {w}", record.name);
            if let Ok(s) = exact {
                assert_eq!(Some(s), eigen_signature(&record.seifert, m, r as u32), "{} at {w}", record.name);
                compared += 1;
            }
        }
    }
    assert!(compared >= 60);
}

#[test]
fn mirror_of_seven_two() {
    let table = fixture_table();
    let k = table.iter().find(|r| r.name == "7_2").unwrap();
    let e = k.expression().mirror();
    for m in [2, 4, 8] {
        assert_eq!(sig(&e, m, 1), Ok(2));
    }
    assert_eq!(k.determinant(), BigInt::from(11));
    assert_eq!(arf(&e), Ok(1));
}
