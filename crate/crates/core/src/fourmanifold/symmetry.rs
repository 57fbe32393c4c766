use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::class::{solve_linear, AffineClass, ClassValue, HomologyClass};

/// An element of the group generated by `s1` (swap the two sphere factors),
/// `s2` (reverse both factors) and `s3` (swap the two link components). The
/// generators are commuting involutions, so the group is `(ℤ/2)³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupElement {
    pub s1: bool,
    pub s2: bool,
    pub s3: bool,
}

impl GroupElement {
    pub const IDENTITY: Self = Self::new(false, false, false);
    pub const S1: Self = Self::new(true, false, false);
    pub const S2: Self = Self::new(false, true, false);
    pub const S3: Self = Self::new(false, false, true);

    pub const fn new(s1: bool, s2: bool, s3: bool) -> Self {
        Self { s1, s2, s3 }
    }

    /// All eight elements, identity first, ordered by word length and then
    /// generator index.
    pub fn all() -> [Self; 8] {
        let (f, t) = (false, true);
        [
            Self::new(f, f, f),
            Self::new(t, f, f),
            Self::new(f, t, f),
            Self::new(f, f, t),
            Self::new(t, t, f),
            Self::new(t, f, t),
            Self::new(f, t, t),
            Self::new(t, t, t),
        ]
    }

    pub fn compose(self, other: Self) -> Self {
        Self::new(self.s1 ^ other.s1, self.s2 ^ other.s2, self.s3 ^ other.s3)
    }

    pub fn apply_class(self, c: HomologyClass) -> HomologyClass {
        let c = if self.s1 { c.swapped() } else { c };
        if self.s2 {
            -c
        } else {
            c
        }
    }

    pub fn apply_affine(self, a: &AffineClass) -> AffineClass {
        let a = if self.s1 { a.swapped() } else { *a };
        if self.s2 {
            a.negated()
        } else {
            a
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = [(self.s3, "s3"), (self.s2, "s2"), (self.s1, "s1")]
            .into_iter()
            .filter_map(|(on, name)| on.then_some(name))
            .collect();
        if parts.is_empty() {
            write!(f, "id")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let mut g = GroupElement::IDENTITY;
        if text != "id" {
            for part in text.split('*') {
                g = g.compose(match part {
                    "s1" => GroupElement::S1,
                    "s2" => GroupElement::S2,
                    "s3" => GroupElement::S3,
                    _ => return Err(serde::de::Error::custom(format!("unknown generator {part}"))),
                });
            }
        }
        Ok(g)
    }
}

/// A candidate pair `(α, β)` of classes for the two slice discs: concrete, or
/// a pair of families sharing one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CasePair {
    Concrete { alpha: HomologyClass, beta: HomologyClass },
    Family { alpha: AffineClass, beta: AffineClass },
}

impl CasePair {
    pub fn concrete(alpha: HomologyClass, beta: HomologyClass) -> Self {
        CasePair::Concrete { alpha, beta }
    }

    pub fn family(alpha: AffineClass, beta: AffineClass) -> Self {
        CasePair::Family { alpha, beta }
    }

    pub fn is_family(&self) -> bool {
        matches!(self, CasePair::Family { .. })
    }

    pub fn alpha(&self) -> ClassValue {
        match self {
            CasePair::Concrete { alpha, .. } => ClassValue::Concrete(*alpha),
            CasePair::Family { alpha, .. } => ClassValue::from_affine(*alpha),
        }
    }

    pub fn beta(&self) -> ClassValue {
        match self {
            CasePair::Concrete { beta, .. } => ClassValue::Concrete(*beta),
            CasePair::Family { beta, .. } => ClassValue::from_affine(*beta),
        }
    }

    pub fn apply(&self, g: GroupElement) -> Self {
        match *self {
            CasePair::Concrete { alpha, beta } => {
                let (a, b) = (g.apply_class(alpha), g.apply_class(beta));
                if g.s3 {
                    Self::concrete(b, a)
                } else {
                    Self::concrete(a, b)
                }
            }
            CasePair::Family { alpha, beta } => {
                let (a, b) = (g.apply_affine(&alpha), g.apply_affine(&beta));
                if g.s3 {
                    Self::family(b, a)
                } else {
                    Self::family(a, b)
                }
            }
        }
    }

    /// Family parametrization with the first nonzero step positive and its
    /// base coordinate reduced into `[0, step)`. Concrete pairs are unchanged.
    pub fn normalized(&self) -> Self {
        let CasePair::Family { alpha, beta } = *self else {
            return *self;
        };
        let coords = [(alpha.p1, alpha.q1), (alpha.p2, alpha.q2), (beta.p1, beta.q1), (beta.p2, beta.q2)];
        let Some(&(p, q)) = coords.iter().find(|(_, q)| *q != 0) else {
            return *self;
        };
        let sign = q.signum();
        let (p, q) = (p, q * sign);
        let shift = -Integer::div_floor(&p, &q);
        // t ↦ sign·(t + shift) keeps the base of the pivot coordinate in [0, q)
        let re = |a: AffineClass| a.reparametrize(sign, sign * shift);
        Self::family(re(alpha), re(beta))
    }
}

impl fmt::Display for CasePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CasePair::Concrete { alpha, beta } => write!(f, "({alpha},{beta})"),
            CasePair::Family { alpha, beta } => write!(f, "({alpha},{beta})"),
        }
    }
}

/// The orbit of `c` under the eight-element group, families normalized.
pub fn symmetry_orbit(c: &CasePair) -> BTreeSet<CasePair> {
    GroupElement::all().iter().map(|&g| c.apply(g).normalized()).collect()
}

/// Lexicographically least element of the orbit.
pub fn canonical_pair(c: &CasePair) -> CasePair {
    *symmetry_orbit(c).iter().next().expect("orbit is never empty")
}

/// Witness that `element` maps a concrete pair onto the family at parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub t: i64,
    pub element: GroupElement,
}

/// Finds a group element moving the concrete pair `x` onto `family`, trying
/// elements in [`GroupElement::all`] order.
pub fn family_member(family: &CasePair, x: &CasePair) -> Option<Membership> {
    let CasePair::Family { alpha: fa, beta: fb } = family else {
        return None;
    };
    GroupElement::all().into_iter().find_map(|g| {
        let CasePair::Concrete { alpha, beta } = x.apply(g) else {
            return None;
        };
        let t = solve_linear(&[
            (fa.p1, fa.q1, alpha.a1),
            (fa.p2, fa.q2, alpha.a2),
            (fb.p1, fb.q1, beta.a1),
            (fb.p2, fb.q2, beta.a2),
        ])?;
        Some(Membership { t, element: g })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const fn c(a1: i64, a2: i64) -> HomologyClass {
        HomologyClass::new(a1, a2)
    }

    fn family_one() -> CasePair {
        CasePair::family(AffineClass::new(1, 0, 0, 1), AffineClass::new(1, 0, 4, -1))
    }

    fn family_two() -> CasePair {
        CasePair::family(AffineClass::new(1, 0, 0, 1), AffineClass::new(-1, 0, 4, 1))
    }

    #[test]
    fn orbits() {
        let o = symmetry_orbit(&CasePair::concrete(c(0, 1), c(1, 0)));
        let expected: BTreeSet<_> = [
            CasePair::concrete(c(0, 1), c(1, 0)),
            CasePair::concrete(c(1, 0), c(0, 1)),
            CasePair::concrete(c(0, -1), c(-1, 0)),
            CasePair::concrete(c(-1, 0), c(0, -1)),
        ]
        .into();
        assert_eq!(o, expected);
        assert_eq!(symmetry_orbit(&CasePair::concrete(c(1, 1), c(1, 1))).len(), 2);
    }

    #[test]
    fn family_reflection_is_a_reparametrization() {
        let f = family_two();
        let g = GroupElement::S3.compose(GroupElement::S2);
        assert_eq!(f.apply(g).normalized(), f.normalized());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_pair(&CasePair::concrete(c(0, 1), c(1, 0))), CasePair::concrete(c(-1, 0), c(0, -1)));
        assert_eq!(
            canonical_pair(&CasePair::concrete(c(2, 2), c(1, 1))),
            canonical_pair(&CasePair::concrete(c(1, 1), c(2, 2)))
        );
        let n = CasePair::concrete(c(-1, -1), c(-1, -1));
        assert_eq!(canonical_pair(&n), canonical_pair(&canonical_pair(&n)));
        let f = family_one();
        assert_eq!(canonical_pair(&f.apply(GroupElement::new(true, true, true))), canonical_pair(&f));
    }

    #[test]
    fn membership() {
        let m = family_member(&family_one(), &CasePair::concrete(c(1, 4), c(1, 0))).unwrap();
        assert_eq!((m.t, m.element), (4, GroupElement::IDENTITY));
        let m = family_member(&family_two(), &CasePair::concrete(c(1, -4), c(-1, 0))).unwrap();
        assert_eq!((m.t, m.element), (-4, GroupElement::IDENTITY));
        assert!(family_member(&family_one(), &CasePair::concrete(c(2, 2), c(1, 1))).is_none());
        // needs s1: ((4,1),(0,1)) ↦ ((1,4),(1,0))
        let m = family_member(&family_one(), &CasePair::concrete(c(4, 1), c(0, 1))).unwrap();
        assert_eq!((m.t, m.element), (4, GroupElement::S1));
    }

    #[test]
    fn element_names_round_trip() {
        for g in GroupElement::all() {
            let s = serde_json::to_string(&g).unwrap();
            assert_eq!(serde_json::from_str::<GroupElement>(&s).unwrap(), g);
        }
        assert_eq!(GroupElement::S3.compose(GroupElement::S1).to_string(), "s3*s1");
    }
}
