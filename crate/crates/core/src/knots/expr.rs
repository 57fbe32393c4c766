use std::fmt;

use num_integer::Integer;

use super::seifert::SeifertMatrix;
use super::KnotError;

/// A knot built from atoms by mirror, reverse, connected sum, cabling and
/// torus knots.
///
/// An atom without a Seifert matrix is symbolic: its invariants are supplied
/// by an [`AtomValues`](super::AtomValues) table at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KnotExpression {
    Unknot,
    Atom { name: String, seifert: Option<SeifertMatrix> },
    Mirror(Box<KnotExpression>),
    Reverse(Box<KnotExpression>),
    Sum(Box<KnotExpression>, Box<KnotExpression>),
    /// Satellite with winding number `p`; `Cable(e, 2, q)` is `e_(2,q)`.
    Cable { companion: Box<KnotExpression>, p: i64, q: i64 },
    Torus { p: i64, q: i64 },
}

impl KnotExpression {
    pub fn atom(name: impl Into<String>, seifert: SeifertMatrix) -> Self {
        KnotExpression::Atom { name: name.into(), seifert: Some(seifert) }
    }

    pub fn symbol(name: impl Into<String>) -> Self {
        KnotExpression::Atom { name: name.into(), seifert: None }
    }

    pub fn mirror(self) -> Self {
        KnotExpression::Mirror(Box::new(self))
    }

    pub fn reverse(self) -> Self {
        KnotExpression::Reverse(Box::new(self))
    }

    pub fn sum(self, other: Self) -> Self {
        KnotExpression::Sum(Box::new(self), Box::new(other))
    }

    pub fn cable(self, p: i64, q: i64) -> Result<Self, KnotError> {
        check_pattern(p, q).map_err(|_| KnotError::InvalidCableParameters { p, q })?;
        Ok(KnotExpression::Cable { companion: Box::new(self), p, q })
    }

    pub fn torus(p: i64, q: i64) -> Result<Self, KnotError> {
        check_pattern(p, q).map_err(|_| KnotError::UnsupportedTorusParameters { p, q })?;
        Ok(KnotExpression::Torus { p, q })
    }

    /// Replaces every atom's matrix using `lookup`; names it does not know
    /// are an error.
    pub fn resolve(
        &self,
        lookup: &dyn Fn(&str) -> Option<SeifertMatrix>,
    ) -> Result<Self, KnotError> {
        use KnotExpression::*;
        Ok(match self {
            Unknot | Torus { .. } => self.clone(),
            Atom { name, .. } => Atom {
                name: name.clone(),
                seifert: Some(lookup(name).ok_or_else(|| KnotError::UnknownAtom(name.clone()))?),
            },
            Mirror(e) => e.resolve(lookup)?.mirror(),
            Reverse(e) => e.resolve(lookup)?.reverse(),
            Sum(a, b) => a.resolve(lookup)?.sum(b.resolve(lookup)?),
            Cable { companion, p, q } => {
                Cable { companion: Box::new(companion.resolve(lookup)?), p: *p, q: *q }
            }
        })
    }

    /// Renders in the input grammar accepted by
    /// [`parse_expression`](super::parse_expression).
    pub fn to_grammar(&self) -> String {
        use KnotExpression::*;
        match self {
            Unknot => "unknot".into(),
            Atom { name, .. } => format!("atom({name})"),
            Mirror(e) => format!("mirror({})", e.to_grammar()),
            Reverse(e) => format!("reverse({})", e.to_grammar()),
            Sum(a, b) => format!("sum({},{})", a.to_grammar(), b.to_grammar()),
            Cable { companion, p, q } => format!("cable({},{p},{q})", companion.to_grammar()),
            Torus { p, q } => format!("torus({p},{q})"),
        }
    }

    fn is_sum(&self) -> bool {
        matches!(self, KnotExpression::Sum(..))
    }
}

fn check_pattern(p: i64, q: i64) -> Result<(), ()> {
    if p >= 2 && p.gcd(&q) == 1 {
        Ok(())
    } else {
        Err(())
    }
}

/// Conventional notation: `m(K)`, `K^r`, `A # B`, `B_(2,3)`, `T(2,3)`.
impl fmt::Display for KnotExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use KnotExpression::*;
        match self {
            Unknot => write!(f, "U"),
            Atom { name, .. } => write!(f, "{name}"),
            Mirror(e) => write!(f, "m({e})"),
            Reverse(e) if e.is_sum() => write!(f, "({e})^r"),
            Reverse(e) => write!(f, "{e}^r"),
            Sum(a, b) => write!(f, "{a} # {b}"),
            Cable { companion, p, q } if companion.is_sum() => write!(f, "({companion})_({p},{q})"),
            Cable { companion, p, q } => write!(f, "{companion}_({p},{q})"),
            Torus { p, q } => write!(f, "T({p},{q})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let a = KnotExpression::symbol("A");
        let b = KnotExpression::symbol("B");
        let e = a
            .clone()
            .sum(b.clone().reverse())
            .sum(KnotExpression::torus(2, 7).unwrap());
        assert_eq!(e.to_string(), "A # B^r # T(2,7)");
        let c = a.sum(b.cable(2, 3).unwrap());
        assert_eq!(c.to_string(), "A # B_(2,3)");
        assert_eq!(
            KnotExpression::symbol("K").mirror().to_string(),
            "m(K)"
        );
    }

    #[test]
    fn pattern_validity() {
        assert!(KnotExpression::torus(2, 4).is_err());
        assert!(KnotExpression::torus(1, 3).is_err());
        assert!(KnotExpression::Unknot.cable(2, 2).is_err());
        assert!(KnotExpression::Unknot.cable(2, -3).is_ok());
        assert!(KnotExpression::torus(3, 4).is_ok());
    }
}
