pub mod exact;
pub mod fourmanifold;
pub mod knotdb;
pub mod knots;
pub mod obstructions;
pub mod solver;

pub use exact::{ExactError, Interval, QuadraticNumber, RootOfUnity};

/// `ℚ(√2)`: exact arithmetic at roots of unity of order dividing 8.
pub type Sqrt2 = QuadraticNumber<2>;
/// `ℚ(√3)`: exact arithmetic at roots of unity of order dividing 12.
pub type Sqrt3 = QuadraticNumber<3>;
pub type Rational = num_rational::BigRational;
