//! Homology of `S²×S²`: the hyperbolic intersection form, characteristic
//! classes, Ruberman's minimal genus, and the symmetry group acting on pairs
//! of classes.

mod class;
mod symmetry;

pub use class::{
    family_square, family_sum, intersection, is_characteristic, min_genus, AffineClass, ClassValue,
    Degree, HomologyClass, QuadPoly,
};
pub use symmetry::{
    canonical_pair, family_member, symmetry_orbit, CasePair, GroupElement, Membership,
};
