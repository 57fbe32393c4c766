use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SolverError;
use crate::exact::RootOfUnity;
use crate::knots::AtomValues;

/// The hypotheses on the link `L = A ∪ B` that the proof runs under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumptions {
    /// `L` is the two-component link built from `A` and `B` with the
    /// twist parameter `n = −lk`. Trusted input.
    pub structure_a1: bool,
    pub g4_a: u64,
    pub g4_b: u64,
    /// `A` and `B` are isotopic, so swapping the components is a symmetry.
    pub symmetric_link: bool,
    pub lk: i64,
    pub arf_a: u8,
    pub arf_b: u8,
    #[serde(with = "sigma_table")]
    pub sigma_a: BTreeMap<RootOfUnity, i64>,
    #[serde(with = "sigma_table")]
    pub sigma_b: BTreeMap<RootOfUnity, i64>,
}

impl Assumptions {
    /// `lk = −4`, `g₄ = 1`, `Arf = 1` and `σ(ζ₂) = σ(ζ₄) = σ(ζ₈) = 2` for both
    /// components.
    pub fn standard() -> Self {
        let sigma: BTreeMap<_, _> = [2, 4, 8].into_iter().map(|m| (RootOfUnity::zeta(m), 2)).collect();
        Self {
            structure_a1: true,
            g4_a: 1,
            g4_b: 1,
            symmetric_link: true,
            lk: -4,
            arf_a: 1,
            arf_b: 1,
            sigma_a: sigma.clone(),
            sigma_b: sigma,
        }
    }

    /// Sets `σ(ω)` for both components.
    pub fn set_sigma(&mut self, root: RootOfUnity, value: i64) {
        self.sigma_a.insert(root.normalized(), value);
        self.sigma_b.insert(root.normalized(), value);
    }

    pub fn components_equal(&self) -> bool {
        self.g4_a == self.g4_b && self.arf_a == self.arf_b && self.sigma_a == self.sigma_b
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        if self.arf_a > 1 || self.arf_b > 1 {
            return Err(SolverError::InvalidAssumptions("Arf values must be 0 or 1".into()));
        }
        for (name, table) in [("A", &self.sigma_a), ("B", &self.sigma_b)] {
            if let Some((root, v)) = table.iter().find(|(_, v)| *v % 2 != 0) {
                return Err(SolverError::InvalidAssumptions(format!("sigma_{name}({root}) = {v} is odd")));
            }
            if let Some(root) = table.keys().find(|r| r.normalized() != **r) {
                return Err(SolverError::InvalidAssumptions(format!("root {root} is not in lowest terms")));
            }
        }
        if self.symmetric_link && !self.components_equal() {
            return Err(SolverError::InvalidAssumptions(
                "a symmetric link needs equal invariants for A and B".into(),
            ));
        }
        Ok(())
    }

    /// Values for the symbolic atoms `A` and `B`.
    pub fn atom_values(&self) -> AtomValues {
        let mut values = AtomValues::default();
        for (name, table, arf) in [("A", &self.sigma_a, self.arf_a), ("B", &self.sigma_b, self.arf_b)] {
            for (&root, &v) in table {
                values.set_sigma(name, root, v);
            }
            values.set_arf(name, arf);
        }
        values
    }
}

mod sigma_table {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exact::RootOfUnity;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        m: u32,
        r: u32,
        value: i64,
    }

    pub fn serialize<S: Serializer>(table: &BTreeMap<RootOfUnity, i64>, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = table
            .iter()
            .map(|(root, &value)| Entry { m: root.order(), r: root.numerator(), value })
            .collect();
        entries.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<RootOfUnity, i64>, D::Error> {
        Vec::<Entry>::deserialize(d)?
            .into_iter()
            .map(|e| {
                RootOfUnity::new(e.m, e.r as i64)
                    .map(|root| (root, e.value))
                    .ok_or_else(|| serde::de::Error::custom("root order must be positive"))
            })
            .collect()
    }
}
