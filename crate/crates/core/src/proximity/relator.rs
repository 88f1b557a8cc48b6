use std::collections::BTreeMap;

use serde::Serialize;

use crate::descriptor::DescriptorMap;
use crate::error::{Error, Result};
use crate::mesh::{SimplexSet, TriMesh};

use super::registry::RelationRegistry;
use super::relations::Proximity;
use super::ProximitySpace;

/// A nonempty bundle of proximity relations on one mesh.
pub struct Relator {
    relations: Vec<Box<dyn Proximity>>,
}

impl Relator {
    pub fn new(relations: Vec<Box<dyn Proximity>>) -> Result<Self> {
        if relations.is_empty() {
            return Err(Error::InvalidArgument("a relator needs at least one relation".into()));
        }
        Ok(Self { relations })
    }

    pub fn from_names(registry: &RelationRegistry, names: &[&str]) -> Result<Self> {
        Self::new(
            names
                .iter()
                .map(|n| registry.construct(n))
                .collect::<Result<_>>()?,
        )
    }

    /// `near`, `dnear`, `sn` and `snd`.
    pub fn all() -> Self {
        Self::from_names(&RelationRegistry::with_builtins(), &["near", "dnear", "sn", "snd"])
            .expect("builtins are registered")
    }

    pub fn names(&self) -> Vec<&str> {
        self.relations.iter().map(|r| r.name()).collect()
    }

    pub fn evaluate(
        &self,
        space: &ProximitySpace<'_>,
        a: &SimplexSet,
        b: &SimplexSet,
    ) -> Result<BTreeMap<String, bool>> {
        self.relations
            .iter()
            .map(|r| Ok((r.name().to_string(), r.relate(space, a, b)?)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImplicationReport {
    pub values: BTreeMap<String, bool>,
    /// Broken implications, written `premise => conclusion`.
    pub violations: Vec<String>,
}

impl ImplicationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

const IMPLICATIONS: [(&str, &str); 4] = [
    ("sn", "near"),
    ("sn", "dnear"),
    ("sn", "snd"),
    ("snd", "dnear"),
];

/// Evaluates all four relations on `(A, B)` and checks that strong
/// nearness forces the weaker relations.
pub fn relator_check(
    mesh: &TriMesh,
    a: &SimplexSet,
    b: &SimplexSet,
    phi: &DescriptorMap,
) -> Result<ImplicationReport> {
    let space = ProximitySpace::with_descriptors(mesh, phi);
    let values = Relator::all().evaluate(&space, a, b)?;
    let violations = IMPLICATIONS
        .iter()
        .filter(|(p, q)| values[*p] && !values[*q])
        .map(|(p, q)| format!("{p} => {q}"))
        .collect();
    Ok(ImplicationReport { values, violations })
}
