//! Proximity relations on triangle-set regions.
//!
//! Four relations are built in, each a [`Proximity`] strategy registered by
//! name in a [`RelationRegistry`]:
//!
//! | name    | holds when                                                        |
//! |---------|-------------------------------------------------------------------|
//! | `near`  | the closed regions meet (they share a vertex)                     |
//! | `sn`    | the interiors meet (they share a triangle)                        |
//! | `dnear` | some element of `A` and some element of `B` have equal descriptions |
//! | `snd`   | some triangle of `A` and some triangle of `B` have equal descriptions |
//!
//! Every relation is false when either argument is empty.

mod axioms;
mod registry;
mod relations;
mod relator;

use std::collections::BTreeSet;

pub use axioms::{axiom_suite, AxiomSlot, ConformanceReport, Violation};
pub use registry::{RelationConstructor, RelationRegistry};
pub use relations::{
    DescriptiveNear, DescriptiveStrong, Near, ParityFlippedNear, Proximity, StronglyNear,
};
pub use relator::{relator_check, ImplicationReport, Relator};

use crate::descriptor::{DescriptorDomain, DescriptorMap};
use crate::error::{Error, Result};
use crate::mesh::{SimplexSet, TriMesh};

/// A mesh with an optional description, the ground for every relation.
#[derive(Clone, Copy, Debug)]
pub struct ProximitySpace<'a> {
    pub mesh: &'a TriMesh,
    pub phi: Option<&'a DescriptorMap>,
}

impl<'a> ProximitySpace<'a> {
    pub fn new(mesh: &'a TriMesh) -> Self {
        Self { mesh, phi: None }
    }

    pub fn with_descriptors(mesh: &'a TriMesh, phi: &'a DescriptorMap) -> Self {
        Self {
            mesh,
            phi: Some(phi),
        }
    }

    pub fn phi(&self, relation: &'static str) -> Result<&'a DescriptorMap> {
        self.phi.ok_or(Error::DescriptorRequired(relation))
    }
}

pub fn near(mesh: &TriMesh, a: &SimplexSet, b: &SimplexSet) -> Result<bool> {
    Near.relate(&ProximitySpace::new(mesh), a, b)
}

pub fn strongly_near(mesh: &TriMesh, a: &SimplexSet, b: &SimplexSet) -> Result<bool> {
    StronglyNear.relate(&ProximitySpace::new(mesh), a, b)
}

pub fn dnear(mesh: &TriMesh, a: &SimplexSet, b: &SimplexSet, phi: &DescriptorMap) -> Result<bool> {
    DescriptiveNear.relate(&ProximitySpace::with_descriptors(mesh, phi), a, b)
}

pub fn snd(mesh: &TriMesh, a: &SimplexSet, b: &SimplexSet, phi: &DescriptorMap) -> Result<bool> {
    DescriptiveStrong.relate(&ProximitySpace::with_descriptors(mesh, phi), a, b)
}

/// `A ⋒ B`: triangles of `A ∪ B` whose description occurs in both `Φ(A)`
/// and `Φ(B)`.
pub fn desc_intersection(
    mesh: &TriMesh,
    a: &SimplexSet,
    b: &SimplexSet,
    phi: &DescriptorMap,
) -> Result<SimplexSet> {
    if phi.domain() != DescriptorDomain::Triangle {
        return Err(Error::DescriptorDomain {
            relation: "desc_intersection",
            needed: "triangle",
        });
    }
    mesh.check_set(a)?;
    mesh.check_set(b)?;
    let da: BTreeSet<_> = phi.describe_set(mesh, a)?;
    let db: BTreeSet<_> = phi.describe_set(mesh, b)?;
    let mut out = SimplexSet::new();
    for t in a.union(b).iter() {
        let d = phi.get(crate::descriptor::Element::Triangle(t))?;
        if da.contains(d) && db.contains(d) {
            out.insert(t);
        }
    }
    Ok(out)
}
