use std::collections::BTreeSet;

use crate::descriptor::{DescriptorDomain, Element};
use crate::error::{Error, Result};
use crate::mesh::SimplexSet;

use super::ProximitySpace;

/// A proximity relation on triangle-set regions of one mesh.
///
/// Besides the set-level relation, each strategy fixes the ground elements
/// its point-level axioms range over and how a single element relates to a
/// region or to another element.
pub trait Proximity: Send + Sync {
    fn name(&self) -> &str;

    /// Strong relations follow the snN axiom family instead of Čech/Lodato.
    fn strong(&self) -> bool;

    fn descriptive(&self) -> bool;

    fn relate(&self, space: &ProximitySpace<'_>, a: &SimplexSet, b: &SimplexSet) -> Result<bool>;

    /// `{x} R A`.
    fn relate_element(&self, space: &ProximitySpace<'_>, x: Element, a: &SimplexSet)
        -> Result<bool>;

    /// `{x} R {y}`.
    fn relate_elements(&self, space: &ProximitySpace<'_>, x: Element, y: Element) -> Result<bool>;

    /// Ground elements of a region.
    fn elements(&self, space: &ProximitySpace<'_>, a: &SimplexSet) -> Result<Vec<Element>>;

    /// Ground elements lying in the interior of a region.
    fn interior_elements(&self, space: &ProximitySpace<'_>, a: &SimplexSet) -> Result<Vec<Element>> {
        self.elements(space, a)
    }
}

fn vertices_of(space: &ProximitySpace<'_>, a: &SimplexSet) -> Result<Vec<Element>> {
    if a.is_empty() {
        return Ok(Vec::new());
    }
    Ok(space
        .mesh
        .closure_vertices(a)?
        .into_iter()
        .map(Element::Vertex)
        .collect())
}

fn element_in_closure(space: &ProximitySpace<'_>, x: Element, a: &SimplexSet) -> Result<bool> {
    space.mesh.check_set(a)?;
    Ok(match x {
        Element::Vertex(v) => space.mesh.star(v)?.iter().any(|&t| a.contains(t)),
        Element::Triangle(t) => {
            space.mesh.triangle(t)?;
            a.contains(t)
        }
    })
}

/// Closed regions meet.
#[derive(Clone, Copy, Debug, Default)]
pub struct Near;

impl Proximity for Near {
    fn name(&self) -> &str {
        "near"
    }
    fn strong(&self) -> bool {
        false
    }
    fn descriptive(&self) -> bool {
        false
    }

    fn relate(&self, space: &ProximitySpace<'_>, a: &SimplexSet, b: &SimplexSet) -> Result<bool> {
        space.mesh.check_set(a)?;
        space.mesh.check_set(b)?;
        if a.is_empty() || b.is_empty() {
            return Ok(false);
        }
        let va = space.mesh.closure_vertices(a)?;
        let vb = space.mesh.closure_vertices(b)?;
        Ok(!va.is_disjoint(&vb))
    }

    fn relate_element(&self, space: &ProximitySpace<'_>, x: Element, a: &SimplexSet) -> Result<bool> {
        element_in_closure(space, x, a)
    }

    fn relate_elements(&self, _space: &ProximitySpace<'_>, x: Element, y: Element) -> Result<bool> {
        Ok(x == y)
    }

    fn elements(&self, space: &ProximitySpace<'_>, a: &SimplexSet) -> Result<Vec<Element>> {
        vertices_of(space, a)
    }
}

/// Interiors meet: the regions share a triangle.
#[derive(Clone, Copy, Debug, Default)]
pub struct StronglyNear;

impl Proximity for StronglyNear {
    fn name(&self) -> &str {
        "sn"
    }
    fn strong(&self) -> bool {
        true
    }
    fn descriptive(&self) -> bool {
        false
    }

    fn relate(&self, space: &ProximitySpace<'_>, a: &SimplexSet, b: &SimplexSet) -> Result<bool> {
        space.mesh.check_set(a)?;
        space.mesh.check_set(b)?;
        Ok(!a.is_disjoint(b))
    }

    fn relate_element(&self, space: &ProximitySpace<'_>, x: Element, a: &SimplexSet) -> Result<bool> {
        element_in_closure(space, x, a)
    }

    fn relate_elements(&self, _space: &ProximitySpace<'_>, x: Element, y: Element) -> Result<bool> {
        Ok(x == y)
    }

    /// Vertices of the closure plus the open triangles.
    fn elements(&self, space: &ProximitySpace<'_>, a: &SimplexSet) -> Result<Vec<Element>> {
        let mut out = vertices_of(space, a)?;
        out.extend(a.iter().map(Element::Triangle));
        Ok(out)
    }

    /// Open triangles plus vertices whose whole star lies in the region.
    fn interior_elements(&self, space: &ProximitySpace<'_>, a: &SimplexSet) -> Result<Vec<Element>> {
        if a.is_empty() {
            return Ok(Vec::new());
        }
        let mut out: Vec<Element> = space
            .mesh
            .interior_vertices(a)?
            .into_iter()
            .map(Element::Vertex)
            .collect();
        out.extend(a.iter().map(Element::Triangle));
        Ok(out)
    }
}

/// Some descriptions coincide: `Φ(A) ∩ Φ(B) ≠ ∅`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DescriptiveNear;

impl Proximity for DescriptiveNear {
    fn name(&self) -> &str {
        "dnear"
    }
    fn strong(&self) -> bool {
        false
    }
    fn descriptive(&self) -> bool {
        true
    }

    fn relate(&self, space: &ProximitySpace<'_>, a: &SimplexSet, b: &SimplexSet) -> Result<bool> {
        let phi = space.phi("dnear")?;
        let da = phi.describe_set(space.mesh, a)?;
        let db = phi.describe_set(space.mesh, b)?;
        Ok(!da.is_disjoint(&db))
    }

    fn relate_element(&self, space: &ProximitySpace<'_>, x: Element, a: &SimplexSet) -> Result<bool> {
        let phi = space.phi("dnear")?;
        let d = phi.get(x)?;
        Ok(phi.describe_set(space.mesh, a)?.contains(d))
    }

    fn relate_elements(&self, space: &ProximitySpace<'_>, x: Element, y: Element) -> Result<bool> {
        let phi = space.phi("dnear")?;
        Ok(phi.get(x)? == phi.get(y)?)
    }

    fn elements(&self, space: &ProximitySpace<'_>, a: &SimplexSet) -> Result<Vec<Element>> {
        space.phi("dnear")?.elements_of(space.mesh, a)
    }
}

/// Some triangle of `A` and some triangle of `B` have equal descriptions.
#[derive(Clone, Copy, Debug, Default)]
pub struct DescriptiveStrong;

impl DescriptiveStrong {
    fn triangle_phi<'a>(
        space: &ProximitySpace<'a>,
    ) -> Result<&'a crate::descriptor::DescriptorMap> {
        let phi = space.phi("snd")?;
        if phi.domain() != DescriptorDomain::Triangle {
            return Err(Error::DescriptorDomain {
                relation: "snd",
                needed: "triangle",
            });
        }
        Ok(phi)
    }
}

impl Proximity for DescriptiveStrong {
    fn name(&self) -> &str {
        "snd"
    }
    fn strong(&self) -> bool {
        true
    }
    fn descriptive(&self) -> bool {
        true
    }

    fn relate(&self, space: &ProximitySpace<'_>, a: &SimplexSet, b: &SimplexSet) -> Result<bool> {
        let phi = Self::triangle_phi(space)?;
        let da = phi.describe_set(space.mesh, a)?;
        let db = phi.describe_set(space.mesh, b)?;
        Ok(!da.is_disjoint(&db))
    }

    fn relate_element(&self, space: &ProximitySpace<'_>, x: Element, a: &SimplexSet) -> Result<bool> {
        let phi = Self::triangle_phi(space)?;
        let d = phi.get(x)?;
        Ok(phi.describe_set(space.mesh, a)?.contains(d))
    }

    fn relate_elements(&self, space: &ProximitySpace<'_>, x: Element, y: Element) -> Result<bool> {
        let phi = Self::triangle_phi(space)?;
        Ok(phi.get(x)? == phi.get(y)?)
    }

    fn elements(&self, space: &ProximitySpace<'_>, a: &SimplexSet) -> Result<Vec<Element>> {
        Self::triangle_phi(space)?;
        space.mesh.check_set(a)?;
        Ok(a.iter().map(Element::Triangle).collect())
    }
}

/// `near` with its answer negated whenever the smallest triangle of `A` is
/// odd and that of `B` is even. Used to check that the axiom harness
/// catches faults.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParityFlippedNear;

impl Proximity for ParityFlippedNear {
    fn name(&self) -> &str {
        "parity-flipped-near"
    }
    fn strong(&self) -> bool {
        false
    }
    fn descriptive(&self) -> bool {
        false
    }

    fn relate(&self, space: &ProximitySpace<'_>, a: &SimplexSet, b: &SimplexSet) -> Result<bool> {
        let r = Near.relate(space, a, b)?;
        let flip = matches!((a.first(), b.first()), (Some(x), Some(y)) if x % 2 == 1 && y % 2 == 0);
        Ok(r != flip)
    }

    fn relate_element(&self, space: &ProximitySpace<'_>, x: Element, a: &SimplexSet) -> Result<bool> {
        Near.relate_element(space, x, a)
    }

    fn relate_elements(&self, space: &ProximitySpace<'_>, x: Element, y: Element) -> Result<bool> {
        Near.relate_elements(space, x, y)
    }

    fn elements(&self, space: &ProximitySpace<'_>, a: &SimplexSet) -> Result<Vec<Element>> {
        Near.elements(space, a)
    }
}

/// Elements of `A ∪ B` whose description is shared by both regions, over
/// whatever domain `phi` describes.
pub(crate) fn descriptive_meet(
    space: &ProximitySpace<'_>,
    a: &SimplexSet,
    b: &SimplexSet,
) -> Result<BTreeSet<Element>> {
    let phi = space.phi("dnear")?;
    let ea = phi.elements_of(space.mesh, a)?;
    let eb = phi.elements_of(space.mesh, b)?;
    let da = phi.describe(&ea)?;
    let db = phi.describe(&eb)?;
    let mut out = BTreeSet::new();
    for x in ea.into_iter().chain(eb) {
        let d = phi.get(x)?;
        if da.contains(d) && db.contains(d) {
            out.insert(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::DescriptorMap;
    use crate::mesh::fixtures::*;

    fn set(ids: &[usize]) -> SimplexSet {
        ids.iter().copied().collect()
    }

    #[test]
    fn empty_sets_are_far() {
        let fan = regular_fan(6, 1.0);
        let phi = DescriptorMap::from_labels(DescriptorDomain::Triangle, (0..6).map(|t| (t, 0)));
        let space = ProximitySpace::with_descriptors(&fan, &phi);
        let rels: [&dyn Proximity; 4] = [&Near, &StronglyNear, &DescriptiveNear, &DescriptiveStrong];
        for r in rels {
            assert!(!r.relate(&space, &set(&[]), &set(&[0])).unwrap(), "{}", r.name());
            assert!(!r.relate(&space, &set(&[0]), &set(&[])).unwrap(), "{}", r.name());
        }
    }

    #[test]
    fn descriptive_relations_need_phi() {
        let sq = unit_square();
        let space = ProximitySpace::new(&sq);
        assert!(matches!(
            DescriptiveNear.relate(&space, &set(&[0]), &set(&[1])),
            Err(Error::DescriptorRequired("dnear"))
        ));
    }

    #[test]
    fn unknown_triangle_rejected() {
        let sq = unit_square();
        let space = ProximitySpace::new(&sq);
        assert!(matches!(
            Near.relate(&space, &set(&[0]), &set(&[7])),
            Err(Error::UnknownTriangle(7))
        ));
    }

    #[test]
    fn strong_interior_elements() {
        let fan = regular_fan(6, 1.0);
        let space = ProximitySpace::new(&fan);
        let all = fan.all_triangles();
        let inner = StronglyNear.interior_elements(&space, &all).unwrap();
        assert!(inner.contains(&Element::Vertex(0)));
        assert!(inner.contains(&Element::Vertex(1)));
        let half = StronglyNear.interior_elements(&space, &set(&[0, 1, 2])).unwrap();
        assert!(half.contains(&Element::Vertex(2)));
        assert!(!half.contains(&Element::Vertex(0)) && !half.contains(&Element::Vertex(1)));
    }

    #[test]
    fn parity_fault_is_asymmetric() {
        let sq = unit_square();
        let space = ProximitySpace::new(&sq);
        let (a, b) = (set(&[1]), set(&[0]));
        assert_ne!(
            ParityFlippedNear.relate(&space, &a, &b).unwrap(),
            ParityFlippedNear.relate(&space, &b, &a).unwrap()
        );
    }

    #[test]
    fn meet_over_vertex_domain() {
        let two = two_disjoint_triangles();
        let phi = DescriptorMap::from_labels(
            DescriptorDomain::Vertex,
            [(0, 1), (1, 2), (2, 3), (3, 3), (4, 4), (5, 5)],
        );
        let space = ProximitySpace::with_descriptors(&two, &phi);
        let meet = descriptive_meet(&space, &set(&[0]), &set(&[1])).unwrap();
        assert_eq!(meet, BTreeSet::from([Element::Vertex(2), Element::Vertex(3)]));
        assert!(DescriptiveNear.relate(&space, &set(&[0]), &set(&[1])).unwrap());
    }
}
