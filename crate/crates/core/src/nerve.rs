//! Nerve complexes: vertex stars of a triangulation.
//!
//! A nerve is the collection of filled triangles sharing a common vertex,
//! its nucleus. Every triangle of the nerve is one of its 1-spokes.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::descriptor::{Descriptor, DescriptorMap};
use crate::error::{Error, Result};
use crate::mesh::{SimplexSet, TriMesh, TriangleId, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveComplex {
    mesh_id: u64,
    pub nucleus: VertexId,
    pub spokes1: SimplexSet,
}

impl NerveComplex {
    pub fn mesh_id(&self) -> u64 {
        self.mesh_id
    }

    pub fn spoke_count(&self) -> usize {
        self.spokes1.len()
    }

    pub fn ensure_same_mesh(&self, mesh: &TriMesh) -> Result<()> {
        if self.mesh_id == mesh.id() {
            Ok(())
        } else {
            Err(Error::MeshMismatch)
        }
    }

    pub fn report(&self) -> NerveReport {
        NerveReport {
            nucleus: self.nucleus,
            triangles: self.spokes1.to_vec(),
            spoke_count: self.spokes1.len(),
        }
    }
}

/// JSON form of a nerve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NerveReport {
    pub nucleus: VertexId,
    pub triangles: Vec<TriangleId>,
    pub spoke_count: usize,
}

pub fn nerve_at(mesh: &TriMesh, v: VertexId) -> Result<NerveComplex> {
    let star = mesh.star(v)?;
    if star.is_empty() {
        return Err(Error::EmptyNerve(v));
    }
    Ok(NerveComplex {
        mesh_id: mesh.id(),
        nucleus: v,
        spokes1: star.iter().copied().collect(),
    })
}

/// One nerve per non-isolated vertex, by vertex id.
pub fn all_nerves(mesh: &TriMesh) -> Vec<NerveComplex> {
    (0..mesh.vertex_count())
        .filter_map(|v| nerve_at(mesh, v).ok())
        .collect()
}

/// The nerve with the most triangles; ties go to the smallest nucleus id.
pub fn maximal_nerve(mesh: &TriMesh) -> Result<NerveComplex> {
    let best = (0..mesh.vertex_count())
        .map(|v| (mesh.star(v).map(<[_]>::len).unwrap_or(0), v))
        .filter(|&(n, _)| n > 0)
        .min_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)))
        .ok_or(Error::EmptySimplexSet)?;
    nerve_at(mesh, best.1)
}

/// Two triangles are separated iff they share no vertex.
pub fn separated(mesh: &TriMesh, t1: TriangleId, t2: TriangleId) -> Result<bool> {
    let (a, b) = (mesh.triangle(t1)?, mesh.triangle(t2)?);
    if t1 == t2 {
        return Err(Error::SameTriangle(t1));
    }
    Ok(a.vertices().iter().all(|&v| !b.contains(v)))
}

/// Outcome of the multi-nerve check: a separated pair forces at least two
/// distinct nerves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiNerveReport {
    pub witness: Option<(TriangleId, TriangleId)>,
    /// Nuclei of nerves that are maximal under inclusion.
    pub maximal_nuclei: Vec<VertexId>,
    pub passed: bool,
    pub failures: Vec<String>,
}

pub fn nerve_count_lower_bound(mesh: &TriMesh) -> MultiNerveReport {
    let witness = find_separated_pair(mesh);
    let nerves = all_nerves(mesh);

    // Distinct stars that no other star strictly contains.
    let mut distinct: BTreeMap<&SimplexSet, VertexId> = BTreeMap::new();
    for n in &nerves {
        distinct.entry(&n.spokes1).or_insert(n.nucleus);
    }
    let maximal_nuclei: Vec<VertexId> = distinct
        .iter()
        .filter(|(s, _)| {
            !distinct
                .keys()
                .any(|other| other != *s && s.is_subset(other))
        })
        .map(|(_, &v)| v)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut failures = Vec::new();
    if let Some((t1, t2)) = witness {
        let verts = |t: TriangleId| mesh.triangles()[t].vertices();
        for &u in &verts(t1) {
            for &w in &verts(t2) {
                let (nu, nw) = (nerve_at(mesh, u), nerve_at(mesh, w));
                match (nu, nw) {
                    (Ok(nu), Ok(nw)) if nu.nucleus != nw.nucleus && nu.spokes1 != nw.spokes1 => {}
                    _ => failures.push(format!(
                        "nerves at {u} (triangle {t1}) and {w} (triangle {t2}) coincide"
                    )),
                }
            }
        }
        if maximal_nuclei.len() < 2 {
            failures.push(format!(
                "only {} maximal nerve(s) despite separated triangles {t1}, {t2}",
                maximal_nuclei.len()
            ));
        }
    }
    MultiNerveReport {
        witness,
        passed: failures.is_empty(),
        maximal_nuclei,
        failures,
    }
}

fn find_separated_pair(mesh: &TriMesh) -> Option<(TriangleId, TriangleId)> {
    let tris = mesh.triangles();
    for t in 0..tris.len() {
        for u in t + 1..tris.len() {
            if tris[t].vertices().iter().all(|&v| !tris[u].contains(v)) {
                return Some((t, u));
            }
        }
    }
    None
}

/// A maximal sub-collection of a family sharing a common point or description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureGroup {
    /// Indices into the input family, ascending.
    pub members: Vec<usize>,
    /// Union of the members' triangles.
    pub triangles: SimplexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureNerveFamily {
    pub groups: Vec<ClosureGroup>,
}

impl ClosureNerveFamily {
    /// Groups as sets of member indices; handy for comparisons.
    pub fn member_sets(&self) -> BTreeSet<Vec<usize>> {
        self.groups.iter().map(|g| g.members.clone()).collect()
    }
}

/// Groups a family by shared closure vertices.
pub fn closure_nerve(mesh: &TriMesh, family: &[SimplexSet]) -> Result<ClosureNerveFamily> {
    let supports = family
        .iter()
        .map(|s| mesh.closure_vertices(s))
        .collect::<Result<Vec<_>>>()?;
    maximal_groups(family, &supports)
}

/// Groups a family by shared descriptions of the members' elements.
pub fn descriptive_closure_nerve(
    mesh: &TriMesh,
    family: &[SimplexSet],
    phi: &DescriptorMap,
) -> Result<ClosureNerveFamily> {
    let descriptions: Vec<BTreeSet<Descriptor>> = family
        .iter()
        .map(|s| {
            if s.is_empty() {
                return Err(Error::EmptySimplexSet);
            }
            Ok(phi.describe_set(mesh, s)?.into_iter().cloned().collect())
        })
        .collect::<Result<_>>()?;
    maximal_groups(family, &descriptions)
}

/// Maximal sub-collections whose key sets have a common element. Each such
/// sub-collection is the set of members holding some key `x`, so it is enough
/// to collect those per key and keep the inclusion-maximal ones.
fn maximal_groups<K: Ord>(
    family: &[SimplexSet],
    keys: &[BTreeSet<K>],
) -> Result<ClosureNerveFamily> {
    if family.is_empty() {
        return Err(Error::InvalidArgument("closure nerve of an empty family".into()));
    }
    let mut holders: BTreeMap<&K, BTreeSet<usize>> = BTreeMap::new();
    for (i, ks) in keys.iter().enumerate() {
        for k in ks {
            holders.entry(k).or_default().insert(i);
        }
    }
    let candidates: BTreeSet<BTreeSet<usize>> = holders.into_values().collect();
    let groups = candidates
        .iter()
        .filter(|g| !candidates.iter().any(|h| h != *g && g.is_subset(h)))
        .map(|g| ClosureGroup {
            members: g.iter().copied().collect(),
            triangles: g.iter().flat_map(|&i| family[i].iter()).collect(),
        })
        .collect();
    Ok(ClosureNerveFamily { groups })
}
