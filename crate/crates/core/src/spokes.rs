//! k-spokes of a nerve.
//!
//! A k-spoke is a chain of k triangles that starts at one of the nerve's
//! triangles and keeps stepping to a triangle outside the nerve that shares
//! an edge (edge mode) or at least a vertex (vertex mode) with the previous
//! one. Chains are enumerated explicitly; their union up to level k is
//! computed separately by breadth-first layering.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mesh::{SimplexSet, TriMesh, TriangleId, VertexId};
use crate::nerve::NerveComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpokeMode {
    Edge,
    Vertex,
}

impl SpokeMode {
    pub fn neighbors(self, mesh: &TriMesh, t: TriangleId) -> Result<Vec<TriangleId>> {
        match self {
            SpokeMode::Edge => mesh.edge_neighbors(t),
            SpokeMode::Vertex => mesh.vertex_neighbors(t),
        }
    }
}

impl fmt::Display for SpokeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpokeMode::Edge => "edge",
            SpokeMode::Vertex => "vertex",
        })
    }
}

impl FromStr for SpokeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge" => Ok(SpokeMode::Edge),
            "vertex" => Ok(SpokeMode::Vertex),
            other => Err(Error::InvalidArgument(format!(
                "spoke mode must be `edge` or `vertex`, got `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpokeChain {
    pub level: usize,
    pub triangles: Vec<TriangleId>,
    pub mode: SpokeMode,
}

pub fn one_spokes(nerve: &NerveComplex) -> Vec<SpokeChain> {
    nerve
        .spokes1
        .iter()
        .map(|t| SpokeChain {
            level: 1,
            triangles: vec![t],
            mode: SpokeMode::Edge,
        })
        .collect()
}

/// Every level-`k` chain of `nerve`, in lexicographic triangle order.
///
/// The count grows quickly with `k` in vertex mode; use [`spoke_union`] when
/// only the covered region matters.
pub fn k_spokes(
    mesh: &TriMesh,
    nerve: &NerveComplex,
    k: usize,
    mode: SpokeMode,
) -> Result<Vec<SpokeChain>> {
    nerve.ensure_same_mesh(mesh)?;
    if k == 0 {
        return Err(Error::InvalidArgument("spoke level must be at least 1".into()));
    }
    if k == 1 {
        return Ok(one_spokes(nerve)
            .into_iter()
            .map(|c| SpokeChain { mode, ..c })
            .collect());
    }
    let mut out = Vec::new();
    let mut chain = Vec::with_capacity(k);
    for start in nerve.spokes1.iter() {
        chain.push(start);
        extend(mesh, nerve, k, mode, &mut chain, &mut out)?;
        chain.pop();
    }
    Ok(out)
}

fn extend(
    mesh: &TriMesh,
    nerve: &NerveComplex,
    k: usize,
    mode: SpokeMode,
    chain: &mut Vec<TriangleId>,
    out: &mut Vec<SpokeChain>,
) -> Result<()> {
    if chain.len() == k {
        out.push(SpokeChain {
            level: k,
            triangles: chain.clone(),
            mode,
        });
        return Ok(());
    }
    let last = *chain.last().expect("chain starts nonempty");
    for next in mode.neighbors(mesh, last)? {
        if nerve.spokes1.contains(next) || chain.contains(&next) {
            continue;
        }
        chain.push(next);
        extend(mesh, nerve, k, mode, chain, out)?;
        chain.pop();
    }
    Ok(())
}

/// Union of all triangles on chains of levels `1..=k`.
///
/// A triangle lies on such a chain iff its breadth-first distance from the
/// nerve, stepping only through non-nerve triangles, is below `k`.
pub fn spoke_union(
    mesh: &TriMesh,
    nerve: &NerveComplex,
    k: usize,
    mode: SpokeMode,
) -> Result<SimplexSet> {
    nerve.ensure_same_mesh(mesh)?;
    if k == 0 {
        return Err(Error::InvalidArgument("spoke level must be at least 1".into()));
    }
    let mut depth = vec![usize::MAX; mesh.triangle_count()];
    let mut queue = VecDeque::new();
    for t in nerve.spokes1.iter() {
        depth[t] = 1;
        queue.push_back(t);
    }
    while let Some(t) = queue.pop_front() {
        if depth[t] == k {
            continue;
        }
        for u in mode.neighbors(mesh, t)? {
            if depth[u] == usize::MAX {
                depth[u] = depth[t] + 1;
                queue.push_back(u);
            }
        }
    }
    Ok((0..depth.len()).filter(|&t| depth[t] <= k).collect())
}

/// Overlapping 2-spokes of two nerves.
///
/// Each result is `{t, t'}` where `t` belongs to both nerves and `t'` is an
/// edge-neighbour of `t` in either nerve, so the pair is a 2-spoke of both.
/// A shared triangle with no edge-neighbour is reported alone. The result is
/// empty iff the nerves share no triangle.
pub fn common_2_spokes(
    mesh: &TriMesh,
    a: &NerveComplex,
    b: &NerveComplex,
) -> Result<Vec<SimplexSet>> {
    a.ensure_same_mesh(mesh)?;
    b.ensure_same_mesh(mesh)?;
    let either = a.spokes1.union(&b.spokes1);
    let mut out = BTreeSet::new();
    for t in a.spokes1.intersection(&b.spokes1).iter() {
        let neighbors: Vec<TriangleId> = mesh
            .edge_neighbors(t)?
            .into_iter()
            .filter(|&u| either.contains(u))
            .collect();
        if neighbors.is_empty() {
            out.insert(SimplexSet::singleton(t));
        }
        for u in neighbors {
            out.insert([t, u].into_iter().collect::<SimplexSet>());
        }
    }
    Ok(out.into_iter().collect())
}

/// JSON form of a k-spoke enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpokeReport {
    pub nucleus: VertexId,
    pub k: usize,
    pub mode: SpokeMode,
    pub chains: Vec<Vec<TriangleId>>,
}

impl SpokeReport {
    pub fn new(nerve: &NerveComplex, k: usize, mode: SpokeMode, chains: &[SpokeChain]) -> Self {
        Self {
            nucleus: nerve.nucleus,
            k,
            mode,
            chains: chains.iter().map(|c| c.triangles.clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::fixtures::*;
    use crate::nerve::{all_nerves, nerve_at};

    #[test]
    fn one_spokes_match_nerve_size() {
        assert_eq!(one_spokes(&nerve_at(&regular_fan(8, 1.0), 0).unwrap()).len(), 8);
        assert_eq!(one_spokes(&nerve_at(&regular_fan(5, 1.0), 0).unwrap()).len(), 5);
        let sq = unit_square();
        assert_eq!(one_spokes(&nerve_at(&sq, 1).unwrap()).len(), 1);
    }

    #[test]
    fn level_one_is_one_spokes() {
        let fan = regular_fan(6, 1.0);
        let n = nerve_at(&fan, 0).unwrap();
        let k1: Vec<Vec<usize>> = k_spokes(&fan, &n, 1, SpokeMode::Vertex)
            .unwrap()
            .into_iter()
            .map(|c| c.triangles)
            .collect();
        let one: Vec<Vec<usize>> = one_spokes(&n).into_iter().map(|c| c.triangles).collect();
        assert_eq!(k1, one);
    }

    #[test]
    fn square_two_spokes_from_outer_corner() {
        // Vertex 1 touches only triangle 0; the only edge step is into 1.
        let sq = unit_square();
        let n = nerve_at(&sq, 1).unwrap();
        let chains = k_spokes(&sq, &n, 2, SpokeMode::Edge).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].triangles, vec![0, 1]);
        // Diagonal endpoints already own both triangles.
        let d = nerve_at(&sq, 0).unwrap();
        assert!(k_spokes(&sq, &d, 2, SpokeMode::Edge).unwrap().is_empty());
    }

    #[test]
    fn isolated_fan_has_no_two_spokes() {
        let fan = regular_fan(8, 1.0);
        let n = nerve_at(&fan, 0).unwrap();
        assert!(k_spokes(&fan, &n, 2, SpokeMode::Vertex).unwrap().is_empty());
        assert_eq!(spoke_union(&fan, &n, 4, SpokeMode::Vertex).unwrap(), n.spokes1);
    }

    #[test]
    fn union_matches_chain_enumeration_on_fan_rim() {
        let fan = regular_fan(8, 1.0);
        for n in all_nerves(&fan) {
            for mode in [SpokeMode::Edge, SpokeMode::Vertex] {
                for k in 1..=4 {
                    let mut from_chains = SimplexSet::new();
                    for level in 1..=k {
                        for c in k_spokes(&fan, &n, level, mode).unwrap() {
                            from_chains.extend(c.triangles);
                        }
                    }
                    assert_eq!(spoke_union(&fan, &n, k, mode).unwrap(), from_chains);
                }
            }
        }
    }

    #[test]
    fn common_two_spokes_cases() {
        let sq = unit_square();
        let (a, b) = (nerve_at(&sq, 0).unwrap(), nerve_at(&sq, 2).unwrap());
        assert_eq!(
            common_2_spokes(&sq, &a, &b).unwrap(),
            vec![[0, 1].into_iter().collect::<SimplexSet>()]
        );
        let two = two_disjoint_triangles();
        let (a, b) = (nerve_at(&two, 0).unwrap(), nerve_at(&two, 3).unwrap());
        assert!(common_2_spokes(&two, &a, &b).unwrap().is_empty());
        let fan = regular_fan(8, 1.0);
        let c = nerve_at(&fan, 0).unwrap();
        assert_eq!(common_2_spokes(&fan, &c, &c).unwrap().len(), 8);
        let other = unit_square();
        assert!(matches!(
            common_2_spokes(&other, &c, &c),
            Err(Error::MeshMismatch)
        ));
    }

    #[test]
    fn mode_parses() {
        assert_eq!("edge".parse::<SpokeMode>().unwrap(), SpokeMode::Edge);
        assert_eq!(SpokeMode::Vertex.to_string(), "vertex");
        assert!("face".parse::<SpokeMode>().is_err());
    }
}
