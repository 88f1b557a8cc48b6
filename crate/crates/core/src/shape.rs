//! Maximal nucleus clusters, their contours and nerve features.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::{fixed6, fixed6_point};
use crate::mesh::{Edge, Point2, SimplexSet, TriMesh, VertexId};
use crate::nerve::{all_nerves, maximal_nerve, NerveComplex};
use crate::predicates::lex_cmp;
use crate::proximity::strongly_near;

/// The maximal nerve together with every nerve sharing a triangle with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MncCluster {
    pub core: NerveComplex,
    /// Sorted by nucleus; includes the core.
    pub members: Vec<NerveComplex>,
    pub support: SimplexSet,
}

impl MncCluster {
    pub fn around(mesh: &TriMesh, core: NerveComplex) -> Result<Self> {
        core.ensure_same_mesh(mesh)?;
        let mut members = Vec::new();
        let mut support = SimplexSet::new();
        for n in all_nerves(mesh) {
            if strongly_near(mesh, &n.spokes1, &core.spokes1)? {
                support.extend(n.spokes1.iter());
                members.push(n);
            }
        }
        Ok(Self {
            core,
            members,
            support,
        })
    }

    pub fn nuclei(&self) -> Vec<VertexId> {
        self.members.iter().map(|n| n.nucleus).collect()
    }
}

pub fn mnc_cluster(mesh: &TriMesh) -> Result<MncCluster> {
    MncCluster::around(mesh, maximal_nerve(mesh)?)
}

/// Clusters around successive maximal nerves.
///
/// Nerves are visited by decreasing size (ties by nucleus); a nerve starts
/// a new cluster unless it already belongs to an earlier one. The first
/// cluster is [`mnc_cluster`].
pub fn all_clusters(mesh: &TriMesh) -> Result<Vec<MncCluster>> {
    let mut nerves = all_nerves(mesh);
    if nerves.is_empty() {
        return Err(Error::EmptySimplexSet);
    }
    nerves.sort_by(|a, b| b.spoke_count().cmp(&a.spoke_count()).then(a.nucleus.cmp(&b.nucleus)));
    let mut covered = BTreeSet::new();
    let mut out = Vec::new();
    for n in nerves {
        if covered.contains(&n.nucleus) {
            continue;
        }
        let c = MncCluster::around(mesh, n)?;
        covered.extend(c.nuclei());
        out.push(c);
    }
    Ok(out)
}

/// Closed boundary walks of a triangle-set region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edgelet {
    /// Outer loop first (counterclockwise), then holes (clockwise). Each
    /// loop lists its vertices once per visit, without repeating the start.
    pub loops: Vec<Vec<VertexId>>,
}

impl Edgelet {
    pub fn outer(&self) -> &[VertexId] {
        &self.loops[0]
    }

    /// Undirected edges of every loop, with multiplicity.
    pub fn edges(&self) -> Vec<Edge> {
        self.loops
            .iter()
            .flat_map(|l| (0..l.len()).map(move |i| Edge::new(l[i], l[(i + 1) % l.len()])))
            .collect()
    }
}

pub fn edgelet(mesh: &TriMesh, cluster: &MncCluster) -> Result<Edgelet> {
    boundary_loops(mesh, &cluster.support)
}

/// Stitches the boundary edges of `support` into closed loops.
///
/// Edges are directed with the region on their left. Where several
/// boundary edges meet at one vertex, the walk leaves along the first
/// outgoing edge met when turning counterclockwise from the edge it came
/// in on, so each loop follows one component of the complement and a
/// pinched region yields a single figure-eight rather than crossing loops.
pub fn boundary_loops(mesh: &TriMesh, support: &SimplexSet) -> Result<Edgelet> {
    let boundary = mesh.boundary_edges(support)?;
    let mut outgoing: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut incoming: BTreeMap<VertexId, usize> = BTreeMap::new();
    for t in support.iter() {
        let [a, b, c] = mesh.triangle(t)?.vertices();
        let ring = if mesh.signed_area(t)? >= 0.0 {
            [(a, b), (b, c), (c, a)]
        } else {
            [(b, a), (c, b), (a, c)]
        };
        for (p, q) in ring {
            if boundary.contains(&Edge::new(p, q)) {
                outgoing.entry(p).or_default().push(q);
                *incoming.entry(q).or_default() += 1;
            }
        }
    }
    for (&v, outs) in &outgoing {
        if incoming.get(&v).copied().unwrap_or(0) != outs.len() {
            return Err(Error::NonManifoldBoundary(v));
        }
    }

    let mut used: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut loops = Vec::new();
    let starts: Vec<(VertexId, VertexId)> = outgoing
        .iter()
        .flat_map(|(&u, outs)| outs.iter().map(move |&v| (u, v)))
        .collect();
    for start in starts {
        if used.contains(&start) {
            continue;
        }
        let mut walk = Vec::new();
        let (mut u, mut v) = start;
        loop {
            if !used.insert((u, v)) {
                return Err(Error::NonManifoldBoundary(u));
            }
            walk.push(u);
            let w = turn(mesh, u, v, &outgoing[&v])?;
            (u, v) = (v, w);
            if (u, v) == start {
                break;
            }
        }
        loops.push(walk);
    }

    let areas: Vec<f64> = loops.iter().map(|l| loop_area(mesh, l)).collect();
    let outer = (0..loops.len())
        .max_by(|&i, &j| areas[i].abs().total_cmp(&areas[j].abs()).then(j.cmp(&i)))
        .ok_or(Error::EmptySimplexSet)?;
    let mut ordered = Vec::with_capacity(loops.len());
    for (i, mut l) in loops.into_iter().enumerate() {
        let want_ccw = i == outer;
        if (areas[i] > 0.0) != want_ccw && areas[i] != 0.0 {
            l.reverse();
        }
        rotate_to_min(mesh, &mut l);
        ordered.push((i != outer, l));
    }
    ordered.sort_by(|(ha, a), (hb, b)| {
        ha.cmp(hb)
            .then_with(|| lex_cmp(mesh.vertices()[a[0]], mesh.vertices()[b[0]]))
    });
    Ok(Edgelet {
        loops: ordered.into_iter().map(|(_, l)| l).collect(),
    })
}

/// The outgoing neighbour of `v` met first turning counterclockwise from
/// the direction back towards `u`.
fn turn(mesh: &TriMesh, u: VertexId, v: VertexId, outs: &[VertexId]) -> Result<VertexId> {
    let pv = mesh.vertex(v)?;
    let back = angle(pv, mesh.vertex(u)?);
    let mut best: Option<(f64, VertexId)> = None;
    for &w in outs {
        let mut d = angle(pv, mesh.vertex(w)?) - back;
        while d <= 0.0 {
            d += TAU;
        }
        while d > TAU {
            d -= TAU;
        }
        if best.is_none_or(|(bd, bw)| d < bd || (d == bd && w < bw)) {
            best = Some((d, w));
        }
    }
    best.map(|(_, w)| w).ok_or(Error::NonManifoldBoundary(v))
}

fn angle(from: Point2, to: Point2) -> f64 {
    (to.y - from.y).atan2(to.x - from.x)
}

/// Shoelace area of a closed vertex walk; positive when counterclockwise.
pub fn loop_area(mesh: &TriMesh, l: &[VertexId]) -> f64 {
    let v = mesh.vertices();
    let mut twice = 0.0;
    for i in 0..l.len() {
        let (p, q) = (v[l[i]], v[l[(i + 1) % l.len()]]);
        twice += p.x * q.y - q.x * p.y;
    }
    0.5 * twice
}

fn rotate_to_min(mesh: &TriMesh, l: &mut [VertexId]) {
    let v = mesh.vertices();
    if let Some(pos) = (0..l.len()).min_by(|&i, &j| lex_cmp(v[l[i]], v[l[j]]).then(i.cmp(&j))) {
        l.rotate_left(pos);
    }
}

/// Geometric summary of one nerve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NerveFeatures {
    pub nucleus: VertexId,
    #[serde(serialize_with = "fixed6_point")]
    pub centroid: Point2,
    #[serde(serialize_with = "fixed6")]
    pub total_area: f64,
    pub triangle_count: usize,
    #[serde(serialize_with = "fixed6")]
    pub max_triangle_area: f64,
}

/// Centroid is the area-weighted mean of the triangle centroids.
pub fn nerve_features(mesh: &TriMesh, nerve: &NerveComplex) -> Result<NerveFeatures> {
    nerve.ensure_same_mesh(mesh)?;
    if nerve.spokes1.is_empty() {
        return Err(Error::EmptyNerve(nerve.nucleus));
    }
    let (mut total, mut max, mut cx, mut cy) = (0.0, 0.0_f64, 0.0, 0.0);
    for t in nerve.spokes1.iter() {
        let area = mesh.triangle_area(t)?;
        let c = mesh.triangle_centroid(t)?;
        total += area;
        max = max.max(area);
        cx += area * c.x;
        cy += area * c.y;
    }
    Ok(NerveFeatures {
        nucleus: nerve.nucleus,
        centroid: Point2::new(cx / total, cy / total),
        total_area: total,
        triangle_count: nerve.spokes1.len(),
        max_triangle_area: max,
    })
}

/// Dissimilarity in `[0, 1]` between two feature lists.
///
/// Averages two halved L1 distances: between the normalized histograms of
/// triangle counts, and between the descending lists of each nerve's share
/// of its list's total area (the shorter list padded with zeros). Both
/// summaries ignore pose and scale.
pub fn shape_compare(f1: &[NerveFeatures], f2: &[NerveFeatures]) -> Result<f64> {
    if f1.is_empty() || f2.is_empty() {
        return Err(Error::InvalidArgument("feature lists must be nonempty".into()));
    }
    let (h1, h2) = (count_histogram(f1), count_histogram(f2));
    let keys: BTreeSet<usize> = h1.keys().chain(h2.keys()).copied().collect();
    let counts: f64 = keys
        .iter()
        .map(|k| (h1.get(k).unwrap_or(&0.0) - h2.get(k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
        / 2.0;
    let (a1, a2) = (area_shares(f1), area_shares(f2));
    let n = a1.len().max(a2.len());
    let areas: f64 = (0..n)
        .map(|i| (a1.get(i).unwrap_or(&0.0) - a2.get(i).unwrap_or(&0.0)).abs())
        .sum::<f64>()
        / 2.0;
    Ok((counts + areas) / 2.0)
}

fn count_histogram(f: &[NerveFeatures]) -> BTreeMap<usize, f64> {
    let mut h = BTreeMap::new();
    for x in f {
        *h.entry(x.triangle_count).or_insert(0.0) += 1.0 / f.len() as f64;
    }
    h
}

fn area_shares(f: &[NerveFeatures]) -> Vec<f64> {
    let total: f64 = f.iter().map(|x| x.total_area).sum();
    let mut v: Vec<f64> = f
        .iter()
        .map(|x| if total > 0.0 { x.total_area / total } else { 0.0 })
        .collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Nuclei of the given nerves grouped by spoke count. Nerves in one group
/// carry the same description under the spoke-count descriptor.
pub fn group_by_spoke_count(nerves: &[NerveComplex]) -> BTreeMap<usize, Vec<VertexId>> {
    let mut out: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for n in nerves {
        out.entry(n.spoke_count()).or_default().push(n.nucleus);
    }
    out
}
