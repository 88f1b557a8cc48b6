//! Immutable planar triangle meshes and triangle-set regions.
//!
//! A [`TriMesh`] owns its vertex coordinates, counterclockwise triangles and
//! the derived edge and vertex incidence tables. Regions are carried as
//! [`SimplexSet`]s of triangle ids; every operation on them is pure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::predicates;

pub type VertexId = usize;
pub type TriangleId = usize;

/// Vertices closer than this (in input units) are treated as duplicates.
pub const DUPLICATE_TOLERANCE: f64 = 1e-9;

static NEXT_MESH_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A filled triangle given by three vertex ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
}

impl Triangle {
    pub const fn new(a: VertexId, b: VertexId, c: VertexId) -> Self {
        Self { a, b, c }
    }

    pub const fn vertices(&self) -> [VertexId; 3] {
        [self.a, self.b, self.c]
    }

    pub fn edges(&self) -> [Edge; 3] {
        [
            Edge::new(self.a, self.b),
            Edge::new(self.b, self.c),
            Edge::new(self.c, self.a),
        ]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.a == v || self.b == v || self.c == v
    }
}

/// Undirected edge, stored with the smaller vertex id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub VertexId, pub VertexId);

impl Edge {
    pub fn new(u: VertexId, v: VertexId) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// A set of triangle ids within one mesh.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexSet(BTreeSet<TriangleId>);

impl SimplexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(t: TriangleId) -> Self {
        Self(BTreeSet::from([t]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: TriangleId) -> bool {
        self.0.contains(&t)
    }

    pub fn insert(&mut self, t: TriangleId) -> bool {
        self.0.insert(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = TriangleId> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<TriangleId> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &SimplexSet) -> SimplexSet {
        Self(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &SimplexSet) -> SimplexSet {
        Self(self.0.intersection(&other.0).copied().collect())
    }

    pub fn is_disjoint(&self, other: &SimplexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &SimplexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_vec(&self) -> Vec<TriangleId> {
        self.iter().collect()
    }
}

impl FromIterator<TriangleId> for SimplexSet {
    fn from_iter<I: IntoIterator<Item = TriangleId>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl Extend<TriangleId> for SimplexSet {
    fn extend<I: IntoIterator<Item = TriangleId>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a SimplexSet {
    type Item = TriangleId;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, TriangleId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// Immutable planar triangulation.
#[derive(Clone, Debug)]
pub struct TriMesh {
    id: u64,
    vertices: Vec<Point2>,
    triangles: Vec<Triangle>,
    edges: BTreeMap<Edge, Vec<TriangleId>>,
    stars: Vec<Vec<TriangleId>>,
}

impl PartialEq for TriMesh {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.triangles == other.triangles
    }
}

impl TriMesh {
    /// Builds a mesh, rejecting non-finite or duplicate vertices, bad ids and
    /// zero-area triangles. Clockwise triangles are flipped to counterclockwise.
    pub fn new(vertices: Vec<Point2>, triangles: Vec<[VertexId; 3]>) -> Result<Self> {
        check_vertices(&vertices)?;
        let mut tris = Vec::with_capacity(triangles.len());
        for (t, [a, b, c]) in triangles.into_iter().enumerate() {
            check_ids(t, [a, b, c], vertices.len())?;
            let area = predicates::orient(vertices[a], vertices[b], vertices[c]);
            if area == 0.0 {
                return Err(Error::DegenerateTriangle(t));
            }
            tris.push(if area > 0.0 {
                Triangle::new(a, b, c)
            } else {
                Triangle::new(a, c, b)
            });
        }
        Ok(Self::assemble(vertices, tris))
    }

    /// Builds a mesh exactly as given. Only vertex ids are checked; the
    /// result may violate the mesh invariants and should be passed through
    /// [`crate::triangulation::validate_mesh`].
    pub fn from_raw(vertices: Vec<Point2>, triangles: Vec<[VertexId; 3]>) -> Result<Self> {
        let mut tris = Vec::with_capacity(triangles.len());
        for [a, b, c] in triangles {
            for v in [a, b, c] {
                if v >= vertices.len() {
                    return Err(Error::UnknownVertex(v));
                }
            }
            tris.push(Triangle::new(a, b, c));
        }
        Ok(Self::assemble(vertices, tris))
    }

    fn assemble(vertices: Vec<Point2>, triangles: Vec<Triangle>) -> Self {
        let mut edges: BTreeMap<Edge, Vec<TriangleId>> = BTreeMap::new();
        let mut stars = vec![Vec::new(); vertices.len()];
        for (t, tri) in triangles.iter().enumerate() {
            for e in tri.edges() {
                edges.entry(e).or_default().push(t);
            }
            for v in tri.vertices() {
                if !stars[v].contains(&t) {
                    stars[v].push(t);
                }
            }
        }
        Self {
            id: NEXT_MESH_ID.fetch_add(1, Ordering::Relaxed),
            vertices,
            triangles,
            edges,
            stars,
        }
    }

    /// Identity token shared by clones; used to reject cross-mesh queries.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Edge to incident triangle ids.
    pub fn edge_adjacency(&self) -> &BTreeMap<Edge, Vec<TriangleId>> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, v: VertexId) -> Result<Point2> {
        self.vertices.get(v).copied().ok_or(Error::UnknownVertex(v))
    }

    pub fn triangle(&self, t: TriangleId) -> Result<Triangle> {
        self.triangles.get(t).copied().ok_or(Error::UnknownTriangle(t))
    }

    pub fn corners(&self, t: TriangleId) -> Result<[Point2; 3]> {
        let tri = self.triangle(t)?;
        Ok(tri.vertices().map(|v| self.vertices[v]))
    }

    /// Triangles incident to `v`, ascending.
    pub fn star(&self, v: VertexId) -> Result<&[TriangleId]> {
        self.stars
            .get(v)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownVertex(v))
    }

    pub fn all_triangles(&self) -> SimplexSet {
        (0..self.triangles.len()).collect()
    }

    pub fn check_set(&self, s: &SimplexSet) -> Result<()> {
        match s.iter().find(|&t| t >= self.triangles.len()) {
            Some(t) => Err(Error::UnknownTriangle(t)),
            None => Ok(()),
        }
    }

    fn check_nonempty(&self, s: &SimplexSet) -> Result<()> {
        if s.is_empty() {
            return Err(Error::EmptySimplexSet);
        }
        self.check_set(s)
    }

    /// Twice-signed area halved; positive for counterclockwise triangles.
    pub fn signed_area(&self, t: TriangleId) -> Result<f64> {
        let [p, q, r] = self.corners(t)?;
        Ok(0.5 * ((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)))
    }

    pub fn triangle_area(&self, t: TriangleId) -> Result<f64> {
        Ok(self.signed_area(t)?.abs())
    }

    pub fn triangle_centroid(&self, t: TriangleId) -> Result<Point2> {
        let [p, q, r] = self.corners(t)?;
        Ok(Point2::new((p.x + q.x + r.x) / 3.0, (p.y + q.y + r.y) / 3.0))
    }

    /// Triangles sharing an edge with `t`.
    pub fn edge_neighbors(&self, t: TriangleId) -> Result<Vec<TriangleId>> {
        let tri = self.triangle(t)?;
        let mut out: Vec<TriangleId> = tri
            .edges()
            .iter()
            .flat_map(|e| self.edges[e].iter().copied())
            .filter(|&u| u != t)
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Triangles sharing at least one vertex with `t`.
    pub fn vertex_neighbors(&self, t: TriangleId) -> Result<Vec<TriangleId>> {
        let tri = self.triangle(t)?;
        let mut out: Vec<TriangleId> = tri
            .vertices()
            .iter()
            .flat_map(|&v| self.stars[v].iter().copied())
            .filter(|&u| u != t)
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// All vertex ids of the closed triangles in `s`.
    pub fn closure_vertices(&self, s: &SimplexSet) -> Result<BTreeSet<VertexId>> {
        self.check_nonempty(s)?;
        Ok(s.iter()
            .flat_map(|t| self.triangles[t].vertices())
            .collect())
    }

    pub fn closure_edges(&self, s: &SimplexSet) -> Result<BTreeSet<Edge>> {
        self.check_nonempty(s)?;
        Ok(s.iter().flat_map(|t| self.triangles[t].edges()).collect())
    }

    /// `V - E + F` over the closed triangles of `s`.
    pub fn euler_characteristic(&self, s: &SimplexSet) -> Result<i64> {
        let v = self.closure_vertices(s)?.len() as i64;
        let e = self.closure_edges(s)?.len() as i64;
        Ok(v - e + s.len() as i64)
    }

    /// Edges incident to exactly one triangle of `s`.
    pub fn boundary_edges(&self, s: &SimplexSet) -> Result<BTreeSet<Edge>> {
        self.check_nonempty(s)?;
        let mut counts: BTreeMap<Edge, usize> = BTreeMap::new();
        for t in s {
            for e in self.triangles[t].edges() {
                *counts.entry(e).or_default() += 1;
            }
        }
        Ok(counts
            .into_iter()
            .filter_map(|(e, n)| (n == 1).then_some(e))
            .collect())
    }

    /// Interiors of two triangle-set regions meet iff they share a triangle.
    pub fn interiors_overlap(&self, s1: &SimplexSet, s2: &SimplexSet) -> Result<bool> {
        self.check_nonempty(s1)?;
        self.check_nonempty(s2)?;
        Ok(!s1.is_disjoint(s2))
    }

    /// Vertices whose every incident triangle lies in `s`.
    pub fn interior_vertices(&self, s: &SimplexSet) -> Result<BTreeSet<VertexId>> {
        Ok(self
            .closure_vertices(s)?
            .into_iter()
            .filter(|&v| self.stars[v].iter().all(|&t| s.contains(t)))
            .collect())
    }

    /// Edges of `s` whose every incident mesh triangle lies in `s`.
    pub fn interior_edges(&self, s: &SimplexSet) -> Result<BTreeSet<Edge>> {
        Ok(self
            .closure_edges(s)?
            .into_iter()
            .filter(|e| self.edges[e].iter().all(|&t| s.contains(t)))
            .collect())
    }

    /// True iff the closed triangles of `s` form one vertex-connected piece.
    pub fn is_vertex_connected(&self, s: &SimplexSet) -> Result<bool> {
        self.check_nonempty(s)?;
        let start = s.first().expect("nonempty");
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for v in self.triangles[t].vertices() {
                for &u in &self.stars[v] {
                    if s.contains(u) && seen.insert(u) {
                        stack.push(u);
                    }
                }
            }
        }
        Ok(seen.len() == s.len())
    }

    pub fn total_area(&self) -> f64 {
        (0..self.triangles.len())
            .map(|t| self.triangle_area(t).unwrap_or(0.0))
            .sum()
    }
}

fn check_ids(t: TriangleId, ids: [VertexId; 3], n: usize) -> Result<()> {
    for v in ids {
        if v >= n {
            return Err(Error::UnknownVertex(v));
        }
    }
    let [a, b, c] = ids;
    if a == b || b == c || a == c {
        return Err(Error::DegenerateTriangle(t));
    }
    Ok(())
}

fn check_vertices(vertices: &[Point2]) -> Result<()> {
    if let Some(v) = vertices.iter().position(|p| !p.is_finite()) {
        return Err(Error::NonFinite(v));
    }
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&i, &j| vertices[i].x.total_cmp(&vertices[j].x).then(i.cmp(&j)));
    for (pos, &i) in order.iter().enumerate() {
        for &j in order[pos + 1..].iter() {
            if vertices[j].x - vertices[i].x > DUPLICATE_TOLERANCE {
                break;
            }
            if vertices[i].distance(vertices[j]) <= DUPLICATE_TOLERANCE {
                return Err(Error::DuplicateVertex(i.min(j), i.max(j)));
            }
        }
    }
    Ok(())
}
