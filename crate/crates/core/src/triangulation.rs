//! Delaunay triangulation of planar point sets and images.
//!
//! Points are inserted in lexicographic order into a triangle soup with
//! neighbour links, each insertion followed by Lawson edge flips. All
//! geometric decisions go through the exact predicates in
//! [`crate::predicates`]; cocircular ties resolve to a fan from the
//! lexicographically smallest cocircular point.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::image::{select_keypoints, GrayImage};
use crate::mesh::{Edge, Point2, TriMesh, TriangleId, VertexId, DUPLICATE_TOLERANCE};
use crate::predicates::{in_circumcircle, lex_cmp, orient};

#[derive(Clone, Debug, PartialEq)]
pub struct TriangulationConfig {
    /// Points within this distance of an earlier point are dropped.
    pub dedup_tolerance: f64,
    /// Triangulate the full convex hull. Only `true` is supported.
    pub include_hull: bool,
}

impl Default for TriangulationConfig {
    fn default() -> Self {
        Self {
            dedup_tolerance: DUPLICATE_TOLERANCE,
            include_hull: true,
        }
    }
}

impl TriangulationConfig {
    fn check(&self) -> Result<()> {
        if !(self.dedup_tolerance > 0.0) {
            return Err(Error::InvalidArgument("dedup tolerance must be positive".into()));
        }
        if !self.include_hull {
            return Err(Error::InvalidArgument(
                "only full convex-hull coverage is supported".into(),
            ));
        }
        Ok(())
    }
}

/// Drops points within `tolerance` of an earlier kept point. Keeps input order.
pub fn dedup_points(points: &[Point2], tolerance: f64) -> Vec<Point2> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].x.total_cmp(&points[j].x).then(i.cmp(&j)));
    let mut dropped = vec![false; points.len()];
    for (pos, &i) in order.iter().enumerate() {
        if dropped[i] {
            continue;
        }
        for &j in &order[pos + 1..] {
            if points[j].x - points[i].x > tolerance {
                break;
            }
            if !dropped[j] && points[i].distance(points[j]) <= tolerance {
                // The later input index goes.
                dropped[i.max(j)] = true;
            }
        }
    }
    points
        .iter()
        .zip(dropped)
        .filter_map(|(p, d)| (!d).then_some(*p))
        .collect()
}

/// Delaunay triangulation of the convex hull of `points`.
///
/// Vertex ids of the result index the deduplicated input in input order.
pub fn delaunay(points: &[Point2], cfg: &TriangulationConfig) -> Result<TriMesh> {
    cfg.check()?;
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let pts = dedup_points(points, cfg.dedup_tolerance);
    if pts.len() < 3 {
        return Err(Error::InsufficientPoints(pts.len()));
    }
    let triangles = Builder::run(&pts)?;
    TriMesh::new(pts, triangles)
}

/// Keypoint mesh of an image: at most `k` keypoints plus the four corners.
pub fn triangulate_image(image: &GrayImage, k: usize, cfg: &TriangulationConfig) -> Result<TriMesh> {
    if k < 3 {
        return Err(Error::InsufficientPoints(k));
    }
    let keypoints = select_keypoints(image, k)?;
    let mut points: Vec<Point2> = image.corners().to_vec();
    points.extend(keypoints.iter().map(|kp| kp.position));
    delaunay(&points, cfg)
}

const NONE: usize = usize::MAX;

struct Builder<'a> {
    pts: &'a [Point2],
    tris: Vec<[VertexId; 3]>,
    /// `nbr[t][i]` is the triangle across the edge opposite `tris[t][i]`.
    nbr: Vec<[TriangleId; 3]>,
}

enum Location {
    Inside(TriangleId),
    OnEdge(TriangleId, usize),
    Outside,
}

impl<'a> Builder<'a> {
    fn run(pts: &'a [Point2]) -> Result<Vec<[VertexId; 3]>> {
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by(|&i, &j| lex_cmp(pts[i], pts[j]));
        let (p0, p1) = (order[0], order[1]);
        let k = (2..order.len())
            .find(|&k| orient(pts[p0], pts[p1], pts[order[k]]) != 0.0)
            .ok_or(Error::DegenerateInput)?;
        let p2 = order[k];
        let first = if orient(pts[p0], pts[p1], pts[p2]) > 0.0 {
            [p0, p1, p2]
        } else {
            [p0, p2, p1]
        };
        let mut b = Builder {
            pts,
            tris: vec![first],
            nbr: vec![[NONE; 3]],
        };
        for (pos, &v) in order.iter().enumerate().skip(2) {
            if pos != k {
                b.insert(v);
            }
        }
        Ok(b.tris)
    }

    fn p(&self, v: VertexId) -> Point2 {
        self.pts[v]
    }

    fn locate(&self, v: VertexId) -> Location {
        let q = self.p(v);
        for (t, tri) in self.tris.iter().enumerate() {
            let o = [0, 1, 2].map(|i| orient(self.p(tri[(i + 1) % 3]), self.p(tri[(i + 2) % 3]), q));
            if o.iter().all(|&x| x >= 0.0) {
                return match o.iter().position(|&x| x == 0.0) {
                    Some(i) => Location::OnEdge(t, i),
                    None => Location::Inside(t),
                };
            }
        }
        Location::Outside
    }

    fn insert(&mut self, v: VertexId) {
        let created = match self.locate(v) {
            Location::Inside(t) => self.split_inside(t, v),
            Location::OnEdge(t, i) => self.split_edge(t, i, v),
            Location::Outside => self.attach_outside(v),
        };
        let mut stack = created;
        while let Some(t) = stack.pop() {
            self.legalize(t, v, &mut stack);
        }
    }

    /// Links a fresh set of triangles to each other and to the old ones.
    fn link(&mut self, fresh: &[TriangleId], outer: &[(TriangleId, VertexId, VertexId)]) {
        // Directed edge (a, b) of a fresh triangle -> (triangle, opposite slot).
        let mut half: HashMap<(VertexId, VertexId), (TriangleId, usize)> = HashMap::new();
        for &t in fresh {
            self.nbr[t] = [NONE; 3];
            let tri = self.tris[t];
            for i in 0..3 {
                half.insert((tri[(i + 1) % 3], tri[(i + 2) % 3]), (t, i));
            }
        }
        for (&(a, b), &(t, i)) in half.iter() {
            if let Some(&(u, _)) = half.get(&(b, a)) {
                self.nbr[t][i] = u;
            }
        }
        // Old triangles across the boundary of the fresh region.
        for &(old, a, b) in outer {
            if let Some(&(t, i)) = half.get(&(b, a)) {
                self.nbr[t][i] = old;
                if old != NONE {
                    let j = self.slot_of_edge(old, a, b);
                    self.nbr[old][j] = t;
                }
            }
        }
    }

    /// Slot opposite the directed edge `(a, b)` in triangle `t`.
    fn slot_of_edge(&self, t: TriangleId, a: VertexId, b: VertexId) -> usize {
        let tri = self.tris[t];
        (0..3)
            .find(|&i| tri[(i + 1) % 3] == a && tri[(i + 2) % 3] == b)
            .expect("edge belongs to triangle")
    }

    /// Outer boundary of triangle `t` as (neighbour, a, b) with `(a, b)`
    /// the directed edge as seen from the neighbour.
    fn rim(&self, t: TriangleId, skip: Option<usize>) -> Vec<(TriangleId, VertexId, VertexId)> {
        let tri = self.tris[t];
        (0..3)
            .filter(|&i| Some(i) != skip)
            .map(|i| (self.nbr[t][i], tri[(i + 2) % 3], tri[(i + 1) % 3]))
            .collect()
    }

    fn split_inside(&mut self, t: TriangleId, v: VertexId) -> Vec<TriangleId> {
        let [a, b, c] = self.tris[t];
        let rim = self.rim(t, None);
        self.tris[t] = [v, a, b];
        let t1 = self.push([v, b, c]);
        let t2 = self.push([v, c, a]);
        let fresh = [t, t1, t2];
        self.link(&fresh, &rim);
        fresh.to_vec()
    }

    fn split_edge(&mut self, t: TriangleId, i: usize, v: VertexId) -> Vec<TriangleId> {
        let tri = self.tris[t];
        let (apex, a, b) = (tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]);
        let u = self.nbr[t][i];
        let mut rim = self.rim(t, Some(i));
        self.tris[t] = [v, b, apex];
        let t1 = self.push([v, apex, a]);
        let mut fresh = vec![t, t1];
        if u != NONE {
            let j = self.slot_of_edge(u, b, a);
            let far = self.tris[u][j];
            rim.extend(self.rim(u, Some(j)));
            self.tris[u] = [v, a, far];
            let u1 = self.push([v, far, b]);
            fresh.extend([u, u1]);
        }
        self.link(&fresh, &rim);
        fresh
    }

    fn attach_outside(&mut self, v: VertexId) -> Vec<TriangleId> {
        let q = self.p(v);
        let mut visible = Vec::new();
        for t in 0..self.tris.len() {
            for i in 0..3 {
                if self.nbr[t][i] != NONE {
                    continue;
                }
                let (a, b) = (self.tris[t][(i + 1) % 3], self.tris[t][(i + 2) % 3]);
                if orient(self.p(a), self.p(b), q) < 0.0 {
                    visible.push((t, a, b));
                }
            }
        }
        let fresh: Vec<TriangleId> = visible
            .iter()
            .map(|&(_, a, b)| self.push([v, b, a]))
            .collect();
        self.link(&fresh, &visible);
        fresh
    }

    fn push(&mut self, tri: [VertexId; 3]) -> TriangleId {
        self.tris.push(tri);
        self.nbr.push([NONE; 3]);
        self.tris.len() - 1
    }

    /// Flips the edge of `t` opposite `v` if it is not locally Delaunay.
    fn legalize(&mut self, t: TriangleId, v: VertexId, stack: &mut Vec<TriangleId>) {
        let tri = self.tris[t];
        let Some(i) = tri.iter().position(|&x| x == v) else {
            return;
        };
        let (a, b) = (tri[(i + 1) % 3], tri[(i + 2) % 3]);
        let u = self.nbr[t][i];
        if u == NONE {
            return;
        }
        let j = self.slot_of_edge(u, b, a);
        let q = self.tris[u][j];
        if !in_circumcircle(self.p(v), self.p(a), self.p(b), self.p(q)) {
            return;
        }
        if orient(self.p(v), self.p(a), self.p(q)) <= 0.0
            || orient(self.p(v), self.p(q), self.p(b)) <= 0.0
        {
            return;
        }
        // t = [v, a, b], u = [q, b, a]  ->  t = [v, a, q], u = [v, q, b]
        let n_vb = self.nbr[t][(i + 1) % 3]; // across (b, v)
        let n_va = self.nbr[t][(i + 2) % 3]; // across (v, a)
        let n_aq = self.nbr[u][(j + 1) % 3]; // across (a, q)
        let n_qb = self.nbr[u][(j + 2) % 3]; // across (q, b)
        self.tris[t] = [v, a, q];
        self.nbr[t] = [n_aq, u, n_va];
        self.tris[u] = [v, q, b];
        self.nbr[u] = [n_qb, n_vb, t];
        if n_aq != NONE {
            let k = self.slot_of_edge(n_aq, q, a);
            self.nbr[n_aq][k] = t;
        }
        if n_vb != NONE {
            let k = self.slot_of_edge(n_vb, v, b);
            self.nbr[n_vb][k] = u;
        }
        stack.push(t);
        stack.push(u);
    }
}

/// Findings of [`validate_mesh`]. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub over_incident_edges: Vec<(Edge, usize)>,
    pub clockwise_triangles: Vec<TriangleId>,
    pub degenerate_triangles: Vec<TriangleId>,
    pub overlapping_pairs: Vec<(TriangleId, TriangleId)>,
    pub duplicate_vertices: Vec<(VertexId, VertexId)>,
    pub non_finite_vertices: Vec<VertexId>,
    /// False when the mesh was too large for the pairwise overlap scan.
    pub overlap_checked: bool,
}

/// Meshes up to this size get the quadratic interior-overlap scan.
pub const OVERLAP_SCAN_LIMIT: usize = 200;

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.over_incident_edges.is_empty()
            && self.clockwise_triangles.is_empty()
            && self.degenerate_triangles.is_empty()
            && self.overlapping_pairs.is_empty()
            && self.duplicate_vertices.is_empty()
            && self.non_finite_vertices.is_empty()
    }

    pub fn findings(&self) -> Vec<String> {
        let mut out = Vec::new();
        out.extend(self.non_finite_vertices.iter().map(|v| format!("vertex {v} is not finite")));
        out.extend(
            self.duplicate_vertices
                .iter()
                .map(|(a, b)| format!("vertices {a} and {b} coincide")),
        );
        out.extend(
            self.over_incident_edges
                .iter()
                .map(|(e, n)| format!("edge {e} is shared by {n} triangles")),
        );
        out.extend(self.degenerate_triangles.iter().map(|t| format!("triangle {t} is degenerate")));
        out.extend(self.clockwise_triangles.iter().map(|t| format!("triangle {t} is clockwise")));
        out.extend(
            self.overlapping_pairs
                .iter()
                .map(|(a, b)| format!("triangles {a} and {b} overlap")),
        );
        out
    }
}

/// Checks every mesh invariant and reports each violation found.
pub fn validate_mesh(mesh: &TriMesh) -> ValidationReport {
    let mut report = ValidationReport::default();
    let verts = mesh.vertices();
    report.non_finite_vertices = (0..verts.len()).filter(|&v| !verts[v].is_finite()).collect();
    let mut order: Vec<usize> = (0..verts.len()).filter(|&v| verts[v].is_finite()).collect();
    order.sort_by(|&i, &j| verts[i].x.total_cmp(&verts[j].x).then(i.cmp(&j)));
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if verts[j].x - verts[i].x > DUPLICATE_TOLERANCE {
                break;
            }
            if verts[i].distance(verts[j]) <= DUPLICATE_TOLERANCE {
                report.duplicate_vertices.push((i.min(j), i.max(j)));
            }
        }
    }
    report.duplicate_vertices.sort_unstable();

    for (e, ts) in mesh.edge_adjacency() {
        if ts.len() > 2 {
            report.over_incident_edges.push((*e, ts.len()));
        }
    }
    for (t, tri) in mesh.triangles().iter().enumerate() {
        let [a, b, c] = tri.vertices();
        if a == b || b == c || a == c {
            report.degenerate_triangles.push(t);
            continue;
        }
        let o = orient(verts[a], verts[b], verts[c]);
        if o == 0.0 || o.is_nan() {
            report.degenerate_triangles.push(t);
        } else if o < 0.0 {
            report.clockwise_triangles.push(t);
        }
    }
    let n = mesh.triangle_count();
    report.overlap_checked = n <= OVERLAP_SCAN_LIMIT;
    if report.overlap_checked {
        let bad: std::collections::BTreeSet<TriangleId> = report
            .degenerate_triangles
            .iter()
            .copied()
            .collect();
        for t in 0..n {
            for u in t + 1..n {
                if bad.contains(&t) || bad.contains(&u) {
                    continue;
                }
                if interiors_intersect(mesh, t, u) {
                    report.overlapping_pairs.push((t, u));
                }
            }
        }
    }
    report
}

/// Separating-axis test on the open triangles.
fn interiors_intersect(mesh: &TriMesh, t: TriangleId, u: TriangleId) -> bool {
    let ccw = |id: TriangleId| {
        let [p, q, r] = mesh.corners(id).expect("valid id");
        if orient(p, q, r) > 0.0 {
            [p, q, r]
        } else {
            [p, r, q]
        }
    };
    let (tp, up) = (ccw(t), ccw(u));
    let separates = |poly: &[Point2; 3], other: &[Point2; 3]| {
        (0..3).any(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % 3]);
            other.iter().all(|&q| orient(a, b, q) <= 0.0)
        })
    };
    !(separates(&tp, &up) || separates(&up, &tp))
}

/// Triangle vertex triples relabelled by coordinates, sorted. Two meshes over
/// the same point set agree iff their canonical forms are equal.
pub fn canonical_triangles(mesh: &TriMesh) -> Vec<[(u64, u64); 3]> {
    let key = |v: VertexId| {
        let p = mesh.vertices()[v];
        (p.x.to_bits(), p.y.to_bits())
    };
    let mut out: Vec<[(u64, u64); 3]> = mesh
        .triangles()
        .iter()
        .map(|t| {
            let mut k = t.vertices().map(key);
            k.sort_unstable();
            k
        })
        .collect();
    out.sort_unstable();
    out
}

/// Edge -> triangle count of a set of triples; used by oracles and reports.
pub fn edge_incidence(triangles: &[[VertexId; 3]]) -> BTreeMap<Edge, usize> {
    let mut m = BTreeMap::new();
    for &[a, b, c] in triangles {
        for e in [Edge::new(a, b), Edge::new(b, c), Edge::new(c, a)] {
            *m.entry(e).or_insert(0) += 1;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pts(raw: &[(f64, f64)]) -> Vec<Point2> {
        raw.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    fn cfg() -> TriangulationConfig {
        TriangulationConfig::default()
    }

    #[test]
    fn three_points_one_triangle() {
        let m = delaunay(&pts(&[(0.0, 0.0), (4.0, 0.0), (1.0, 3.0)]), &cfg()).unwrap();
        assert_eq!(m.triangle_count(), 1);
    }

    #[test]
    fn unit_square_uses_origin_diagonal() {
        let m = delaunay(&pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]), &cfg()).unwrap();
        assert_eq!(m.triangle_count(), 2);
        assert_eq!(m.edge_count(), 5);
        assert_eq!(m.euler_characteristic(&m.all_triangles()).unwrap(), 1);
        assert!(m.edge_adjacency().contains_key(&Edge::new(0, 2)));
        // Same answer regardless of input order.
        let m2 = delaunay(&pts(&[(1.0, 1.0), (0.0, 1.0), (1.0, 0.0), (0.0, 0.0)]), &cfg()).unwrap();
        assert_eq!(canonical_triangles(&m), canonical_triangles(&m2));
    }

    #[test]
    fn collinear_input_rejected() {
        let err = delaunay(
            &pts(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]),
            &cfg(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegenerateInput));
    }

    #[test]
    fn too_few_points_after_dedup() {
        let err = delaunay(&pts(&[(0.0, 0.0), (1.0, 0.0), (1e-12, 0.0)]), &cfg()).unwrap_err();
        assert!(matches!(err, Error::InsufficientPoints(2)));
    }

    #[test]
    fn hull_collinear_points_become_vertices() {
        let m = delaunay(
            &pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (1.5, 2.0)]),
            &cfg(),
        )
        .unwrap();
        assert_eq!(m.triangle_count(), 3);
        assert!(validate_mesh(&m).is_valid());
    }

    #[test]
    fn interior_point_on_edge() {
        // (1, 1) sits on the square's diagonal.
        let m = delaunay(
            &pts(&[(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0), (1.0, 1.0)]),
            &cfg(),
        )
        .unwrap();
        assert_eq!(m.triangle_count(), 4);
        assert_eq!(m.star(4).unwrap().len(), 4);
    }

    #[test]
    fn random_meshes_are_valid_and_delaunay() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(3..60);
            let p: Vec<Point2> = (0..n)
                .map(|_| Point2::new(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
                .collect();
            let m = delaunay(&p, &cfg()).unwrap();
            assert!(validate_mesh(&m).is_valid(), "{:?}", validate_mesh(&m).findings());
            for (t, tri) in m.triangles().iter().enumerate() {
                let [a, b, c] = tri.vertices().map(|v| m.vertices()[v]);
                for (v, &q) in m.vertices().iter().enumerate() {
                    if !tri.contains(v) {
                        assert!(!in_circumcircle(a, b, c, q), "triangle {t} holds vertex {v}");
                    }
                }
            }
            // Euler with the outer face.
            let (v, e, f) = (m.vertex_count() as i64, m.edge_count() as i64, m.triangle_count() as i64);
            assert_eq!(v - e + f + 1, 2);
        }
    }

    #[test]
    fn validator_flags_over_incident_edge() {
        let m = TriMesh::from_raw(
            pts(&[(0.0, 0.0), (1.0, 0.0), (0.5, 1.0), (0.5, -1.0), (0.5, 2.0)]),
            vec![[0, 1, 2], [1, 0, 3], [0, 1, 4]],
        )
        .unwrap();
        let r = validate_mesh(&m);
        assert_eq!(r.over_incident_edges, vec![(Edge::new(0, 1), 3)]);
        assert!(r.findings().iter().any(|f| f.contains("edge 0-1")));
    }

    #[test]
    fn validator_flags_clockwise_triangle() {
        let m = TriMesh::from_raw(
            pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]),
            vec![[0, 1, 2], [1, 2, 3]],
        )
        .unwrap();
        let r = validate_mesh(&m);
        assert_eq!(r.clockwise_triangles, vec![1]);
        assert!(r.findings().contains(&"triangle 1 is clockwise".to_string()));
    }

    #[test]
    fn validator_flags_overlap() {
        let m = TriMesh::from_raw(
            pts(&[(0.0, 0.0), (2.0, 0.0), (0.0, 2.0), (0.5, 0.5), (3.0, 0.5), (0.5, 3.0)]),
            vec![[0, 1, 2], [3, 4, 5]],
        )
        .unwrap();
        assert_eq!(validate_mesh(&m).overlapping_pairs, vec![(0, 1)]);
    }

    #[test]
    fn constant_image_meshes_corners_only() {
        let img = GrayImage::from_fn(16, 16, |_, _| 0.5).unwrap();
        let m = triangulate_image(&img, 10, &cfg()).unwrap();
        assert_eq!(m.vertex_count(), 4);
        assert_eq!(m.triangle_count(), 2);
        assert!(matches!(
            triangulate_image(&img, 2, &cfg()),
            Err(Error::InsufficientPoints(2))
        ));
    }

    #[test]
    fn config_checks() {
        let bad = TriangulationConfig {
            dedup_tolerance: 0.0,
            include_hull: true,
        };
        assert!(delaunay(&pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]), &bad).is_err());
    }
}
