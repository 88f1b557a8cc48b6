mod common;

use std::collections::BTreeMap;

use nervetopo::nerve::{all_nerves, nerve_at};
use nervetopo::proximity::{desc_intersection, relator_check, strongly_near};
use nervetopo::shape::{nerve_features, shape_compare};
use nervetopo::spokes::common_2_spokes;
use nervetopo::triangulation::{delaunay, validate_mesh, TriangulationConfig};
use nervetopo::{DescriptorMap, Point2, SimplexSet, TriMesh};
use proptest::prelude::*;

fn points(max: usize) -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::vec((0.0..50.0f64, 0.0..50.0f64), 3..max)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point2::new(x, y)).collect())
}

fn mesh_of(pts: &[Point2]) -> Option<TriMesh> {
    delaunay(pts, &TriangulationConfig::default()).ok()
}

/// Brute-force: no vertex strictly inside any triangle's circumcircle,
/// with a relative tolerance for float input.
fn empty_circumcircles(mesh: &TriMesh) -> bool {
    let v = mesh.vertices();
    mesh.triangles().iter().all(|t| {
        let [a, b, c] = t.vertices().map(|i| v[i]);
        let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
        let sq = |p: Point2| p.x * p.x + p.y * p.y;
        let ux = (sq(a) * (b.y - c.y) + sq(b) * (c.y - a.y) + sq(c) * (a.y - b.y)) / d;
        let uy = (sq(a) * (c.x - b.x) + sq(b) * (a.x - c.x) + sq(c) * (b.x - a.x)) / d;
        let r = (a.x - ux).hypot(a.y - uy);
        v.iter().all(|p| (p.x - ux).hypot(p.y - uy) >= r * (1.0 - 1e-9))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delaunay_output_is_valid(pts in points(40)) {
        if let Some(mesh) = mesh_of(&pts) {
            prop_assert!(validate_mesh(&mesh).is_valid(), "{:?}", validate_mesh(&mesh).findings());
            prop_assert!(empty_circumcircles(&mesh));
            // V - E + F = 1 over the hull, outer face excluded.
            let all = mesh.all_triangles();
            prop_assert_eq!(mesh.euler_characteristic(&all).unwrap(), 1);
        }
    }

    #[test]
    fn every_star_is_a_disk(pts in points(30)) {
        if let Some(mesh) = mesh_of(&pts) {
            for n in all_nerves(&mesh) {
                prop_assert_eq!(mesh.euler_characteristic(&n.spokes1).unwrap(), 1);
                for e in mesh.boundary_edges(&n.spokes1).unwrap() {
                    let inside = mesh.edge_adjacency()[&e].iter().filter(|&&t| n.spokes1.contains(t)).count();
                    prop_assert_eq!(inside, 1);
                }
            }
        }
    }

    #[test]
    fn overlap_is_symmetric_and_reflexive(pts in points(25), picks in prop::collection::vec(any::<prop::sample::Index>(), 2..8)) {
        if let Some(mesh) = mesh_of(&pts) {
            let n = mesh.triangle_count();
            let half = picks.len() / 2;
            let a: SimplexSet = picks[..half].iter().map(|i| i.index(n)).collect();
            let b: SimplexSet = picks[half..].iter().map(|i| i.index(n)).collect();
            prop_assert_eq!(mesh.interiors_overlap(&a, &b).unwrap(), mesh.interiors_overlap(&b, &a).unwrap());
            prop_assert!(mesh.interiors_overlap(&a, &a).unwrap());
        }
    }

    #[test]
    fn descriptive_intersection_is_symmetric_and_filtered(pts in points(25), labels in prop::collection::vec(0u32..3, 64), picks in prop::collection::vec(any::<prop::sample::Index>(), 2..10)) {
        if let Some(mesh) = mesh_of(&pts) {
            let n = mesh.triangle_count();
            let phi = DescriptorMap::from_labels(nervetopo::DescriptorDomain::Triangle, (0..n).map(|t| (t, labels[t % labels.len()])));
            let half = picks.len() / 2;
            let a: SimplexSet = picks[..half].iter().map(|i| i.index(n)).collect();
            let b: SimplexSet = picks[half..].iter().map(|i| i.index(n)).collect();
            let ab = desc_intersection(&mesh, &a, &b, &phi).unwrap();
            prop_assert_eq!(&ab, &desc_intersection(&mesh, &b, &a, &phi).unwrap());
            // Brute-force membership per element.
            let label = |t: usize| labels[t % labels.len()];
            let expected: SimplexSet = a.union(&b).iter()
                .filter(|&x| a.iter().any(|y| label(y) == label(x)) && b.iter().any(|y| label(y) == label(x)))
                .collect();
            prop_assert_eq!(ab, expected);
        }
    }

    #[test]
    fn nerve_features_survive_rigid_motion(pts in points(25), theta in 0.0..std::f64::consts::TAU, dx in -20.0..20.0f64, dy in -20.0..20.0f64) {
        if let Some(mesh) = mesh_of(&pts) {
            let (s, c) = theta.sin_cos();
            let moved: Vec<Point2> = mesh.vertices().iter()
                .map(|p| Point2::new(c * p.x - s * p.y + dx, s * p.x + c * p.y + dy))
                .collect();
            let tris: Vec<[usize; 3]> = mesh.triangles().iter().map(|t| t.vertices()).collect();
            let other = TriMesh::new(moved, tris).unwrap();
            let f1: Vec<_> = all_nerves(&mesh).iter().map(|n| nerve_features(&mesh, n).unwrap()).collect();
            let f2: Vec<_> = all_nerves(&other).iter().map(|n| nerve_features(&other, n).unwrap()).collect();
            for (a, b) in f1.iter().zip(&f2) {
                prop_assert_eq!(a.triangle_count, b.triangle_count);
                prop_assert!((a.total_area - b.total_area).abs() <= 1e-9 * a.total_area.max(1.0));
                prop_assert!((a.max_triangle_area - b.max_triangle_area).abs() <= 1e-9 * a.total_area.max(1.0));
                let back_x = c * a.centroid.x - s * a.centroid.y + dx;
                let back_y = s * a.centroid.x + c * a.centroid.y + dy;
                prop_assert!((back_x - b.centroid.x).abs() < 1e-9 && (back_y - b.centroid.y).abs() < 1e-9);
            }
            prop_assert!(shape_compare(&f1, &f2).unwrap() < 1e-9);
        }
    }

    #[test]
    fn shape_compare_is_symmetric(a in points(20), b in points(20)) {
        if let (Some(ma), Some(mb)) = (mesh_of(&a), mesh_of(&b)) {
            let fa: Vec<_> = all_nerves(&ma).iter().map(|n| nerve_features(&ma, n).unwrap()).collect();
            let fb: Vec<_> = all_nerves(&mb).iter().map(|n| nerve_features(&mb, n).unwrap()).collect();
            let d = shape_compare(&fa, &fb).unwrap();
            prop_assert_eq!(d, shape_compare(&fb, &fa).unwrap());
            prop_assert!((0.0..=1.0).contains(&d));
        }
    }

    #[test]
    fn strong_nearness_implies_weaker_relations(pts in points(30), u in any::<prop::sample::Index>(), w in any::<prop::sample::Index>()) {
        if let Some(mesh) = mesh_of(&pts) {
            let phi = DescriptorMap::triangle_geometry(&mesh, 4).unwrap();
            let (a, b) = (nerve_at(&mesh, u.index(mesh.vertex_count())).unwrap(), nerve_at(&mesh, w.index(mesh.vertex_count())).unwrap());
            let rep = relator_check(&mesh, &a.spokes1, &b.spokes1, &phi).unwrap();
            prop_assert!(rep.holds(), "{:?}", rep.violations);
            let sn = strongly_near(&mesh, &a.spokes1, &b.spokes1).unwrap();
            prop_assert_eq!(!common_2_spokes(&mesh, &a, &b).unwrap().is_empty(), sn);
        }
    }
}

#[test]
fn boundary_edge_incidence_is_one() {
    let mesh = common::random_mesh(5, 40);
    let mut counts: BTreeMap<_, usize> = BTreeMap::new();
    let s: SimplexSet = (0..mesh.triangle_count()).step_by(3).collect();
    for t in s.iter() {
        for e in mesh.triangles()[t].edges() {
            *counts.entry(e).or_default() += 1;
        }
    }
    let odd: Vec<_> = counts.into_iter().filter(|&(_, n)| n == 1).map(|(e, _)| e).collect();
    assert_eq!(mesh.boundary_edges(&s).unwrap().into_iter().collect::<Vec<_>>(), odd);
}
