mod common;

use common::*;
use nervetopo::triangulation::{delaunay, validate_mesh, TriangulationConfig};
use nervetopo::Point2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn square_uses_diagonal_through_smallest_corner() {
    let p = [(0, 0), (1, 0), (1, 1), (0, 1)];
    check_against_oracle(&p).unwrap();
    let all = all_delaunay_triangulations(&p);
    assert_eq!(all.len(), 2);
}

#[test]
fn cocircular_octagon_is_a_fan_from_the_minimum() {
    // Lattice points on the circle of radius 5 around (5, 5).
    let p = [(0, 5), (1, 2), (2, 1), (5, 0), (8, 1), (9, 2), (10, 5), (5, 10)];
    check_against_oracle(&p).unwrap();
    let pts: Vec<Point2> = p.iter().map(|&(x, y)| Point2::new(x as f64, y as f64)).collect();
    let mesh = delaunay(&pts, &TriangulationConfig::default()).unwrap();
    assert!(mesh.triangles().iter().all(|t| t.contains(0)));
}

#[test]
fn collinear_and_grid_cases() {
    check_against_oracle(&[(0, 0), (1, 1), (2, 2), (3, 3)]).unwrap();
    check_against_oracle(&[(0, 0), (1, 0), (2, 0), (1, 1)]).unwrap();
    let grid: Vec<IPt> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
    check_against_oracle(&grid).unwrap();
}

#[test]
fn random_small_sets_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let p = random_grid_points(&mut rng, 10, 7);
        check_against_oracle(&p).unwrap();
    }
}

#[test]
fn insertion_order_does_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let p = random_grid_points(&mut rng, 12, 6);
        if all_collinear(&p) {
            continue;
        }
        let pts: Vec<Point2> = p.iter().map(|&(x, y)| Point2::new(x as f64, y as f64)).collect();
        let mut rev = pts.clone();
        rev.reverse();
        let cfg = TriangulationConfig::default();
        let (a, b) = (delaunay(&pts, &cfg).unwrap(), delaunay(&rev, &cfg).unwrap());
        assert_eq!(coordinate_triangles(&a), coordinate_triangles(&b));
        assert!(validate_mesh(&a).is_valid());
    }
}
