//! Exact orientation and incircle tests.
//!
//! Both wrap the adaptive-precision predicates of the `robust` crate, so the
//! sign of every result is exact for any pair of finite `f64` inputs.
//! [`in_circumcircle`] additionally resolves cocircular quadruples by a
//! symbolic perturbation that lowers each point's lifted height by
//! `eps^(rank + 1)`, where rank is the point's lexicographic `(x, y)` order.
//! The lexicographically smallest point therefore dominates every tie, which
//! makes a cocircular polygon triangulate as a fan from its smallest vertex.

use std::cmp::Ordering;

use robust::Coord;

use crate::mesh::Point2;

fn coord(p: Point2) -> Coord<f64> {
    Coord { x: p.x, y: p.y }
}

/// Twice the signed area of `abc`; positive iff counterclockwise.
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    robust::orient2d(coord(a), coord(b), coord(c))
}

/// Positive iff `d` lies strictly inside the circle through the
/// counterclockwise triple `abc`; zero when cocircular.
pub fn incircle(a: Point2, b: Point2, c: Point2, d: Point2) -> f64 {
    robust::incircle(coord(a), coord(b), coord(c), coord(d))
}

pub fn lex_cmp(p: Point2, q: Point2) -> Ordering {
    p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y))
}

/// Perturbed incircle: true iff `d` is inside the circumcircle of the
/// counterclockwise triangle `abc`, with exact ties broken symbolically.
pub fn in_circumcircle(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let det = incircle(a, b, c, d);
    if det != 0.0 {
        return det > 0.0;
    }
    // Coefficient of each point's height perturbation in the 4x4 determinant.
    let mut terms = [
        (a, -orient(d, b, c)),
        (b, -orient(a, d, c)),
        (c, -orient(a, b, d)),
        (d, orient(a, b, c)),
    ];
    terms.sort_by(|l, r| lex_cmp(l.0, r.0));
    terms
        .iter()
        .map(|&(_, coeff)| coeff)
        .find(|&coeff| coeff != 0.0)
        .is_some_and(|coeff| coeff > 0.0)
}
