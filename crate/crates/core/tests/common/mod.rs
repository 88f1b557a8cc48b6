#![allow(dead_code)]

use std::collections::BTreeSet;

use nervetopo::image::GrayImage;
use nervetopo::triangulation::{delaunay, TriangulationConfig};
use nervetopo::{Point2, TriMesh};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Delaunay mesh over `n` uniform points in a 100x100 square.
pub fn random_mesh(seed: u64, n: usize) -> TriMesh {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Point2> = (0..n)
        .map(|_| Point2::new(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
        .collect();
    delaunay(&pts, &TriangulationConfig::default()).expect("random points triangulate")
}

/// Random mesh whose triangle count falls in `lo..=hi`.
pub fn random_mesh_sized(seed: u64, lo: usize, hi: usize) -> TriMesh {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    loop {
        let n = rng.gen_range(lo / 2 + 2..=hi / 2 + 2);
        let m = random_mesh(rng.gen(), n);
        if (lo..=hi).contains(&m.triangle_count()) {
            return m;
        }
    }
}

/// White disk of radius `r` centred in a black `size` x `size` image;
/// a pixel is white iff its centre lies in the closed disk.
pub fn disk_image(size: usize, r: f64) -> GrayImage {
    let c = (size as f64 - 1.0) / 2.0;
    GrayImage::from_fn(size, size, |x, y| {
        let (dx, dy) = (x as f64 - c, y as f64 - c);
        if dx * dx + dy * dy <= r * r {
            1.0
        } else {
            0.0
        }
    })
    .unwrap()
}

// Exact integer geometry for the Delaunay oracle.

pub type IPt = (i64, i64);

pub fn iorient(a: IPt, b: IPt, c: IPt) -> i128 {
    let (ax, ay, bx, by, cx, cy) = (
        a.0 as i128, a.1 as i128, b.0 as i128, b.1 as i128, c.0 as i128, c.1 as i128,
    );
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

/// Positive iff `d` is strictly inside the circumcircle of ccw `a, b, c`.
pub fn iincircle(a: IPt, b: IPt, c: IPt, d: IPt) -> i128 {
    let row = |p: IPt| {
        let (x, y) = ((p.0 - d.0) as i128, (p.1 - d.1) as i128);
        (x, y, x * x + y * y)
    };
    let (ax, ay, a2) = row(a);
    let (bx, by, b2) = row(b);
    let (cx, cy, c2) = row(c);
    ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx)
}

fn ccw(t: [usize; 3], p: &[IPt]) -> [usize; 3] {
    if iorient(p[t[0]], p[t[1]], p[t[2]]) < 0 {
        [t[0], t[2], t[1]]
    } else {
        t
    }
}

/// Interiors of two ccw triangles are disjoint iff one of the six edge
/// lines separates them.
fn interiors_disjoint(s: [usize; 3], t: [usize; 3], p: &[IPt]) -> bool {
    let separates = |a: [usize; 3], b: [usize; 3]| {
        (0..3).any(|i| {
            let (u, v) = (p[a[i]], p[a[(i + 1) % 3]]);
            b.iter().all(|&w| iorient(u, v, p[w]) <= 0)
        })
    };
    separates(s, t) || separates(t, s)
}

fn hull_area2(p: &[IPt]) -> i128 {
    let mut pts: Vec<IPt> = p.to_vec();
    pts.sort();
    let mut lower: Vec<IPt> = Vec::new();
    for &q in &pts {
        while lower.len() >= 2 && iorient(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<IPt> = Vec::new();
    for &q in pts.iter().rev() {
        while upper.len() >= 2 && iorient(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    let hull: Vec<IPt> = lower.into_iter().chain(upper).collect();
    let mut twice = 0i128;
    for i in 0..hull.len() {
        let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
        twice += a.0 as i128 * b.1 as i128 - b.0 as i128 * a.1 as i128;
    }
    twice
}

/// Every triangulation of the convex hull of `p` whose triangles all have
/// empty open circumdisks, found by exhaustive search over such triangles.
pub fn all_delaunay_triangulations(p: &[IPt]) -> Vec<BTreeSet<[usize; 3]>> {
    let n = p.len();
    let mut cands = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if iorient(p[i], p[j], p[k]) == 0 {
                    continue;
                }
                let t = ccw([i, j, k], p);
                if (0..n).all(|d| iincircle(p[t[0]], p[t[1]], p[t[2]], p[d]) <= 0) {
                    cands.push(t);
                }
            }
        }
    }
    let target = hull_area2(p);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    search(&cands, 0, 0, target, p, &mut chosen, &mut out);
    out
}

fn search(
    cands: &[[usize; 3]],
    from: usize,
    area: i128,
    target: i128,
    p: &[IPt],
    chosen: &mut Vec<[usize; 3]>,
    out: &mut Vec<BTreeSet<[usize; 3]>>,
) {
    if area == target {
        out.push(chosen.iter().map(|t| sorted(*t)).collect());
        return;
    }
    for i in from..cands.len() {
        let t = cands[i];
        let a = iorient(p[t[0]], p[t[1]], p[t[2]]);
        if area + a > target || !chosen.iter().all(|&s| interiors_disjoint(s, t, p)) {
            continue;
        }
        chosen.push(t);
        search(cands, i + 1, area + a, target, p, chosen, out);
        chosen.pop();
    }
}

pub fn sorted(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

/// The cocircular tie-break: wherever two triangles share an edge and the
/// four corners are cocircular, the shared diagonal must contain the
/// lexicographically smallest of the four points.
pub fn respects_tie_break(tris: &BTreeSet<[usize; 3]>, p: &[IPt]) -> bool {
    let list: Vec<[usize; 3]> = tris.iter().copied().collect();
    for (i, s) in list.iter().enumerate() {
        for t in &list[i + 1..] {
            let shared: Vec<usize> = s.iter().copied().filter(|v| t.contains(v)).collect();
            if shared.len() != 2 {
                continue;
            }
            let c = s.iter().copied().find(|v| !shared.contains(v)).unwrap();
            let d = t.iter().copied().find(|v| !shared.contains(v)).unwrap();
            let tri = ccw([shared[0], shared[1], c], p);
            if iincircle(p[tri[0]], p[tri[1]], p[tri[2]], p[d]) != 0 {
                continue;
            }
            let quad = [shared[0], shared[1], c, d];
            let min = *quad.iter().min_by_key(|&&v| p[v]).unwrap();
            if !shared.contains(&min) {
                return false;
            }
        }
    }
    true
}

/// Triangles of a mesh as sorted vertex triples, keyed by coordinates so
/// meshes over differently ordered inputs can be compared.
pub fn coordinate_triangles(mesh: &TriMesh) -> BTreeSet<[IPt; 3]> {
    mesh.triangles()
        .iter()
        .map(|t| {
            let mut c = t.vertices().map(|v| {
                let q = mesh.vertices()[v];
                (q.x as i64, q.y as i64)
            });
            c.sort_unstable();
            c
        })
        .collect()
}

pub fn oracle_triangles(tris: &BTreeSet<[usize; 3]>, p: &[IPt]) -> BTreeSet<[IPt; 3]> {
    tris.iter()
        .map(|t| {
            let mut c = t.map(|v| p[v]);
            c.sort_unstable();
            c
        })
        .collect()
}

/// Random distinct integer points on a small grid, which makes collinear
/// and cocircular subsets common.
pub fn random_grid_points(rng: &mut ChaCha8Rng, max_n: usize, grid: i64) -> Vec<IPt> {
    let n = rng.gen_range(3..=max_n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < n {
        let q = (rng.gen_range(0..grid), rng.gen_range(0..grid));
        if seen.insert(q) {
            out.push(q);
        }
    }
    out
}

pub fn all_collinear(p: &[IPt]) -> bool {
    p.iter().all(|&c| iorient(p[0], p[1], c) == 0)
}

/// Checks one integer point set against the oracle; `Err` explains a mismatch.
pub fn check_against_oracle(p: &[IPt]) -> Result<(), String> {
    let pts: Vec<Point2> = p.iter().map(|&(x, y)| Point2::new(x as f64, y as f64)).collect();
    let got = delaunay(&pts, &TriangulationConfig::default());
    if all_collinear(p) {
        return match got {
            Err(nervetopo::Error::DegenerateInput) => Ok(()),
            other => Err(format!("{p:?}: expected degenerate input, got {other:?}")),
        };
    }
    let mesh = got.map_err(|e| format!("{p:?}: {e}"))?;
    let all = all_delaunay_triangulations(p);
    let preferred: Vec<_> = all.iter().filter(|t| respects_tie_break(t, p)).collect();
    if preferred.len() != 1 {
        return Err(format!(
            "{p:?}: oracle found {} triangulations, {} preferred",
            all.len(),
            preferred.len()
        ));
    }
    let want = oracle_triangles(preferred[0], p);
    let have = coordinate_triangles(&mesh);
    if want != have {
        return Err(format!("{p:?}: expected {want:?}, got {have:?}"));
    }
    Ok(())
}
