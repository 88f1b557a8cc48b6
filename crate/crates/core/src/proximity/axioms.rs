//! Randomized axiom conformance checks.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::descriptor::Element;
use crate::error::{Error, Result};
use crate::mesh::{SimplexSet, TriMesh};

use super::relations::{descriptive_meet, Proximity};
use super::ProximitySpace;

/// The kinds of axiom instances the harness checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomSlot {
    Empty,
    Symmetry,
    Intersection,
    Union,
    Lodato,
    Interior,
    PointInterior,
    PointPoint,
}

impl AxiomSlot {
    /// Axiom id for a relation of the given kind, or `None` when the slot
    /// does not apply to it.
    pub fn label(self, strong: bool, descriptive: bool) -> Option<&'static str> {
        use AxiomSlot::*;
        let ids: [&'static str; 8] = match (strong, descriptive) {
            (false, false) => ["P1", "P2", "P3", "P4", "P5", "", "", ""],
            (false, true) => ["dP0", "dP1", "dP2", "dP3", "dP4", "", "", ""],
            (true, false) => ["snN0", "snN1", "snN2", "snN3", "", "snN4", "snN5", "snN6"],
            (true, true) => ["dsnN0", "dsnN1", "dsnN2", "dsnN3", "", "dsnN4", "dsnN5", "dsnN6"],
        };
        let id = ids[match self {
            Empty => 0,
            Symmetry => 1,
            Intersection => 2,
            Union => 3,
            Lodato => 4,
            Interior => 5,
            PointInterior => 6,
            PointPoint => 7,
        }];
        (!id.is_empty()).then_some(id)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConformanceReport {
    pub relation: String,
    pub trials: usize,
    pub violations: Vec<Violation>,
}

impl ConformanceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, axiom: &str) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }
}

const MAX_RANDOM_SET: usize = 6;
const MAX_BLOB: usize = 12;
const POINT_SAMPLES: usize = 4;

/// Runs `trials` randomized rounds of every applicable axiom for `relation`.
///
/// Each round draws nonempty regions `A`, `B`, `C`, `D` (random subsets,
/// vertex-connected blobs or vertex stars) and checks one instance of each
/// axiom on them. Identical seeds give identical reports.
pub fn axiom_suite(
    space: &ProximitySpace<'_>,
    relation: &dyn Proximity,
    trials: usize,
    seed: u64,
) -> Result<ConformanceReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if space.mesh.triangle_count() == 0 {
        return Err(Error::EmptySimplexSet);
    }
    let mut h = Harness {
        space,
        r: relation,
        rng: ChaCha8Rng::seed_from_u64(seed),
        all: space.mesh.all_triangles(),
        ground: relation.elements(space, &space.mesh.all_triangles())?,
        violations: Vec::new(),
    };
    for _ in 0..trials {
        h.trial()?;
    }
    Ok(ConformanceReport {
        relation: relation.name().to_string(),
        trials,
        violations: h.violations,
    })
}

struct Harness<'s, 'a> {
    space: &'s ProximitySpace<'a>,
    r: &'s dyn Proximity,
    rng: ChaCha8Rng,
    all: SimplexSet,
    ground: Vec<Element>,
    violations: Vec<Violation>,
}

fn ids(s: &SimplexSet) -> Vec<usize> {
    s.to_vec()
}

impl Harness<'_, '_> {
    fn mesh(&self) -> &TriMesh {
        self.space.mesh
    }

    fn rel(&self, a: &SimplexSet, b: &SimplexSet) -> Result<bool> {
        self.r.relate(self.space, a, b)
    }

    fn fail(&mut self, slot: AxiomSlot, witness: Value) {
        let label = slot
            .label(self.r.strong(), self.r.descriptive())
            .expect("checks only run for applicable slots");
        self.violations.push(Violation {
            axiom: label.to_string(),
            witness,
        });
    }

    fn trial(&mut self) -> Result<()> {
        let a = self.region();
        let b = self.region();
        let c = self.region();
        let d = self.region();
        self.check_empty(&a)?;
        self.check_symmetry(&a, &b)?;
        self.check_intersection(&a, &b)?;
        if self.r.strong() {
            self.check_strong_union(&a, [&b, &c, &d])?;
            self.check_interior(&a, &b)?;
            self.check_point_interior(&a)?;
            self.check_point_point(&a, &b)?;
        } else {
            self.check_union(&a, &b, &c)?;
            self.check_lodato(&a, &b, &c)?;
            let around = self.vertex_neighbourhood(&b);
            self.check_lodato(&a, &b, &around)?;
        }
        Ok(())
    }

    fn region(&mut self) -> SimplexSet {
        let n = self.mesh().triangle_count();
        match self.rng.gen_range(0..3) {
            0 => {
                let size = self.rng.gen_range(1..=n.min(MAX_RANDOM_SET));
                sample(&mut self.rng, n, size).into_iter().collect()
            }
            1 => {
                let size = self.rng.gen_range(1..=n.min(MAX_BLOB));
                self.blob(size)
            }
            _ => {
                let v = self.rng.gen_range(0..self.mesh().vertex_count());
                let star: SimplexSet = self.mesh().star(v).unwrap_or(&[]).iter().copied().collect();
                if star.is_empty() {
                    SimplexSet::singleton(self.rng.gen_range(0..n))
                } else {
                    star
                }
            }
        }
    }

    /// Random vertex-connected region grown from a random seed triangle.
    fn blob(&mut self, size: usize) -> SimplexSet {
        let n = self.mesh().triangle_count();
        let mut out = SimplexSet::singleton(self.rng.gen_range(0..n));
        let mut frontier: Vec<usize> = Vec::new();
        let mut last = out.first().expect("seeded");
        while out.len() < size {
            frontier.extend(
                self.mesh()
                    .vertex_neighbors(last)
                    .unwrap_or_default()
                    .into_iter()
                    .filter(|&u| !out.contains(u)),
            );
            frontier.retain(|&u| !out.contains(u));
            if frontier.is_empty() {
                break;
            }
            let pick = frontier.swap_remove(self.rng.gen_range(0..frontier.len()));
            out.insert(pick);
            last = pick;
        }
        out
    }

    fn vertex_neighbourhood(&self, b: &SimplexSet) -> SimplexSet {
        let mut out = b.clone();
        for t in b.iter() {
            out.extend(self.mesh().vertex_neighbors(t).unwrap_or_default());
        }
        out
    }

    fn closed_meet(&self, a: &SimplexSet, b: &SimplexSet) -> Result<bool> {
        let va = self.mesh().closure_vertices(a)?;
        Ok(self.mesh().closure_vertices(b)?.iter().any(|v| va.contains(v)))
    }

    /// `A ∩ B ≠ ∅` for spatial relations, `A ⋒ B ≠ ∅` for descriptive ones.
    fn meet(&self, a: &SimplexSet, b: &SimplexSet) -> Result<bool> {
        if self.r.descriptive() {
            Ok(!descriptive_meet(self.space, a, b)?.is_empty())
        } else {
            self.closed_meet(a, b)
        }
    }

    fn check_empty(&mut self, a: &SimplexSet) -> Result<()> {
        let empty = SimplexSet::new();
        if self.rel(&empty, a)? || self.rel(a, &empty)? {
            self.fail(AxiomSlot::Empty, json!({"A": [], "B": ids(a)}));
        }
        if self.r.strong() && !self.rel(&self.all.clone(), a)? {
            self.fail(AxiomSlot::Empty, json!({"A": "X", "B": ids(a)}));
        }
        Ok(())
    }

    fn check_symmetry(&mut self, a: &SimplexSet, b: &SimplexSet) -> Result<()> {
        let (ab, ba) = (self.rel(a, b)?, self.rel(b, a)?);
        if ab != ba {
            self.fail(
                AxiomSlot::Symmetry,
                json!({"A": ids(a), "B": ids(b), "AB": ab, "BA": ba}),
            );
        }
        Ok(())
    }

    fn check_intersection(&mut self, a: &SimplexSet, b: &SimplexSet) -> Result<()> {
        let (meet, related) = (self.meet(a, b)?, self.rel(a, b)?);
        let broken = if self.r.strong() {
            related && !meet
        } else {
            meet && !related
        };
        if broken {
            self.fail(
                AxiomSlot::Intersection,
                json!({"A": ids(a), "B": ids(b), "meet": meet, "related": related}),
            );
        }
        Ok(())
    }

    fn check_union(&mut self, a: &SimplexSet, b: &SimplexSet, c: &SimplexSet) -> Result<()> {
        let whole = self.rel(a, &b.union(c))?;
        let parts = self.rel(a, b)? || self.rel(a, c)?;
        if whole != parts {
            self.fail(
                AxiomSlot::Union,
                json!({"A": ids(a), "B": ids(b), "C": ids(c), "union": whole, "parts": parts}),
            );
        }
        Ok(())
    }

    /// Every member of a triangle-set family has nonempty interior, so
    /// relating to any member must carry over to the union.
    fn check_strong_union(&mut self, a: &SimplexSet, family: [&SimplexSet; 3]) -> Result<()> {
        let mut union = SimplexSet::new();
        for m in family {
            union.extend(m.iter());
        }
        let whole = self.rel(a, &union)?;
        for (i, m) in family.iter().enumerate() {
            if self.rel(a, m)? && !whole {
                self.fail(
                    AxiomSlot::Union,
                    json!({
                        "A": ids(a),
                        "family": family.iter().map(|s| ids(s)).collect::<Vec<_>>(),
                        "member": i,
                    }),
                );
                break;
            }
        }
        Ok(())
    }

    fn check_lodato(&mut self, a: &SimplexSet, b: &SimplexSet, c: &SimplexSet) -> Result<()> {
        if !self.rel(a, b)? {
            return Ok(());
        }
        for x in self.r.elements(self.space, b)? {
            if !self.r.relate_element(self.space, x, c)? {
                return Ok(());
            }
        }
        if !self.rel(a, c)? {
            self.fail(
                AxiomSlot::Lodato,
                json!({"A": ids(a), "B": ids(b), "C": ids(c)}),
            );
        }
        Ok(())
    }

    /// Interior meet computed from the mesh: shared open triangles,
    /// interior edges or interior vertices; or, descriptively, a shared
    /// description among interior triangles.
    fn interiors_meet(&self, a: &SimplexSet, b: &SimplexSet) -> Result<bool> {
        let mesh = self.mesh();
        if self.r.descriptive() {
            return Ok(!descriptive_meet(self.space, a, b)?.is_empty());
        }
        if !a.is_disjoint(b) {
            return Ok(true);
        }
        let ea = mesh.interior_edges(a)?;
        if mesh.interior_edges(b)?.iter().any(|e| ea.contains(e)) {
            return Ok(true);
        }
        let va = mesh.interior_vertices(a)?;
        Ok(mesh.interior_vertices(b)?.iter().any(|v| va.contains(v)))
    }

    fn check_interior(&mut self, a: &SimplexSet, b: &SimplexSet) -> Result<()> {
        if self.interiors_meet(a, b)? && !self.rel(a, b)? {
            self.fail(AxiomSlot::Interior, json!({"A": ids(a), "B": ids(b)}));
        }
        Ok(())
    }

    fn check_point_interior(&mut self, a: &SimplexSet) -> Result<()> {
        let inner = self.r.interior_elements(self.space, a)?;
        let mut points: Vec<Element> = Vec::new();
        for _ in 0..POINT_SAMPLES {
            if !inner.is_empty() {
                points.push(inner[self.rng.gen_range(0..inner.len())]);
            }
            points.push(self.ground[self.rng.gen_range(0..self.ground.len())]);
        }
        let described: BTreeSet<_> = match self.space.phi {
            Some(phi) if self.r.descriptive() => phi.describe(&inner)?.into_iter().cloned().collect(),
            _ => BTreeSet::new(),
        };
        for x in points {
            let premise = match self.space.phi {
                Some(phi) if self.r.descriptive() => described.contains(phi.get(x)?),
                _ => inner.contains(&x),
            };
            if premise && !self.r.relate_element(self.space, x, a)? {
                self.fail(
                    AxiomSlot::PointInterior,
                    json!({"point": x.to_string(), "A": ids(a)}),
                );
            }
        }
        Ok(())
    }

    fn check_point_point(&mut self, a: &SimplexSet, b: &SimplexSet) -> Result<()> {
        let mut pool = self.r.elements(self.space, a)?;
        pool.extend(self.r.elements(self.space, b)?);
        for _ in 0..POINT_SAMPLES {
            let x = pool[self.rng.gen_range(0..pool.len())];
            let y = if self.rng.gen_bool(0.25) {
                x
            } else {
                pool[self.rng.gen_range(0..pool.len())]
            };
            let expected = match self.space.phi {
                Some(phi) if self.r.descriptive() => phi.get(x)? == phi.get(y)?,
                _ => x == y,
            };
            if self.r.relate_elements(self.space, x, y)? != expected {
                self.fail(
                    AxiomSlot::PointPoint,
                    json!({"x": x.to_string(), "y": y.to_string(), "expected": expected}),
                );
            }
        }
        Ok(())
    }
}
