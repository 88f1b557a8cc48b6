//! Feature descriptions of mesh elements.
//!
//! A [`DescriptorMap`] assigns each vertex or triangle a feature vector and
//! quantizes it into a [`Descriptor`]; two elements are descriptively equal
//! iff their quantized vectors are identical.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::mesh::{SimplexSet, TriMesh, TriangleId, VertexId};
use crate::predicates;

pub const DEFAULT_BINS: u32 = 8;

/// A ground-set element a description can be attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(VertexId),
    Triangle(TriangleId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "vertex {v}"),
            Element::Triangle(t) => write!(f, "triangle {t}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescriptorDomain {
    Vertex,
    Triangle,
}

impl DescriptorDomain {
    pub fn element(self, id: usize) -> Element {
        match self {
            DescriptorDomain::Vertex => Element::Vertex(id),
            DescriptorDomain::Triangle => Element::Triangle(id),
        }
    }
}

/// Raw per-channel features, each expected in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureVector(pub Vec<f64>);

/// Quantized feature vector; compared exactly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Descriptor(pub Vec<u32>);

#[derive(Clone, Debug)]
pub struct DescriptorMap {
    domain: DescriptorDomain,
    bins: u32,
    dimension: usize,
    table: BTreeMap<usize, Descriptor>,
}

impl DescriptorMap {
    /// Quantizes `features` (keyed by element id) into `bins` per channel.
    /// Values are clamped to `[0, 1]` before binning.
    pub fn new(
        domain: DescriptorDomain,
        bins: u32,
        features: impl IntoIterator<Item = (usize, FeatureVector)>,
    ) -> Result<Self> {
        if bins == 0 {
            return Err(Error::InvalidArgument("quantization bins must be positive".into()));
        }
        let mut dimension = None;
        let mut table = BTreeMap::new();
        for (id, FeatureVector(values)) in features {
            if *dimension.get_or_insert(values.len()) != values.len() {
                return Err(Error::InvalidArgument(format!(
                    "feature vector for {} has dimension {}",
                    domain.element(id),
                    values.len()
                )));
            }
            if values.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "non-finite feature for {}",
                    domain.element(id)
                )));
            }
            table.insert(id, quantize(&values, bins));
        }
        Ok(Self {
            domain,
            bins,
            dimension: dimension.unwrap_or(0),
            table,
        })
    }

    /// Wraps already-quantized labels, one channel per element.
    pub fn from_labels(
        domain: DescriptorDomain,
        labels: impl IntoIterator<Item = (usize, u32)>,
    ) -> Self {
        let table: BTreeMap<usize, Descriptor> = labels
            .into_iter()
            .map(|(id, label)| (id, Descriptor(vec![label])))
            .collect();
        let bins = table.values().map(|d| d.0[0] + 1).max().unwrap_or(1);
        Self {
            domain,
            bins,
            dimension: 1,
            table,
        }
    }

    /// Shape features of every triangle: relative area, smallest angle and
    /// edge-length ratio. Needs no image.
    pub fn triangle_geometry(mesh: &TriMesh, bins: u32) -> Result<Self> {
        let max_area = (0..mesh.triangle_count())
            .map(|t| mesh.triangle_area(t))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        let mut features = Vec::with_capacity(mesh.triangle_count());
        for t in 0..mesh.triangle_count() {
            let [p, q, r] = mesh.corners(t)?;
            let sides = [q.distance(r), r.distance(p), p.distance(q)];
            let longest = sides.iter().copied().fold(0.0, f64::max);
            let shortest = sides.iter().copied().fold(f64::INFINITY, f64::min);
            let area = mesh.triangle_area(t)?;
            let min_angle = min_angle([p, q, r]);
            features.push((
                t,
                FeatureVector(vec![
                    area / max_area,
                    min_angle / (std::f64::consts::PI / 3.0),
                    shortest / longest,
                ]),
            ));
        }
        Self::new(DescriptorDomain::Triangle, bins, features)
    }

    /// Intensity sampled at each triangle centroid (nearest pixel).
    pub fn triangle_intensity(
        mesh: &TriMesh,
        image: &crate::image::GrayImage,
        bins: u32,
    ) -> Result<Self> {
        let mut features = Vec::with_capacity(mesh.triangle_count());
        for t in 0..mesh.triangle_count() {
            let c = mesh.triangle_centroid(t)?;
            features.push((t, FeatureVector(vec![image.sample_nearest(c)])));
        }
        Self::new(DescriptorDomain::Triangle, bins, features)
    }

    pub fn domain(&self) -> DescriptorDomain {
        self.domain
    }

    pub fn bins(&self) -> u32 {
        self.bins
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn get(&self, element: Element) -> Result<&Descriptor> {
        let id = match (self.domain, element) {
            (DescriptorDomain::Vertex, Element::Vertex(v)) => v,
            (DescriptorDomain::Triangle, Element::Triangle(t)) => t,
            _ => return Err(Error::MissingDescriptor(element)),
        };
        self.table.get(&id).ok_or(Error::MissingDescriptor(element))
    }

    /// Elements of `s` in this map's domain: its triangles, or the vertices
    /// of its closed triangles.
    pub fn elements_of(&self, mesh: &TriMesh, s: &SimplexSet) -> Result<Vec<Element>> {
        match self.domain {
            DescriptorDomain::Triangle => {
                mesh.check_set(s)?;
                Ok(s.iter().map(Element::Triangle).collect())
            }
            DescriptorDomain::Vertex => {
                if s.is_empty() {
                    return Ok(Vec::new());
                }
                Ok(mesh
                    .closure_vertices(s)?
                    .into_iter()
                    .map(Element::Vertex)
                    .collect())
            }
        }
    }

    /// `Φ(A)`: the set of descriptions of the given elements.
    pub fn describe(&self, elements: &[Element]) -> Result<BTreeSet<&Descriptor>> {
        elements.iter().map(|&e| self.get(e)).collect()
    }

    /// `Φ(A)` for a region.
    pub fn describe_set(&self, mesh: &TriMesh, s: &SimplexSet) -> Result<BTreeSet<&Descriptor>> {
        self.describe(&self.elements_of(mesh, s)?)
    }
}

fn quantize(values: &[f64], bins: u32) -> Descriptor {
    Descriptor(
        values
            .iter()
            .map(|v| ((v.clamp(0.0, 1.0) * bins as f64) as u32).min(bins - 1))
            .collect(),
    )
}

fn min_angle(p: [crate::mesh::Point2; 3]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..3 {
        let (a, b, c) = (p[i], p[(i + 1) % 3], p[(i + 2) % 3]);
        let (ux, uy) = (b.x - a.x, b.y - a.y);
        let (vx, vy) = (c.x - a.x, c.y - a.y);
        let cross = predicates::orient(a, b, c).abs();
        best = best.min(cross.atan2(ux * vx + uy * vy));
    }
    best
}
