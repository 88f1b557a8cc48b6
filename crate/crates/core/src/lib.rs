//! Planar triangulation, proximal nerve complexes and k-spokes.
//!
//! The crate builds a [`TriMesh`] over a point set or an image's keypoints,
//! extracts vertex-star nerves and their k-spokes, evaluates spatial, strong
//! and descriptive proximity relations between triangle-set regions, and
//! traces object contours from maximal nucleus clusters.
//!
//! Proximity relations are interchangeable strategies behind the
//! [`proximity::Proximity`] trait and are looked up by name through a
//! [`proximity::RelationRegistry`].

pub mod descriptor;
pub mod error;
pub mod image;
pub mod io;
pub mod mesh;
pub mod nerve;
pub mod pipeline;
pub mod predicates;
pub mod proximity;
pub mod shape;
pub mod spokes;
pub mod svg;
pub mod triangulation;

pub use descriptor::{Descriptor, DescriptorDomain, DescriptorMap, Element, FeatureVector};
pub use error::{Error, Result};
pub use image::{GradientField, GrayImage, Keypoint};
pub use mesh::{Edge, Point2, SimplexSet, TriMesh, Triangle, TriangleId, VertexId};
pub use nerve::{ClosureGroup, ClosureNerveFamily, MultiNerveReport, NerveComplex};
pub use proximity::{Proximity, ProximitySpace, RelationRegistry, Relator};
pub use shape::{Edgelet, MncCluster, NerveFeatures};
pub use spokes::{SpokeChain, SpokeMode};
pub use triangulation::{TriangulationConfig, ValidationReport};
