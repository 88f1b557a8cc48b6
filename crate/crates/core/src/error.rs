use std::path::PathBuf;

use thiserror::Error;

use crate::descriptor::Element;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown triangle {0}")]
    UnknownTriangle(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("empty simplex set")]
    EmptySimplexSet,
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("vertices {0} and {1} coincide within tolerance")]
    DuplicateVertex(usize, usize),
    #[error("triangle {0} is degenerate")]
    DegenerateTriangle(usize),
    #[error("insufficient points: {0} distinct")]
    InsufficientPoints(usize),
    #[error("degenerate input: all points collinear")]
    DegenerateInput,
    #[error("empty nerve at vertex {0}")]
    EmptyNerve(usize),
    #[error("triangle {0} passed twice where distinct triangles are required")]
    SameTriangle(usize),
    #[error("nerves belong to different meshes")]
    MeshMismatch,
    #[error("no descriptor defined for {0}")]
    MissingDescriptor(Element),
    #[error("relation `{relation}` needs a {needed} descriptor map")]
    DescriptorDomain {
        relation: &'static str,
        needed: &'static str,
    },
    #[error("relation `{0}` needs a descriptor map")]
    DescriptorRequired(&'static str),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("non-manifold boundary at vertex {0}")]
    NonManifoldBoundary(usize),
    #[error("image too small: {width}x{height}")]
    ImageTooSmall { width: usize, height: usize },
    #[error("invalid image: {0}")]
    InvalidImage(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Decode { path: PathBuf, message: String },
    #[error("mesh schema: {0}")]
    Schema(String),
}
