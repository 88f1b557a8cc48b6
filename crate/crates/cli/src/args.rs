use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use nervetopo::pipeline::DEFAULT_KEYPOINTS;
use nervetopo::spokes::SpokeMode;

/// Triangulate point sets and images, extract nerve complexes and k-spokes,
/// check proximity axioms and trace object contours.
#[derive(Debug, Parser)]
#[command(name = "nervetopo", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a Delaunay mesh from a CSV point list or an image's keypoints.
    Triangulate(TriangulateArgs),
    /// List every vertex nerve and the maximal one.
    Nerves(NervesArgs),
    /// Enumerate the k-spokes of one nerve.
    Spokes(SpokesArgs),
    /// Detect the maximal nucleus cluster and its contour.
    Shape(ShapeArgs),
    /// Run the randomized axiom checks for one proximity relation.
    Axioms(AxiomsArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// CSV file of `x,y` points.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// PNG image; its keypoints and corners become the vertices.
    #[arg(long)]
    pub image: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TriangulateArgs {
    #[command(flatten)]
    pub source: Source,
    /// Keypoint budget for image input.
    #[arg(long, default_value_t = DEFAULT_KEYPOINTS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    /// Mesh JSON output; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the selected keypoints as CSV (image input only).
    #[arg(long)]
    pub keypoints: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NervesArgs {
    #[arg(long)]
    pub mesh: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpokesArgs {
    #[arg(long)]
    pub mesh: PathBuf,
    /// Vertex id of the nerve's nucleus; the maximal nerve when omitted.
    #[arg(long)]
    pub nucleus: Option<usize>,
    /// Spoke level.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub level: u64,
    /// `edge` or `vertex` adjacency between consecutive triangles.
    #[arg(long, default_value = "edge", value_parser = parse_mode)]
    pub mode: SpokeMode,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_mode(s: &str) -> Result<SpokeMode, String> {
    s.parse().map_err(|e: nervetopo::Error| e.to_string())
}

#[derive(Debug, Args)]
#[group(id = "shape_source", required = true, multiple = false)]
pub struct ShapeSource {
    #[arg(long)]
    pub image: Option<PathBuf>,
    /// Existing mesh JSON instead of an image.
    #[arg(long)]
    pub mesh: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    #[command(flatten)]
    pub source: ShapeSource,
    #[arg(long, default_value_t = DEFAULT_KEYPOINTS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    /// Trace a cluster around every locally maximal nerve, not only the largest.
    #[arg(long)]
    pub all_clusters: bool,
    /// Cluster and contour report; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Nerve feature list (JSON array).
    #[arg(long)]
    pub features: Option<PathBuf>,
    /// SVG overlay of mesh, cluster support and contour.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Write the mesh used for the run.
    #[arg(long)]
    pub mesh_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AxiomsArgs {
    #[arg(long)]
    pub mesh: PathBuf,
    /// One of near, dnear, sn, snd.
    #[arg(long)]
    pub relation: String,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Overridden by the NERVETOPO_SEED environment variable.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Quantization bins per descriptor channel.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub bins: u32,
    /// Describe triangles by this image's intensity instead of their shape.
    #[arg(long)]
    pub image: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
