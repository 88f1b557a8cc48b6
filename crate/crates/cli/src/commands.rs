use std::path::Path;

use nervetopo::image::{load_grayscale, select_keypoints};
use nervetopo::io::{self, keypoints_to_csv, mesh_to_json, to_json};
use nervetopo::nerve::{all_nerves, maximal_nerve, nerve_at, nerve_count_lower_bound, MultiNerveReport, NerveReport};
use nervetopo::pipeline::{shape_from_image, shape_from_mesh, ShapeConfig};
use nervetopo::proximity::{axiom_suite, ProximitySpace, RelationRegistry};
use nervetopo::spokes::{k_spokes, spoke_union, SpokeReport};
use nervetopo::svg::overlay;
use nervetopo::triangulation::{delaunay, validate_mesh, TriangulationConfig};
use nervetopo::{DescriptorMap, Error, TriMesh, TriangleId};
use serde::Serialize;

use crate::args::{AxiomsArgs, NervesArgs, ShapeArgs, SpokesArgs, TriangulateArgs};

pub const SEED_ENV: &str = "NERVETOPO_SEED";

#[derive(Debug)]
pub enum Failure {
    /// Bad flags or unreadable / malformed input.
    Input(String),
    /// A result broke one of the library's own guarantees.
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Internal(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonManifoldBoundary(_)
            | Error::MeshMismatch
            | Error::SameTriangle(_)
            | Error::MissingDescriptor(_)
            | Error::EmptySimplexSet => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn emit(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => Ok(io::write_text(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn checked_mesh_json(mesh: &TriMesh) -> Result<String, Failure> {
    let report = validate_mesh(mesh);
    if !report.is_valid() {
        return Err(Failure::Internal(format!(
            "produced an invalid mesh: {}",
            report.findings().join("; ")
        )));
    }
    Ok(mesh_to_json(mesh))
}

fn keypoint_budget(k: u64) -> Result<usize, Failure> {
    usize::try_from(k).map_err(|_| Failure::Input(format!("--k {k} is too large")))
}

pub fn triangulate(a: &TriangulateArgs) -> Outcome {
    let cfg = TriangulationConfig::default();
    let mesh = if let Some(path) = &a.source.input {
        if a.keypoints.is_some() {
            return Err(Failure::Input("--keypoints needs --image input".into()));
        }
        delaunay(&io::read_points(path)?, &cfg)?
    } else {
        let path = a.source.image.as_ref().expect("clap enforces one source");
        let img = load_grayscale(path)?;
        let k = keypoint_budget(a.k)?;
        if k < 3 {
            return Err(Error::InsufficientPoints(k).into());
        }
        let kps = select_keypoints(&img, k)?;
        if let Some(out) = &a.keypoints {
            io::write_text(out, &keypoints_to_csv(&kps))?;
        }
        let mut pts = img.corners().to_vec();
        pts.extend(kps.iter().map(|kp| kp.position));
        delaunay(&pts, &cfg)?
    };
    emit(a.out.as_deref(), &checked_mesh_json(&mesh)?)
}

#[derive(Serialize)]
struct NervesReport {
    maximal: NerveReport,
    nerves: Vec<NerveReport>,
    multi_nerve: MultiNerveReport,
}

pub fn nerves(a: &NervesArgs) -> Outcome {
    let mesh = io::read_mesh(&a.mesh)?;
    let multi = nerve_count_lower_bound(&mesh);
    if !multi.passed {
        return Err(Failure::Internal(multi.failures.join("; ")));
    }
    let report = NervesReport {
        maximal: maximal_nerve(&mesh)?.report(),
        nerves: all_nerves(&mesh).iter().map(|n| n.report()).collect(),
        multi_nerve: multi,
    };
    emit(a.out.as_deref(), &to_json(&report))
}

#[derive(Serialize)]
struct SpokesOutput {
    #[serde(flatten)]
    report: SpokeReport,
    /// Every triangle on a chain of level at most k.
    union: Vec<TriangleId>,
}

pub fn spokes(a: &SpokesArgs) -> Outcome {
    let mesh = io::read_mesh(&a.mesh)?;
    let nerve = match a.nucleus {
        Some(v) => nerve_at(&mesh, v)?,
        None => maximal_nerve(&mesh)?,
    };
    let k = usize::try_from(a.level).map_err(|_| Failure::Input("--level is too large".into()))?;
    let chains = k_spokes(&mesh, &nerve, k, a.mode)?;
    let out = SpokesOutput {
        report: SpokeReport::new(&nerve, k, a.mode, &chains),
        union: spoke_union(&mesh, &nerve, k, a.mode)?.to_vec(),
    };
    emit(a.out.as_deref(), &to_json(&out))
}

pub fn shape(a: &ShapeArgs) -> Outcome {
    let cfg = ShapeConfig {
        keypoints: keypoint_budget(a.k)?,
        all_clusters: a.all_clusters,
        ..ShapeConfig::default()
    };
    let run = match (&a.source.image, &a.source.mesh) {
        (Some(img), _) => shape_from_image(&load_grayscale(img)?, &cfg)?,
        (None, Some(mesh)) => shape_from_mesh(io::read_mesh(mesh)?, &cfg)?,
        (None, None) => unreachable!("clap enforces one source"),
    };
    if let Some(path) = &a.mesh_out {
        io::write_text(path, &checked_mesh_json(&run.mesh)?)?;
    }
    if let Some(path) = &a.features {
        io::write_json(path, &run.features())?;
    }
    if let Some(path) = &a.svg {
        let first = run.shapes.first().map(|s| &s.edgelet);
        let mut svg_edgelet = first.cloned();
        if let Some(e) = svg_edgelet.as_mut() {
            for s in &run.shapes[1..] {
                e.loops.extend(s.edgelet.loops.iter().cloned());
            }
        }
        io::write_text(path, &overlay(&run.mesh, &run.support(), svg_edgelet.as_ref())?)?;
    }
    emit(a.out.as_deref(), &to_json(&run.report()?))
}

pub fn axioms(a: &AxiomsArgs, env_seed: Option<String>) -> Outcome {
    let seed = match env_seed {
        Some(s) => s
            .trim()
            .parse::<u64>()
            .map_err(|_| Failure::Input(format!("{SEED_ENV}=`{s}` is not a nonnegative integer")))?,
        None => a.seed,
    };
    let relation = RelationRegistry::with_builtins().construct(&a.relation)?;
    let mesh = io::read_mesh(&a.mesh)?;
    let phi = match &a.image {
        Some(path) => DescriptorMap::triangle_intensity(&mesh, &load_grayscale(path)?, a.bins)?,
        None => DescriptorMap::triangle_geometry(&mesh, a.bins)?,
    };
    let trials = usize::try_from(a.trials).map_err(|_| Failure::Input("--trials is too large".into()))?;
    let space = ProximitySpace::with_descriptors(&mesh, &phi);
    let report = axiom_suite(&space, relation.as_ref(), trials, seed)?;
    emit(a.out.as_deref(), &to_json(&report))?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Internal(format!(
            "relation `{}` violated {} axiom instance(s)",
            report.relation,
            report.violations.len()
        )))
    }
}
