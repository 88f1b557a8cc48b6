//! File formats: mesh JSON, point and keypoint CSV, JSON reports.
//!
//! Report floats are written with exactly six decimals so repeated runs
//! produce identical bytes. Mesh coordinates keep full precision so a mesh
//! survives a write/read round trip unchanged.

use std::fs;
use std::path::Path;

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::image::Keypoint;
use crate::mesh::{Point2, TriMesh, VertexId};

/// A float that serializes as a JSON number with six decimals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fixed6(pub f64);

impl Fixed6 {
    pub fn text(self) -> String {
        format_fixed6(self.0)
    }
}

/// Six-decimal text of `v`, with negative zero printed as zero.
pub fn format_fixed6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

impl Serialize for Fixed6 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(self.text()).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

pub fn fixed6<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    Fixed6(*v).serialize(s)
}

pub fn fixed6_point<S: Serializer>(p: &Point2, s: S) -> std::result::Result<S::Ok, S::Error> {
    [Fixed6(p.x), Fixed6(p.y)].serialize(s)
}

#[derive(Serialize)]
struct MeshJson<'a> {
    vertices: Vec<[f64; 2]>,
    triangles: &'a [[VertexId; 3]],
}

pub fn mesh_to_json(mesh: &TriMesh) -> String {
    let triangles: Vec<[VertexId; 3]> = mesh.triangles().iter().map(|t| t.vertices()).collect();
    let doc = MeshJson {
        vertices: mesh.vertices().iter().map(|p| [p.x, p.y]).collect(),
        triangles: &triangles,
    };
    let mut s = serde_json::to_string(&doc).expect("mesh serializes");
    s.push('\n');
    s
}

/// Parses mesh JSON, naming the first field that breaks the schema.
/// Unknown keys are ignored. The parsed mesh goes through full validation.
pub fn mesh_from_json(text: &str) -> Result<TriMesh> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| Error::Schema(format!("not valid JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Schema("top level must be an object".into()))?;
    let field = |name: &str| {
        obj.get(name)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema(format!("`{name}` must be an array")))
    };
    let mut vertices = Vec::new();
    for (i, v) in field("vertices")?.iter().enumerate() {
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Schema(format!("vertices[{i}] must be an [x, y] pair")))?;
        let mut xy = [0.0; 2];
        for (j, c) in pair.iter().enumerate() {
            xy[j] = c
                .as_f64()
                .ok_or_else(|| Error::Schema(format!("vertices[{i}][{j}] must be a number")))?;
        }
        vertices.push(Point2::new(xy[0], xy[1]));
    }
    let mut triangles = Vec::new();
    for (i, t) in field("triangles")?.iter().enumerate() {
        let triple = t
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::Schema(format!("triangles[{i}] must be an [a, b, c] triple")))?;
        let mut ids = [0; 3];
        for (j, c) in triple.iter().enumerate() {
            ids[j] = c.as_u64().ok_or_else(|| {
                Error::Schema(format!("triangles[{i}][{j}] must be a nonnegative integer"))
            })? as VertexId;
        }
        triangles.push(ids);
    }
    TriMesh::new(vertices, triangles)
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_mesh(path: &Path) -> Result<TriMesh> {
    mesh_from_json(&read_text(path)?)
}

pub fn write_mesh(path: &Path, mesh: &TriMesh) -> Result<()> {
    write_text(path, &mesh_to_json(mesh))
}

/// `x,y` records, one point per line; a non-numeric first line is taken
/// as a header.
pub fn points_from_csv(text: &str) -> std::result::Result<Vec<Point2>, String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        let line = rec.position().map_or(i + 1, |p| p.line() as usize);
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != 2 {
            return Err(format!("line {line}: expected 2 fields `x,y`, found {}", rec.len()));
        }
        match (rec[0].parse::<f64>(), rec[1].parse::<f64>()) {
            (Ok(x), Ok(y)) => out.push(Point2::new(x, y)),
            _ if i == 0 => continue,
            _ => return Err(format!("line {line}: `{},{}` is not a pair of numbers", &rec[0], &rec[1])),
        }
    }
    Ok(out)
}

pub fn read_points(path: &Path) -> Result<Vec<Point2>> {
    points_from_csv(&read_text(path)?).map_err(|message| Error::Decode {
        path: path.to_path_buf(),
        message,
    })
}

/// `x,y,magnitude,orientation` with a header line.
pub fn keypoints_to_csv(keypoints: &[Keypoint]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "y", "magnitude", "orientation"])
        .expect("in-memory write");
    for kp in keypoints {
        w.write_record([
            format_fixed6(kp.position.x),
            format_fixed6(kp.position.y),
            format_fixed6(kp.magnitude),
            format_fixed6(kp.orientation),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    write_text(path, &to_json(value))
}
