//! End-to-end shape detection: image or mesh in, clusters, contours and
//! nerve features out.

use serde::Serialize;

use crate::error::Result;
use crate::image::{select_keypoints, GrayImage, Keypoint};
use crate::mesh::{SimplexSet, TriMesh, TriangleId, VertexId};
use crate::shape::{all_clusters, edgelet, mnc_cluster, nerve_features, Edgelet, MncCluster, NerveFeatures};
use crate::triangulation::{delaunay, TriangulationConfig};

pub const DEFAULT_KEYPOINTS: usize = 1000;

#[derive(Clone, Debug)]
pub struct ShapeConfig {
    pub keypoints: usize,
    /// Trace every cluster instead of only the one around the maximal nerve.
    pub all_clusters: bool,
    pub triangulation: TriangulationConfig,
}

impl Default for ShapeConfig {
    fn default() -> Self {
        Self {
            keypoints: DEFAULT_KEYPOINTS,
            all_clusters: false,
            triangulation: TriangulationConfig::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClusterShape {
    pub cluster: MncCluster,
    pub edgelet: Edgelet,
    pub features: Vec<NerveFeatures>,
}

#[derive(Clone, Debug)]
pub struct ShapeRun {
    pub mesh: TriMesh,
    pub keypoints: Vec<Keypoint>,
    pub shapes: Vec<ClusterShape>,
}

impl ShapeRun {
    /// Union of every traced cluster's support.
    pub fn support(&self) -> SimplexSet {
        let mut s = SimplexSet::new();
        for c in &self.shapes {
            s.extend(c.cluster.support.iter());
        }
        s
    }

    /// Features of every cluster member, cluster by cluster.
    pub fn features(&self) -> Vec<NerveFeatures> {
        self.shapes.iter().flat_map(|c| c.features.iter().cloned()).collect()
    }

    pub fn report(&self) -> Result<ShapeReport> {
        let clusters = self
            .shapes
            .iter()
            .map(|c| {
                Ok(ClusterReport {
                    core: c.cluster.core.nucleus,
                    core_spokes: c.cluster.core.spoke_count(),
                    members: c.cluster.nuclei(),
                    support: c.cluster.support.to_vec(),
                    euler_characteristic: self.mesh.euler_characteristic(&c.cluster.support)?,
                    edgelet: c.edgelet.clone(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(ShapeReport {
            vertices: self.mesh.vertex_count(),
            triangles: self.mesh.triangle_count(),
            keypoints: self.keypoints.len(),
            clusters,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterReport {
    pub core: VertexId,
    pub core_spokes: usize,
    pub members: Vec<VertexId>,
    pub support: Vec<TriangleId>,
    pub euler_characteristic: i64,
    pub edgelet: Edgelet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub vertices: usize,
    pub triangles: usize,
    pub keypoints: usize,
    pub clusters: Vec<ClusterReport>,
}

/// Keypoints plus the four image corners, triangulated, then traced.
pub fn shape_from_image(image: &GrayImage, cfg: &ShapeConfig) -> Result<ShapeRun> {
    if cfg.keypoints < 3 {
        return Err(crate::error::Error::InsufficientPoints(cfg.keypoints));
    }
    let keypoints = select_keypoints(image, cfg.keypoints)?;
    let mut points = image.corners().to_vec();
    points.extend(keypoints.iter().map(|k| k.position));
    let mesh = delaunay(&points, &cfg.triangulation)?;
    let mut run = shape_from_mesh(mesh, cfg)?;
    run.keypoints = keypoints;
    Ok(run)
}

pub fn shape_from_mesh(mesh: TriMesh, cfg: &ShapeConfig) -> Result<ShapeRun> {
    let clusters = if cfg.all_clusters {
        all_clusters(&mesh)?
    } else {
        vec![mnc_cluster(&mesh)?]
    };
    let shapes = clusters
        .into_iter()
        .map(|cluster| {
            let e = edgelet(&mesh, &cluster)?;
            let features = cluster
                .members
                .iter()
                .map(|n| nerve_features(&mesh, n))
                .collect::<Result<_>>()?;
            Ok(ClusterShape {
                cluster,
                edgelet: e,
                features,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ShapeRun {
        mesh,
        keypoints: Vec::new(),
        shapes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::to_json;
    use crate::mesh::fixtures::regular_fan;

    #[test]
    fn fan_mesh_run() {
        let run = shape_from_mesh(regular_fan(8, 1.0), &ShapeConfig::default()).unwrap();
        let rep = run.report().unwrap();
        assert_eq!(rep.clusters.len(), 1);
        assert_eq!(rep.clusters[0].core, 0);
        assert_eq!(rep.clusters[0].euler_characteristic, 1);
        assert_eq!(run.features().len(), 9);
    }

    #[test]
    fn constant_image_gives_corner_mesh() {
        let img = GrayImage::from_fn(16, 16, |_, _| 0.5).unwrap();
        let cfg = ShapeConfig {
            keypoints: 10,
            ..ShapeConfig::default()
        };
        let run = shape_from_image(&img, &cfg).unwrap();
        assert_eq!(run.mesh.triangle_count(), 2);
        assert!(run.keypoints.is_empty());
        let a = to_json(&run.report().unwrap());
        assert_eq!(a, to_json(&shape_from_image(&img, &cfg).unwrap().report().unwrap()));
    }
}
