//! Isometric development of a flat metric into the plane.

use super::FlowError;
use crate::mesh::{triangle_angle, DiscreteMetric, FaceId, HalfedgeMesh};
use num_complex::Complex;
use std::collections::VecDeque;

/// Planar image of the vertices. For sliced meshes the seam copies are
/// distinct vertices, so they naturally carry independent coordinates.
#[derive(Clone, Debug)]
pub struct PlanarEmbedding {
    pub z: Vec<Complex<f64>>,
}

impl PlanarEmbedding {
    /// Largest relative deviation between a placed edge and its metric length.
    pub fn max_edge_defect(&self, mesh: &HalfedgeMesh, metric: &DiscreteMetric) -> f64 {
        let mut worst = 0.0f64;
        for e in mesh.edges() {
            let (a, b) = mesh.edge_vertices(e);
            let placed = (self.z[a.index()] - self.z[b.index()]).norm();
            worst = worst.max((placed - metric.len(e)).abs() / metric.len(e));
        }
        worst
    }
}

/// Number of faces whose planar image winds the wrong way.
pub fn flipped_faces(mesh: &HalfedgeMesh, z: &[Complex<f64>]) -> usize {
    mesh.faces()
        .filter(|&f| {
            let [a, b, c] = mesh.face_vertices(f);
            let (za, zb, zc) = (z[a.index()], z[b.index()], z[c.index()]);
            let det = (zb - za).re * (zc - za).im - (zb - za).im * (zc - za).re;
            det <= 0.0
        })
        .count()
}

/// Develops a flat metric into the plane by breadth-first face traversal from
/// face 0. Each face is laid out from its already placed edge; a vertex keeps
/// the coordinate from its first placement, and any later placement must
/// agree within `1e-6` of the layout scale or the metric has holonomy.
pub fn layout_flat_metric(
    mesh: &HalfedgeMesh,
    metric: &DiscreteMetric,
) -> Result<PlanarEmbedding, FlowError> {
    assert!(mesh.n_faces() > 0);
    let mut z: Vec<Option<Complex<f64>>> = vec![None; mesh.n_vertices()];
    let mut placed_face = vec![false; mesh.n_faces()];
    let mut queue = VecDeque::new();
    let scale: f64 = metric.lengths().iter().fold(0.0f64, |m, l| m.max(*l));
    let mut defect = 0.0f64;

    // seed face: first edge along the real axis, third vertex above
    let f0 = FaceId::new(0);
    {
        // h0 runs a → b, h1 runs b → c, h2 runs c → a
        let [h0, h1, h2] = mesh.face_halfedges(f0);
        let (a, b, c) = (mesh.origin(h0), mesh.origin(h1), mesh.origin(h2));
        let (lab, lbc, lca) = (metric.len(h0.edge()), metric.len(h1.edge()), metric.len(h2.edge()));
        let alpha = triangle_angle(lbc, lca, lab); // angle at a
        z[a.index()] = Some(Complex::new(0.0, 0.0));
        z[b.index()] = Some(Complex::new(lab, 0.0));
        z[c.index()] = Some(Complex::from_polar(lca, alpha));
    }
    placed_face[f0.index()] = true;
    queue.push_back(f0);

    while let Some(f) = queue.pop_front() {
        for h in mesh.face_halfedges(f) {
            let t = h.twin();
            let Some(g) = mesh.face_of(t) else { continue };
            if placed_face[g.index()] {
                continue;
            }
            placed_face[g.index()] = true;
            // within g, t runs a → b with c opposite
            let a = mesh.origin(t);
            let b = mesh.origin(mesh.next(t));
            let c = mesh.origin(mesh.next(mesh.next(t)));
            let za = z[a.index()].expect("edge endpoint placed");
            let zb = z[b.index()].expect("edge endpoint placed");
            let lca = metric.len(mesh.next(mesh.next(t)).edge());
            let alpha = triangle_angle(
                metric.len(mesh.next(t).edge()), // bc, opposite a
                lca,
                metric.len(t.edge()),
            );
            let dir = (zb - za) / (zb - za).norm();
            let zc = za + dir * Complex::from_polar(lca, alpha);
            match z[c.index()] {
                None => z[c.index()] = Some(zc),
                Some(prev) => defect = defect.max((prev - zc).norm()),
            }
            queue.push_back(g);
        }
    }

    if defect > 1e-6 * scale {
        return Err(FlowError::Holonomy(defect / scale));
    }
    let z = z
        .into_iter()
        .map(|p| p.ok_or(FlowError::WrongTopology {
            expected: "connected mesh".into(),
            found: "unreached vertices in layout".into(),
        }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PlanarEmbedding { z })
}
