//! Intrinsic geometry on top of the connectivity: edge lengths, corner
//! angles, discrete Gaussian curvature, the cotan Laplacian, and area weights.

use super::{EdgeId, FaceId, HalfedgeId, HalfedgeMesh, MeshError, VertexId};
use crate::sparse::SparseSymmetricMatrix;
use std::f64::consts::PI;

/// Edge length function. Positivity is the caller's obligation; the triangle
/// inequality is checked wherever angles are derived.
#[derive(Clone, Debug)]
pub struct DiscreteMetric {
    lengths: Vec<f64>,
}

impl DiscreteMetric {
    pub fn new(lengths: Vec<f64>) -> Self {
        Self { lengths }
    }

    pub fn from_positions(mesh: &HalfedgeMesh) -> Result<Self, MeshError> {
        if !mesh.has_positions() {
            return Err(MeshError::MissingPositions);
        }
        let lengths = mesh
            .edges()
            .map(|e| {
                let (a, b) = mesh.edge_vertices(e);
                (mesh.position(a) - mesh.position(b)).norm()
            })
            .collect();
        Ok(Self { lengths })
    }

    #[inline]
    pub fn len(&self, e: EdgeId) -> f64 {
        self.lengths[e.index()]
    }
    #[inline]
    pub fn set_len(&mut self, e: EdgeId, l: f64) {
        self.lengths[e.index()] = l;
    }
    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }
    pub fn n_edges(&self) -> usize {
        self.lengths.len()
    }

    /// Triangle area from edge lengths (numerically stable Heron form).
    pub fn face_area(&self, mesh: &HalfedgeMesh, f: FaceId) -> f64 {
        let [h0, h1, h2] = mesh.face_halfedges(f);
        let mut s = [self.len(h0.edge()), self.len(h1.edge()), self.len(h2.edge())];
        s.sort_by(|x, y| y.partial_cmp(x).unwrap());
        let [a, b, c] = s; // a >= b >= c
        let t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
        0.25 * t.max(0.0).sqrt()
    }
}

/// Angle at the vertex opposite each interior halfedge, per face.
#[derive(Clone, Debug)]
pub struct CornerAngles {
    opp: Vec<f64>,
}

impl CornerAngles {
    /// Angle opposite halfedge `h` within its face.
    #[inline]
    pub fn opposite(&self, h: HalfedgeId) -> f64 {
        self.opp[h.index()]
    }

    /// Angle at `origin(h)` within the face of `h`.
    #[inline]
    pub fn at_origin(&self, mesh: &HalfedgeMesh, h: HalfedgeId) -> f64 {
        self.opp[mesh.next(h).index()]
    }
}

/// Angle opposite side `a` in a triangle with sides (a, b, c).
///
/// Half-angle atan2 form: stays accurate where acos of the cosine law loses
/// digits, near 0 and near π.
#[inline]
pub(crate) fn triangle_angle(a: f64, b: f64, c: f64) -> f64 {
    let s = 0.5 * (a + b + c);
    let num = ((s - b) * (s - c)).max(0.0).sqrt();
    let den = (s * (s - a)).max(0.0).sqrt();
    2.0 * num.atan2(den)
}

#[inline]
fn triangle_ok(a: f64, b: f64, c: f64) -> bool {
    a > 0.0 && b > 0.0 && c > 0.0 && a < b + c && b < c + a && c < a + b
}

pub fn corner_angles(mesh: &HalfedgeMesh, metric: &DiscreteMetric) -> Result<CornerAngles, MeshError> {
    let mut opp = vec![f64::NAN; mesh.n_halfedges()];
    for f in mesh.faces() {
        let hs = mesh.face_halfedges(f);
        let l = hs.map(|h| metric.len(h.edge()));
        if !triangle_ok(l[0], l[1], l[2]) {
            return Err(MeshError::TriangleInequality(f));
        }
        for i in 0..3 {
            opp[hs[i].index()] = triangle_angle(l[i], l[(i + 1) % 3], l[(i + 2) % 3]);
        }
    }
    Ok(CornerAngles { opp })
}

/// Angle deficit: 2π minus the angle sum at interior vertices, π minus at
/// boundary vertices.
#[derive(Clone, Debug)]
pub struct CurvatureField {
    k: Vec<f64>,
}

impl CurvatureField {
    #[inline]
    pub fn at(&self, v: VertexId) -> f64 {
        self.k[v.index()]
    }
    pub fn as_slice(&self) -> &[f64] {
        &self.k
    }
    pub fn total(&self) -> f64 {
        self.k.iter().sum()
    }
}

pub fn vertex_curvature(mesh: &HalfedgeMesh, angles: &CornerAngles) -> CurvatureField {
    let mut k = Vec::with_capacity(mesh.n_vertices());
    for v in mesh.vertices() {
        let mut sum = 0.0;
        for h in mesh.outgoing_halfedges(v) {
            if !mesh.is_boundary_halfedge(h) {
                sum += angles.at_origin(mesh, h);
            }
        }
        let flat = if mesh.is_boundary_vertex(v) { PI } else { 2.0 * PI };
        k.push(flat - sum);
    }
    CurvatureField { k }
}

pub fn gauss_bonnet_residual(mesh: &HalfedgeMesh, k: &CurvatureField) -> f64 {
    k.total() - 2.0 * PI * mesh.euler_characteristic() as f64
}

/// Cotan weights assembled Laplacian-style: diagonal Σ_k w_ik, off-diagonal
/// −w_ij with w_ij = cot θ_k^{ij} + cot θ_l^{ji} (one term on the boundary).
pub fn cotan_laplacian(mesh: &HalfedgeMesh, angles: &CornerAngles) -> SparseSymmetricMatrix {
    let n = mesh.n_vertices();
    let mut builder = SparseSymmetricMatrix::builder(n);
    for e in mesh.edges() {
        let mut w = 0.0;
        for h in e.halfedges() {
            if !mesh.is_boundary_halfedge(h) {
                let th = angles.opposite(h);
                w += th.cos() / th.sin();
            }
        }
        let (i, j) = mesh.edge_vertices(e);
        builder.add(i.index(), i.index(), w);
        builder.add(j.index(), j.index(), w);
        builder.add(i.index(), j.index(), -w);
        builder.add(j.index(), i.index(), -w);
    }
    builder.build()
}

pub fn face_area(mesh: &HalfedgeMesh, f: FaceId) -> f64 {
    let [a, b, c] = mesh.face_vertices(f);
    let (pa, pb, pc) = (mesh.position(a), mesh.position(b), mesh.position(c));
    0.5 * (pb - pa).cross(&(pc - pa)).norm()
}

pub fn total_area(mesh: &HalfedgeMesh) -> f64 {
    mesh.faces().map(|f| face_area(mesh, f)).sum()
}

/// One third of the incident face areas per vertex.
pub fn vertex_area_weights(mesh: &HalfedgeMesh) -> Result<Vec<f64>, MeshError> {
    if !mesh.has_positions() {
        return Err(MeshError::MissingPositions);
    }
    let mut w = vec![0.0; mesh.n_vertices()];
    for f in mesh.faces() {
        let area = face_area(mesh, f);
        if area <= 0.0 {
            return Err(MeshError::ZeroAreaFace(f));
        }
        for v in mesh.face_vertices(f) {
            w[v.index()] += area / 3.0;
        }
    }
    Ok(w)
}
