//! Uniform one-to-four refinement.

use super::{HalfedgeMesh, MeshError};
use nalgebra::Point3;

/// Splits every face into four at its edge midpoints. The refined surface is
/// the same point set as the input polyhedron; only the triangulation is
/// finer, so intrinsic geometry is preserved exactly.
pub fn midpoint_refine(mesh: &HalfedgeMesh) -> Result<HalfedgeMesh, MeshError> {
    if !mesh.has_positions() {
        return Err(MeshError::MissingPositions);
    }
    let n = mesh.n_vertices();
    let mut positions: Vec<Point3<f64>> = mesh.positions().to_vec();
    positions.reserve(mesh.n_edges());
    for e in mesh.edges() {
        let (a, b) = mesh.edge_vertices(e);
        positions.push(nalgebra::center(&mesh.position(a), &mesh.position(b)));
    }
    let mut faces = Vec::with_capacity(4 * mesh.n_faces());
    for f in mesh.faces() {
        let [a, b, c] = mesh.face_vertices(f).map(|v| v.0);
        let hs = mesh.face_halfedges(f);
        let [mab, mbc, mca] = hs.map(|h| (n + h.edge().index()) as u32);
        faces.push([a, mab, mca]);
        faces.push([b, mbc, mab]);
        faces.push([c, mca, mbc]);
        faces.push([mab, mbc, mca]);
    }
    HalfedgeMesh::from_faces_with_positions(positions, &faces)
}
