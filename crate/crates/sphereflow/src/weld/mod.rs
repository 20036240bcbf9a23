//! Conformal spherical mapping by welding.
//!
//! A closed genus-0 surface is cut along a spectral level set into two
//! disks, each disk is conformally flattened, and the zipper weld glues the
//! two flat images along their shared boundary into one embedding of the
//! extended plane. Stereographic projection and Möbius normalization then
//! place the result on the unit sphere with the mass center at the origin.

mod extended;
mod mobius;
mod normalize;
mod stereo;
mod zipper;

pub use extended::{chordal_distance, ExtendedComplex};
pub use mobius::{disk_to_half_plane, half_plane_to_disk, MobiusTransform};
pub use normalize::{mobius_center, mobius_normalize, sphere_mobius_translate};
pub use stereo::{inverse_stereographic, signed_solid_angle, stereographic};
pub use zipper::{glue_fold, slit_open, zipper_weld, WeldedPlane, WeldingSignature};

use crate::flow::{riemann_map, FlowError, FlowOptions};
use crate::mesh::{midpoint_refine, total_area, vertex_area_weights, HalfedgeMesh, MeshError,
    VertexId};
use crate::segment::{first_eigenfunction, split_mesh, zero_level_loop, SegmentError};
use nalgebra::Point3;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeldError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("flattening failed: {0}")]
    Flow(#[from] FlowError),
    #[error("segmentation failed: {0}")]
    Segment(#[from] SegmentError),
    #[error("indeterminate extended-complex operation: {0}")]
    Indeterminate(&'static str),
    #[error("degenerate Möbius transform: {0}")]
    DegenerateMobius(String),
    #[error("invalid welding signature: {0}")]
    Signature(String),
    #[error("seam pair {pair} separated by {distance:.3e} after welding")]
    SeamMismatch { pair: usize, distance: f64 },
    #[error("square-root branch tracking failed: {detail}")]
    BranchTracking { detail: String },
    #[error("Möbius centering stalled after {iterations} iterations at center norm {center_norm:.3e}")]
    CenteringNonConvergence { iterations: usize, center_norm: f64 },
    #[error("degenerate landmarks: {0}")]
    DegenerateLandmarks(String),
    #[error("expected a closed genus-0 surface, found {0}")]
    WrongTopology(String),
    #[error("spherical embedding not bijective: {flipped} flipped triangles, total solid angle {total_area:.6e}")]
    NotBijective { flipped: usize, total_area: f64 },
}

/// Conformal map of a closed genus-0 surface onto the unit sphere.
#[derive(Debug)]
pub struct SphericalMap {
    /// The cut surface reassembled as one closed mesh. Its positions are the
    /// source geometry rescaled to total area 4π; the vertex set is the
    /// input's plus the seam crossing points (plus midpoints if refinement
    /// was needed), so distortion is measured over this connectivity.
    pub mesh: HalfedgeMesh,
    /// Unit-sphere image of every mesh vertex.
    pub sphere: Vec<Point3<f64>>,
    /// Seam vertices in welding order.
    pub seam: Vec<VertexId>,
    /// Largest chordal gap across the seam before projection.
    pub seam_defect: f64,
    pub centering_iterations: usize,
    /// Newton iterations used to flatten each half.
    pub flow_iterations: (usize, usize),
    /// Global midpoint refinements applied to reach a seam of length ≥ 4.
    pub refinement_rounds: usize,
}

/// Maps a closed genus-0 mesh conformally onto the unit sphere: spectral
/// cut, conformal flattening of both halves, zipper weld, stereographic
/// projection, Möbius centering with landmark alignment.
///
/// The mesh is rescaled to total area 4π on entry. The vertex of largest
/// source z goes to the north pole and the vertex of largest source x to
/// the y = 0, x > 0 half plane, making repeated runs comparable.
pub fn conformal_spherical_map(
    mesh: &HalfedgeMesh,
    opts: &FlowOptions,
) -> Result<SphericalMap, WeldError> {
    if !mesh.has_positions() {
        return Err(WeldError::Mesh(MeshError::MissingPositions));
    }
    if !mesh.is_closed() || mesh.euler_characteristic() != 2 {
        return Err(WeldError::WrongTopology(format!(
            "χ = {}, closed = {}",
            mesh.euler_characteristic(),
            mesh.is_closed()
        )));
    }

    let mut surface = mesh.clone();
    let area = total_area(&surface);
    if !(area > 0.0) {
        return Err(WeldError::WrongTopology(format!("total area {area}")));
    }
    surface.scale_positions((4.0 * std::f64::consts::PI / area).sqrt());

    // the zipper needs at least 4 seam vertices; a too-short level-set loop
    // is retried on a uniformly refined copy, which is the same point set
    let mut refinement_rounds = 0;
    let cut = loop {
        let eigen = first_eigenfunction(&surface)?;
        let cut = zero_level_loop(&surface, &eigen.values)?;
        if cut.crossings.len() >= 4 {
            break cut;
        }
        if refinement_rounds == 3 {
            return Err(WeldError::Signature(format!(
                "level-set seam still has {} < 4 vertices after {refinement_rounds} refinements",
                cut.crossings.len()
            )));
        }
        surface = midpoint_refine(&surface)?;
        refinement_rounds += 1;
    };

    let split = split_mesh(&surface, &cut)?;
    let disk0 = riemann_map(&split.m0, opts)?;
    let disk1 = riemann_map(&split.m1, opts)?;
    let signature = WeldingSignature {
        pairs: split.seam0.iter().copied().zip(split.seam1.iter().copied()).collect(),
    };
    let welded = zipper_weld(&disk0.mesh, &disk0.z, &disk1.mesh, &disk1.z, &signature)?;

    let weights = vertex_area_weights(&welded.mesh)?;

    // the weld pins two adjacent seam vertices at 0 and ∞, so the rest of
    // the surface lands on a thin ring at an arbitrary overall scale, often
    // an extreme one; dividing by the weighted geometric mean radius moves
    // the ring onto the stereographic equator, without which the projected
    // mass crowds one pole beyond what centering can undo
    let mut log_sum = 0.0;
    let mut log_mass = 0.0;
    for (z, w) in welded.z.iter().zip(&weights) {
        if let Some(c) = z.finite() {
            if c.norm() > 0.0 {
                log_sum += w * c.norm().ln();
                log_mass += w;
            }
        }
    }
    let scale = if log_mass > 0.0 { (log_sum / log_mass).exp() } else { 1.0 };

    // the flattened halves are counterclockwise in the plane, which projects
    // to an inward-oriented sphere; conjugating mirrors the plane so the
    // spherical triangles come out outward
    let mut sphere: Vec<Point3<f64>> = welded
        .z
        .iter()
        .map(|z| match z.finite() {
            Some(c) => stereographic(ExtendedComplex::new(c.re / scale, -c.im / scale)),
            None => stereographic(*z),
        })
        .collect();
    let positions = welded.mesh.positions();
    let top = (0..positions.len())
        .max_by(|a, b| positions[*a].z.total_cmp(&positions[*b].z))
        .expect("mesh is nonempty");
    let front = (0..positions.len())
        .filter(|v| *v != top)
        .max_by(|a, b| positions[*a].x.total_cmp(&positions[*b].x))
        .expect("mesh has at least two vertices");
    let centering_iterations = mobius_normalize(
        &mut sphere,
        &weights,
        VertexId::new(top),
        VertexId::new(front),
    )?;

    let mut flipped = 0;
    let mut covered = 0.0;
    for f in welded.mesh.faces() {
        let [a, b, c] = welded.mesh.face_vertices(f);
        let angle = signed_solid_angle(&sphere[a.index()], &sphere[b.index()], &sphere[c.index()]);
        if angle <= 0.0 {
            flipped += 1;
        }
        covered += angle;
    }
    if flipped > 0 || (covered - 4.0 * std::f64::consts::PI).abs() > 1e-6 {
        return Err(WeldError::NotBijective { flipped, total_area: covered });
    }

    Ok(SphericalMap {
        mesh: welded.mesh,
        sphere,
        seam: welded.seam,
        seam_defect: welded.seam_defect,
        centering_iterations,
        flow_iterations: (disk0.flow_iterations, disk1.flow_iterations),
        refinement_rounds,
    })
}
