//! Curvature flow on triangle meshes: deform per-vertex log scale factors
//! until the discrete Gaussian curvature matches a prescribed target, keeping
//! the triangulation Delaunay by diagonal flips along the way. On top of that
//! sit the isometric planar layout of flat metrics, the annulus map, and the
//! disk (Riemann) map.

mod annulus;
mod clausen;
mod layout;

pub use annulus::{map_annulus, riemann_map, AnnulusMap, DiskMap};
pub use clausen::{clausen, lobachevsky};
pub use layout::{flipped_faces, layout_flat_metric, PlanarEmbedding};

use crate::mesh::{
    corner_angles, cotan_laplacian, make_delaunay, vertex_curvature, CornerAngles, CurvatureField,
    DiscreteMetric, HalfedgeMesh, MeshError,
};
use crate::sparse::SolveError;
use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum FlowError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("target curvature is inadmissible: {0}")]
    InadmissibleTarget(String),
    #[error("flow stalled after {iterations} iterations, residual {residual:.3e}")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("line search step underflow at iteration {0}")]
    StepUnderflow(usize),
    #[error("hessian solve failed: {0}")]
    Solve(#[from] SolveError),
    #[error("expected {expected}, found {found}")]
    WrongTopology { expected: String, found: String },
    #[error("developed layout is inconsistent: holonomy defect {0:.3e}")]
    Holonomy(f64),
    #[error("i/o failure on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Conformal deformation of a base metric: per-vertex log factors `u`, the
/// curvature targets, and the base edge lengths β. The induced metric is
/// l_ij = e^{u_i} β_ij e^{u_j}.
#[derive(Clone, Debug)]
pub struct ConformalState {
    pub u: Vec<f64>,
    pub k_target: Vec<f64>,
    pub beta: Vec<f64>,
}

impl ConformalState {
    /// Starts at u ≡ 0 over the given base metric after checking that the
    /// target is admissible: every entry below 2π, total matching 2πχ.
    pub fn new(
        mesh: &HalfedgeMesh,
        base: &DiscreteMetric,
        k_target: Vec<f64>,
    ) -> Result<Self, FlowError> {
        assert_eq!(k_target.len(), mesh.n_vertices());
        assert_eq!(base.n_edges(), mesh.n_edges());
        if let Some(v) = k_target.iter().position(|k| !(*k < 2.0 * PI)) {
            return Err(FlowError::InadmissibleTarget(format!(
                "target at vertex {v} is {} ≥ 2π",
                k_target[v]
            )));
        }
        let total: f64 = k_target.iter().sum();
        let expect = 2.0 * PI * mesh.euler_characteristic() as f64;
        if (total - expect).abs() > 1e-9 {
            return Err(FlowError::InadmissibleTarget(format!(
                "total target curvature {total} differs from 2πχ = {expect}"
            )));
        }
        Ok(Self { u: vec![0.0; mesh.n_vertices()], k_target, beta: base.lengths().to_vec() })
    }
}

/// Lengths induced by the state on the mesh's current triangulation. Errors
/// when some face stops satisfying the triangle inequality, which tells the
/// caller to shorten its step.
pub fn conformal_lengths(
    mesh: &HalfedgeMesh,
    state: &ConformalState,
) -> Result<DiscreteMetric, MeshError> {
    let mut lengths = Vec::with_capacity(mesh.n_edges());
    for e in mesh.edges() {
        let (i, j) = mesh.edge_vertices(e);
        lengths.push((state.u[i.index()] + state.u[j.index()]).exp() * state.beta[e.index()]);
    }
    let metric = DiscreteMetric::new(lengths);
    corner_angles(mesh, &metric)?; // triangle inequality check
    Ok(metric)
}

/// Descent direction of the flow: the residual K̄ − K.
pub fn ricci_energy_gradient(state: &ConformalState, k: &CurvatureField) -> Vec<f64> {
    state.k_target.iter().zip(k.as_slice()).map(|(kt, k)| kt - k).collect()
}

/// Convex energy whose critical points have K = K̄. Per triangle the value is
/// the volume-like term Σθλ̃/2 + ΣЛ(θ) rebased by π Σu, plus the linear part
/// Σ(ĉ − K̄)u with ĉ = 2π interior / π boundary; its u-gradient is K − K̄ and
/// its Hessian is the cotan matrix.
pub fn ricci_energy(
    mesh: &HalfedgeMesh,
    state: &ConformalState,
    metric: &DiscreteMetric,
    angles: &CornerAngles,
) -> f64 {
    energy_impl(mesh, &state.u, &state.k_target, metric, angles)
}

fn energy_impl(
    mesh: &HalfedgeMesh,
    u: &[f64],
    k_target: &[f64],
    metric: &DiscreteMetric,
    angles: &CornerAngles,
) -> f64 {
    let mut e = 0.0;
    for v in mesh.vertices() {
        let c = if mesh.is_boundary_vertex(v) { PI } else { 2.0 * PI };
        e += (c - k_target[v.index()]) * u[v.index()];
    }
    for f in mesh.faces() {
        let hs = mesh.face_halfedges(f);
        let mut face_term = 0.0;
        for &h in &hs {
            let theta = angles.opposite(h);
            let lam = 2.0 * metric.len(h.edge()).ln();
            face_term += 0.5 * theta * lam + lobachevsky(theta);
            face_term -= PI * u[mesh.origin(h).index()];
        }
        e += face_term;
    }
    e
}

#[derive(Clone, Copy, Debug)]
pub struct FlowOptions {
    /// Convergence threshold on max |K̄ − K|.
    pub eps: f64,
    /// Initial Newton step length.
    pub delta: f64,
    pub max_iterations: usize,
}

impl Default for FlowOptions {
    fn default() -> Self {
        Self { eps: 1e-8, delta: 1.0, max_iterations: 500 }
    }
}

/// One accepted Newton step.
#[derive(Clone, Copy, Debug)]
pub struct TraceRow {
    pub iteration: usize,
    pub max_residual: f64,
    pub energy: f64,
    pub step: f64,
    pub flips: usize,
}

pub fn write_trace_csv(path: &Path, rows: &[TraceRow]) -> Result<(), FlowError> {
    let io_err = |source| FlowError::Io { path: path.display().to_string(), source };
    let mut out = std::io::BufWriter::new(std::fs::File::create(path).map_err(io_err)?);
    (|| {
        writeln!(out, "iteration,max_residual,energy,step,flips")?;
        for r in rows {
            writeln!(
                out,
                "{},{:.17e},{:.17e},{:.17e},{}",
                r.iteration, r.max_residual, r.energy, r.step, r.flips
            )?;
        }
        out.flush()
    })()
    .map_err(io_err)
}

pub struct FlowResult {
    /// Input connectivity with the flips applied; vertex ids are unchanged.
    pub mesh: HalfedgeMesh,
    /// Final state; β is expressed on the flipped triangulation, so
    /// `conformal_lengths` reproduces `metric` exactly.
    pub state: ConformalState,
    pub metric: DiscreteMetric,
    pub iterations: usize,
    pub residual: f64,
    pub total_flips: usize,
    pub trace: Vec<TraceRow>,
}

/// Runs the flow on the metric induced by vertex positions.
pub fn yamabe_flow(
    mesh: &HalfedgeMesh,
    k_target: Vec<f64>,
    opts: &FlowOptions,
) -> Result<FlowResult, FlowError> {
    let base = DiscreteMetric::from_positions(mesh)?;
    yamabe_flow_metric(mesh, &base, k_target, opts)
}

pub fn yamabe_flow_metric(
    mesh: &HalfedgeMesh,
    base: &DiscreteMetric,
    k_target: Vec<f64>,
    opts: &FlowOptions,
) -> Result<FlowResult, FlowError> {
    let state = ConformalState::new(mesh, base, k_target)?;
    let mut mesh = mesh.clone();
    let mut metric = DiscreteMetric::new(state.beta.clone());
    let mut u = state.u;
    let k_target = state.k_target;
    let n = mesh.n_vertices();

    let mut total_flips = make_delaunay(&mut mesh, &mut metric)?;
    let mut angles = corner_angles(&mesh, &metric)?;
    let mut trace = Vec::new();

    let mut energy = energy_impl(&mesh, &u, &k_target, &metric, &angles);
    let residual_of = |angles: &CornerAngles, mesh: &HalfedgeMesh| {
        let k = vertex_curvature(mesh, angles);
        let r: Vec<f64> =
            k_target.iter().zip(k.as_slice()).map(|(kt, kc)| kt - kc).collect();
        let max = r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        (r, max)
    };

    let (mut rhs, mut residual) = residual_of(&angles, &mesh);
    let mut iterations = 0;

    while residual >= opts.eps {
        if iterations >= opts.max_iterations {
            return Err(FlowError::NonConvergence { iterations, residual });
        }
        iterations += 1;

        // Newton direction: H d = K̄ − K with H the cotan matrix. The mean is
        // projected off the right-hand side; constants are the gauge freedom.
        let lap = cotan_laplacian(&mesh, &angles);
        let mean = rhs.iter().sum::<f64>() / n as f64;
        for r in &mut rhs {
            *r -= mean;
        }
        // inexact direction: cut triangles can be needles whose cot weights
        // push the conditioning to ~1e10, where CG cannot reach 1e-12; a 1e-9
        // solve leaves Newton quadratic while staying attainable
        let d = lap.solve_singular_laplacian(&rhs, 1e-9)?;

        // Backtracking on the current triangulation: shrink until the new
        // lengths form valid triangles and the energy decreases. The energy
        // is only smooth per triangulation, so flips happen after acceptance,
        // not inside the objective; the reference energy is rebased on the
        // flipped triangulation afterwards.
        let mut t = opts.delta;
        let (u_new, metric_new, step) = loop {
            if t < 1e-12 {
                return Err(FlowError::StepUnderflow(iterations));
            }
            let mut u_cand: Vec<f64> = u.iter().zip(&d).map(|(ui, di)| ui + t * di).collect();
            let mean_u = u_cand.iter().sum::<f64>() / n as f64;
            for ui in &mut u_cand {
                *ui -= mean_u;
            }
            let mut cand_lengths = Vec::with_capacity(mesh.n_edges());
            for e in mesh.edges() {
                let (i, j) = mesh.edge_vertices(e);
                let du = u_cand[i.index()] - u[i.index()] + u_cand[j.index()] - u[j.index()];
                cand_lengths.push(metric.len(e) * du.exp());
            }
            let cand_metric = DiscreteMetric::new(cand_lengths);
            let cand_angles = match corner_angles(&mesh, &cand_metric) {
                Ok(angles) => angles,
                Err(_) => {
                    t *= 0.5;
                    continue;
                }
            };
            let cand_energy = energy_impl(&mesh, &u_cand, &k_target, &cand_metric, &cand_angles);
            if cand_energy <= energy + 1e-12 * (1.0 + energy.abs()) {
                break (u_cand, cand_metric, t);
            }
            t *= 0.5;
        };
        u = u_new;
        metric = metric_new;
        let flips = make_delaunay(&mut mesh, &mut metric)?;
        total_flips += flips;
        angles = corner_angles(&mesh, &metric)?;
        energy = energy_impl(&mesh, &u, &k_target, &metric, &angles);

        let (r, rmax) = residual_of(&angles, &mesh);
        rhs = r;
        residual = rmax;
        trace.push(TraceRow { iteration: iterations, max_residual: residual, energy, step, flips });
    }

    let beta: Vec<f64> = mesh
        .edges()
        .map(|e| {
            let (i, j) = mesh.edge_vertices(e);
            metric.len(e) * (-u[i.index()] - u[j.index()]).exp()
        })
        .collect();
    Ok(FlowResult {
        state: ConformalState { u, k_target, beta },
        mesh,
        metric,
        iterations,
        residual,
        total_flips,
        trace,
    })
}
