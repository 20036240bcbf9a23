//! Splitting a closed genus-zero mesh into two disks along the zero level
//! set of the first nontrivial Laplace eigenfunction.

use crate::mesh::{
    corner_angles, cotan_laplacian, total_area, vertex_area_weights, DiscreteMetric, EdgeId,
    HalfedgeId, HalfedgeMesh, MeshError, VertexId,
};
use crate::sparse::SolveError;
use nalgebra::{DMatrix, Point3};
use std::collections::{HashMap, VecDeque};

#[derive(Debug, thiserror::Error)]
pub enum SegmentError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("mesh has a boundary; segmentation expects a closed surface")]
    NotClosed,
    #[error("mesh is disconnected")]
    Disconnected,
    #[error("eigen-solver stalled after {iterations} iterations at residual {residual:.3e}")]
    EigenNonConvergence { iterations: usize, residual: f64 },
    #[error("function has no zero level set: all values are {sign}")]
    NoSignChange { sign: &'static str },
    #[error("cut loop is incoherent: {0}")]
    InvalidLoop(String),
    #[error("cut does not separate the mesh into two components")]
    NonSeparating,
    #[error("segment areas are too unbalanced: ratio {0:.3}")]
    Unbalanced(f64),
}

#[derive(Clone, Debug)]
pub struct EigenFunction {
    pub values: Vec<f64>,
    pub eigenvalue: f64,
}

/// Point where the level set crosses an edge. The halfedge is oriented out
/// of the positive side: the crossing sits at `(1 - t)·origin + t·target`.
#[derive(Clone, Copy, Debug)]
pub struct EdgeCrossing {
    pub halfedge: HalfedgeId,
    pub t: f64,
}

impl EdgeCrossing {
    pub fn point(&self, mesh: &HalfedgeMesh) -> Point3<f64> {
        let a = mesh.position(mesh.origin(self.halfedge));
        let b = mesh.position(mesh.target(self.halfedge));
        a + (b - a) * self.t
    }
}

/// Closed chain of edge crossings; consecutive crossings share a face.
#[derive(Clone, Debug)]
pub struct CutLoop {
    pub crossings: Vec<EdgeCrossing>,
    pub length: f64,
}

#[derive(Debug)]
pub struct SplitResult {
    /// Side where the function is positive.
    pub m0: HalfedgeMesh,
    pub m1: HalfedgeMesh,
    /// Seam vertices of each half in cut-loop order: `seam0[i]` and
    /// `seam1[i]` are copies of the same crossing point, so walking m1's
    /// boundary visits the shared points in reversed cyclic order.
    pub seam0: Vec<VertexId>,
    pub seam1: Vec<VertexId>,
    pub area_ratio: f64,
}

fn require_closed_connected(mesh: &HalfedgeMesh) -> Result<(), SegmentError> {
    if !mesh.is_closed() {
        return Err(SegmentError::NotClosed);
    }
    let mut seen = vec![false; mesh.n_vertices()];
    let mut queue = VecDeque::from([VertexId(0)]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for h in mesh.outgoing_halfedges(v) {
            let w = mesh.target(h);
            if !seen[w.index()] {
                seen[w.index()] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    if reached != mesh.n_vertices() {
        return Err(SegmentError::Disconnected);
    }
    Ok(())
}

/// Smallest positive eigenpair of the cotan Laplacian against the lumped
/// vertex-area mass matrix, found by block inverse iteration with
/// Rayleigh-Ritz extraction. The block starts from the coordinate functions,
/// which already span the low end of the spectrum for round shapes.
pub fn first_eigenfunction(mesh: &HalfedgeMesh) -> Result<EigenFunction, SegmentError> {
    require_closed_connected(mesh)?;
    let base = DiscreteMetric::from_positions(mesh)?;
    let angles = corner_angles(mesh, &base)?;
    let laplacian = cotan_laplacian(mesh, &angles);
    let area = vertex_area_weights(mesh)?;
    // the cotan matrix carries per-edge weights cot + cot (the curvature
    // Hessian convention), twice the usual stiffness; doubling the mass
    // matrix makes the pencil's eigenvalues match the smooth Laplacian
    let mass: Vec<f64> = area.iter().map(|a| 2.0 * a).collect();
    let n = mesh.n_vertices();
    let total_mass: f64 = mass.iter().sum();

    let m_dot = |a: &[f64], b: &[f64]| -> f64 {
        a.iter().zip(b).zip(&mass).map(|((a, b), m)| a * b * m).sum()
    };
    let deflate = |v: &mut [f64]| {
        let mean = v.iter().zip(&mass).map(|(v, m)| v * m).sum::<f64>() / total_mass;
        v.iter_mut().for_each(|x| *x -= mean);
    };

    // seed block: coordinates plus one fixed pseudo-random vector in case
    // the embedding is degenerate along some axis
    let mut block: Vec<Vec<f64>> = (0..3)
        .map(|axis| mesh.positions().iter().map(|p| p[axis]).collect())
        .collect();
    let mut lcg = 0x2545f4914f6cdd1du64;
    block.push(
        (0..n)
            .map(|_| {
                lcg = lcg.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (lcg >> 33) as f64 / (1u64 << 31) as f64 - 1.0
            })
            .collect(),
    );

    let orthonormalize = |block: &mut Vec<Vec<f64>>| {
        let mut kept: Vec<Vec<f64>> = Vec::with_capacity(block.len());
        for mut v in block.drain(..) {
            deflate(&mut v);
            for u in &kept {
                let c = m_dot(&v, u);
                v.iter_mut().zip(u).for_each(|(x, u)| *x -= c * u);
            }
            let norm = m_dot(&v, &v).sqrt();
            if norm > 1e-12 {
                v.iter_mut().for_each(|x| *x /= norm);
                kept.push(v);
            }
        }
        *block = kept;
    };
    orthonormalize(&mut block);

    let max_iterations = 200;
    let mut best_residual = f64::INFINITY;
    for iteration in 0..max_iterations {
        // invert: x ← L⁺ M v, the power step for the smallest eigenvalues
        for v in &mut block {
            let rhs: Vec<f64> = v.iter().zip(&mass).map(|(v, m)| v * m).collect();
            *v = laplacian.solve_singular_laplacian(&rhs, 1e-13)?;
        }
        orthonormalize(&mut block);
        if block.is_empty() {
            break;
        }

        // Rayleigh-Ritz on the M-orthonormal block
        let b = block.len();
        let mut lv: Vec<Vec<f64>> = Vec::with_capacity(b);
        for v in &block {
            let mut y = vec![0.0; n];
            laplacian.matvec(v, &mut y);
            lv.push(y);
        }
        let mut a = DMatrix::zeros(b, b);
        for i in 0..b {
            for j in 0..b {
                let dot: f64 = block[i].iter().zip(&lv[j]).map(|(x, y)| x * y).sum();
                a[(i, j)] = dot;
            }
        }
        a = (a.clone() + a.transpose()) * 0.5;
        let eig = a.symmetric_eigen();
        let smallest = (0..b).min_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let s = smallest.unwrap();
        let lambda = eig.eigenvalues[s];
        let mut f = vec![0.0; n];
        for (i, v) in block.iter().enumerate() {
            let c = eig.eigenvectors[(i, s)];
            f.iter_mut().zip(v).for_each(|(f, v)| *f += c * v);
        }

        let mut lf = vec![0.0; n];
        laplacian.matvec(&f, &mut lf);
        let res_sq: f64 = lf
            .iter()
            .zip(&f)
            .zip(&mass)
            .map(|((lf, f), m)| (lf - lambda * m * f).powi(2))
            .sum();
        let scale: f64 = lf.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
        let residual = res_sq.sqrt() / scale;
        best_residual = best_residual.min(residual);
        if residual < 1e-10 {
            deflate(&mut f);
            let norm: f64 =
                f.iter().zip(&area).map(|(f, a)| f * f * a).sum::<f64>().sqrt();
            f.iter_mut().for_each(|x| *x /= norm);
            return Ok(EigenFunction { values: f, eigenvalue: lambda });
        }
        if iteration + 1 == max_iterations {
            return Err(SegmentError::EigenNonConvergence {
                iterations: max_iterations,
                residual: best_residual,
            });
        }
    }
    Err(SegmentError::EigenNonConvergence { iterations: 0, residual: best_residual })
}

/// Zero level set of a vertex function, chained through faces into closed
/// loops of edge crossings; returns the longest loop. Exact zeros are nudged
/// positive so the level set stays inside edges.
pub fn zero_level_loop(mesh: &HalfedgeMesh, f: &[f64]) -> Result<CutLoop, SegmentError> {
    assert_eq!(f.len(), mesh.n_vertices());
    // values within solver noise of zero would put crossings bitwise on top
    // of a vertex; the cut triangles then have all sides near the position
    // rounding scale and fail the triangle inequality. Flooring at 1e-10
    // keeps the sides five orders above that while moving the loop by far
    // less than any stated tolerance.
    let scale = f.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let floor = 1e-10 * scale;
    let f: Vec<f64> = f
        .iter()
        .map(|&v| if v == 0.0 { floor } else if v.abs() < floor { floor.copysign(v) } else { v })
        .collect();
    let positive = |v: VertexId| f[v.index()] > 0.0;

    let crossed = |e: EdgeId| {
        let (a, b) = mesh.edge_vertices(e);
        positive(a) != positive(b)
    };
    if !mesh.edges().any(crossed) {
        let sign = if f[0] > 0.0 { "positive" } else { "negative" };
        return Err(SegmentError::NoSignChange { sign });
    }

    // a face has either zero or two crossed edges, so crossings chain into
    // disjoint cycles; walk each cycle once
    let next_crossing = |h: HalfedgeId| -> Result<HalfedgeId, SegmentError> {
        debug_assert!(mesh.face_of(h).is_some());
        for cand in [mesh.next(h), mesh.next(mesh.next(h))] {
            if crossed(cand.edge()) {
                return Ok(cand);
            }
        }
        Err(SegmentError::InvalidLoop(format!("level set enters face of {h} but never leaves")))
    };

    let mut visited = vec![false; mesh.n_edges()];
    let mut best: Option<CutLoop> = None;
    for e in mesh.edges() {
        if visited[e.index()] || !crossed(e) {
            continue;
        }
        // orient each crossing out of the positive side; walk through the
        // face on its left
        let mut crossings = Vec::new();
        let start = *e
            .halfedges()
            .iter()
            .find(|h| positive(mesh.origin(**h)))
            .expect("one endpoint is positive");
        let mut h = start;
        loop {
            visited[h.edge().index()] = true;
            let (o, t) = (f[mesh.origin(h).index()], f[mesh.target(h).index()]);
            crossings.push(EdgeCrossing { halfedge: h, t: o / (o - t) });
            // cross into the left face, leave through its other crossed
            // edge, oriented positive-side-first again
            let step = next_crossing(h)?;
            h = if positive(mesh.origin(step)) { step } else { step.twin() };
            if h == start {
                break;
            }
        }
        let length: f64 = (0..crossings.len())
            .map(|i| {
                let a = crossings[i].point(mesh);
                let b = crossings[(i + 1) % crossings.len()].point(mesh);
                (b - a).norm()
            })
            .sum();
        if best.as_ref().is_none_or(|b| length > b.length) {
            best = Some(CutLoop { crossings, length });
        }
    }
    Ok(best.expect("a crossed edge exists"))
}

/// Cuts the mesh along the loop. Crossed edges split at their crossing
/// parameter, crossed faces retriangulate into three, and the two sides come
/// out as separate disks joined by the seam correspondence.
pub fn split_mesh(mesh: &HalfedgeMesh, cut: &CutLoop) -> Result<SplitResult, SegmentError> {
    let n = mesh.n_vertices();
    let mut crossing_on: HashMap<EdgeId, usize> = HashMap::with_capacity(cut.crossings.len());
    for (k, c) in cut.crossings.iter().enumerate() {
        if crossing_on.insert(c.halfedge.edge(), k).is_some() {
            return Err(SegmentError::InvalidLoop(format!("edge {} crossed twice", c.halfedge.edge())));
        }
    }

    // label sides: crossing orientation seeds, flood fill across uncrossed
    // edges; the loop separates a sphere iff this labels every vertex without
    // conflict
    const POS: u8 = 0;
    const NEG: u8 = 1;
    let mut side = vec![u8::MAX; n];
    let mut queue = VecDeque::new();
    fn assign(
        side: &mut [u8],
        queue: &mut VecDeque<VertexId>,
        v: VertexId,
        s: u8,
    ) -> Result<(), SegmentError> {
        match side[v.index()] {
            u8::MAX => {
                side[v.index()] = s;
                queue.push_back(v);
                Ok(())
            }
            cur if cur == s => Ok(()),
            _ => Err(SegmentError::NonSeparating),
        }
    }
    for c in &cut.crossings {
        assign(&mut side, &mut queue, mesh.origin(c.halfedge), POS)?;
        assign(&mut side, &mut queue, mesh.target(c.halfedge), NEG)?;
    }
    while let Some(v) = queue.pop_front() {
        let s = side[v.index()];
        for h in mesh.outgoing_halfedges(v) {
            if !crossing_on.contains_key(&h.edge()) {
                assign(&mut side, &mut queue, mesh.target(h), s)?;
            }
        }
    }
    if side.iter().any(|s| *s == u8::MAX) {
        return Err(SegmentError::NonSeparating);
    }

    // global vertex table: originals then one vertex per crossing
    let mut positions = mesh.positions().to_vec();
    positions.extend(cut.crossings.iter().map(|c| c.point(mesh)));

    let mut faces: [Vec<[u32; 3]>; 2] = [Vec::new(), Vec::new()];
    for face in mesh.faces() {
        let hs = mesh.face_halfedges(face);
        let crossed: Vec<usize> =
            (0..3).filter(|&i| crossing_on.contains_key(&hs[i].edge())).collect();
        match crossed.as_slice() {
            [] => {
                let vs = mesh.face_vertices(face);
                faces[side[vs[0].index()] as usize].push(vs.map(|v| v.0));
            }
            [x, y] => {
                // the two crossed edges share the lone vertex b; with the
                // face cycle written (b, c, a), edge a→b carries crossing p
                // and edge b→c carries crossing q
                let (into_b, out_of_b) =
                    if (x + 1) % 3 == *y { (hs[*x], hs[*y]) } else { (hs[*y], hs[*x]) };
                debug_assert_eq!(mesh.target(into_b), mesh.origin(out_of_b));
                let b = mesh.origin(out_of_b);
                let c = mesh.target(out_of_b);
                let a = mesh.origin(into_b);
                let p = (n + crossing_on[&into_b.edge()]) as u32;
                let q = (n + crossing_on[&out_of_b.edge()]) as u32;
                let lone = side[b.index()] as usize;
                faces[lone].push([b.0, q, p]);
                faces[1 - lone].push([q, c.0, a.0]);
                faces[1 - lone].push([q, a.0, p]);
            }
            _ => {
                return Err(SegmentError::InvalidLoop(format!(
                    "face {face} has {} crossed edges",
                    crossed.len()
                )))
            }
        }
    }

    // compact each side to its own vertex set, tracking where the crossing
    // vertices land so the seams stay aligned by loop index
    let build = |face_list: &[[u32; 3]]| -> Result<(HalfedgeMesh, Vec<VertexId>), SegmentError> {
        let mut remap = vec![u32::MAX; positions.len()];
        let mut local_pos = Vec::new();
        let mut local_faces = Vec::with_capacity(face_list.len());
        for tri in face_list {
            let mut t = [0u32; 3];
            for (slot, &v) in tri.iter().enumerate() {
                if remap[v as usize] == u32::MAX {
                    remap[v as usize] = local_pos.len() as u32;
                    local_pos.push(positions[v as usize]);
                }
                t[slot] = remap[v as usize];
            }
            local_faces.push(t);
        }
        let mesh = HalfedgeMesh::from_faces_with_positions(local_pos, &local_faces)?;
        let seam = (0..cut.crossings.len())
            .map(|k| {
                debug_assert_ne!(remap[n + k], u32::MAX, "crossing missing from one side");
                VertexId(remap[n + k])
            })
            .collect();
        Ok((mesh, seam))
    };
    let (m0, seam0) = build(&faces[POS as usize])?;
    let (m1, seam1) = build(&faces[NEG as usize])?;

    for m in [&m0, &m1] {
        if m.euler_characteristic() != 1 || m.boundary_loops().len() != 1 {
            return Err(SegmentError::NonSeparating);
        }
    }
    let (a0, a1) = (total_area(&m0), total_area(&m1));
    let area_ratio = a0 / a1;
    if !(0.25..=4.0).contains(&area_ratio) {
        return Err(SegmentError::Unbalanced(area_ratio));
    }
    Ok(SplitResult { m0, m1, seam0, seam1, area_ratio })
}
