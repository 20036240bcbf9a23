//! Intrinsic Delaunay maintenance by diagonal switches.

use super::metric::triangle_angle;
use super::{DiscreteMetric, EdgeId, HalfedgeMesh, MeshError};
use std::collections::VecDeque;
use std::f64::consts::PI;

/// Slack on the angle-sum comparison; cocircular quads count as Delaunay so
/// flipping cannot cycle.
pub const DELAUNAY_SLACK: f64 = 1e-12;

fn opposite_angles(mesh: &HalfedgeMesh, metric: &DiscreteMetric, e: EdgeId) -> Result<(f64, f64), MeshError> {
    if mesh.is_boundary_edge(e) {
        return Err(MeshError::BoundaryEdge(e));
    }
    let mut angles = [0.0; 2];
    for (slot, h) in e.halfedges().into_iter().enumerate() {
        let a = metric.len(e);
        let b = metric.len(mesh.next(h).edge());
        let c = metric.len(mesh.next(mesh.next(h)).edge());
        angles[slot] = triangle_angle(a, b, c);
    }
    Ok((angles[0], angles[1]))
}

/// An interior edge is Delaunay when the two angles opposite it sum to at
/// most π.
pub fn is_delaunay(mesh: &HalfedgeMesh, metric: &DiscreteMetric, e: EdgeId) -> Result<bool, MeshError> {
    let (a0, a1) = opposite_angles(mesh, metric, e)?;
    Ok(a0 + a1 <= PI + DELAUNAY_SLACK)
}

/// Numerically stable triangle area from side lengths; accurate for needle
/// triangles where Heron's form loses everything to cancellation. None when
/// the sides fail the triangle inequality.
fn stable_area(a: f64, b: f64, c: f64) -> Option<f64> {
    let mut s = [a, b, c];
    s.sort_by(f64::total_cmp);
    let [c, b, a] = s;
    let t = c - (a - b);
    if !(t > 0.0) {
        return None;
    }
    Some(0.25 * ((a + (b + c)) * t * (c + (a - b)) * (a + (b - c))).sqrt())
}

/// Flattens the two triangles at `e` into the plane, shared edge on the
/// x-axis, and replaces `e` by the opposite diagonal of the quad. The new
/// length is read off the layout.
pub fn diagonal_switch(mesh: &mut HalfedgeMesh, metric: &mut DiscreteMetric, e: EdgeId) -> Result<(), MeshError> {
    if mesh.is_boundary_edge(e) {
        return Err(MeshError::BoundaryEdge(e));
    }
    let [h0, h1] = e.halfedges();
    // f0 = (a, b, c) laid out with c above the x-axis, f1 = (b, a, d) with d below
    let l_ab = metric.len(e);
    let l_bc = metric.len(mesh.next(h0).edge());
    let l_ca = metric.len(mesh.next(mesh.next(h0)).edge());
    let l_ad = metric.len(mesh.next(h1).edge());
    let l_db = metric.len(mesh.next(mesh.next(h1)).edge());

    // the apex height comes from the area rather than from √(hyp² − x²),
    // which cancels catastrophically on near-degenerate triangles
    let place = |from_a: f64, from_b: f64| -> Result<(f64, f64), MeshError> {
        let x = (l_ab * l_ab + from_a * from_a - from_b * from_b) / (2.0 * l_ab);
        match stable_area(l_ab, from_a, from_b) {
            Some(area) => Ok((x, 2.0 * area / l_ab)),
            None => {
                let f = mesh.face_of(e.halfedges()[0]).unwrap();
                Err(MeshError::TriangleInequality(f))
            }
        }
    };
    let (cx, cy) = place(l_ca, l_bc)?;
    let (dx, dy) = place(l_ad, l_db)?; // d sits at (dx, −dy)

    // the new diagonal must cross the open segment (0, l_ab) on the x-axis
    let t = cy / (cy + dy);
    let x_cross = cx + (dx - cx) * t;
    if !(x_cross > 0.0 && x_cross < l_ab) {
        return Err(MeshError::NonConvexFlip(e));
    }

    let new_len = ((cx - dx) * (cx - dx) + (cy + dy) * (cy + dy)).sqrt();
    mesh.flip_edge(e)?;
    metric.set_len(e, new_len);
    Ok(())
}

/// Flips non-Delaunay edges until none remain. Returns the flip count.
pub fn make_delaunay(mesh: &mut HalfedgeMesh, metric: &mut DiscreteMetric) -> Result<usize, MeshError> {
    let limit = 50 * mesh.n_edges();
    let mut queue: VecDeque<EdgeId> = mesh.edges().filter(|&e| !mesh.is_boundary_edge(e)).collect();
    let mut queued = vec![false; mesh.n_edges()];
    for e in &queue {
        queued[e.index()] = true;
    }
    let mut flips = 0usize;
    while let Some(e) = queue.pop_front() {
        queued[e.index()] = false;
        if mesh.is_boundary_edge(e) || is_delaunay(mesh, metric, e)? {
            continue;
        }
        diagonal_switch(mesh, metric, e)?;
        flips += 1;
        if flips > limit {
            return Err(MeshError::FlipLimitExceeded(limit));
        }
        // the four outer edges of the flipped quad may have turned non-Delaunay
        let [h0, h1] = e.halfedges();
        for h in [mesh.next(h0), mesh.next(mesh.next(h0)), mesh.next(h1), mesh.next(mesh.next(h1))] {
            let side = h.edge();
            if !mesh.is_boundary_edge(side) && !queued[side.index()] {
                queued[side.index()] = true;
                queue.push_back(side);
            }
        }
    }
    Ok(flips)
}
