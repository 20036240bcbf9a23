//! Möbius centering and landmark alignment of a spherical embedding.

use super::WeldError;
use crate::mesh::VertexId;
use nalgebra::{Matrix3, Point3, Rotation3, Vector3};

/// Conformal translation of the unit sphere toward v, |v| < 1: the sphere
/// Möbius map fixing ±v/|v| that pushes mass toward v. v = 0 is the
/// identity; unit norm is preserved exactly in real arithmetic.
pub fn sphere_mobius_translate(p: &Point3<f64>, v: &Vector3<f64>) -> Point3<f64> {
    let shifted = p.coords + v;
    Point3::from((1.0 - v.norm_squared()) / shifted.norm_squared() * shifted + v)
}

/// Applies sphere Möbius translations until the weighted mass center
/// ‖Σ wᵥ pᵥ‖ / Σ wᵥ drops below `tolerance`; returns the iteration count.
///
/// The center is, up to a positive factor, the gradient of the total log
/// conformal factor of a translation, so each step takes a damped Newton
/// step on that energy: translating by v moves the center by 2(I − M)v to
/// first order, M the weighted second-moment matrix. A step is accepted
/// when it lowers the energy or the center norm; the energy keeps progress
/// measurable on heavily crowded embeddings, where individual translations
/// barely move the center, and the center norm takes over in the endgame
/// where the energy decrease drops below float resolution. The center
/// sitting on the unit sphere means all mass has collapsed onto one point
/// and no translation can recover; that and a failed step search are
/// reported as non-convergence.
pub fn mobius_center(
    points: &mut [Point3<f64>],
    weights: &[f64],
    tolerance: f64,
) -> Result<usize, WeldError> {
    assert_eq!(points.len(), weights.len());
    let total: f64 = weights.iter().sum();
    assert!(total > 0.0, "weights must have positive total mass");

    let center = |pts: &[Point3<f64>]| -> Vector3<f64> {
        pts.iter().zip(weights).map(|(p, w)| *w * p.coords).sum::<Vector3<f64>>() / total
    };
    // total log conformal factor of translating by v, relative to staying put
    let energy = |pts: &[Point3<f64>], v: &Vector3<f64>| -> f64 {
        let spread: f64 = pts
            .iter()
            .zip(weights)
            .map(|(p, w)| *w * (p.coords + *v).norm_squared().ln())
            .sum();
        spread - total * (1.0 - v.norm_squared()).ln()
    };

    for iteration in 0..1000 {
        let c = center(points);
        if c.norm() < tolerance {
            return Ok(iteration);
        }
        if c.norm() >= 1.0 - 1e-12 {
            return Err(WeldError::CenteringNonConvergence {
                iterations: iteration,
                center_norm: c.norm(),
            });
        }
        let m = points
            .iter()
            .zip(weights)
            .map(|(p, w)| *w * p.coords * p.coords.transpose())
            .sum::<Matrix3<f64>>()
            / total;
        let mut v = (Matrix3::identity() - m).lu().solve(&(-0.5 * c)).unwrap_or(-0.5 * c);
        // a near-singular moment matrix can shoot the step far outside the
        // ball; clamp and let the step search decide
        if v.norm() > 0.9 {
            v *= 0.9 / v.norm();
        }
        let mut accepted = false;
        for _ in 0..60 {
            let improves_energy = energy(points, &v) < 0.0;
            let candidate: Vec<Point3<f64>> = points
                .iter()
                .map(|p| {
                    let mut q = sphere_mobius_translate(p, &v);
                    q.coords.normalize_mut();
                    q
                })
                .collect();
            if improves_energy || center(&candidate).norm() < c.norm() {
                points.copy_from_slice(&candidate);
                accepted = true;
                break;
            }
            v *= 0.5;
        }
        if !accepted {
            return Err(WeldError::CenteringNonConvergence {
                iterations: iteration,
                center_norm: c.norm(),
            });
        }
    }
    Err(WeldError::CenteringNonConvergence {
        iterations: 1000,
        center_norm: center(points).norm(),
    })
}

/// Centers the embedding (center norm < 1e-6), then rotates `top` to
/// (0, 0, 1) and `front` into the y = 0, x > 0 half plane. The centered
/// embedding is unique up to rotation, so the two landmarks fix the map.
/// Returns the number of centering iterations.
pub fn mobius_normalize(
    points: &mut [Point3<f64>],
    weights: &[f64],
    top: VertexId,
    front: VertexId,
) -> Result<usize, WeldError> {
    if top == front {
        return Err(WeldError::DegenerateLandmarks(format!(
            "top and front are the same vertex {top}"
        )));
    }
    if top.index() >= points.len() || front.index() >= points.len() {
        return Err(WeldError::DegenerateLandmarks(format!(
            "landmark out of range for {} vertices",
            points.len()
        )));
    }
    let iterations = mobius_center(points, weights, 1e-6)?;

    let rotation = Rotation3::rotation_between(&points[top.index()].coords, &Vector3::z())
        .unwrap_or_else(|| {
            // antipodal case: any half turn through the poles works
            Rotation3::from_axis_angle(&Vector3::x_axis(), std::f64::consts::PI)
        });
    for p in points.iter_mut() {
        *p = rotation * *p;
    }

    let f = points[front.index()];
    if f.x.hypot(f.y) < 1e-12 {
        return Err(WeldError::DegenerateLandmarks(
            "front landmark sits at a pole, azimuth undefined".into(),
        ));
    }
    let azimuth = Rotation3::from_axis_angle(&Vector3::z_axis(), -f.y.atan2(f.x));
    for p in points.iter_mut() {
        *p = azimuth * *p;
        p.coords.normalize_mut();
    }
    Ok(iterations)
}
