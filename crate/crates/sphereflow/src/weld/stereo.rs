//! Stereographic projection between the extended plane and the unit sphere.

use super::extended::ExtendedComplex::{self, Finite, Infinity};
use nalgebra::Point3;
use num_complex::Complex;

/// Projection from the north pole: 0 ↦ (0,0,−1), 1 ↦ (1,0,0), ∞ ↦ (0,0,1).
pub fn stereographic(p: ExtendedComplex) -> Point3<f64> {
    match p {
        Infinity => Point3::new(0.0, 0.0, 1.0),
        Finite(z) if z.norm_sqr() > 1.0 => {
            // evaluate through 1/z so |z| near the overflow range stays exact
            let u = z.inv();
            let d = 1.0 + u.norm_sqr();
            Point3::new(2.0 * u.re / d, -2.0 * u.im / d, (2.0 - d) / d)
        }
        Finite(z) => {
            let d = 1.0 + z.norm_sqr();
            Point3::new(2.0 * z.re / d, 2.0 * z.im / d, (d - 2.0) / d)
        }
    }
}

/// Inverse projection, (x, y, z) ↦ (x + iy)/(1 − z); the north pole maps
/// to ∞.
pub fn inverse_stereographic(q: &Point3<f64>) -> ExtendedComplex {
    let denom = 1.0 - q.z;
    if denom <= 0.0 {
        Infinity
    } else {
        Finite(Complex::new(q.x / denom, q.y / denom))
    }
}

/// Signed solid angle of the spherical triangle (a, b, c); positive when the
/// vertices wind counterclockwise seen from outside the sphere. Signed areas
/// of a consistently oriented covering of the sphere sum to 4π.
pub fn signed_solid_angle(a: &Point3<f64>, b: &Point3<f64>, c: &Point3<f64>) -> f64 {
    let (va, vb, vc) = (a.coords, b.coords, c.coords);
    let num = va.dot(&vb.cross(&vc));
    let den = 1.0 + va.dot(&vb) + vb.dot(&vc) + vc.dot(&va);
    2.0 * num.atan2(den)
}
