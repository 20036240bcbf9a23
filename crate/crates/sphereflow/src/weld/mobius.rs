//! Möbius transformations of the extended plane.

use super::extended::{
    chordal_distance,
    ExtendedComplex::{self, Finite, Infinity},
};
use super::WeldError;
use num_complex::Complex;

/// z ↦ (az + b)/(cz + d) with ad − bc ≠ 0, acting on the whole sphere.
#[derive(Clone, Copy, Debug)]
pub struct MobiusTransform {
    pub a: Complex<f64>,
    pub b: Complex<f64>,
    pub c: Complex<f64>,
    pub d: Complex<f64>,
}

impl MobiusTransform {
    /// Rejects coefficient matrices whose determinant is below 1e-14 relative
    /// to the squared coefficient scale.
    pub fn new(
        a: Complex<f64>,
        b: Complex<f64>,
        c: Complex<f64>,
        d: Complex<f64>,
    ) -> Result<Self, WeldError> {
        let t = Self { a, b, c, d };
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if !(t.det().norm() > 1e-14 * scale * scale) {
            return Err(WeldError::DegenerateMobius(format!(
                "determinant {:.3e} below tolerance for coefficient scale {:.3e}",
                t.det().norm(),
                scale
            )));
        }
        Ok(t)
    }

    pub fn identity() -> Self {
        Self { a: Complex::ONE, b: Complex::ZERO, c: Complex::ZERO, d: Complex::ONE }
    }

    pub fn det(&self) -> Complex<f64> {
        self.a * self.d - self.b * self.c
    }

    /// The same transform rescaled so ad − bc = 1.
    pub fn normalized(&self) -> Self {
        let s = self.det().sqrt();
        Self { a: self.a / s, b: self.b / s, c: self.c / s, d: self.d / s }
    }

    pub fn apply(&self, z: ExtendedComplex) -> ExtendedComplex {
        match z {
            Infinity => {
                if self.c == Complex::ZERO {
                    Infinity
                } else {
                    Finite(self.a / self.c)
                }
            }
            Finite(z) => {
                let den = self.c * z + self.d;
                if den == Complex::ZERO {
                    Infinity
                } else {
                    Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    /// self ∘ inner as coefficient matrix product.
    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            a: self.a * inner.a + self.b * inner.c,
            b: self.a * inner.b + self.b * inner.d,
            c: self.c * inner.a + self.d * inner.c,
            d: self.c * inner.b + self.d * inner.d,
        }
    }

    /// Inverse up to scale: (az + b)/(cz + d) ↦ (dz − b)/(−cz + a).
    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// The unique transform with T(z[k]) = w[k]; each anchor image is
    /// verified to 1e-12 in the chordal metric.
    pub fn three_point(
        z: [ExtendedComplex; 3],
        w: [ExtendedComplex; 3],
    ) -> Result<Self, WeldError> {
        for pts in [&z, &w] {
            for i in 0..3 {
                for j in i + 1..3 {
                    if chordal_distance(pts[i], pts[j]) < 1e-14 {
                        return Err(WeldError::DegenerateMobius(
                            "coincident three-point anchors".into(),
                        ));
                    }
                }
            }
        }
        let t = to_zero_one_inf(w)?.inverse().compose(&to_zero_one_inf(z)?);
        for k in 0..3 {
            let gap = chordal_distance(t.apply(z[k]), w[k]);
            if gap > 1e-12 {
                return Err(WeldError::DegenerateMobius(format!(
                    "three-point anchor {k} verified only to {gap:.3e}"
                )));
            }
        }
        Ok(t)
    }
}

/// The transform sending (p₀, p₁, p₂) to (0, 1, ∞).
fn to_zero_one_inf(p: [ExtendedComplex; 3]) -> Result<MobiusTransform, WeldError> {
    let one = Complex::ONE;
    match p {
        [Finite(z1), Finite(z2), Finite(z3)] => {
            MobiusTransform::new(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))
        }
        [Infinity, Finite(z2), Finite(z3)] => {
            MobiusTransform::new(Complex::ZERO, z2 - z3, one, -z3)
        }
        [Finite(z1), Infinity, Finite(z3)] => MobiusTransform::new(one, -z1, one, -z3),
        [Finite(z1), Finite(z2), Infinity] => {
            MobiusTransform::new(one, -z1, Complex::ZERO, z2 - z1)
        }
        // two infinities are coincident and rejected before dispatch
        _ => Err(WeldError::DegenerateMobius("coincident three-point anchors".into())),
    }
}

/// w = (z − i)/(z + i), mapping the upper half plane onto the unit disk
/// interior and the lower half plane onto the exterior; ∞ ↦ 1.
pub fn half_plane_to_disk(z: ExtendedComplex) -> ExtendedComplex {
    let i = Complex::new(0.0, 1.0);
    MobiusTransform { a: Complex::ONE, b: -i, c: Complex::ONE, d: i }.apply(z)
}

/// z = i(1 + w)/(1 − w), the inverse of [`half_plane_to_disk`].
pub fn disk_to_half_plane(w: ExtendedComplex) -> ExtendedComplex {
    let i = Complex::new(0.0, 1.0);
    MobiusTransform { a: i, b: i, c: -Complex::ONE, d: Complex::ONE }.apply(w)
}
