//! Arithmetic on the extended complex plane.

use super::stereo::stereographic;
use super::WeldError;
use num_complex::Complex;

/// A point of the Riemann sphere: a finite complex number or the single
/// point at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex<f64>),
    Infinity,
}

use ExtendedComplex::{Finite, Infinity};

impl From<Complex<f64>> for ExtendedComplex {
    fn from(z: Complex<f64>) -> Self {
        Finite(z)
    }
}

impl ExtendedComplex {
    pub fn new(re: f64, im: f64) -> Self {
        Finite(Complex::new(re, im))
    }

    pub const ZERO: Self = Finite(Complex::new(0.0, 0.0));

    pub fn is_infinite(self) -> bool {
        matches!(self, Infinity)
    }

    pub fn finite(self) -> Option<Complex<f64>> {
        match self {
            Finite(z) => Some(z),
            Infinity => None,
        }
    }

    /// 1/0 = ∞ and 1/∞ = 0; total on the sphere.
    pub fn recip(self) -> Self {
        match self {
            Infinity => Self::ZERO,
            Finite(z) if z == Complex::ZERO => Infinity,
            Finite(z) => Finite(z.inv()),
        }
    }

    /// Errors on ∞ + ∞: two points escaping to infinity can sum to anything.
    pub fn add(self, rhs: Self) -> Result<Self, WeldError> {
        match (self, rhs) {
            (Infinity, Infinity) => Err(WeldError::Indeterminate("∞ + ∞")),
            (Infinity, _) | (_, Infinity) => Ok(Infinity),
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
        }
    }

    pub fn sub(self, rhs: Self) -> Result<Self, WeldError> {
        match (self, rhs) {
            (Infinity, Infinity) => Err(WeldError::Indeterminate("∞ − ∞")),
            (Infinity, _) | (_, Infinity) => Ok(Infinity),
            (Finite(a), Finite(b)) => Ok(Finite(a - b)),
        }
    }

    pub fn mul(self, rhs: Self) -> Result<Self, WeldError> {
        match (self, rhs) {
            (Infinity, Finite(z)) | (Finite(z), Infinity) if z == Complex::ZERO => {
                Err(WeldError::Indeterminate("∞ · 0"))
            }
            (Infinity, _) | (_, Infinity) => Ok(Infinity),
            (Finite(a), Finite(b)) => Ok(Finite(a * b)),
        }
    }

    /// 0/0 and ∞/∞ are errors via the ∞·0 form.
    pub fn div(self, rhs: Self) -> Result<Self, WeldError> {
        self.mul(rhs.recip())
    }

    pub fn conj(self) -> Self {
        match self {
            Infinity => Infinity,
            Finite(z) => Finite(z.conj()),
        }
    }
}

/// Length of the chord between the stereographic images on the unit sphere;
/// a metric on the extended plane, at most 2, robust for huge coordinates.
pub fn chordal_distance(a: ExtendedComplex, b: ExtendedComplex) -> f64 {
    (stereographic(a) - stereographic(b)).norm()
}
