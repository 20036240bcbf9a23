//! Zipper conformal welding: glue two unit-disk images along their boundary
//! correspondence into one embedding of the extended plane.
//!
//! The weld runs in the half-plane model. A Möbius transform pinned on each
//! disk's first three seam vertices sends the first disk to the upper half
//! plane and the second to the lower one, gluing those three pairs at
//! (∞, −1, 0); a square root opens the shared negative axis and the
//! remaining pairs are zipped one at a time: a Möbius transform brings the
//! next pair to ±1 and the tip to 0, then √(z² − 1) folds [−1, 0] onto
//! [0, 1], gluing the pair at 0. A final transform sends the seam anchor to
//! ∞ and z ↦ z² closes the last two boundary arcs over the whole plane.

use super::extended::{chordal_distance, ExtendedComplex};
use super::WeldError;
use crate::mesh::{HalfedgeMesh, VertexId};
use num_complex::Complex;
use std::collections::HashMap;

/// Cyclic boundary correspondence: pairs[i] couples a vertex on the first
/// disk's boundary with its image on the second. Consecutive pairs are
/// adjacent along both boundary loops, which run in mutually reversed
/// directions around the seam.
#[derive(Clone, Debug)]
pub struct WeldingSignature {
    pub pairs: Vec<(VertexId, VertexId)>,
}

#[derive(Debug)]
pub struct WeldedPlane {
    /// The two halves glued along the seam into one closed mesh.
    pub mesh: HalfedgeMesh,
    /// Vertex images; exactly one entry, the seam anchor, is ∞.
    pub z: Vec<ExtendedComplex>,
    /// Combined ids of the seam vertices in signature order.
    pub seam: Vec<VertexId>,
    /// The seam anchor, the single vertex mapped to ∞.
    pub infinity_vertex: VertexId,
    /// Largest chordal gap between the two images of a seam vertex.
    pub seam_defect: f64,
    pub first_to_combined: Vec<VertexId>,
    pub second_to_combined: Vec<VertexId>,
}

/// Image of one vertex during the weld. Boundary points are kept exactly
/// real so square-root branches are decided by the tag, never by the sign of
/// a rounded imaginary part.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Tracked {
    Interior(Complex<f64>),
    Real(f64),
    Inf,
}

use Tracked::{Inf, Interior, Real};

impl Tracked {
    fn to_extended(self) -> ExtendedComplex {
        match self {
            Interior(z) => ExtendedComplex::Finite(z),
            Real(x) => ExtendedComplex::new(x, 0.0),
            Inf => ExtendedComplex::Infinity,
        }
    }

    fn real(self) -> Result<Option<f64>, WeldError> {
        match self {
            Real(x) => Ok(Some(x)),
            Inf => Ok(None),
            Interior(z) => Err(WeldError::BranchTracking {
                detail: format!("expected a boundary point, found interior {z}"),
            }),
        }
    }
}

/// Real-coefficient Möbius transform; maps reals to reals exactly and, when
/// its determinant is positive, preserves the upper half plane.
#[derive(Clone, Copy, Debug)]
struct RealMobius {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl RealMobius {
    fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    fn check_det(self, context: &str) -> Result<Self, WeldError> {
        let scale = self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs());
        if !(self.det().abs() > 1e-14 * scale * scale) {
            return Err(WeldError::DegenerateMobius(format!(
                "{context}: determinant {:.3e} below tolerance",
                self.det()
            )));
        }
        Ok(self)
    }

    fn apply(&self, t: Tracked) -> Tracked {
        match t {
            Inf => {
                if self.c == 0.0 {
                    Inf
                } else {
                    Real(self.a / self.c)
                }
            }
            Real(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    Inf
                } else {
                    Real((self.a * x + self.b) / den)
                }
            }
            Interior(z) => Interior((self.a * z + self.b) / (self.c * z + self.d)),
        }
    }
}

/// Möbius transform pinned to send (w₀, w₁, w₂) to (∞, −1, 0): w₀ and w₂ map
/// exactly by cancellation, w₁ to −1 up to rounding. The circle through the
/// anchors goes to the real line; which side becomes the upper half plane
/// follows the anchors' cyclic orientation.
struct AnchorMap {
    k: Complex<f64>,
    w0: Complex<f64>,
    w2: Complex<f64>,
}

impl AnchorMap {
    fn new(w0: Complex<f64>, w1: Complex<f64>, w2: Complex<f64>) -> Result<Self, WeldError> {
        if w0 == w1 || w1 == w2 || w0 == w2 {
            return Err(WeldError::DegenerateMobius("coincident gluing anchors".into()));
        }
        let k = -((w1 - w0) / (w1 - w2));
        if !k.re.is_finite() || !k.im.is_finite() || k == Complex::ZERO {
            return Err(WeldError::DegenerateMobius("collapsed gluing anchors".into()));
        }
        Ok(AnchorMap { k, w0, w2 })
    }

    fn apply(&self, w: Complex<f64>) -> Complex<f64> {
        self.k * (w - self.w2) / (w - self.w0)
    }
}

/// The real transform sending (p, 0, q) to (−1, 0, 1); None is ∞. Zero is
/// fixed exactly (b = 0), and when one anchor is infinite the other pin is
/// exact as well.
fn to_neg1_zero_pos1(p: Option<f64>, q: Option<f64>) -> Result<RealMobius, WeldError> {
    require_distinct(&[p, Some(0.0), q])?;
    let t = match (p, q) {
        (Some(p), Some(q)) => RealMobius { a: q - p, b: 0.0, c: q + p, d: -2.0 * p * q },
        (Some(p), None) => RealMobius { a: 1.0, b: 0.0, c: 1.0, d: -2.0 * p },
        (None, Some(q)) => RealMobius { a: -1.0, b: 0.0, c: 1.0, d: -2.0 * q },
        (None, None) => unreachable!("distinctness rejects two anchors at infinity"),
    };
    t.check_det("zip anchors")
}

fn require_distinct(p: &[Option<f64>; 3]) -> Result<(), WeldError> {
    for i in 0..3 {
        for j in i + 1..3 {
            let coincident = match (p[i], p[j]) {
                (None, None) => true,
                (Some(a), Some(b)) => a == b,
                _ => false,
            };
            if coincident {
                return Err(WeldError::DegenerateMobius(
                    "coincident three-point anchors".into(),
                ));
            }
        }
    }
    Ok(())
}

/// w = √(z² − 1) on the closed upper half plane: ±1 ↦ 0, the intervals
/// [−1, 0] and [0, 1] fold together onto the slit (0, i], reals beyond ±1
/// stay real with their sign, and the open half plane maps onto itself minus
/// the slit.
fn fold(t: Tracked) -> Tracked {
    match t {
        Inf => Inf,
        Real(x) => {
            // beyond 1e120 the −1 is below resolution and x² would overflow
            if x.abs() >= 1e120 {
                Real(x)
            } else if x.abs() >= 1.0 {
                Real(x.signum() * (x * x - 1.0).sqrt())
            } else {
                Interior(Complex::new(0.0, (1.0 - x * x).sqrt()))
            }
        }
        Interior(z) => {
            if z.norm_sqr() >= 1e240 {
                Interior(z)
            } else {
                let w = (z * z - Complex::ONE).sqrt();
                Interior(if w.im < 0.0 { -w } else { w })
            }
        }
    }
}

/// √(z² − 1) with the branch that folds the upper half plane onto itself
/// minus the slit (0, i]: ±1 ↦ 0, 0 ↦ i, and reals beyond ±1 keep their
/// sign. The boundary branch is decided by an exactly zero imaginary part.
pub fn glue_fold(z: ExtendedComplex) -> ExtendedComplex {
    let t = match z {
        ExtendedComplex::Infinity => Inf,
        ExtendedComplex::Finite(z) if z.im == 0.0 => Real(z.re),
        ExtendedComplex::Finite(z) => Interior(z),
    };
    fold(t).to_extended()
}

/// √(z² + 1) with the upper-half-plane branch, the inverse of [`glue_fold`]:
/// i ↦ 0, ±1 ↦ ±√2, and the slit (0, i] opens back onto [−1, 1]. On the
/// slit itself the side reached from x > 0 is returned.
pub fn slit_open(z: ExtendedComplex) -> ExtendedComplex {
    match z {
        ExtendedComplex::Infinity => ExtendedComplex::Infinity,
        ExtendedComplex::Finite(z) if z.im == 0.0 => {
            if z.re.abs() >= 1e120 {
                ExtendedComplex::Finite(z)
            } else {
                let sign = if z.re < 0.0 { -1.0 } else { 1.0 };
                ExtendedComplex::new(sign * (z.re * z.re + 1.0).sqrt(), 0.0)
            }
        }
        ExtendedComplex::Finite(z) => {
            if z.norm_sqr() >= 1e240 {
                return ExtendedComplex::Finite(z);
            }
            let w = (z * z + Complex::ONE).sqrt();
            let w = if w.im < 0.0 { -w } else { w };
            // points on the slit give a real root: return the positive side
            ExtendedComplex::Finite(if w.im == 0.0 { Complex::new(w.re.abs(), 0.0) } else { w })
        }
    }
}

/// Twice the signed area of the closed polygon; positive for ccw.
fn shoelace(points: &[Complex<f64>]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|i| {
            let (a, b) = (points[i], points[(i + 1) % n]);
            a.re * b.im - b.re * a.im
        })
        .sum()
}

/// Checks that `seam` is exactly the single boundary loop of `mesh`, visited
/// consecutively in one direction or the other.
fn require_seam_is_boundary(
    mesh: &HalfedgeMesh,
    seam: &[VertexId],
    which: &str,
) -> Result<(), WeldError> {
    let loops = mesh.boundary_loops();
    if loops.len() != 1 {
        return Err(WeldError::Signature(format!(
            "{which} disk has {} boundary loops, expected 1",
            loops.len()
        )));
    }
    let n = seam.len();
    if loops[0].len() != n {
        return Err(WeldError::Signature(format!(
            "{which} disk boundary has {} vertices but the signature lists {n}",
            loops[0].len()
        )));
    }
    let pos: HashMap<VertexId, usize> =
        loops[0].iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let Some(&start) = pos.get(&seam[0]) else {
        return Err(WeldError::Signature(format!(
            "{which} signature vertex {} is not on the boundary",
            seam[0]
        )));
    };
    let next = pos.get(&seam[1]).copied();
    let dir: i64 = if next == Some((start + 1) % n) {
        1
    } else if next == Some((start + n - 1) % n) {
        -1
    } else {
        return Err(WeldError::Signature(format!("{which} signature is not contiguous")));
    };
    for (k, v) in seam.iter().enumerate() {
        let expect = (start as i64 + dir * k as i64).rem_euclid(n as i64) as usize;
        if pos.get(v) != Some(&expect) {
            return Err(WeldError::Signature(format!("{which} signature is not contiguous")));
        }
    }
    Ok(())
}

/// Welds two conformal disk images of the halves of a surface into one
/// conformal embedding of the sphere, realized as the extended plane with
/// exactly one vertex at ∞.
///
/// The signature lists the seam in cyclic order; the two boundary loops must
/// traverse it in opposite directions, as they do when both halves come from
/// cutting one oriented surface. Seam vertices are glued pairwise and the
/// returned mesh is the closed union of both halves, with the first half's
/// vertex ids retained.
pub fn zipper_weld(
    first: &HalfedgeMesh,
    z_first: &[Complex<f64>],
    second: &HalfedgeMesh,
    z_second: &[Complex<f64>],
    sig: &WeldingSignature,
) -> Result<WeldedPlane, WeldError> {
    if z_first.len() != first.n_vertices() || z_second.len() != second.n_vertices() {
        return Err(WeldError::Signature("embedding length differs from vertex count".into()));
    }
    let n = sig.pairs.len();
    if n < 4 {
        return Err(WeldError::Signature(format!("seam has {n} vertices, need at least 4")));
    }

    // normalize the order so the seam runs counterclockwise on the first disk
    let mut s1: Vec<VertexId> = sig.pairs.iter().map(|p| p.0).collect();
    let mut s2: Vec<VertexId> = sig.pairs.iter().map(|p| p.1).collect();
    require_seam_is_boundary(first, &s1, "first")?;
    require_seam_is_boundary(second, &s2, "second")?;
    let ring1: Vec<Complex<f64>> = s1.iter().map(|v| z_first[v.index()]).collect();
    if shoelace(&ring1) < 0.0 {
        s1[1..].reverse();
        s2[1..].reverse();
    }
    let ring2: Vec<Complex<f64>> = s2.iter().map(|v| z_second[v.index()]).collect();
    if shoelace(&ring2) >= 0.0 {
        return Err(WeldError::Signature(
            "both boundary loops run in the same direction; the halves must induce \
             opposite seam orientations"
                .into(),
        ));
    }
    for (which, ring) in [("first", &ring1), ("second", &ring2)] {
        for w in ring.iter() {
            if (w.norm() - 1.0).abs() > 1e-4 {
                return Err(WeldError::Signature(format!(
                    "{which} disk boundary vertex at radius {:.6} is off the unit circle",
                    w.norm()
                )));
            }
        }
    }

    let seam_index_1 = seam_index_table(first.n_vertices(), &s1);
    let seam_index_2 = seam_index_table(second.n_vertices(), &s2);

    // step 1: one Möbius per disk glues the leading anchor triples at
    // (∞, −1, 0), the first disk filling the upper half plane and the second
    // the lower; the unglued remainders of both seams land on the positive
    // axis. Pinning the pole on the anchor itself keeps the transport well
    // conditioned for every other vertex.
    let mut t1 = to_anchored_half_plane(z_first, &seam_index_1, &s1, false, "first")?;
    let mut t2 = to_anchored_half_plane(z_second, &seam_index_2, &s2, true, "second")?;
    pin_seam(&mut t1, &s1, 1, Real(-1.0))?;
    pin_seam(&mut t1, &s1, 2, Real(0.0))?;
    pin_seam(&mut t2, &s2, 1, Real(-1.0))?;
    pin_seam(&mut t2, &s2, 2, Real(0.0))?;
    for k in 3..n {
        for (which, t, s) in [("first", &t1, &s1), ("second", &t2, &s2)] {
            match t[s[k].index()] {
                Real(x) if x > 0.0 => {}
                other => {
                    let near: Vec<Tracked> = (k.saturating_sub(2)..(k + 3).min(n))
                        .map(|j| t[s[j].index()])
                        .collect();
                    return Err(WeldError::BranchTracking {
                        detail: format!(
                            "{which} seam vertex {k} at {other:?} is off the positive axis \
                             before the opening square root (neighborhood {near:?})"
                        ),
                    })
                }
            }
        }
    }
    // √z with the cut along the glued positive axis: the upper half plane
    // keeps the principal root, the lower one takes its negative, and the
    // shared negative axis opens onto the imaginary axis from both sides
    let open_sqrt = |t: Tracked, lower: bool| -> Result<Tracked, WeldError> {
        Ok(match t {
            Inf => Inf,
            Real(x) if x > 0.0 => Real(if lower { -x.sqrt() } else { x.sqrt() }),
            Real(x) if x == 0.0 => Real(0.0),
            Real(x) => Interior(Complex::new(0.0, (-x).sqrt())),
            Interior(z) => {
                let expected = if lower { z.im < 0.0 } else { z.im > 0.0 };
                if !expected {
                    return Err(WeldError::BranchTracking {
                        detail: format!("interior point {z} crossed the real axis in step 1"),
                    });
                }
                let w = z.sqrt();
                Interior(if lower { -w } else { w })
            }
        })
    };
    for t in t1.iter_mut() {
        *t = open_sqrt(*t, false)?;
    }
    for t in t2.iter_mut() {
        *t = open_sqrt(*t, true)?;
    }

    // step 2: zip the remaining pairs one at a time. The current pair comes
    // to ±1 with the tip fixed at 0; the fold glues it there. Every not yet
    // glued copy must stay in the far arc |x| > 1 ∪ {∞} in between.
    for k in 3..n {
        let p = t2[s2[k].index()].real()?;
        let q = t1[s1[k].index()].real()?;
        let psi = to_neg1_zero_pos1(p, q)?;
        if psi.det() <= 0.0 {
            return Err(WeldError::BranchTracking {
                detail: format!("pair {k} is ordered against the seam orientation"),
            });
        }
        for t in t1.iter_mut().chain(t2.iter_mut()) {
            *t = psi.apply(*t);
        }
        pin_seam(&mut t1, &s1, k, Real(1.0))?;
        pin_seam(&mut t2, &s2, k, Real(-1.0))?;
        for j in (k + 1..n).chain([0]) {
            for (t, s) in [(&t1, &s1), (&t2, &s2)] {
                match t[s[j].index()] {
                    Inf => {}
                    Real(x) if x.abs() > 1.0 => {}
                    other => {
                        return Err(WeldError::BranchTracking {
                            detail: format!(
                                "unglued seam vertex {j} at {other:?} collided with the \
                                 pair being glued"
                            ),
                        })
                    }
                }
            }
        }
        for t in t1.iter_mut().chain(t2.iter_mut()) {
            *t = fold(*t);
        }
    }

    // step 3: send the seam anchor to ∞ keeping 0 fixed, then close the two
    // remaining boundary arcs with z ↦ z²
    let anchor = match (t1[s1[0].index()], t2[s2[0].index()]) {
        (Inf, Inf) => None,
        (Real(x), Real(y)) => {
            if (x - y).abs() > 1e-6 * (1.0 + x.abs().max(y.abs())) {
                return Err(WeldError::SeamMismatch {
                    pair: 0,
                    distance: chordal_distance(
                        ExtendedComplex::new(x, 0.0),
                        ExtendedComplex::new(y, 0.0),
                    ),
                });
            }
            Some(0.5 * (x + y))
        }
        (a, b) => {
            return Err(WeldError::BranchTracking {
                detail: format!("seam anchor copies disagree: {a:?} vs {b:?}"),
            })
        }
    };
    if let Some(a) = anchor {
        if a == 0.0 {
            return Err(WeldError::BranchTracking {
                detail: "seam anchor collapsed onto the zipper tip".into(),
            });
        }
        // both copies take the midpoint so z − a vanishes exactly for both;
        // the sign keeps the determinant positive on either side of 0
        t1[s1[0].index()] = Real(a);
        t2[s2[0].index()] = Real(a);
        let sign = if a < 0.0 { 1.0 } else { -1.0 };
        let send_off = RealMobius { a: sign, b: 0.0, c: 1.0, d: -a };
        for t in t1.iter_mut().chain(t2.iter_mut()) {
            *t = send_off.apply(*t);
        }
    }
    for t in t1.iter_mut().chain(t2.iter_mut()) {
        *t = match *t {
            Inf => Inf,
            Real(x) => {
                if x.abs() >= 1e150 {
                    return Err(WeldError::BranchTracking {
                        detail: "coordinate overflow while squaring".into(),
                    });
                }
                Real(x * x)
            }
            Interior(z) => {
                if z.norm_sqr() >= 1e300 {
                    return Err(WeldError::BranchTracking {
                        detail: "coordinate overflow while squaring".into(),
                    });
                }
                Interior(z * z)
            }
        };
    }

    // seam closure and the welded image of each pair
    let mut seam_defect = 0.0f64;
    let mut welded: Vec<ExtendedComplex> = Vec::with_capacity(n);
    for i in 0..n {
        let a = t1[s1[i].index()].to_extended();
        let b = t2[s2[i].index()].to_extended();
        let gap = chordal_distance(a, b);
        seam_defect = seam_defect.max(gap);
        if gap > 1e-6 {
            return Err(WeldError::SeamMismatch { pair: i, distance: gap });
        }
        let joined = match (a, b) {
            (ExtendedComplex::Finite(x), ExtendedComplex::Finite(y)) => {
                ExtendedComplex::Finite(0.5 * (x + y))
            }
            _ => ExtendedComplex::Infinity,
        };
        welded.push(joined);
    }
    if !welded[0].is_infinite() {
        return Err(WeldError::BranchTracking {
            detail: "seam anchor ended at a finite coordinate".into(),
        });
    }

    // glue the meshes: second-half seam vertices reuse first-half ids
    let n1 = first.n_vertices();
    let mut positions = first.positions().to_vec();
    let mut second_to_combined = vec![VertexId::new(0); second.n_vertices()];
    for i in 0..n {
        second_to_combined[s2[i].index()] = s1[i];
    }
    for v in second.vertices() {
        if seam_index_2[v.index()].is_none() {
            second_to_combined[v.index()] = VertexId::new(positions.len());
            positions.push(second.position(v));
        }
    }
    let mut faces = first.face_list();
    for f in second.faces() {
        faces.push(second.face_vertices(f).map(|v| second_to_combined[v.index()].0));
    }
    let mesh = HalfedgeMesh::from_faces_with_positions(positions, &faces)?;
    if !mesh.is_closed() || mesh.euler_characteristic() != 2 {
        return Err(WeldError::Signature(format!(
            "welded halves do not close into a sphere: χ = {}, closed = {}",
            mesh.euler_characteristic(),
            mesh.is_closed()
        )));
    }

    let mut z = vec![ExtendedComplex::ZERO; mesh.n_vertices()];
    for v in first.vertices() {
        z[v.index()] = t1[v.index()].to_extended();
    }
    for v in second.vertices() {
        if seam_index_2[v.index()].is_none() {
            z[second_to_combined[v.index()].index()] = t2[v.index()].to_extended();
        }
    }
    for (i, w) in welded.iter().enumerate() {
        z[s1[i].index()] = *w;
    }
    for (v, zv) in z.iter().enumerate() {
        match zv {
            ExtendedComplex::Infinity => {
                if VertexId::new(v) != s1[0] {
                    return Err(WeldError::BranchTracking {
                        detail: format!("vertex {v} reached ∞ but is not the seam anchor"),
                    });
                }
            }
            ExtendedComplex::Finite(c) => {
                if !c.re.is_finite() || !c.im.is_finite() {
                    return Err(WeldError::BranchTracking {
                        detail: format!("vertex {v} has a non-finite coordinate"),
                    });
                }
            }
        }
    }

    Ok(WeldedPlane {
        mesh,
        z,
        infinity_vertex: s1[0],
        seam: s1,
        seam_defect,
        first_to_combined: (0..n1).map(VertexId::new).collect(),
        second_to_combined,
    })
}

fn seam_index_table(n_vertices: usize, seam: &[VertexId]) -> Vec<Option<usize>> {
    let mut table = vec![None; n_vertices];
    for (i, v) in seam.iter().enumerate() {
        table[v.index()] = Some(i);
    }
    table
}

/// Sends one disk to a half plane with its leading seam anchors pinned at
/// (∞, −1, 0). Seam vertices are tagged exactly real, interior vertices must
/// land strictly inside the expected half.
fn to_anchored_half_plane(
    z: &[Complex<f64>],
    seam_index: &[Option<usize>],
    s: &[VertexId],
    lower: bool,
    which: &str,
) -> Result<Vec<Tracked>, WeldError> {
    let t = AnchorMap::new(z[s[0].index()], z[s[1].index()], z[s[2].index()])?;
    z.iter()
        .enumerate()
        .map(|(v, w)| {
            if seam_index[v] == Some(0) {
                return Ok(Inf);
            }
            let image = t.apply(*w);
            if !image.re.is_finite() || !image.im.is_finite() {
                return Err(WeldError::BranchTracking {
                    detail: format!("{which} disk vertex {v} collides with the seam anchor"),
                });
            }
            match seam_index[v] {
                Some(_) => Ok(Real(image.re)),
                None => {
                    let inside = if lower { image.im < 0.0 } else { image.im > 0.0 };
                    if inside {
                        Ok(Interior(image))
                    } else {
                        Err(WeldError::BranchTracking {
                            detail: format!(
                                "{which} disk interior vertex {v} landed outside its half \
                                 plane; the disk embedding or seam orientation is inconsistent"
                            ),
                        })
                    }
                }
            }
        })
        .collect()
}

/// Replaces a seam copy with its exact glue target after checking the
/// transform put it within 1e-9 of that target.
fn pin_seam(
    t: &mut [Tracked],
    s: &[VertexId],
    k: usize,
    target: Tracked,
) -> Result<(), WeldError> {
    let current = t[s[k].index()];
    let gap = chordal_distance(current.to_extended(), target.to_extended());
    if gap > 1e-9 {
        return Err(WeldError::BranchTracking {
            detail: format!(
                "seam vertex {k} landed {gap:.3e} away from its glue target {target:?}"
            ),
        });
    }
    t[s[k].index()] = target;
    Ok(())
}
