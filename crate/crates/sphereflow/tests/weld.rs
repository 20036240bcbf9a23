use nalgebra::{Matrix3, Point3, Vector3};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sphereflow::flow::FlowOptions;
use sphereflow::mesh::{vertex_area_weights, HalfedgeMesh, VertexId};
use sphereflow::shapes::{ellipsoid, icosphere, round_disk};
use sphereflow::weld::{
    chordal_distance, conformal_spherical_map, disk_to_half_plane, glue_fold,
    half_plane_to_disk, mobius_center, mobius_normalize, signed_solid_angle, slit_open,
    sphere_mobius_translate, stereographic, zipper_weld, ExtendedComplex, MobiusTransform,
    SphericalMap, WeldError, WeldingSignature,
};
use std::f64::consts::PI;

fn ext(re: f64, im: f64) -> ExtendedComplex {
    ExtendedComplex::new(re, im)
}

const INF: ExtendedComplex = ExtendedComplex::Infinity;

/// Weighted RMS distance after the best rotation-only alignment (Kabsch).
fn best_rotation_rms(from: &[Point3<f64>], to: &[Point3<f64>], w: &[f64]) -> f64 {
    let mut m = Matrix3::zeros();
    for ((a, b), wi) in from.iter().zip(to).zip(w) {
        m += *wi * b.coords * a.coords.transpose();
    }
    let svd = m.svd(true, true);
    let (u, v_t) = (svd.u.unwrap(), svd.v_t.unwrap());
    let flip = (u * v_t).determinant().signum();
    let r = u * Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, flip)) * v_t;
    let total: f64 = w.iter().sum();
    let sq: f64 = from
        .iter()
        .zip(to)
        .zip(w)
        .map(|((a, b), wi)| wi * (r * a.coords - b.coords).norm_squared())
        .sum();
    (sq / total).sqrt()
}

#[test]
fn extended_arithmetic_follows_riemann_sphere_conventions() {
    let one = ext(1.0, 0.0);
    assert!(ExtendedComplex::ZERO.recip().is_infinite());
    assert_eq!(INF.recip(), ExtendedComplex::ZERO);
    assert!(one.div(ExtendedComplex::ZERO).unwrap().is_infinite());
    assert!(one.add(INF).unwrap().is_infinite());
    assert!(INF.sub(one).unwrap().is_infinite());
    assert!(matches!(INF.add(INF), Err(WeldError::Indeterminate(_))));
    assert!(matches!(INF.sub(INF), Err(WeldError::Indeterminate(_))));
    assert!(matches!(INF.mul(ExtendedComplex::ZERO), Err(WeldError::Indeterminate(_))));
    assert!(matches!(ExtendedComplex::ZERO.div(ExtendedComplex::ZERO), Err(WeldError::Indeterminate(_))));
    assert!(matches!(INF.div(INF), Err(WeldError::Indeterminate(_))));
    assert_eq!(ext(1.0, 2.0).conj(), ext(1.0, -2.0));
    assert_eq!(INF.conj(), INF);
    // 0 and ∞ are antipodal on the unit sphere
    assert!((chordal_distance(ExtendedComplex::ZERO, INF) - 2.0).abs() < 1e-15);
    assert!(chordal_distance(ext(3.0, -4.0), ext(3.0, -4.0)) == 0.0);
}

#[test]
fn cayley_maps_match_pinned_values_and_invert() {
    assert!(chordal_distance(half_plane_to_disk(ext(0.0, 1.0)), ExtendedComplex::ZERO) < 1e-15);
    assert!(chordal_distance(half_plane_to_disk(INF), ext(1.0, 0.0)) < 1e-15);
    assert!(chordal_distance(disk_to_half_plane(ExtendedComplex::ZERO), ext(0.0, 1.0)) < 1e-15);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let z = ext(rng.random_range(-3.0..3.0), rng.random_range(0.0..3.0));
        assert!(chordal_distance(disk_to_half_plane(half_plane_to_disk(z)), z) < 1e-12);
        let w = ext(rng.random_range(-0.99..0.99), rng.random_range(-0.99..0.99));
        assert!(chordal_distance(half_plane_to_disk(disk_to_half_plane(w)), w) < 1e-12);
    }
}

#[test]
fn three_point_transforms_hit_their_anchors() {
    let zero = ExtendedComplex::ZERO;
    let one = ext(1.0, 0.0);

    // fixing three points forces the identity
    let t = MobiusTransform::three_point([zero, one, INF], [zero, one, INF]).unwrap();
    for probe in [ext(2.0, 3.0), ext(-7.0, 0.0), INF, ext(0.0, 0.5)] {
        assert!(chordal_distance(t.apply(probe), probe) < 1e-12);
    }

    // (0, 1, ∞) → (−1, 0, 1) is z ↦ (z−1)/(z+1)
    let t = MobiusTransform::three_point([zero, one, INF], [ext(-1.0, 0.0), zero, one]).unwrap();
    for probe in [zero, one, INF, ext(0.0, 1.0), ext(2.0, 1.0)] {
        let image = match probe.finite() {
            Some(z) => {
                ExtendedComplex::Finite((z - Complex::new(1.0, 0.0)) / (z + Complex::new(1.0, 0.0)))
            }
            None => one,
        };
        assert!(chordal_distance(t.apply(probe), image) < 1e-12);
    }

    let t = MobiusTransform::three_point([ext(0.0, 1.0), zero, ext(0.0, -1.0)], [zero, one, INF])
        .unwrap();
    assert!(chordal_distance(t.apply(ext(0.0, 1.0)), zero) < 1e-12);
    assert!(chordal_distance(t.apply(zero), one) < 1e-12);
    assert!(chordal_distance(t.apply(ext(0.0, -1.0)), INF) < 1e-12);

    assert!(matches!(
        MobiusTransform::three_point([zero, zero, INF], [zero, one, INF]),
        Err(WeldError::DegenerateMobius(_))
    ));
}

#[test]
fn mobius_composition_and_inverse_act_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let random_transform = |rng: &mut ChaCha8Rng| loop {
        let c = |rng: &mut ChaCha8Rng| {
            Complex::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))
        };
        if let Ok(t) = MobiusTransform::new(c(rng), c(rng), c(rng), c(rng)) {
            if t.det().norm() > 0.1 {
                return t;
            }
        }
    };
    for _ in 0..50 {
        let s = random_transform(&mut rng);
        let t = random_transform(&mut rng);
        let st = s.compose(&t);
        for _ in 0..5 {
            let z = ext(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0));
            assert!(chordal_distance(st.apply(z), s.apply(t.apply(z))) < 1e-12);
            assert!(chordal_distance(s.inverse().apply(s.apply(z)), z) < 1e-12);
        }
        assert!(chordal_distance(st.apply(INF), s.apply(t.apply(INF))) < 1e-12);
    }
}

#[test]
fn stereographic_matches_pinned_values_and_inverts() {
    assert!((stereographic(ExtendedComplex::ZERO) - Point3::new(0.0, 0.0, -1.0)).norm() < 1e-15);
    assert!((stereographic(ext(1.0, 0.0)) - Point3::new(1.0, 0.0, 0.0)).norm() < 1e-15);
    assert!((stereographic(INF) - Point3::new(0.0, 0.0, 1.0)).norm() < 1e-15);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let z = ext(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let p = stereographic(z);
        assert!((p.coords.norm() - 1.0).abs() < 1e-12);
        assert!(chordal_distance(sphereflow::weld::inverse_stereographic(&p), z) < 1e-12);
    }
    // far points project next to the north pole without overflowing
    for z in [ext(1e200, 0.0), ext(-3e150, 4e150), INF] {
        let p = stereographic(z);
        assert!((p.coords.norm() - 1.0).abs() < 1e-12);
        assert!(chordal_distance(sphereflow::weld::inverse_stereographic(&p), z) < 1e-12);
    }

    // one octant covers an eighth of the sphere, with positive orientation
    let octant = signed_solid_angle(
        &Point3::new(1.0, 0.0, 0.0),
        &Point3::new(0.0, 1.0, 0.0),
        &Point3::new(0.0, 0.0, 1.0),
    );
    assert!((octant - PI / 2.0).abs() < 1e-12);
}

#[test]
fn fold_and_slit_are_inverse_branches() {
    // slit map pins: ζ(i) = 0, ζ(±1) = ±√2 continued from the upper half plane
    assert!(chordal_distance(slit_open(ext(0.0, 1.0)), ExtendedComplex::ZERO) < 1e-15);
    assert!(chordal_distance(slit_open(ext(1.0, 0.0)), ext(2f64.sqrt(), 0.0)) < 1e-15);
    assert!(chordal_distance(slit_open(ext(-1.0, 0.0)), ext(-(2f64.sqrt()), 0.0)) < 1e-15);
    // fold pins: the glue targets land on the slit
    assert!(chordal_distance(glue_fold(ExtendedComplex::ZERO), ext(0.0, 1.0)) < 1e-15);
    assert!(chordal_distance(glue_fold(ext(1.0, 0.0)), ExtendedComplex::ZERO) < 1e-15);
    assert!(chordal_distance(glue_fold(ext(-1.0, 0.0)), ExtendedComplex::ZERO) < 1e-15);
    assert!(chordal_distance(glue_fold(ext(2.0, 0.0)), ext(3f64.sqrt(), 0.0)) < 1e-15);
    assert!(chordal_distance(glue_fold(ext(-2.0, 0.0)), ext(-(3f64.sqrt()), 0.0)) < 1e-15);
    assert!(glue_fold(INF).is_infinite() && slit_open(INF).is_infinite());

    // the two are inverse away from the glued segment [−1, 1]
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let z = ext(rng.random_range(-4.0..4.0), rng.random_range(1e-6..4.0));
        assert!(chordal_distance(slit_open(glue_fold(z)), z) < 1e-9);
        assert!(chordal_distance(glue_fold(slit_open(z)), z) < 1e-9);
        let sign = if rng.random_range(0..2) == 0 { 1.0 } else { -1.0 };
        let x = ext(sign * rng.random_range(1.0001..50.0), 0.0);
        assert!(chordal_distance(slit_open(glue_fold(x)), x) < 1e-9);
        assert!(chordal_distance(glue_fold(slit_open(x)), x) < 1e-9);
    }
}

/// Two flat disks meshing the stereographic images of the hemispheres of a
/// round sphere, with the equatorial identification as the signature. The
/// second hemisphere is mirrored so its planar embedding stays
/// counterclockwise while the shared boundary runs the opposite way.
fn hemisphere_disks(
    rings: u32,
) -> (HalfedgeMesh, Vec<Complex<f64>>, HalfedgeMesh, Vec<Complex<f64>>, WeldingSignature) {
    let d1 = round_disk(rings);
    let mirrored: Vec<Point3<f64>> =
        d1.positions().iter().map(|p| Point3::new(p.x, -p.y, 0.0)).collect();
    let flipped: Vec<[u32; 3]> = d1.face_list().iter().map(|f| [f[0], f[2], f[1]]).collect();
    let d2 = HalfedgeMesh::from_faces_with_positions(mirrored, &flipped).unwrap();
    let z1: Vec<Complex<f64>> = d1.positions().iter().map(|p| Complex::new(p.x, p.y)).collect();
    let z2: Vec<Complex<f64>> = d2.positions().iter().map(|p| Complex::new(p.x, p.y)).collect();
    let pairs: Vec<(VertexId, VertexId)> =
        d1.boundary_loops()[0].iter().map(|v| (*v, *v)).collect();
    (d1, z1, d2, z2, WeldingSignature { pairs })
}

#[test]
fn welding_flat_hemisphere_disks_recovers_the_round_sphere() {
    let (d1, z1, d2, z2, sig) = hemisphere_disks(48);
    let welded = zipper_weld(&d1, &z1, &d2, &z2, &sig).unwrap();

    assert_eq!(welded.z.iter().filter(|z| z.is_infinite()).count(), 1);
    assert!(welded.z[welded.infinity_vertex.index()].is_infinite());
    assert!(welded.seam_defect <= 1e-6, "seam defect {}", welded.seam_defect);
    assert!(welded.mesh.is_closed() && welded.mesh.euler_characteristic() == 2);

    // the exact solution: the first disk is the lower hemisphere seen from
    // the north pole, the mirrored second disk the upper one
    let mut expected = vec![Point3::origin(); welded.mesh.n_vertices()];
    for v in d1.vertices() {
        let w = z1[v.index()];
        let d = 1.0 + w.norm_sqr();
        expected[v.index()] =
            Point3::new(2.0 * w.re / d, 2.0 * w.im / d, (w.norm_sqr() - 1.0) / d);
    }
    for v in d2.vertices() {
        let c = welded.second_to_combined[v.index()].index();
        if c >= d1.n_vertices() {
            let w = z2[v.index()];
            let d = 1.0 + w.norm_sqr();
            expected[c] = Point3::new(2.0 * w.re / d, -2.0 * w.im / d, (1.0 - w.norm_sqr()) / d);
        }
    }

    // the true weld is disk1 ↦ w, disk2 ↦ 1/w'; the zipper output can only
    // differ from it by one Möbius transform, pinned here by three seam
    // vertices. The mirror symmetry of the input makes every zip step exact,
    // so each vertex must match the analytic map to roundoff.
    let seam_pair = |i: usize| {
        let v = welded.seam[i];
        (ExtendedComplex::Finite(z1[v.index()]), welded.z[v.index()])
    };
    let n = welded.seam.len();
    let (a0, b0) = seam_pair(1);
    let (a1, b1) = seam_pair(n / 3);
    let (a2, b2) = seam_pair(2 * n / 3);
    let align = MobiusTransform::three_point([a0, a1, a2], [b0, b1, b2]).unwrap();
    for v in d1.vertices() {
        let truth = align.apply(ExtendedComplex::Finite(z1[v.index()]));
        assert!(chordal_distance(truth, welded.z[v.index()]) < 1e-9, "first half vertex {v}");
    }
    for v in d2.vertices() {
        let truth = align.apply(ExtendedComplex::Finite(z2[v.index()]).recip());
        let mine = welded.z[welded.second_to_combined[v.index()].index()];
        assert!(chordal_distance(truth, mine) < 1e-9, "second half vertex {v}");
    }

    // on the sphere the raw weld is violently off-center (the last zipped
    // vertex and the anchor sit at opposite poles); after Möbius centering
    // the geodesic triangles are small and must tile the sphere once,
    // inward because counterclockwise plane faces project inward
    let mut actual: Vec<Point3<f64>> = welded.z.iter().map(|z| stereographic(*z)).collect();
    let w_mass = vertex_area_weights(&welded.mesh).unwrap();
    mobius_center(&mut actual, &w_mass, 1e-9).unwrap();
    let total: f64 = welded
        .mesh
        .faces()
        .map(|f| {
            let [a, b, c] = welded.mesh.face_vertices(f);
            signed_solid_angle(&actual[a.index()], &actual[b.index()], &actual[c.index()])
        })
        .sum();
    assert!((total + 4.0 * PI).abs() < 1e-6, "covered {total}");

    // centering the analytic positions with the same weights leaves one
    // rotation of freedom between the two embeddings
    let mut reference = expected.clone();
    mobius_center(&mut reference, &w_mass, 1e-9).unwrap();
    let rms = best_rotation_rms(&actual, &reference, &w_mass);
    assert!(rms < 1e-3, "rms {rms}");
}

#[test]
fn corrupted_signatures_are_rejected() {
    let (d1, z1, d2, z2, sig) = hemisphere_disks(3);

    let mut shuffled = sig.clone();
    let keep = shuffled.pairs[5].1;
    shuffled.pairs[5].1 = shuffled.pairs[9].1;
    shuffled.pairs[9].1 = keep;
    assert!(matches!(
        zipper_weld(&d1, &z1, &d2, &z2, &shuffled),
        Err(WeldError::Signature(_))
    ));

    // welding a disk against an unmirrored copy leaves both boundaries
    // running the same way
    assert!(matches!(zipper_weld(&d1, &z1, &d1, &z1, &sig), Err(WeldError::Signature(_))));

    let short = WeldingSignature { pairs: sig.pairs[..3].to_vec() };
    assert!(matches!(zipper_weld(&d1, &z1, &d2, &z2, &short), Err(WeldError::Signature(_))));
}

fn assert_valid_sphere_map(map: &SphericalMap) {
    for p in &map.sphere {
        assert!((p.coords.norm() - 1.0).abs() <= 1e-12);
    }
    assert!(map.seam_defect <= 1e-6, "seam defect {}", map.seam_defect);
    let mut covered = 0.0;
    for f in map.mesh.faces() {
        let [a, b, c] = map.mesh.face_vertices(f);
        let angle =
            signed_solid_angle(&map.sphere[a.index()], &map.sphere[b.index()], &map.sphere[c.index()]);
        assert!(angle > 0.0, "flipped spherical triangle {f}");
        covered += angle;
    }
    assert!((covered - 4.0 * PI).abs() < 1e-6, "covered {covered}");
}

#[test]
fn conformal_map_of_icosphere_recovers_positions() {
    let mesh = icosphere(4);
    let map = conformal_spherical_map(&mesh, &FlowOptions::default()).unwrap();
    assert_eq!(map.refinement_rounds, 0);
    assert_valid_sphere_map(&map);

    let w = vertex_area_weights(&map.mesh).unwrap();
    let total: f64 = w.iter().sum();
    let center =
        map.sphere.iter().zip(&w).map(|(p, wi)| *wi * p.coords).sum::<Vector3<f64>>() / total;
    assert!(center.norm() < 1e-6, "center {}", center.norm());

    let positions = map.mesh.positions();
    let top = (0..positions.len())
        .max_by(|a, b| positions[*a].z.total_cmp(&positions[*b].z))
        .unwrap();
    let front = (0..positions.len())
        .filter(|v| *v != top)
        .max_by(|a, b| positions[*a].x.total_cmp(&positions[*b].x))
        .unwrap();
    assert!((map.sphere[top] - Point3::new(0.0, 0.0, 1.0)).norm() <= 1e-9);
    assert!(map.sphere[front].y.abs() <= 1e-9 && map.sphere[front].x > 0.0);

    // a round sphere is fixed by the map up to rotation
    let expected: Vec<Point3<f64>> =
        positions.iter().map(|p| Point3::from(p.coords.normalize())).collect();
    let rms = best_rotation_rms(&map.sphere, &expected, &w);
    assert!(rms < 5e-2, "rms {rms}");
}

/// Per-corner angle log-ratios and per-face area log-ratios between the
/// rescaled source mesh and its spherical image (chordal triangles).
fn distortion_logs(map: &SphericalMap) -> (Vec<f64>, Vec<f64>) {
    let src = map.mesh.positions();
    let mut angles = Vec::new();
    let mut areas = Vec::new();
    for f in map.mesh.faces() {
        let [a, b, c] = map.mesh.face_vertices(f);
        let corner = |p: &[Point3<f64>], i: VertexId, j: VertexId, k: VertexId| {
            (p[j.index()] - p[i.index()]).angle(&(p[k.index()] - p[i.index()]))
        };
        for (i, j, k) in [(a, b, c), (b, c, a), (c, a, b)] {
            angles.push((corner(&map.sphere, i, j, k) / corner(src, i, j, k)).ln());
        }
        let tri_area = |p: &[Point3<f64>]| {
            0.5 * (p[b.index()] - p[a.index()]).cross(&(p[c.index()] - p[a.index()])).norm()
        };
        areas.push((tri_area(&map.sphere) / tri_area(src)).ln());
    }
    (angles, areas)
}

fn mean_abs(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum::<f64>() / v.len() as f64
}

fn std_dev(v: &[f64]) -> f64 {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / v.len() as f64).sqrt()
}

#[test]
fn ellipsoid_map_is_conformal_not_area_preserving() {
    let coarse = conformal_spherical_map(&ellipsoid(1.0, 1.0, 2.0, 3), &FlowOptions::default())
        .unwrap();
    let fine = conformal_spherical_map(&ellipsoid(1.0, 1.0, 2.0, 4), &FlowOptions::default())
        .unwrap();
    assert_valid_sphere_map(&coarse);
    assert_valid_sphere_map(&fine);

    let (angles_coarse, _) = distortion_logs(&coarse);
    let (angles_fine, areas_fine) = distortion_logs(&fine);

    // conformality sharpens under refinement and angle error stays small,
    // while the area ratios spread over the squashed pole regions
    assert!(mean_abs(&angles_fine) < mean_abs(&angles_coarse));
    assert!(mean_abs(&angles_fine) < 0.05, "mean angle log {}", mean_abs(&angles_fine));
    assert!(std_dev(&areas_fine) > std_dev(&angles_fine));
}

#[test]
fn mobius_normalize_undoes_a_known_translation() {
    let mesh = icosphere(3);
    let original = mesh.positions().to_vec();
    let w = vertex_area_weights(&mesh).unwrap();
    let top = (0..original.len())
        .max_by(|a, b| original[*a].z.total_cmp(&original[*b].z))
        .unwrap();
    let front = (0..original.len())
        .filter(|v| *v != top)
        .max_by(|a, b| original[*a].x.total_cmp(&original[*b].x))
        .unwrap();

    let pull = Vector3::new(0.0, 0.0, 0.8);
    let mut skewed: Vec<Point3<f64>> =
        original.iter().map(|p| sphere_mobius_translate(p, &pull)).collect();
    // the translation crowds everything toward the pole but keeps unit norm
    for p in &skewed {
        assert!((p.coords.norm() - 1.0).abs() < 1e-12);
    }
    let center_before: Vector3<f64> =
        skewed.iter().zip(&w).map(|(p, wi)| *wi * p.coords).sum::<Vector3<f64>>()
            / w.iter().sum::<f64>();
    assert!(center_before.norm() > 0.5);

    let iterations =
        mobius_normalize(&mut skewed, &w, VertexId::new(top), VertexId::new(front)).unwrap();
    assert!(iterations > 0);
    assert!((skewed[top] - Point3::new(0.0, 0.0, 1.0)).norm() <= 1e-9);
    assert!(skewed[front].y.abs() <= 1e-9 && skewed[front].x > 0.0);

    // centering is unique up to rotation, so the original comes back
    let rms = best_rotation_rms(&skewed, &original, &w);
    assert!(rms < 1e-4, "rms {rms}");

    let mut copy = skewed.clone();
    assert!(matches!(
        mobius_normalize(&mut copy, &w, VertexId::new(top), VertexId::new(top)),
        Err(WeldError::DegenerateLandmarks(_))
    ));
}
