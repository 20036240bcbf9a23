use nalgebra::Point3;
use sphereflow::mesh::{total_area, vertex_area_weights, HalfedgeMesh, VertexId};
use sphereflow::segment::{
    first_eigenfunction, split_mesh, zero_level_loop, SegmentError, SplitResult,
};
use sphereflow::shapes;
use std::collections::HashMap;
use std::f64::consts::PI;

fn m_dot(mass: &[f64], a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).zip(mass).map(|((a, b), m)| a * b * m).sum()
}

#[test]
fn eigenfunction_matches_sphere_harmonics() {
    let mesh = shapes::icosphere(5);
    assert!(mesh.n_faces() >= 10_000);
    let eig = first_eigenfunction(&mesh).unwrap();

    // the first nonzero eigenvalue of the unit sphere is 2, with the linear
    // coordinates as eigenfunctions
    assert!(eig.eigenvalue > 1e-10);
    assert!(
        (eig.eigenvalue - 2.0).abs() < 0.05 * 2.0,
        "eigenvalue {} vs 2",
        eig.eigenvalue
    );

    let mass = vertex_area_weights(&mesh).unwrap();
    let total: f64 = mass.iter().sum();
    let mean = m_dot(&mass, &eig.values, &vec![1.0; mass.len()]) / total;
    assert!(mean.abs() < 1e-8, "area-weighted mean {mean}");
    let norm = m_dot(&mass, &eig.values, &eig.values);
    assert!((norm - 1.0).abs() < 1e-8, "area-weighted square norm {norm}");

    // least-squares fit of f within span{x, y, z}; the fit should explain
    // almost everything
    let coords: Vec<Vec<f64>> =
        (0..3).map(|axis| mesh.positions().iter().map(|p| p[axis]).collect()).collect();
    let mut gram = nalgebra::Matrix3::zeros();
    let mut rhs = nalgebra::Vector3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            gram[(i, j)] = m_dot(&mass, &coords[i], &coords[j]);
        }
        rhs[i] = m_dot(&mass, &coords[i], &eig.values);
    }
    let c = gram.lu().solve(&rhs).unwrap();
    let fit: Vec<f64> = (0..mass.len())
        .map(|v| c[0] * coords[0][v] + c[1] * coords[1][v] + c[2] * coords[2][v])
        .collect();
    let corr = m_dot(&mass, &eig.values, &fit)
        / (m_dot(&mass, &eig.values, &eig.values) * m_dot(&mass, &fit, &fit)).sqrt();
    assert!(corr.abs() > 0.99, "correlation with linear coordinates {corr}");
}

#[test]
fn eigenvalue_converges_under_refinement() {
    let coarse = first_eigenfunction(&shapes::icosphere(3)).unwrap().eigenvalue;
    let fine = first_eigenfunction(&shapes::icosphere(4)).unwrap().eigenvalue;
    assert!(
        (fine - 2.0).abs() < (coarse - 2.0).abs() + 1e-6,
        "refinement moved eigenvalue away from 2: {coarse} → {fine}"
    );
}

#[test]
fn eigenfunction_rejects_bad_topology() {
    let open = shapes::square_grid(3);
    assert!(matches!(first_eigenfunction(&open), Err(SegmentError::NotClosed)));

    // two disjoint tetrahedra in one mesh
    let tet = shapes::tetrahedron();
    let mut positions = tet.positions().to_vec();
    positions.extend(tet.positions().iter().map(|p| Point3::new(p.x + 10.0, p.y, p.z)));
    let mut faces = tet.face_list();
    faces.extend(tet.face_list().iter().map(|f| f.map(|v| v + 4)));
    let pair = HalfedgeMesh::from_faces_with_positions(positions, &faces).unwrap();
    assert!(matches!(first_eigenfunction(&pair), Err(SegmentError::Disconnected)));
}

#[test]
fn equator_level_loop_has_circle_length() {
    let mesh = shapes::icosphere(5);
    let f: Vec<f64> = mesh.positions().iter().map(|p| p.z).collect();
    let cut = zero_level_loop(&mesh, &f).unwrap();
    assert!(
        (cut.length - 2.0 * PI).abs() < 0.02 * 2.0 * PI,
        "equator length {} vs 2π",
        cut.length
    );
    for c in &cut.crossings {
        assert!(c.point(&mesh).z.abs() < 1e-9);
        assert!(c.t > 0.0 && c.t < 1.0);
    }
}

#[test]
fn level_loop_requires_sign_change() {
    let mesh = shapes::icosphere(1);
    let err = zero_level_loop(&mesh, &vec![1.0; mesh.n_vertices()]).unwrap_err();
    assert!(matches!(err, SegmentError::NoSignChange { sign: "positive" }));
    let err = zero_level_loop(&mesh, &vec![-0.5; mesh.n_vertices()]).unwrap_err();
    assert!(matches!(err, SegmentError::NoSignChange { sign: "negative" }));
}

#[test]
fn longest_of_several_loops_is_selected() {
    // (z − 0.2)(z + 0.5) vanishes on two latitude circles; the z = 0.2 one
    // is longer
    let mesh = shapes::icosphere(3);
    let f: Vec<f64> = mesh.positions().iter().map(|p| (p.z - 0.2) * (p.z + 0.5)).collect();
    let cut = zero_level_loop(&mesh, &f).unwrap();
    let mean_z = cut.crossings.iter().map(|c| c.point(&mesh).z).sum::<f64>()
        / cut.crossings.len() as f64;
    assert!((mean_z - 0.2).abs() < 0.05, "selected loop sits at z ≈ {mean_z}");
    let circle = 2.0 * PI * (1.0f64 - 0.04).sqrt();
    assert!((cut.length - circle).abs() < 0.05 * circle, "length {} vs {circle}", cut.length);

    // the selected loop still separates the sphere
    let split = split_mesh(&mesh, &cut).unwrap();
    assert_eq!(split.m0.euler_characteristic(), 1);
    assert_eq!(split.m1.euler_characteristic(), 1);
}

/// Walking one half's boundary must visit the seam in the opposite cyclic
/// direction from the other half.
fn boundary_direction(mesh: &HalfedgeMesh, seam: &[VertexId]) -> i64 {
    let loops = mesh.boundary_loops();
    assert_eq!(loops.len(), 1);
    let boundary = &loops[0];
    assert_eq!(boundary.len(), seam.len(), "boundary is exactly the seam");
    let pos: HashMap<VertexId, usize> = boundary.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let n = seam.len();
    let dir = if (pos[&seam[0]] + 1) % n == pos[&seam[1]] { 1i64 } else { -1 };
    for k in 0..n {
        let a = pos[&seam[k]] as i64;
        let b = pos[&seam[(k + 1) % n]] as i64;
        assert_eq!((a + dir).rem_euclid(n as i64), b, "seam order broken at {k}");
    }
    dir
}

#[test]
fn split_along_equator_yields_matching_disks() {
    let mesh = shapes::icosphere(4);
    let f: Vec<f64> = mesh.positions().iter().map(|p| p.z).collect();
    let cut = zero_level_loop(&mesh, &f).unwrap();
    let SplitResult { m0, m1, seam0, seam1, area_ratio } = split_mesh(&mesh, &cut).unwrap();

    assert_eq!(m0.euler_characteristic(), 1);
    assert_eq!(m1.euler_characteristic(), 1);
    assert_eq!(seam0.len(), cut.crossings.len());
    assert_eq!(seam1.len(), cut.crossings.len());
    assert!((area_ratio - 1.0).abs() < 0.1, "equator split ratio {area_ratio}");

    let (a0, a1) = (total_area(&m0), total_area(&m1));
    let total = total_area(&mesh);
    assert!(
        ((a0 + a1) - total).abs() < 1e-9 * total,
        "area changed: {} + {} vs {}",
        a0,
        a1,
        total
    );

    // all m0 vertices sit on or above the equator, all m1 on or below
    assert!(m0.positions().iter().all(|p| p.z > -1e-9));
    assert!(m1.positions().iter().all(|p| p.z < 1e-9));

    for k in 0..seam0.len() {
        assert_eq!(m0.position(seam0[k]), m1.position(seam1[k]), "seam copies diverge at {k}");
    }
    let d0 = boundary_direction(&m0, &seam0);
    let d1 = boundary_direction(&m1, &seam1);
    assert_eq!(d0 * d1, -1, "seams must run in opposite cyclic order");
}

#[test]
fn area_is_conserved_for_any_cut() {
    let mesh = shapes::bumpy_sphere(3);
    let total = total_area(&mesh);
    let fields: Vec<Vec<f64>> = vec![
        mesh.positions().iter().map(|p| p.z).collect(),
        mesh.positions().iter().map(|p| p.x).collect(),
        mesh.positions().iter().map(|p| (p.z - 0.2) * (p.z + 0.5)).collect(),
    ];
    for f in fields {
        let cut = zero_level_loop(&mesh, &f).unwrap();
        let split = split_mesh(&mesh, &cut).unwrap();
        let sum = total_area(&split.m0) + total_area(&split.m1);
        assert!((sum - total).abs() < 1e-9 * total);
    }
}

#[test]
fn eigen_cut_pipeline_splits_bumpy_sphere() {
    let mesh = shapes::bumpy_sphere(3);
    let eig = first_eigenfunction(&mesh).unwrap();

    let base = sphereflow::mesh::DiscreteMetric::from_positions(&mesh).unwrap();
    let angles = sphereflow::mesh::corner_angles(&mesh, &base).unwrap();
    let laplacian = sphereflow::mesh::cotan_laplacian(&mesh, &angles);
    let mass = vertex_area_weights(&mesh).unwrap();
    let mut lf = vec![0.0; mesh.n_vertices()];
    laplacian.matvec(&eig.values, &mut lf);
    // the assembled matrix is twice the stiffness of the smooth operator,
    // so the eigenvalue pairs it with a doubled mass matrix
    let res: f64 = lf
        .iter()
        .zip(&eig.values)
        .zip(&mass)
        .map(|((lf, f), m)| (lf - eig.eigenvalue * 2.0 * m * f).powi(2))
        .sum::<f64>()
        .sqrt();
    let f_norm = eig.values.iter().map(|x| x * x).sum::<f64>().sqrt();
    assert!(res / f_norm < 1e-8, "eigen residual {}", res / f_norm);

    let cut = zero_level_loop(&mesh, &eig.values).unwrap();
    let split = split_mesh(&mesh, &cut).unwrap();
    assert!(split.area_ratio > 0.25 && split.area_ratio < 4.0);
    assert_eq!(split.m0.boundary_loops().len(), 1);
    assert_eq!(split.m1.boundary_loops().len(), 1);
}
