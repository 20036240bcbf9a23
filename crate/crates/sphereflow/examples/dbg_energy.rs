use nalgebra::Point3;
use sphereflow::flow::{ricci_energy, ConformalState};
use sphereflow::mesh::{corner_angles, DiscreteMetric, HalfedgeMesh};

fn energy(faces: &[[u32; 3]], pts: &[Point3<f64>], u: &[f64]) -> f64 {
    let mesh = HalfedgeMesh::from_faces_with_positions(pts.to_vec(), faces).unwrap();
    let metric = DiscreteMetric::from_positions(&mesh).unwrap();
    let angles = corner_angles(&mesh, &metric).unwrap();
    let state = ConformalState {
        u: u.to_vec(),
        k_target: vec![0.0; 4],
        beta: metric.lengths().to_vec(),
    };
    ricci_energy(&mesh, &state, &metric, &angles)
}

fn main() {
    // four cocircular points, deliberately asymmetric
    let angles = [0.3f64, 1.4, 2.9, 4.9];
    let pts: Vec<Point3<f64>> =
        angles.iter().map(|t| Point3::new(t.cos(), t.sin(), 0.0)).collect();

    let t1 = [[0u32, 1, 2], [0, 2, 3]]; // diagonal 02
    let t2 = [[0u32, 1, 3], [1, 2, 3]]; // diagonal 13

    for u in [[0.0, 0.0, 0.0, 0.0], [0.3, -0.2, 0.5, 0.1]] {
        let e1 = energy(&t1, &pts, &u);
        let e2 = energy(&t2, &pts, &u);
        let predicted = -std::f64::consts::PI * (u[1] + u[3] - u[0] - u[2]);
        println!(
            "u {u:?}: E(T1) {e1:+.12e}  E(T2) {e2:+.12e}  jump {:+.6e}  -pi*(ub+ud-ua-uc) {predicted:+.6e}",
            e2 - e1
        );
    }

    let d02 = (pts[0] - pts[2]).norm();
    let d13 = (pts[1] - pts[3]).norm();
    println!("pi*(ln l13 - ln l02) = {:+.6e}", std::f64::consts::PI * (d13.ln() - d02.ln()));

    // finite-difference gradient on T1 at u0, fixed triangulation: the
    // energy there must have gradient K - Kbar
    let u0 = [0.05, -0.04, 0.08, 0.02];
    let mesh = HalfedgeMesh::from_faces_with_positions(pts.clone(), &t1).unwrap();
    let beta = DiscreteMetric::from_positions(&mesh).unwrap();
    let at = |u: &[f64]| {
        let state = ConformalState {
            u: u.to_vec(),
            k_target: vec![0.0; 4],
            beta: beta.lengths().to_vec(),
        };
        let metric = sphereflow::flow::conformal_lengths(&mesh, &state).unwrap();
        let angles = corner_angles(&mesh, &metric).unwrap();
        let k = sphereflow::mesh::vertex_curvature(&mesh, &angles);
        (ricci_energy(&mesh, &state, &metric, &angles), k.as_slice().to_vec())
    };
    let (_, k) = at(&u0);
    for i in 0..4 {
        let h = 1e-6;
        let mut up = u0;
        up[i] += h;
        let mut dn = u0;
        dn[i] -= h;
        let fd = (at(&up).0 - at(&dn).0) / (2.0 * h);
        println!("dE/du[{i}] fd {fd:+.9e}  K-Kbar {:+.9e}", k[i]);
    }
}
