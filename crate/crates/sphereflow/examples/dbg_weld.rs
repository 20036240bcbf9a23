use nalgebra::Point3;
use num_complex::Complex;
use sphereflow::mesh::{HalfedgeMesh, VertexId};
use sphereflow::shapes::round_disk;
use sphereflow::weld::{zipper_weld, ExtendedComplex, WeldingSignature};

fn main() {
    let rings = 6;
    let d1 = round_disk(rings);
    let mirrored: Vec<Point3<f64>> =
        d1.positions().iter().map(|p| Point3::new(p.x, -p.y, 0.0)).collect();
    let flipped: Vec<[u32; 3]> = d1.face_list().iter().map(|f| [f[0], f[2], f[1]]).collect();
    let d2 = HalfedgeMesh::from_faces_with_positions(mirrored, &flipped).unwrap();
    let z1: Vec<Complex<f64>> = d1.positions().iter().map(|p| Complex::new(p.x, p.y)).collect();
    let z2: Vec<Complex<f64>> = d2.positions().iter().map(|p| Complex::new(p.x, p.y)).collect();
    let pairs: Vec<(VertexId, VertexId)> =
        d1.boundary_loops()[0].iter().map(|v| (*v, *v)).collect();
    let sig = WeldingSignature { pairs };
    let welded = zipper_weld(&d1, &z1, &d2, &z2, &sig).unwrap();

    let n_faces_1 = d1.face_list().len();
    let mut stats = [[0usize; 2]; 2]; // [half][ccw/cw]
    let mut inf_faces = 0;
    for (fi, f) in welded.mesh.faces().enumerate() {
        let vs = welded.mesh.face_vertices(f);
        let mut zs = [Complex::new(0.0, 0.0); 3];
        let mut finite = true;
        for (i, v) in vs.iter().enumerate() {
            match welded.z[v.index()] {
                ExtendedComplex::Finite(c) => zs[i] = c,
                ExtendedComplex::Infinity => finite = false,
            }
        }
        if !finite {
            inf_faces += 1;
            continue;
        }
        let area = (zs[1] - zs[0]).re * (zs[2] - zs[0]).im
            - (zs[2] - zs[0]).re * (zs[1] - zs[0]).im;
        let half = usize::from(fi >= n_faces_1);
        stats[half][usize::from(area < 0.0)] += 1;
    }
    println!("faces through infinity: {inf_faces}");
    println!("first half:  ccw {} cw {}", stats[0][0], stats[0][1]);
    println!("second half: ccw {} cw {}", stats[1][0], stats[1][1]);

    // seam should land on one circline, first half on one side
    println!("\nseam images:");
    for (i, v) in welded.seam.iter().enumerate() {
        println!("  {i}: {:?}", welded.z[v.index()]);
    }
    let center1 = welded.z[0];
    println!("\nfirst-half center vertex image: {center1:?}");
    let c2 = welded.second_to_combined[0].index();
    println!("second-half center vertex image: {:?}", welded.z[c2]);

    // cross-ratios of seam quadruples against the analytic weld (identity on
    // the first disk, so the true seam image is the unit circle position)
    let n = welded.seam.len();
    let quad = |i: usize| -> (Complex<f64>, Complex<f64>) {
        let v = welded.seam[i];
        let mine = match welded.z[v.index()] {
            ExtendedComplex::Finite(c) => c,
            ExtendedComplex::Infinity => Complex::new(f64::INFINITY, 0.0),
        };
        (mine, z1[v.index()])
    };
    let cross = |a: Complex<f64>, b: Complex<f64>, c: Complex<f64>, d: Complex<f64>| {
        (a - c) / (a - d) * ((b - d) / (b - c))
    };
    for offset in [1, 2, 3] {
        let idx = [offset, offset + n / 4, offset + n / 2, offset + 3 * n / 4];
        let m: Vec<_> = idx.iter().map(|i| quad(i % n)).collect();
        let mine = cross(m[0].0, m[1].0, m[2].0, m[3].0);
        let truth = cross(m[0].1, m[1].1, m[2].1, m[3].1);
        println!("quad {idx:?}: mine {mine:.6} truth {truth:.6}");
    }

    // total inward solid angle of my weld vs the analytic positions
    let mut expected = vec![Point3::origin(); welded.mesh.n_vertices()];
    for v in d1.vertices() {
        let w = z1[v.index()];
        let d = 1.0 + w.norm_sqr();
        expected[v.index()] = Point3::new(2.0 * w.re / d, 2.0 * w.im / d, (w.norm_sqr() - 1.0) / d);
    }
    for v in d2.vertices() {
        let c = welded.second_to_combined[v.index()].index();
        if c >= d1.n_vertices() {
            let w = z2[v.index()];
            let d = 1.0 + w.norm_sqr();
            expected[c] = Point3::new(2.0 * w.re / d, -2.0 * w.im / d, (1.0 - w.norm_sqr()) / d);
        }
    }
    // fit the Möbius taking the true weld to mine from three seam vertices,
    // then measure interior deviation (true weld: disk1 identity, disk2 1/w')
    use sphereflow::weld::{chordal_distance, MobiusTransform};
    let seam_pair = |i: usize| -> (ExtendedComplex, ExtendedComplex) {
        let v = welded.seam[i];
        (ExtendedComplex::Finite(z1[v.index()]), welded.z[v.index()])
    };
    let (a0, b0) = seam_pair(1);
    let (a1, b1) = seam_pair(n / 3);
    let (a2, b2) = seam_pair(2 * n / 3);
    let m = MobiusTransform::three_point([a0, a1, a2], [b0, b1, b2]).unwrap();
    let mut worst = (0.0f64, 0usize);
    for v in d1.vertices() {
        let truth = m.apply(ExtendedComplex::Finite(z1[v.index()]));
        let gap = chordal_distance(truth, welded.z[v.index()]);
        if gap > worst.0 {
            worst = (gap, v.index());
        }
    }
    println!("worst disk1 deviation: {:.3e} at vertex {}", worst.0, worst.1);
    println!(
        "disk1 center: mine {:?} truth {:?}",
        welded.z[0],
        m.apply(ExtendedComplex::Finite(z1[0]))
    );
    let mut worst2 = (0.0f64, 0usize);
    for v in d2.vertices() {
        let c = welded.second_to_combined[v.index()];
        let w = ExtendedComplex::Finite(z2[v.index()]);
        let truth = m.apply(w.recip());
        let gap = chordal_distance(truth, welded.z[c.index()]);
        if gap > worst2.0 {
            worst2 = (gap, v.index());
        }
    }
    println!("worst disk2 deviation: {:.3e} at vertex {}", worst2.0, worst2.1);
    println!(
        "disk2 center: mine {:?} truth {:?}",
        welded.z[welded.second_to_combined[0].index()],
        m.apply(ExtendedComplex::Finite(z2[0]).recip())
    );

    let actual: Vec<Point3<f64>> =
        welded.z.iter().map(|z| sphereflow::weld::stereographic(*z)).collect();
    for (name, pts) in [("actual", &actual), ("expected", &expected)] {
        let total: f64 = welded
            .mesh
            .faces()
            .map(|f| {
                let [a, b, c] = welded.mesh.face_vertices(f);
                sphereflow::weld::signed_solid_angle(
                    &pts[a.index()],
                    &pts[b.index()],
                    &pts[c.index()],
                )
            })
            .sum();
        println!("{name}: total solid angle {total:.6} (−4π = {:.6})", -4.0 * std::f64::consts::PI);
    }
}
