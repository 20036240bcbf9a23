use sphereflow::flow::{riemann_map, FlowOptions};
use sphereflow::mesh::{total_area, HalfedgeMesh};
use sphereflow::segment::{first_eigenfunction, split_mesh, zero_level_loop};
use sphereflow::shapes::icosphere;
use std::f64::consts::PI;

fn quality(mesh: &HalfedgeMesh) -> f64 {
    let p = mesh.positions();
    mesh.face_list()
        .iter()
        .map(|f| {
            let a = (p[f[1] as usize] - p[f[0] as usize]).norm();
            let b = (p[f[2] as usize] - p[f[1] as usize]).norm();
            let c = (p[f[0] as usize] - p[f[2] as usize]).norm();
            let longest = a.max(b).max(c);
            (a + b + c - 2.0 * longest) / longest
        })
        .fold(f64::INFINITY, f64::min)
}

fn main() {
    let mut surface = icosphere(4);
    let area = total_area(&surface);
    surface.scale_positions((4.0 * PI / area).sqrt());
    let f = first_eigenfunction(&surface).unwrap();
    let cut = zero_level_loop(&surface, &f.values).unwrap();
    let tmin = cut.crossings.iter().map(|c| c.t.min(1.0 - c.t)).fold(f64::INFINITY, f64::min);
    println!("cut: {} crossings, min t distance {:.3e}", cut.crossings.len(), tmin);
    let split = split_mesh(&surface, &cut).unwrap();
    println!(
        "m0: {}v q={:.3e}   m1: {}v q={:.3e}   area ratio {:.4}",
        split.m0.n_vertices(),
        quality(&split.m0),
        split.m1.n_vertices(),
        quality(&split.m1),
        split.area_ratio
    );
    for (name, half) in [("m0", &split.m0), ("m1", &split.m1)] {
        let p = half.positions();
        let mut worst: Vec<(f64, usize, [f64; 3])> = half
            .faces()
            .map(|f| {
                let [a, b, c] = half.face_vertices(f);
                let s = [
                    (p[b.index()] - p[a.index()]).norm(),
                    (p[c.index()] - p[b.index()]).norm(),
                    (p[a.index()] - p[c.index()]).norm(),
                ];
                let longest = s[0].max(s[1]).max(s[2]);
                ((s[0] + s[1] + s[2] - 2.0 * longest) / longest, f.index(), s)
            })
            .collect();
        worst.sort_by(|x, y| x.0.total_cmp(&y.0));
        for (q, f, s) in worst.iter().take(3) {
            println!("{name} face {f}: rel margin {q:.3e} sides {:.17e} {:.17e} {:.17e}", s[0], s[1], s[2]);
        }
    }
    let opts = FlowOptions::default();
    let disk0 = riemann_map(&split.m0, &opts).unwrap();
    let disk1 = riemann_map(&split.m1, &opts).unwrap();
    let signature = sphereflow::weld::WeldingSignature {
        pairs: split.seam0.iter().copied().zip(split.seam1.iter().copied()).collect(),
    };
    match sphereflow::weld::zipper_weld(&disk0.mesh, &disk0.z, &disk1.mesh, &disk1.z, &signature)
    {
        Ok(welded) => {
            let mut logs: Vec<f64> = welded
                .z
                .iter()
                .filter_map(|z| z.finite())
                .map(|c| c.norm().log10())
                .collect();
            logs.sort_by(f64::total_cmp);
            let q = |t: f64| logs[((logs.len() - 1) as f64 * t) as usize];
            println!(
                "welded |z| log10 quantiles: min {:.2} 1% {:.2} 25% {:.2} 50% {:.2} 75% {:.2} 99% {:.2} max {:.2}",
                q(0.0), q(0.01), q(0.25), q(0.5), q(0.75), q(0.99), q(1.0)
            );
            println!(
                "beyond 1e8: {}   beyond 1e16: {}   seam defect {:.3e}",
                logs.iter().filter(|l| **l > 8.0).count(),
                logs.iter().filter(|l| **l > 16.0).count(),
                welded.seam_defect
            );
        }
        Err(e) => println!("weld ERROR: {e}"),
    }
    for (name, half, seam) in
        [("m0", &split.m0, &split.seam0), ("m1", &split.m1, &split.seam1)]
    {
        match riemann_map(half, &opts) {
            Ok(disk) => {
                println!(
                    "{name}: ok, {} iterations, hole radius {:.3e}",
                    disk.flow_iterations, disk.hole_radius
                );
                let angles: Vec<f64> =
                    seam.iter().map(|v| disk.z[v.index()].arg()).collect();
                // consecutive angular gaps along the seam order, mod 2π
                let n = angles.len();
                let mut gaps: Vec<(f64, usize)> = (0..n)
                    .map(|i| {
                        let d = angles[(i + 1) % n] - angles[i];
                        (d.rem_euclid(2.0 * PI), i)
                    })
                    .collect();
                let total: f64 = gaps.iter().map(|g| g.0).sum();
                gaps.sort_by(|a, b| a.0.total_cmp(&b.0));
                println!(
                    "  seam angular gaps: total {:.4} (2π = {:.4}), min {:.3e} @{}, max {:.3e} @{}",
                    total,
                    2.0 * PI,
                    gaps[0].0,
                    gaps[0].1,
                    gaps[n - 1].0,
                    gaps[n - 1].1
                );
                println!("  five smallest: {:?}", &gaps[..5]);
                let five: Vec<f64> = angles[..5].to_vec();
                println!("  first five angles: {five:?}");
                for i in [0usize, 1, 2, 91, 92, 93, 94, 95, 96, 97, 190, 191] {
                    let z = disk.z[seam[i].index()];
                    let cayley = sphereflow::weld::disk_to_half_plane(
                        sphereflow::weld::ExtendedComplex::Finite(z),
                    );
                    println!(
                        "  seam[{i:3}] angle {:+.6} radius defect {:+.3e} cayley {:?}",
                        angles[i],
                        1.0 - z.norm(),
                        cayley
                    );
                }
            }
            Err(e) => println!("{name}: ERROR {e}"),
        }
    }
}
