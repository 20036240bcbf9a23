use sphereflow::flow::{riemann_map, FlowOptions};
use sphereflow::mesh::total_area;
use sphereflow::segment::{first_eigenfunction, split_mesh, zero_level_loop};
use sphereflow::shapes::ellipsoid;

fn main() {
    let mut surface = ellipsoid(1.0, 1.0, 2.0, 3);
    let area = total_area(&surface);
    surface.scale_positions((4.0 * std::f64::consts::PI / area).sqrt());

    let eigen = first_eigenfunction(&surface).unwrap();
    let cut = zero_level_loop(&surface, &eigen.values).unwrap();
    println!("cut: {} crossings", cut.crossings.len());
    let split = split_mesh(&surface, &cut).unwrap();

    for (name, half) in [("m0", &split.m0), ("m1", &split.m1)] {
        let mut q = f64::INFINITY;
        for f in half.faces() {
            let [a, b, c] = half.face_vertices(f);
            let p = half.positions();
            let (x, y, z) = (
                (p[b.index()] - p[a.index()]).norm(),
                (p[c.index()] - p[b.index()]).norm(),
                (p[a.index()] - p[c.index()]).norm(),
            );
            let longest = x.max(y).max(z);
            q = q.min((x + y + z - 2.0 * longest) / longest);
        }
        println!("{name}: {}v {}f quality {q:.3e}", half.n_vertices(), half.n_faces());
        match riemann_map(half, &FlowOptions::default()) {
            Ok(disk) => {
                println!("  ok, {} iterations", disk.flow_iterations);
                for row in disk.flow_trace.iter().rev().take(4) {
                    println!(
                        "  it {:3} residual {:.3e} energy {:+.9e} step {:.3e} flips {}",
                        row.iteration, row.max_residual, row.energy, row.step, row.flips
                    );
                }
            }
            Err(e) => {
                println!("  ERROR {e}");
            }
        }
    }
}
