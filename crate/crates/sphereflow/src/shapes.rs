//! Procedural test meshes: platonic solids, icospheres, disks, grids,
//! cylinders. All generators are deterministic.

use crate::mesh::HalfedgeMesh;
use nalgebra::{Point3, Vector3};
use std::collections::HashMap;
use std::f64::consts::PI;

/// Regular tetrahedron with unit edge length.
pub fn tetrahedron() -> HalfedgeMesh {
    let s = 1.0 / (2.0 * 2.0f64.sqrt());
    let positions = vec![
        Point3::new(s, s, s),
        Point3::new(s, -s, -s),
        Point3::new(-s, s, -s),
        Point3::new(-s, -s, s),
    ];
    let faces = [[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]];
    HalfedgeMesh::from_faces_with_positions(positions, &faces).unwrap()
}

/// Regular octahedron inscribed in the unit sphere.
pub fn octahedron() -> HalfedgeMesh {
    let positions = vec![
        Point3::new(1.0, 0.0, 0.0),
        Point3::new(-1.0, 0.0, 0.0),
        Point3::new(0.0, 1.0, 0.0),
        Point3::new(0.0, -1.0, 0.0),
        Point3::new(0.0, 0.0, 1.0),
        Point3::new(0.0, 0.0, -1.0),
    ];
    let faces = [
        [0, 2, 4],
        [2, 1, 4],
        [1, 3, 4],
        [3, 0, 4],
        [2, 0, 5],
        [1, 2, 5],
        [3, 1, 5],
        [0, 3, 5],
    ];
    HalfedgeMesh::from_faces_with_positions(positions, &faces).unwrap()
}

fn icosahedron_data() -> (Vec<Point3<f64>>, Vec<[u32; 3]>) {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let n = (1.0 + phi * phi).sqrt();
    let (a, b) = (1.0 / n, phi / n);
    let positions = vec![
        Point3::new(-a, b, 0.0),
        Point3::new(a, b, 0.0),
        Point3::new(-a, -b, 0.0),
        Point3::new(a, -b, 0.0),
        Point3::new(0.0, -a, b),
        Point3::new(0.0, a, b),
        Point3::new(0.0, -a, -b),
        Point3::new(0.0, a, -b),
        Point3::new(b, 0.0, -a),
        Point3::new(b, 0.0, a),
        Point3::new(-b, 0.0, -a),
        Point3::new(-b, 0.0, a),
    ];
    let faces = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    (positions, faces)
}

/// Icosphere with `20 · 4^subdivisions` faces, vertices on the unit sphere.
pub fn icosphere(subdivisions: u32) -> HalfedgeMesh {
    let (mut positions, mut faces) = icosahedron_data();
    for _ in 0..subdivisions {
        let mut midpoint: HashMap<(u32, u32), u32> = HashMap::new();
        let mut new_faces = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let mut mid = |u: u32, v: u32| -> u32 {
                let key = (u.min(v), u.max(v));
                *midpoint.entry(key).or_insert_with(|| {
                    let p = Point3::from((positions[u as usize].coords + positions[v as usize].coords) / 2.0);
                    positions.push(Point3::from(p.coords.normalize()));
                    (positions.len() - 1) as u32
                })
            };
            let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
            new_faces.push([a, ab, ca]);
            new_faces.push([b, bc, ab]);
            new_faces.push([c, ca, bc]);
            new_faces.push([ab, bc, ca]);
        }
        faces = new_faces;
    }
    HalfedgeMesh::from_faces_with_positions(positions, &faces).unwrap()
}

/// Icosphere stretched to semi-axes (a, b, c).
pub fn ellipsoid(a: f64, b: f64, c: f64, subdivisions: u32) -> HalfedgeMesh {
    let mut mesh = icosphere(subdivisions);
    let positions = mesh
        .positions()
        .iter()
        .map(|p| Point3::new(p.x * a, p.y * b, p.z * c))
        .collect();
    mesh.set_positions(positions);
    mesh
}

/// Sphere with smooth radial bumps; stands in for scanned genus-zero surfaces.
pub fn bumpy_sphere(subdivisions: u32) -> HalfedgeMesh {
    let mut mesh = icosphere(subdivisions);
    let positions = mesh
        .positions()
        .iter()
        .map(|p| {
            let r = 1.0
                + 0.14 * (3.0 * p.x + 0.9).sin() * (4.0 * p.y + 0.4).sin()
                + 0.09 * (5.0 * p.z).cos();
            Point3::from(p.coords * r)
        })
        .collect();
    mesh.set_positions(positions);
    mesh
}

/// Triangulated disk of radius 1: `rings` concentric rings with `6k` vertices
/// on ring `k`, giving `6·rings²` faces.
pub fn round_disk(rings: u32) -> HalfedgeMesh {
    let mut positions = vec![Point3::new(0.0, 0.0, 0.0)];
    let mut ring_start = vec![0u32];
    for k in 1..=rings {
        ring_start.push(positions.len() as u32);
        let m = 6 * k;
        let r = k as f64 / rings as f64;
        for i in 0..m {
            let th = 2.0 * PI * i as f64 / m as f64;
            positions.push(Point3::new(r * th.cos(), r * th.sin(), 0.0));
        }
    }
    let mut faces: Vec<[u32; 3]> = Vec::with_capacity((6 * rings * rings) as usize);
    for k in 1..=rings {
        let outer = ring_start[k as usize];
        let n_outer = 6 * k;
        let inner = if k == 1 { 0 } else { ring_start[k as usize - 1] };
        // the center vertex acts as a ring with no edges to advance along
        let n_inner = if k == 1 { 0 } else { 6 * (k - 1) };
        let mut i = 0u32; // outer index
        let mut j = 0u32; // inner index
        while i < n_outer || j < n_inner {
            let oi = outer + i % n_outer;
            let oi1 = outer + (i + 1) % n_outer;
            let ij = inner + j % n_inner.max(1);
            let ij1 = inner + (j + 1) % n_inner.max(1);
            // angle comparison i/n_outer vs j/n_inner done exactly on integers;
            // ties (ring corners) advance the inner ring so that when positions
            // snap to the triangular lattice every face is equilateral
            let advance_outer = if j >= n_inner {
                true
            } else if i >= n_outer {
                false
            } else {
                ((i + 1) as u64) * (n_inner as u64) < ((j + 1) as u64) * (n_outer as u64)
            };
            if advance_outer {
                faces.push([oi, oi1, ij]);
                i += 1;
            } else {
                faces.push([oi, ij1, ij]);
                j += 1;
            }
        }
    }
    HalfedgeMesh::from_faces_with_positions(positions, &faces).unwrap()
}

/// Hexagonal patch of equilateral unit triangles, `rings` rings around a
/// center vertex. Interior vertices are flat (angle sum 2π).
pub fn hex_grid(rings: u32) -> HalfedgeMesh {
    let mut mesh = round_disk(rings);
    // round_disk spaces rings at radius k/rings along hex directions; rescale
    // to unit spacing and snap each ring to the hexagon of the triangular lattice
    let mut positions = vec![Point3::new(0.0, 0.0, 0.0)];
    for k in 1..=rings {
        let corners: Vec<Vector3<f64>> = (0..6)
            .map(|s| {
                let th = 2.0 * PI * s as f64 / 6.0;
                Vector3::new(th.cos(), th.sin(), 0.0) * k as f64
            })
            .collect();
        for i in 0..6 * k {
            let side = (i / k) as usize;
            let along = (i % k) as f64 / k as f64;
            let p = corners[side] * (1.0 - along) + corners[(side + 1) % 6] * along;
            positions.push(Point3::from(p));
        }
    }
    mesh.set_positions(positions);
    mesh
}

/// Unit square [0,1]² as an n×n grid, each cell split by the SW–NE diagonal.
pub fn square_grid(n: u32) -> HalfedgeMesh {
    let idx = |i: u32, j: u32| j * (n + 1) + i;
    let mut positions = Vec::with_capacity(((n + 1) * (n + 1)) as usize);
    for j in 0..=n {
        for i in 0..=n {
            positions.push(Point3::new(i as f64 / n as f64, j as f64 / n as f64, 0.0));
        }
    }
    let mut faces = Vec::with_capacity((2 * n * n) as usize);
    for j in 0..n {
        for i in 0..n {
            faces.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)]);
            faces.push([idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)]);
        }
    }
    HalfedgeMesh::from_faces_with_positions(positions, &faces).unwrap()
}

/// Open cylinder of radius 1 and the given height: `segments` around,
/// `levels` vertical bands. An annulus (χ = 0) with two boundary loops.
pub fn cylinder(segments: u32, levels: u32, height: f64) -> HalfedgeMesh {
    let idx = |i: u32, j: u32| j * segments + i % segments;
    let mut positions = Vec::with_capacity((segments * (levels + 1)) as usize);
    for j in 0..=levels {
        let z = height * j as f64 / levels as f64;
        for i in 0..segments {
            let th = 2.0 * PI * i as f64 / segments as f64;
            positions.push(Point3::new(th.cos(), th.sin(), z));
        }
    }
    let mut faces = Vec::with_capacity((2 * segments * levels) as usize);
    for j in 0..levels {
        for i in 0..segments {
            faces.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)]);
            faces.push([idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)]);
        }
    }
    HalfedgeMesh::from_faces_with_positions(positions, &faces).unwrap()
}

/// Icosphere with both polar caps removed: an annulus with two roughly
/// circular boundary loops at |z| ≈ `z_cut`. Ear faces left by the cut are
/// trimmed: a boundary vertex with a single incident face would need its one
/// corner angle to open up to π to reach zero boundary curvature, which no
/// metric attains, so such vertices would stall a curvature flow.
pub fn sphere_with_caps_removed(subdivisions: u32, z_cut: f64) -> HalfedgeMesh {
    let sphere = icosphere(subdivisions);
    let mut keep: Vec<[u32; 3]> = sphere
        .faces()
        .filter(|&f| {
            let [a, b, c] = sphere.face_vertices(f);
            let z = (sphere.position(a).z + sphere.position(b).z + sphere.position(c).z) / 3.0;
            z.abs() < z_cut
        })
        .map(|f| sphere.face_vertices(f).map(|v| v.0))
        .collect();
    loop {
        let (positions, faces) = compact_vertices(sphere.positions(), &keep);
        let mesh = HalfedgeMesh::from_faces_with_positions(positions, &faces).unwrap();
        let ear_faces: Vec<usize> = mesh
            .vertices()
            .filter(|&v| mesh.is_boundary_vertex(v))
            .filter_map(|v| {
                let mut incident = mesh.outgoing_halfedges(v).filter_map(|h| mesh.face_of(h));
                match (incident.next(), incident.next()) {
                    (Some(f), None) => Some(f.index()),
                    _ => None,
                }
            })
            .collect();
        if ear_faces.is_empty() {
            return mesh;
        }
        let mut drop = vec![false; keep.len()];
        for f in ear_faces {
            drop[f] = true;
        }
        keep = keep.into_iter().zip(drop).filter(|(_, d)| !d).map(|(f, _)| f).collect();
    }
}

/// Drops unreferenced vertices and renumbers faces accordingly.
pub fn compact_vertices(positions: &[Point3<f64>], faces: &[[u32; 3]]) -> (Vec<Point3<f64>>, Vec<[u32; 3]>) {
    let mut remap = vec![u32::MAX; positions.len()];
    let mut out_pos = Vec::new();
    let mut out_faces = Vec::with_capacity(faces.len());
    for tri in faces {
        let mut t = [0u32; 3];
        for (slot, &v) in tri.iter().enumerate() {
            if remap[v as usize] == u32::MAX {
                remap[v as usize] = out_pos.len() as u32;
                out_pos.push(positions[v as usize]);
            }
            t[slot] = remap[v as usize];
        }
        out_faces.push(t);
    }
    (out_pos, out_faces)
}
