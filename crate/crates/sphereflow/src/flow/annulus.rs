//! Flattening maps for annuli and disks: flow the curvature to zero, cut,
//! develop into a strip, and exponentiate.

use super::{layout_flat_metric, yamabe_flow, FlowError, FlowOptions, TraceRow};
use crate::mesh::{DiscreteMetric, FaceId, HalfedgeMesh, HalfedgeId, VertexId};
use num_complex::Complex;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};
use std::f64::consts::PI;

#[derive(Debug)]
pub struct AnnulusMap {
    /// Input connectivity with the flow's flips applied; vertex ids unchanged.
    pub mesh: HalfedgeMesh,
    /// Vertex images, r ≤ |z| ≤ 1 up to the stated tolerances.
    pub z: Vec<Complex<f64>>,
    pub inner_radius: f64,
    pub outer_loop: Vec<VertexId>,
    pub inner_loop: Vec<VertexId>,
    pub flow_iterations: usize,
    pub flow_trace: Vec<TraceRow>,
}

#[derive(Debug)]
pub struct DiskMap {
    /// Flowed connectivity with the punctured face restored.
    pub mesh: HalfedgeMesh,
    /// Vertex images in the closed unit disk.
    pub z: Vec<Complex<f64>>,
    /// Radius of the circle through the three filled-hole vertices.
    pub hole_radius: f64,
    pub flow_iterations: usize,
    pub flow_trace: Vec<TraceRow>,
}

fn require(cond: bool, expected: &str, found: String) -> Result<(), FlowError> {
    if cond {
        Ok(())
    } else {
        Err(FlowError::WrongTopology { expected: expected.into(), found })
    }
}

/// Maps a topological annulus to { r ≤ |z| ≤ 1 }. The boundary loop that
/// contains the smallest vertex id lands on the unit circle.
pub fn map_annulus(mesh: &HalfedgeMesh, opts: &FlowOptions) -> Result<AnnulusMap, FlowError> {
    let loops = mesh.boundary_loops();
    require(loops.len() == 2, "an annulus with two boundary loops", format!("{} loops", loops.len()))?;
    require(
        mesh.euler_characteristic() == 0,
        "Euler characteristic 0",
        format!("χ = {}", mesh.euler_characteristic()),
    )?;
    let min0 = loops[0].iter().min().unwrap();
    let min1 = loops[1].iter().min().unwrap();
    let outer = if min0 < min1 { 0 } else { 1 };
    annulus_core(mesh, loops[outer].clone(), loops[1 - outer].clone(), opts)
}

/// Maps a topological disk to the unit disk: puncture the interior face
/// farthest from the boundary, map the remaining annulus, and fill the hole
/// back with its one triangle.
pub fn riemann_map(mesh: &HalfedgeMesh, opts: &FlowOptions) -> Result<DiskMap, FlowError> {
    let loops = mesh.boundary_loops();
    require(loops.len() == 1, "a disk with one boundary loop", format!("{} loops", loops.len()))?;
    require(
        mesh.euler_characteristic() == 1,
        "Euler characteristic 1",
        format!("χ = {}", mesh.euler_characteristic()),
    )?;

    let puncture = farthest_interior_face(mesh)?;
    let kept: Vec<[u32; 3]> = mesh
        .faces()
        .filter(|f| *f != puncture)
        .map(|f| mesh.face_vertices(f).map(|v| v.0))
        .collect();
    let annulus = HalfedgeMesh::from_faces_with_positions(mesh.positions().to_vec(), &kept)?;

    let hole: Vec<VertexId> = mesh.face_vertices(puncture).to_vec();
    let hole_set: HashSet<VertexId> = hole.iter().copied().collect();
    let ann_loops = annulus.boundary_loops();
    require(
        ann_loops.len() == 2,
        "puncturing to produce an annulus",
        format!("{} loops after puncture", ann_loops.len()),
    )?;
    let (outer, inner) = if ann_loops[0].iter().all(|v| hole_set.contains(v)) {
        (ann_loops[1].clone(), ann_loops[0].clone())
    } else {
        (ann_loops[0].clone(), ann_loops[1].clone())
    };

    let map = annulus_core(&annulus, outer, inner, opts)?;

    // restore the punctured triangle over its three inner-circle vertices
    let mut faces = map.mesh.face_list();
    faces.push([hole[0].0, hole[1].0, hole[2].0]);
    let restored = HalfedgeMesh::from_faces_with_positions(mesh.positions().to_vec(), &faces)?;
    Ok(DiskMap {
        mesh: restored,
        z: map.z,
        hole_radius: map.inner_radius,
        flow_iterations: map.flow_iterations,
        flow_trace: map.flow_trace,
    })
}

/// Interior face maximizing breadth-first distance to the boundary in the
/// face adjacency graph; faces touching boundary vertices are distance zero.
fn farthest_interior_face(mesh: &HalfedgeMesh) -> Result<FaceId, FlowError> {
    let mut dist = vec![u32::MAX; mesh.n_faces()];
    let mut queue = VecDeque::new();
    for f in mesh.faces() {
        if mesh.face_vertices(f).iter().any(|&v| mesh.is_boundary_vertex(v)) {
            dist[f.index()] = 0;
            queue.push_back(f);
        }
    }
    while let Some(f) = queue.pop_front() {
        for h in mesh.face_halfedges(f) {
            if let Some(g) = mesh.face_of(h.twin()) {
                if dist[g.index()] == u32::MAX {
                    dist[g.index()] = dist[f.index()] + 1;
                    queue.push_back(g);
                }
            }
        }
    }
    let best = mesh.faces().max_by_key(|f| (dist[f.index()], std::cmp::Reverse(f.index())));
    match best {
        Some(f) if dist[f.index()] > 0 => Ok(f),
        _ => Err(FlowError::WrongTopology {
            expected: "a disk with at least one interior face".into(),
            found: "every face touches the boundary".into(),
        }),
    }
}

#[derive(PartialEq)]
struct HeapItem {
    dist: f64,
    v: u32,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // reversed: BinaryHeap is a max-heap, we want the smallest (dist, v)
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap()
            .then_with(|| other.v.cmp(&self.v))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Multi-source Dijkstra from `sources`, stopping at the first settled vertex
/// of `targets`. Ties prefer the smaller vertex id. Returns the path from a
/// source to that target.
fn shortest_cut(
    mesh: &HalfedgeMesh,
    metric: &DiscreteMetric,
    sources: &[VertexId],
    targets: &HashSet<VertexId>,
) -> Vec<VertexId> {
    let n = mesh.n_vertices();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![u32::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        dist[s.index()] = 0.0;
        heap.push(HeapItem { dist: 0.0, v: s.0 });
    }
    while let Some(HeapItem { dist: d, v }) = heap.pop() {
        let vid = VertexId(v);
        if done[vid.index()] {
            continue;
        }
        done[vid.index()] = true;
        if targets.contains(&vid) {
            let mut path = vec![vid];
            let mut cur = vid;
            while pred[cur.index()] != u32::MAX {
                cur = VertexId(pred[cur.index()]);
                path.push(cur);
            }
            path.reverse(); // source first
            return path;
        }
        for h in mesh.outgoing_halfedges(vid) {
            let w = mesh.target(h);
            let nd = d + metric.len(h.edge());
            if nd < dist[w.index()] {
                dist[w.index()] = nd;
                pred[w.index()] = v;
                heap.push(HeapItem { dist: nd, v: w.0 });
            }
        }
    }
    unreachable!("boundary loops are connected through the annulus");
}

/// Cuts the mesh open along a simple vertex path whose endpoints lie on the
/// boundary. Every path vertex is duplicated; faces on the right of the
/// directed path are rewired to the duplicates. Returns the sliced mesh, its
/// metric, and for each sliced vertex the original it came from.
fn slice_along_path(
    mesh: &HalfedgeMesh,
    metric: &DiscreteMetric,
    path: &[VertexId],
) -> Result<(HalfedgeMesh, DiscreteMetric, Vec<u32>), FlowError> {
    assert!(path.len() >= 2);
    let ccw_next = |h: HalfedgeId| mesh.prev(h).twin();
    let cw_next = |h: HalfedgeId| mesh.next(h.twin());
    let outgoing_to = |from: VertexId, to: VertexId| -> HalfedgeId {
        mesh.outgoing_halfedges(from)
            .find(|&h| mesh.target(h) == to)
            .expect("path edge exists")
    };

    // corners (face, vertex) that move to the duplicate of `vertex`
    let mut dup_corners: HashSet<(u32, u32)> = HashSet::new();
    for (i, &v) in path.iter().enumerate() {
        let out_fwd = (i + 1 < path.len()).then(|| outgoing_to(v, path[i + 1]));
        let out_bwd = (i > 0).then(|| outgoing_to(v, path[i - 1]));
        match (out_fwd, out_bwd) {
            (Some(fwd), Some(bwd)) => {
                // interior vertex: duplicate the ccw arc [bwd, fwd)
                let mut h = bwd;
                while h != fwd {
                    if let Some(f) = mesh.face_of(h) {
                        dup_corners.insert((f.0, v.0));
                    }
                    h = ccw_next(h);
                }
            }
            (Some(fwd), None) => {
                // first vertex: duplicate everything clockwise of the path edge
                let mut h = cw_next(fwd);
                while let Some(f) = mesh.face_of(h) {
                    dup_corners.insert((f.0, v.0));
                    h = cw_next(h);
                }
            }
            (None, Some(bwd)) => {
                // last vertex: duplicate the path edge's face and everything ccw of it
                let mut h = bwd;
                while let Some(f) = mesh.face_of(h) {
                    dup_corners.insert((f.0, v.0));
                    h = ccw_next(h);
                }
            }
            (None, None) => unreachable!("path has at least two vertices"),
        }
    }

    let n = mesh.n_vertices();
    let mut orig: Vec<u32> = (0..n as u32).collect();
    let mut dup_id: HashMap<u32, u32> = HashMap::new();
    let mut positions = mesh.positions().to_vec();
    for &v in path {
        dup_id.insert(v.0, orig.len() as u32);
        orig.push(v.0);
        positions.push(mesh.position(v));
    }
    let faces: Vec<[u32; 3]> = mesh
        .faces()
        .map(|f| {
            mesh.face_vertices(f).map(|v| {
                if dup_corners.contains(&(f.0, v.0)) {
                    dup_id[&v.0]
                } else {
                    v.0
                }
            })
        })
        .collect();
    let sliced = HalfedgeMesh::from_faces_with_positions(positions, &faces)?;

    let mut edge_len: HashMap<(u32, u32), f64> = HashMap::with_capacity(mesh.n_edges());
    for e in mesh.edges() {
        let (a, b) = mesh.edge_vertices(e);
        edge_len.insert((a.0.min(b.0), a.0.max(b.0)), metric.len(e));
    }
    let lengths: Vec<f64> = sliced
        .edges()
        .map(|e| {
            let (a, b) = sliced.edge_vertices(e);
            let (oa, ob) = (orig[a.index()], orig[b.index()]);
            edge_len[&(oa.min(ob), oa.max(ob))]
        })
        .collect();
    Ok((sliced, DiscreteMetric::new(lengths), orig))
}

fn annulus_core(
    mesh: &HalfedgeMesh,
    outer_loop: Vec<VertexId>,
    inner_loop: Vec<VertexId>,
    opts: &FlowOptions,
) -> Result<AnnulusMap, FlowError> {
    // flatten: zero curvature everywhere, boundaries included, so both
    // boundary loops develop onto straight lines
    let flow = yamabe_flow(mesh, vec![0.0; mesh.n_vertices()], opts)?;

    let targets: HashSet<VertexId> = inner_loop.iter().copied().collect();
    let path = shortest_cut(&flow.mesh, &flow.metric, &outer_loop, &targets);
    let (sliced, sliced_metric, orig) = slice_along_path(&flow.mesh, &flow.metric, &path)?;
    debug_assert_eq!(sliced.boundary_loops().len(), 1);
    let layout = layout_flat_metric(&sliced, &sliced_metric)?;
    let mut z = layout.z;

    // the two seam copies differ by the deck translation τ
    let scale = sliced_metric.lengths().iter().fold(0.0f64, |m, l| m.max(*l));
    let n_orig = mesh.n_vertices();
    let seam: Vec<(usize, usize)> = path
        .iter()
        .enumerate()
        .map(|(i, &v)| (v.index(), n_orig + i))
        .collect();
    let mut tau = Complex::new(0.0, 0.0);
    for &(a, b) in &seam {
        tau += z[b] - z[a];
    }
    tau /= seam.len() as f64;
    let defect = seam
        .iter()
        .fold(0.0f64, |m, &(a, b)| m.max((z[b] - z[a] - tau).norm()));
    if defect > 1e-6 * scale * path.len() as f64 {
        return Err(FlowError::Holonomy(defect / scale));
    }

    // send τ to 2πi, put the outer boundary on the larger real part, shift it
    // to Re = 0, and exponentiate
    let s = Complex::new(0.0, 2.0 * PI) / tau;
    for w in &mut z {
        *w *= s;
    }
    let mean_re = |ids: &[VertexId], z: &[Complex<f64>]| {
        ids.iter().map(|v| z[v.index()].re).sum::<f64>() / ids.len() as f64
    };
    if mean_re(&outer_loop, &z) < mean_re(&inner_loop, &z) {
        for w in &mut z {
            *w = -*w;
        }
    }
    let shift = mean_re(&outer_loop, &z);
    for w in &mut z {
        w.re -= shift;
    }
    let z: Vec<Complex<f64>> = z.into_iter().map(|w| w.exp()).collect();

    // merge seam copies back onto the original vertex set
    let mut merged = vec![Complex::new(f64::NAN, f64::NAN); n_orig];
    for (i, &w) in z.iter().enumerate() {
        let o = orig[i] as usize;
        if merged[o].re.is_nan() {
            merged[o] = w;
        } else {
            merged[o] = 0.5 * (merged[o] + w);
        }
    }

    let inner_radius =
        inner_loop.iter().map(|v| merged[v.index()].norm()).sum::<f64>() / inner_loop.len() as f64;
    Ok(AnnulusMap {
        mesh: flow.mesh,
        z: merged,
        inner_radius,
        outer_loop,
        inner_loop,
        flow_iterations: flow.iterations,
        flow_trace: flow.trace,
    })
}
