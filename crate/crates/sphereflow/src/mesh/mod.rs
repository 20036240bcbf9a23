//! Halfedge triangle meshes with an intrinsic metric layer.
//!
//! Connectivity is stored halfedge-style with twins implicitly paired: the two
//! halfedges of edge `e` live at indices `2e` and `2e+1`, so `twin` is an XOR
//! and edge ids survive diagonal flips. Geometry is split off into
//! [`DiscreteMetric`] so the same connectivity can carry either embedded edge
//! lengths or the deformed lengths produced by curvature flow.

mod delaunay;
mod io;
mod metric;
mod refine;

pub use delaunay::{diagonal_switch, is_delaunay, make_delaunay, DELAUNAY_SLACK};
pub use io::{load_mesh, load_mesh_auto, write_mesh, write_mesh_with_positions, MeshFormat};
pub use metric::{
    corner_angles, cotan_laplacian, face_area, gauss_bonnet_residual, total_area,
    vertex_area_weights, vertex_curvature, CornerAngles, CurvatureField, DiscreteMetric,
};
pub use refine::midpoint_refine;
pub(crate) use metric::triangle_angle;

use nalgebra::Point3;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum MeshError {
    #[error("i/o failure on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse failure at {path}:{line}: {msg}")]
    Parse { path: String, line: usize, msg: String },
    #[error("non-triangular face at {path}:{line}")]
    NonTriangularFace { path: String, line: usize },
    #[error("non-manifold edge ({a}, {b}): more than two incident faces")]
    NonManifoldEdge { a: u32, b: u32 },
    #[error("inconsistent orientation: edge ({a}, {b}) traversed twice in the same direction")]
    InconsistentOrientation { a: u32, b: u32 },
    #[error("non-manifold vertex {0}: incident faces do not form a single fan")]
    NonManifoldVertex(VertexId),
    #[error("isolated vertex {0}")]
    IsolatedVertex(VertexId),
    #[error("degenerate face {0}: repeated vertex")]
    DegenerateFace(FaceId),
    #[error("triangle inequality violated on face {0}")]
    TriangleInequality(FaceId),
    #[error("zero-area face {0}")]
    ZeroAreaFace(FaceId),
    #[error("edge {0} is on the boundary")]
    BoundaryEdge(EdgeId),
    #[error("flipping edge {0} would create a degenerate or duplicate edge")]
    DegenerateFlip(EdgeId),
    #[error("the two triangles at edge {0} flatten to a non-convex quad")]
    NonConvexFlip(EdgeId),
    #[error("flip limit of {0} exceeded: metric is likely degenerate")]
    FlipLimitExceeded(usize),
    #[error("mesh has no vertex positions")]
    MissingPositions,
}

macro_rules! id_type {
    ($name:ident) => {
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub fn new(index: usize) -> Self {
                Self(index as u32)
            }
            #[inline]
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

id_type!(VertexId);
id_type!(HalfedgeId);
id_type!(EdgeId);
id_type!(FaceId);

impl HalfedgeId {
    #[inline]
    pub fn twin(self) -> Self {
        Self(self.0 ^ 1)
    }
    #[inline]
    pub fn edge(self) -> EdgeId {
        EdgeId(self.0 >> 1)
    }
}

impl EdgeId {
    #[inline]
    pub fn halfedges(self) -> [HalfedgeId; 2] {
        [HalfedgeId(self.0 << 1), HalfedgeId(self.0 << 1 | 1)]
    }
}

const NO_FACE: u32 = u32::MAX;
const UNSET: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Halfedge {
    origin: u32,
    face: u32, // NO_FACE on the boundary
    next: u32,
}

#[derive(Clone, Debug)]
pub struct HalfedgeMesh {
    // per-vertex outgoing halfedge; for boundary vertices this is the boundary one
    vert_he: Vec<u32>,
    hes: Vec<Halfedge>,
    face_he: Vec<u32>,
    positions: Vec<Point3<f64>>,
}

impl HalfedgeMesh {
    /// Builds connectivity from triangles, rejecting non-manifold and
    /// inconsistently oriented input.
    pub fn from_faces(n_vertices: usize, faces: &[[u32; 3]]) -> Result<Self, MeshError> {
        let mut hes: Vec<Halfedge> = Vec::with_capacity(faces.len() * 3);
        let mut face_he = Vec::with_capacity(faces.len());
        // unordered endpoints -> edge id
        let mut edge_of: HashMap<(u32, u32), u32> = HashMap::with_capacity(faces.len() * 3 / 2);
        let mut seen: HashMap<(u32, u32), u8> = HashMap::with_capacity(faces.len() * 3 / 2);

        for (fi, tri) in faces.iter().enumerate() {
            let [a, b, c] = *tri;
            if a == b || b == c || c == a {
                return Err(MeshError::DegenerateFace(FaceId(fi as u32)));
            }
            for &v in tri {
                assert!((v as usize) < n_vertices, "face {fi} references vertex {v}");
            }
            let mut face_hes = [0u32; 3];
            for (slot, (&u, &v)) in [(a, b), (b, c), (c, a)].iter().map(|(u, v)| (u, v)).enumerate()
            {
                let key = (u.min(v), u.max(v));
                let count = seen.entry(key).or_insert(0);
                if *count >= 2 {
                    return Err(MeshError::NonManifoldEdge { a: u, b: v });
                }
                let h = match edge_of.get(&key) {
                    None => {
                        let e = (hes.len() / 2) as u32;
                        edge_of.insert(key, e);
                        hes.push(Halfedge { origin: u, face: NO_FACE, next: UNSET });
                        hes.push(Halfedge { origin: UNSET, face: NO_FACE, next: UNSET });
                        2 * e
                    }
                    Some(&e) => {
                        let h = 2 * e + 1;
                        if hes[2 * e as usize].origin == u {
                            return Err(MeshError::InconsistentOrientation { a: u, b: v });
                        }
                        hes[h as usize].origin = u;
                        h
                    }
                };
                *count += 1;
                face_hes[slot] = h;
            }
            for slot in 0..3 {
                let h = face_hes[slot] as usize;
                hes[h].face = fi as u32;
                hes[h].next = face_hes[(slot + 1) % 3];
            }
            face_he.push(face_hes[0]);
        }

        // Unclaimed twin slots are boundary halfedges; fill origins and chain
        // them along boundary loops. A vertex with two outgoing boundary
        // halfedges is a pinch point.
        let mut boundary_out: HashMap<u32, u32> = HashMap::new();
        for h in 0..hes.len() {
            if hes[h].origin == UNSET {
                let twin_origin = hes[h ^ 1].origin;
                debug_assert!(twin_origin != UNSET);
                // origin of a boundary halfedge = target of its twin
                let target_of_twin = {
                    let n = hes[hes[h ^ 1].next as usize].origin;
                    n
                };
                hes[h].origin = target_of_twin;
                debug_assert!(hes[h].face == NO_FACE);
                if boundary_out.insert(target_of_twin, h as u32).is_some() {
                    return Err(MeshError::NonManifoldVertex(VertexId(target_of_twin)));
                }
            }
        }
        let hes_len = hes.len();
        for h in 0..hes_len {
            if hes[h].face == NO_FACE {
                let target = hes[h ^ 1].origin;
                let next = *boundary_out
                    .get(&target)
                    .ok_or(MeshError::NonManifoldVertex(VertexId(target)))?;
                hes[h].next = next;
            }
        }

        let mut vert_he = vec![UNSET; n_vertices];
        for (h, he) in hes.iter().enumerate() {
            let v = he.origin as usize;
            if vert_he[v] == UNSET || (he.face == NO_FACE && hes[vert_he[v] as usize].face != NO_FACE)
            {
                vert_he[v] = h as u32;
            }
        }
        for (v, &h) in vert_he.iter().enumerate() {
            if h == UNSET {
                return Err(MeshError::IsolatedVertex(VertexId(v as u32)));
            }
        }

        let mesh = Self { vert_he, hes, face_he, positions: Vec::new() };
        mesh.check_vertex_fans()?;
        Ok(mesh)
    }

    pub fn from_faces_with_positions(
        positions: Vec<Point3<f64>>,
        faces: &[[u32; 3]],
    ) -> Result<Self, MeshError> {
        let mut mesh = Self::from_faces(positions.len(), faces)?;
        mesh.positions = positions;
        Ok(mesh)
    }

    /// Every outgoing halfedge of every vertex must be reachable by orbiting
    /// `next ∘ twin`; otherwise two fans meet at a pinch vertex.
    fn check_vertex_fans(&self) -> Result<(), MeshError> {
        let mut out_count = vec![0u32; self.n_vertices()];
        for he in &self.hes {
            out_count[he.origin as usize] += 1;
        }
        for v in 0..self.n_vertices() {
            let start = self.vert_he[v];
            let mut h = start;
            let mut walked = 0u32;
            loop {
                walked += 1;
                if walked > out_count[v] {
                    return Err(MeshError::NonManifoldVertex(VertexId(v as u32)));
                }
                h = self.hes[(h ^ 1) as usize].next;
                if h == start {
                    break;
                }
            }
            if walked != out_count[v] {
                return Err(MeshError::NonManifoldVertex(VertexId(v as u32)));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n_vertices(&self) -> usize {
        self.vert_he.len()
    }
    #[inline]
    pub fn n_halfedges(&self) -> usize {
        self.hes.len()
    }
    #[inline]
    pub fn n_edges(&self) -> usize {
        self.hes.len() / 2
    }
    #[inline]
    pub fn n_faces(&self) -> usize {
        self.face_he.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n_vertices() as u32).map(VertexId)
    }
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.n_edges() as u32).map(EdgeId)
    }
    pub fn faces(&self) -> impl Iterator<Item = FaceId> {
        (0..self.n_faces() as u32).map(FaceId)
    }

    #[inline]
    pub fn next(&self, h: HalfedgeId) -> HalfedgeId {
        HalfedgeId(self.hes[h.index()].next)
    }
    #[inline]
    pub fn origin(&self, h: HalfedgeId) -> VertexId {
        VertexId(self.hes[h.index()].origin)
    }
    #[inline]
    pub fn target(&self, h: HalfedgeId) -> VertexId {
        self.origin(h.twin())
    }
    #[inline]
    pub fn face_of(&self, h: HalfedgeId) -> Option<FaceId> {
        let f = self.hes[h.index()].face;
        (f != NO_FACE).then_some(FaceId(f))
    }
    #[inline]
    pub fn is_boundary_halfedge(&self, h: HalfedgeId) -> bool {
        self.hes[h.index()].face == NO_FACE
    }
    pub fn prev(&self, h: HalfedgeId) -> HalfedgeId {
        let mut p = h;
        loop {
            let n = self.next(p);
            if n == h {
                return p;
            }
            p = n;
        }
    }

    #[inline]
    pub fn halfedge_of_face(&self, f: FaceId) -> HalfedgeId {
        HalfedgeId(self.face_he[f.index()])
    }
    pub fn face_halfedges(&self, f: FaceId) -> [HalfedgeId; 3] {
        let h0 = self.halfedge_of_face(f);
        let h1 = self.next(h0);
        let h2 = self.next(h1);
        debug_assert_eq!(self.next(h2), h0);
        [h0, h1, h2]
    }
    pub fn face_vertices(&self, f: FaceId) -> [VertexId; 3] {
        self.face_halfedges(f).map(|h| self.origin(h))
    }

    pub fn edge_vertices(&self, e: EdgeId) -> (VertexId, VertexId) {
        let [h0, h1] = e.halfedges();
        (self.origin(h0), self.origin(h1))
    }
    pub fn edge_faces(&self, e: EdgeId) -> (Option<FaceId>, Option<FaceId>) {
        let [h0, h1] = e.halfedges();
        (self.face_of(h0), self.face_of(h1))
    }
    #[inline]
    pub fn is_boundary_edge(&self, e: EdgeId) -> bool {
        let [h0, h1] = e.halfedges();
        self.is_boundary_halfedge(h0) || self.is_boundary_halfedge(h1)
    }
    #[inline]
    pub fn is_boundary_vertex(&self, v: VertexId) -> bool {
        self.is_boundary_halfedge(HalfedgeId(self.vert_he[v.index()]))
    }

    /// Orbits all outgoing halfedges of `v`, starting from the boundary one
    /// when the vertex lies on the boundary.
    pub fn outgoing_halfedges(&self, v: VertexId) -> OutgoingIter<'_> {
        OutgoingIter { mesh: self, start: HalfedgeId(self.vert_he[v.index()]), cur: None }
    }

    pub fn vertex_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.outgoing_halfedges(v).map(|h| self.target(h))
    }

    pub fn vertex_degree(&self, v: VertexId) -> usize {
        self.outgoing_halfedges(v).count()
    }

    pub fn has_edge_between(&self, a: VertexId, b: VertexId) -> bool {
        self.vertex_neighbors(a).any(|n| n == b)
    }

    pub fn boundary_loops(&self) -> Vec<Vec<VertexId>> {
        let mut visited = vec![false; self.n_halfedges()];
        let mut loops = Vec::new();
        for h0 in 0..self.n_halfedges() {
            if self.hes[h0].face != NO_FACE || visited[h0] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = h0 as u32;
            loop {
                visited[h as usize] = true;
                cycle.push(VertexId(self.hes[h as usize].origin));
                h = self.hes[h as usize].next;
                if h == h0 as u32 {
                    break;
                }
            }
            loops.push(cycle);
        }
        loops
    }

    pub fn is_closed(&self) -> bool {
        self.hes.iter().all(|he| he.face != NO_FACE)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices() as i64 - self.n_edges() as i64 + self.n_faces() as i64
    }

    pub fn positions(&self) -> &[Point3<f64>] {
        &self.positions
    }
    pub fn has_positions(&self) -> bool {
        !self.positions.is_empty()
    }
    pub fn position(&self, v: VertexId) -> Point3<f64> {
        self.positions[v.index()]
    }
    pub fn set_positions(&mut self, positions: Vec<Point3<f64>>) {
        assert_eq!(positions.len(), self.n_vertices());
        self.positions = positions;
    }
    pub fn scale_positions(&mut self, s: f64) {
        for p in &mut self.positions {
            *p = Point3::from(p.coords * s);
        }
    }

    pub fn face_list(&self) -> Vec<[u32; 3]> {
        self.faces().map(|f| self.face_vertices(f).map(|v| v.0)).collect()
    }

    /// Replaces the diagonal of the two triangles at `e` by the opposite one.
    /// Pure connectivity surgery; the edge keeps its id, so callers update the
    /// metric entry themselves.
    pub(crate) fn flip_edge(&mut self, e: EdgeId) -> Result<(), MeshError> {
        if self.is_boundary_edge(e) {
            return Err(MeshError::BoundaryEdge(e));
        }
        let [h0, h1] = e.halfedges();
        // f0 = (a, b, c), f1 = (b, a, d)
        let h0n = self.next(h0);
        let h0p = self.next(h0n);
        let h1n = self.next(h1);
        let h1p = self.next(h1n);
        let a = self.origin(h0);
        let b = self.origin(h1);
        let c = self.origin(h0p);
        let d = self.origin(h1p);
        if c == d || self.has_edge_between(c, d) {
            return Err(MeshError::DegenerateFlip(e));
        }
        let f0 = self.hes[h0.index()].face;
        let f1 = self.hes[h1.index()].face;

        // new faces: (a, d, c) around h1n→h0→h0p and (d, b, c) around h1p→h0n→h1
        self.hes[h0.index()].origin = d.0;
        self.hes[h1.index()].origin = c.0;

        self.hes[h1n.index()].next = h0.0;
        self.hes[h0.index()].next = h0p.0;
        self.hes[h0p.index()].next = h1n.0;

        self.hes[h1p.index()].next = h0n.0;
        self.hes[h0n.index()].next = h1.0;
        self.hes[h1.index()].next = h1p.0;

        self.hes[h1n.index()].face = f0;
        self.hes[h0.index()].face = f0;
        self.hes[h0p.index()].face = f0;
        self.hes[h1p.index()].face = f1;
        self.hes[h0n.index()].face = f1;
        self.hes[h1.index()].face = f1;

        self.face_he[f0 as usize] = h0.0;
        self.face_he[f1 as usize] = h1.0;

        if self.vert_he[a.index()] == h0.0 {
            self.vert_he[a.index()] = h1n.0;
        }
        if self.vert_he[b.index()] == h1.0 {
            self.vert_he[b.index()] = h0n.0;
        }
        Ok(())
    }

    /// Re-checks all structural invariants; used by tests and after surgery.
    pub fn validate(&self) -> Result<(), MeshError> {
        for f in self.faces() {
            let hs = self.face_halfedges(f);
            for h in hs {
                if self.face_of(h) != Some(f) {
                    return Err(MeshError::NonManifoldVertex(self.origin(h)));
                }
            }
            let [a, b, c] = self.face_vertices(f);
            if a == b || b == c || c == a {
                return Err(MeshError::DegenerateFace(f));
            }
        }
        for h in 0..self.n_halfedges() {
            let h = HalfedgeId(h as u32);
            if self.origin(h) == self.target(h) {
                return Err(MeshError::DegenerateFlip(h.edge()));
            }
        }
        self.check_vertex_fans()
    }
}

pub struct OutgoingIter<'a> {
    mesh: &'a HalfedgeMesh,
    start: HalfedgeId,
    cur: Option<HalfedgeId>,
}

impl Iterator for OutgoingIter<'_> {
    type Item = HalfedgeId;

    fn next(&mut self) -> Option<HalfedgeId> {
        match self.cur {
            None => {
                self.cur = Some(self.start);
                Some(self.start)
            }
            Some(h) => {
                let n = self.mesh.next(h.twin());
                if n == self.start {
                    None
                } else {
                    self.cur = Some(n);
                    Some(n)
                }
            }
        }
    }
}
