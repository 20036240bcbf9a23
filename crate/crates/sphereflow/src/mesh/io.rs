//! OBJ and OFF readers/writers.
//!
//! Coordinates are written with 17 significant digits so a write/read round
//! trip reproduces every f64 bit-exactly.

use super::{HalfedgeMesh, MeshError};
use nalgebra::Point3;
use std::fs;
use std::io::Write as _;
use std::path::Path;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MeshFormat {
    Obj,
    Off,
}

impl MeshFormat {
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "obj" => Some(MeshFormat::Obj),
            "off" => Some(MeshFormat::Off),
            _ => None,
        }
    }
}

fn io_err(path: &Path, source: std::io::Error) -> MeshError {
    MeshError::Io { path: path.display().to_string(), source }
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> MeshError {
    MeshError::Parse { path: path.display().to_string(), line, msg: msg.into() }
}

pub fn load_mesh(path: impl AsRef<Path>, format: MeshFormat) -> Result<HalfedgeMesh, MeshError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let (positions, faces) = match format {
        MeshFormat::Obj => parse_obj(path, &text)?,
        MeshFormat::Off => parse_off(path, &text)?,
    };
    HalfedgeMesh::from_faces_with_positions(positions, &faces)
}

/// Loads by file extension (`.obj` / `.off`).
pub fn load_mesh_auto(path: impl AsRef<Path>) -> Result<HalfedgeMesh, MeshError> {
    let path = path.as_ref();
    let format = MeshFormat::from_path(path)
        .ok_or_else(|| parse_err(path, 0, "unknown mesh extension (expected .obj or .off)"))?;
    load_mesh(path, format)
}

type Parsed = (Vec<Point3<f64>>, Vec<[u32; 3]>);

fn parse_obj(path: &Path, text: &str) -> Result<Parsed, MeshError> {
    let mut positions = Vec::new();
    let mut faces = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.trim();
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let mut coords = [0.0; 3];
                for c in &mut coords {
                    let tok = tokens.next().ok_or_else(|| parse_err(path, ln, "vertex needs 3 coordinates"))?;
                    *c = tok.parse().map_err(|_| parse_err(path, ln, format!("bad coordinate {tok:?}")))?;
                }
                positions.push(Point3::new(coords[0], coords[1], coords[2]));
            }
            Some("f") => {
                let mut idx = Vec::with_capacity(3);
                for tok in tokens {
                    // accept v, v/vt, v/vt/vn, v//vn references
                    let vert = tok.split('/').next().unwrap_or("");
                    let i: i64 = vert.parse().map_err(|_| parse_err(path, ln, format!("bad face index {tok:?}")))?;
                    if i < 1 || i as usize > positions.len() {
                        return Err(parse_err(path, ln, format!("face index {i} out of range")));
                    }
                    idx.push((i - 1) as u32);
                }
                if idx.len() != 3 {
                    return Err(MeshError::NonTriangularFace { path: path.display().to_string(), line: ln });
                }
                faces.push([idx[0], idx[1], idx[2]]);
            }
            // normals, texcoords, groups, materials, comments: ignored
            _ => {}
        }
    }
    Ok((positions, faces))
}

fn parse_off(path: &Path, text: &str) -> Result<Parsed, MeshError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(ln, l)| (ln + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, header) = lines.next().ok_or_else(|| parse_err(path, 0, "empty OFF file"))?;
    let counts_line = if header.eq_ignore_ascii_case("OFF") {
        lines.next().ok_or_else(|| parse_err(path, ln, "missing count line"))?
    } else {
        (ln, header)
    };
    let counts: Vec<usize> = counts_line
        .1
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(path, counts_line.0, "bad count line")))
        .collect::<Result<_, _>>()?;
    if counts.len() < 2 {
        return Err(parse_err(path, counts_line.0, "count line needs |V| |F| [|E|]"));
    }
    let (nv, nf) = (counts[0], counts[1]);

    let mut positions = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (ln, l) = lines.next().ok_or_else(|| parse_err(path, 0, "unexpected end of vertex list"))?;
        let coords: Vec<f64> = l
            .split_whitespace()
            .take(3)
            .map(|t| t.parse().map_err(|_| parse_err(path, ln, format!("bad coordinate {t:?}"))))
            .collect::<Result<_, _>>()?;
        if coords.len() != 3 {
            return Err(parse_err(path, ln, "vertex needs 3 coordinates"));
        }
        positions.push(Point3::new(coords[0], coords[1], coords[2]));
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (ln, l) = lines.next().ok_or_else(|| parse_err(path, 0, "unexpected end of face list"))?;
        let nums: Vec<i64> = l
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(path, ln, format!("bad face token {t:?}"))))
            .collect::<Result<_, _>>()?;
        if nums.is_empty() || nums[0] != 3 || nums.len() < 4 {
            return Err(MeshError::NonTriangularFace { path: path.display().to_string(), line: ln });
        }
        let mut tri = [0u32; 3];
        for (slot, &i) in nums[1..4].iter().enumerate() {
            if i < 0 || i as usize >= nv {
                return Err(parse_err(path, ln, format!("face index {i} out of range")));
            }
            tri[slot] = i as u32;
        }
        faces.push(tri);
    }
    Ok((positions, faces))
}

pub fn write_mesh(path: impl AsRef<Path>, format: MeshFormat, mesh: &HalfedgeMesh) -> Result<(), MeshError> {
    if !mesh.has_positions() {
        return Err(MeshError::MissingPositions);
    }
    write_mesh_with_positions(path, format, mesh, mesh.positions())
}

pub fn write_mesh_with_positions(
    path: impl AsRef<Path>,
    format: MeshFormat,
    mesh: &HalfedgeMesh,
    positions: &[Point3<f64>],
) -> Result<(), MeshError> {
    let path = path.as_ref();
    assert_eq!(positions.len(), mesh.n_vertices());
    let mut out = String::new();
    match format {
        MeshFormat::Obj => {
            for p in positions {
                out.push_str(&format!("v {:.16e} {:.16e} {:.16e}\n", p.x, p.y, p.z));
            }
            for f in mesh.faces() {
                let [a, b, c] = mesh.face_vertices(f);
                out.push_str(&format!("f {} {} {}\n", a.0 + 1, b.0 + 1, c.0 + 1));
            }
        }
        MeshFormat::Off => {
            out.push_str("OFF\n");
            out.push_str(&format!("{} {} {}\n", mesh.n_vertices(), mesh.n_faces(), mesh.n_edges()));
            for p in positions {
                out.push_str(&format!("{:.16e} {:.16e} {:.16e}\n", p.x, p.y, p.z));
            }
            for f in mesh.faces() {
                let [a, b, c] = mesh.face_vertices(f);
                out.push_str(&format!("3 {} {} {}\n", a.0, b.0, c.0));
            }
        }
    }
    let mut file = fs::File::create(path).map_err(|e| io_err(path, e))?;
    file.write_all(out.as_bytes()).map_err(|e| io_err(path, e))
}
