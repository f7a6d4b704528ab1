//! Wavefront OBJ subset: `#` comments, `v x y z`, `f i j k ...`.
//!
//! Polygons are fan-triangulated from their first vertex. Slash suffixes
//! (`f 1/2/3 ...`) are accepted and ignored; negative (relative) indices
//! are resolved against the vertices read so far. Any other record is a
//! parse error.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::mesh::{TriMesh, Vec3};

/// Reads an OBJ file and rejects degenerate faces.
pub fn load_obj(path: impl AsRef<Path>) -> Result<TriMesh> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_obj(&text)
}

pub fn parse_obj(text: &str) -> Result<TriMesh> {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        let mut tokens = line.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        match tag {
            "v" => {
                let coords: Vec<f64> = tokens
                    .map(|t| {
                        t.parse::<f64>().map_err(|_| Error::Malformed {
                            line: line_no,
                            message: format!("bad coordinate {t:?}"),
                        })
                    })
                    .collect::<Result<_>>()?;
                // a trailing w component is allowed by the format; ignore it
                if coords.len() != 3 && coords.len() != 4 {
                    return Err(Error::Malformed {
                        line: line_no,
                        message: format!("expected 3 coordinates, found {}", coords.len()),
                    });
                }
                let p = Vec3::new(coords[0], coords[1], coords[2]);
                if !p.iter().all(|c| c.is_finite()) {
                    return Err(Error::Malformed {
                        line: line_no,
                        message: "non-finite coordinate".into(),
                    });
                }
                vertices.push(p);
            }
            "f" => {
                let idx: Vec<usize> = tokens
                    .map(|t| resolve_index(t, vertices.len(), line_no))
                    .collect::<Result<_>>()?;
                if idx.len() < 3 {
                    return Err(Error::Malformed {
                        line: line_no,
                        message: format!("face needs at least 3 vertices, found {}", idx.len()),
                    });
                }
                for k in 1..idx.len() - 1 {
                    faces.push([idx[0], idx[k], idx[k + 1]]);
                }
            }
            other => {
                return Err(Error::Malformed {
                    line: line_no,
                    message: format!("unsupported record {other:?}"),
                })
            }
        }
    }

    let mesh = TriMesh::new(vertices, faces)?;
    if !mesh.is_empty() {
        mesh.check_nondegenerate()?;
    }
    Ok(mesh)
}

fn resolve_index(token: &str, count: usize, line: usize) -> Result<usize> {
    let head = token.split('/').next().unwrap_or("");
    let raw: i64 = head.parse().map_err(|_| Error::Malformed {
        line,
        message: format!("bad face index {token:?}"),
    })?;
    let resolved = if raw > 0 {
        raw - 1
    } else if raw < 0 {
        count as i64 + raw
    } else {
        -1
    };
    if resolved < 0 || resolved as usize >= count {
        return Err(Error::IndexOutOfRange {
            index: raw,
            count,
            line: Some(line),
        });
    }
    Ok(resolved as usize)
}

/// Formats `x` with 17 significant digits, enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_obj(mesh: &TriMesh, out: &mut impl Write) -> std::io::Result<()> {
    for p in mesh.vertices() {
        writeln!(out, "v {} {} {}", fmt_f64(p.x), fmt_f64(p.y), fmt_f64(p.z))?;
    }
    for &[a, b, c] in mesh.faces() {
        writeln!(out, "f {} {} {}", a + 1, b + 1, c + 1)?;
    }
    Ok(())
}

pub fn save_obj(mesh: &TriMesh, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if mesh.is_empty() {
        return Err(Error::Empty);
    }
    let wrap = |source| Error::Write {
        path: path.to_path_buf(),
        source,
    };
    let file = fs::File::create(path).map_err(wrap)?;
    let mut out = BufWriter::new(file);
    write_obj(mesh, &mut out).map_err(wrap)?;
    out.flush().map_err(wrap)
}
