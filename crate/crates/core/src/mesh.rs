//! Indexed triangle meshes and their edge adjacency.
//!
//! A [`TriMesh`] is a vertex list plus a triangle list whose winding is
//! counterclockwise seen from outside. [`EdgeAdjacency`] pairs every
//! undirected edge with its two incident faces and, while doing so, checks
//! that the surface is closed and consistently oriented.

use nalgebra::Vector3;

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// Vertex indices `[a, b, c]`, counterclockwise seen from outside.
pub type Triangle = [usize; 3];

/// Relative area threshold below which a face counts as degenerate.
pub const DEGENERATE_AREA_REL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh {
    vertices: Vec<Vec3>,
    faces: Vec<Triangle>,
}

impl TriMesh {
    /// Builds a mesh, checking coordinates are finite and every face
    /// references three distinct, in-range vertices.
    pub fn new(vertices: Vec<Vec3>, faces: Vec<Triangle>) -> Result<Self> {
        if let Some(vertex) = vertices
            .iter()
            .position(|p| !p.iter().all(|c| c.is_finite()))
        {
            return Err(Error::NonFinite { vertex });
        }
        for (face, tri) in faces.iter().enumerate() {
            if let Some(&index) = tri.iter().find(|&&i| i >= vertices.len()) {
                return Err(Error::IndexOutOfRange {
                    index: index as i64,
                    count: vertices.len(),
                    line: None,
                });
            }
            let [a, b, c] = *tri;
            if a == b || b == c || a == c {
                return Err(Error::InvalidFace {
                    face,
                    message: format!("repeated vertex in ({a}, {b}, {c})"),
                });
            }
        }
        Ok(Self { vertices, faces })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Triangle] {
        &self.faces
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() || self.faces.is_empty()
    }

    /// Same topology, new positions.
    ///
    /// # Panics
    ///
    /// Panics if `vertices` does not have one entry per existing vertex.
    pub fn with_vertices(&self, vertices: Vec<Vec3>) -> TriMesh {
        assert_eq!(vertices.len(), self.vertices.len(), "vertex count changed");
        TriMesh {
            vertices,
            faces: self.faces.clone(),
        }
    }

    /// Applies `f` to every vertex position.
    pub fn map_vertices(&self, f: impl Fn(&Vec3) -> Vec3) -> TriMesh {
        self.with_vertices(self.vertices.iter().map(f).collect())
    }

    /// Reverses the winding of every face.
    pub fn flipped(&self) -> TriMesh {
        TriMesh {
            vertices: self.vertices.clone(),
            faces: self.faces.iter().map(|&[a, b, c]| [a, c, b]).collect(),
        }
    }

    pub fn corners(&self, f: usize) -> [Vec3; 3] {
        let [a, b, c] = self.faces[f];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    /// Axis-aligned bounding box `(min, max)`, or `None` for an empty mesh.
    pub fn bounds(&self) -> Option<(Vec3, Vec3)> {
        let first = *self.vertices.first()?;
        Some(
            self.vertices
                .iter()
                .fold((first, first), |(lo, hi), p| (lo.inf(p), hi.sup(p))),
        )
    }

    pub fn bbox_diagonal(&self) -> f64 {
        self.bounds().map_or(0.0, |(lo, hi)| (hi - lo).norm())
    }

    /// Rejects faces whose area is below `DEGENERATE_AREA_REL × diagonal²`.
    pub fn check_nondegenerate(&self) -> Result<()> {
        let diag = self.bbox_diagonal();
        let threshold = DEGENERATE_AREA_REL * diag * diag;
        for f in 0..self.faces.len() {
            let [a, b, c] = self.corners(f);
            let area = 0.5 * (b - a).cross(&(c - a)).norm();
            if !(area >= threshold) || area == 0.0 {
                return Err(Error::DegenerateFace { face: f });
            }
        }
        Ok(())
    }
}

/// Unnormalized face normal `(b − a) × (c − a)`.
pub(crate) fn face_cross(mesh: &TriMesh, f: usize) -> Vec3 {
    let [a, b, c] = mesh.corners(f);
    (b - a).cross(&(c - a))
}

/// Outward unit normal of face `f`.
pub fn face_normal(mesh: &TriMesh, f: usize) -> Result<Vec3> {
    let [a, b, c] = mesh.corners(f);
    let cross = (b - a).cross(&(c - a));
    let scale = (b - a)
        .norm_squared()
        .max((c - a).norm_squared())
        .max((c - b).norm_squared());
    let norm = cross.norm();
    if !(norm > DEGENERATE_AREA_REL * scale) {
        return Err(Error::DegenerateFace { face: f });
    }
    Ok(cross / norm)
}

/// An undirected edge `u < v`. Face `f1` traverses it as `u → v`, `f2` as `v → u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub f1: usize,
    pub f2: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeAdjacency {
    edges: Vec<Edge>,
    vertex_edges: Vec<Vec<usize>>,
    vertex_faces: Vec<Vec<usize>>,
}

impl EdgeAdjacency {
    /// Edges sorted by `(u, v)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Indices into [`edges`](Self::edges) of the edges touching `p`.
    pub fn vertex_edges(&self, p: usize) -> &[usize] {
        &self.vertex_edges[p]
    }

    pub fn vertex_faces(&self, p: usize) -> &[usize] {
        &self.vertex_faces[p]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_faces.len()
    }
}

/// Pairs every undirected edge with its two incident faces.
///
/// Fails if an edge has a face count other than two, or if both faces
/// traverse the edge in the same direction.
pub fn build_adjacency(mesh: &TriMesh) -> Result<EdgeAdjacency> {
    // (u, v, forward, face) with u < v
    let mut half: Vec<(usize, usize, bool, usize)> = Vec::with_capacity(3 * mesh.face_count());
    for (f, &[a, b, c]) in mesh.faces().iter().enumerate() {
        for (s, t) in [(a, b), (b, c), (c, a)] {
            if s < t {
                half.push((s, t, true, f));
            } else {
                half.push((t, s, false, f));
            }
        }
    }
    half.sort_unstable();

    let mut edges = Vec::with_capacity(half.len() / 2);
    let mut vertex_edges = vec![Vec::new(); mesh.vertex_count()];
    let mut vertex_faces = vec![Vec::new(); mesh.vertex_count()];
    for (f, tri) in mesh.faces().iter().enumerate() {
        for &p in tri {
            vertex_faces[p].push(f);
        }
    }

    for group in half.chunk_by(|x, y| (x.0, x.1) == (y.0, y.1)) {
        let (u, v) = (group[0].0, group[0].1);
        if group.len() != 2 {
            return Err(Error::NotClosedManifold {
                u,
                v,
                count: group.len(),
            });
        }
        // sorted: backward (false) first
        let (back, fwd) = (group[0], group[1]);
        if back.2 == fwd.2 {
            return Err(Error::Orientation { u, v });
        }
        let e = edges.len();
        edges.push(Edge {
            u,
            v,
            f1: fwd.3,
            f2: back.3,
        });
        vertex_edges[u].push(e);
        vertex_edges[v].push(e);
    }

    Ok(EdgeAdjacency {
        edges,
        vertex_edges,
        vertex_faces,
    })
}

/// Full validation: non-degenerate faces, closed and consistently oriented.
pub fn validate(mesh: &TriMesh) -> Result<EdgeAdjacency> {
    if mesh.is_empty() {
        return Err(Error::Empty);
    }
    mesh.check_nondegenerate()?;
    build_adjacency(mesh)
}
