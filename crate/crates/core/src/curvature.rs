//! Discrete mean curvature from oriented dihedral angles.
//!
//! Each edge carries `K(e) = l(e)·θ(e)`, where `θ(e)` is the signed angle
//! between the outward normals of its two faces (positive on convex
//! edges). A vertex's curvature is the plain mean of `K(e)` over its
//! incident edges; its normal is the normalized sum of the unit normals of
//! its faces.
//!
//! Sums run over summands sorted by value, so results do not depend on
//! vertex or face numbering.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::mesh::{face_normal, EdgeAdjacency, TriMesh, Vec3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// A field counts as uniform when `K_max − K_min < uniform_rel · max(|K_max|, 1)`.
    pub uniform_rel: f64,
    /// Smallest admissible norm of the averaged face normal at a vertex.
    pub normal_min: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            uniform_rel: 1e-12,
            normal_min: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureField {
    pub edge_length: Vec<f64>,
    /// Oriented dihedral angle in `(−π, π]`.
    pub dihedral: Vec<f64>,
    pub edge_curvature: Vec<f64>,
    pub vertex_normal: Vec<Vec3>,
    pub vertex_curvature: Vec<f64>,
    pub k_min: f64,
    pub k_max: f64,
    uniform_rel: f64,
}

impl CurvatureField {
    /// `(K(p) − K_min) / (K_max − K_min)`, or 0.5 when the field is uniform.
    pub fn normalized_weight(&self, p: usize) -> f64 {
        if self.is_uniform() {
            return 0.5;
        }
        (self.vertex_curvature[p] - self.k_min) / (self.k_max - self.k_min)
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..self.vertex_curvature.len())
            .map(|p| self.normalized_weight(p))
            .collect()
    }

    pub fn is_uniform(&self) -> bool {
        self.k_max - self.k_min < self.uniform_rel * self.k_max.abs().max(1.0)
    }
}

/// `l · θ`.
#[inline]
pub fn edge_curvature(length: f64, theta: f64) -> f64 {
    length * theta
}

/// Signed angle between the outward normals `n1`, `n2` of two faces
/// sharing an edge whose direction, as traversed by the first face, is
/// `dir` (unit length).
pub fn signed_angle(n1: &Vec3, n2: &Vec3, dir: &Vec3) -> f64 {
    let theta = n1.cross(n2).dot(dir).atan2(n1.dot(n2));
    if theta <= -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        theta
    }
}

fn edge_dir(mesh: &TriMesh, u: usize, v: usize) -> (Vec3, f64) {
    let d = mesh.vertices()[v] - mesh.vertices()[u];
    let l = d.norm();
    (d / l, l)
}

/// Oriented dihedral angle of edge `e`: positive when convex.
pub fn dihedral_angle(mesh: &TriMesh, adj: &EdgeAdjacency, e: usize) -> Result<f64> {
    let edge = adj.edges()[e];
    let n1 = face_normal(mesh, edge.f1)?;
    let n2 = face_normal(mesh, edge.f2)?;
    let (dir, _) = edge_dir(mesh, edge.u, edge.v);
    Ok(signed_angle(&n1, &n2, &dir))
}

fn total_cmp_vec(a: &Vec3, b: &Vec3) -> Ordering {
    a.x.total_cmp(&b.x)
        .then(a.y.total_cmp(&b.y))
        .then(a.z.total_cmp(&b.z))
}

fn mean_sorted(mut values: Vec<f64>) -> f64 {
    values.sort_unstable_by(f64::total_cmp);
    let n = values.len() as f64;
    values.into_iter().sum::<f64>() / n
}

fn normal_from_faces(mut normals: Vec<Vec3>, p: usize, tol: &Tolerances) -> Result<Vec3> {
    normals.sort_unstable_by(total_cmp_vec);
    let count = normals.len() as f64;
    let sum = normals.into_iter().fold(Vec3::zeros(), |acc, n| acc + n);
    if !(sum.norm() / count >= tol.normal_min) {
        return Err(Error::DegenerateNormal { vertex: p });
    }
    Ok(sum.normalize())
}

/// Mean of `K(e)` over the edges incident to `p`.
pub fn vertex_curvature(mesh: &TriMesh, adj: &EdgeAdjacency, p: usize) -> Result<f64> {
    let incident = adj.vertex_edges(p);
    if incident.len() < 3 {
        return Err(Error::Topology {
            vertex: p,
            edges: incident.len(),
        });
    }
    let ks = incident
        .iter()
        .map(|&e| {
            let edge = adj.edges()[e];
            let (_, l) = edge_dir(mesh, edge.u, edge.v);
            Ok(edge_curvature(l, dihedral_angle(mesh, adj, e)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(mean_sorted(ks))
}

/// Normalized sum of the unit normals of the faces around `p`.
pub fn vertex_normal(mesh: &TriMesh, p: usize) -> Result<Vec3> {
    let normals = mesh
        .faces()
        .iter()
        .enumerate()
        .filter(|(_, tri)| tri.contains(&p))
        .map(|(f, _)| face_normal(mesh, f))
        .collect::<Result<Vec<_>>>()?;
    if normals.is_empty() {
        return Err(Error::Topology {
            vertex: p,
            edges: 0,
        });
    }
    normal_from_faces(normals, p, &Tolerances::default())
}

pub fn compute_field(mesh: &TriMesh, adj: &EdgeAdjacency) -> Result<CurvatureField> {
    compute_field_with(mesh, adj, &Tolerances::default())
}

pub fn compute_field_with(
    mesh: &TriMesh,
    adj: &EdgeAdjacency,
    tol: &Tolerances,
) -> Result<CurvatureField> {
    let face_normals = (0..mesh.face_count())
        .map(|f| face_normal(mesh, f))
        .collect::<Result<Vec<_>>>()?;

    let ne = adj.edge_count();
    let mut edge_length = Vec::with_capacity(ne);
    let mut dihedral = Vec::with_capacity(ne);
    let mut edge_k = Vec::with_capacity(ne);
    for edge in adj.edges() {
        let (dir, l) = edge_dir(mesh, edge.u, edge.v);
        let theta = signed_angle(&face_normals[edge.f1], &face_normals[edge.f2], &dir);
        edge_length.push(l);
        dihedral.push(theta);
        edge_k.push(edge_curvature(l, theta));
    }

    let nv = mesh.vertex_count();
    let mut vertex_normal = Vec::with_capacity(nv);
    let mut vertex_k = Vec::with_capacity(nv);
    for p in 0..nv {
        let incident = adj.vertex_edges(p);
        if incident.len() < 3 {
            return Err(Error::Topology {
                vertex: p,
                edges: incident.len(),
            });
        }
        vertex_k.push(mean_sorted(incident.iter().map(|&e| edge_k[e]).collect()));
        let normals = adj
            .vertex_faces(p)
            .iter()
            .map(|&f| face_normals[f])
            .collect();
        vertex_normal.push(normal_from_faces(normals, p, tol)?);
    }

    let k_min = vertex_k.iter().copied().fold(f64::INFINITY, f64::min);
    let k_max = vertex_k.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    Ok(CurvatureField {
        edge_length,
        dihedral,
        edge_curvature: edge_k,
        vertex_normal,
        vertex_curvature: vertex_k,
        k_min,
        k_max,
        uniform_rel: tol.uniform_rel,
    })
}
