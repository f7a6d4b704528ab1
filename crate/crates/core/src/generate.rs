//! Procedural closed test meshes.
//!
//! Every generator returns a closed, outward-wound, non-degenerate mesh.
//! Subdivision is 1-to-4 midpoint splitting, so a level-`k` icosphere has
//! `20·4^k` faces and a level-`k` cube `12·4^k`.

use std::collections::HashMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mesh::{TriMesh, Triangle, Vec3};

/// Highest subdivision level accepted by [`generate`].
pub const MAX_SUBDIVISION: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Cube,
    Cylinder,
    Icosphere,
    DentedSphere,
    Dumbbell,
}

impl std::str::FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cube" => Ok(Shape::Cube),
            "cylinder" => Ok(Shape::Cylinder),
            "icosphere" => Ok(Shape::Icosphere),
            "dented_sphere" | "dented-sphere" => Ok(Shape::DentedSphere),
            "dumbbell" | "sphere_bar" => Ok(Shape::Dumbbell),
            other => Err(Error::InvalidParams(format!("unknown shape {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub shape: Shape,
    pub subdivision: u32,
    /// Cylinder height over diameter; dumbbell length over bulb diameter.
    pub aspect: f64,
    /// Radial depth of the dent on a unit sphere, in `[0, 1)`.
    pub dent_depth: f64,
    /// Angular radius of the dent in radians.
    pub dent_angle: f64,
    /// Dumbbell neck radius; bulbs have radius 1.
    pub neck_radius: f64,
    /// Relative amplitude of seeded radial jitter; 0 disables it.
    pub noise: f64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(shape: Shape, subdivision: u32) -> Self {
        Self {
            shape,
            subdivision,
            aspect: 2.0,
            dent_depth: 0.4,
            dent_angle: 1.0,
            neck_radius: 0.4,
            noise: 0.0,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.subdivision > MAX_SUBDIVISION {
            return bad(format!(
                "subdivision {} exceeds {MAX_SUBDIVISION}",
                self.subdivision
            ));
        }
        if !(self.aspect > 0.0 && self.aspect.is_finite()) {
            return bad(format!("aspect must be positive, got {}", self.aspect));
        }
        if !(0.0..1.0).contains(&self.dent_depth) {
            return bad(format!(
                "dent depth must be in [0, 1), got {}",
                self.dent_depth
            ));
        }
        if !(self.dent_angle > 0.0 && self.dent_angle <= PI) {
            return bad(format!(
                "dent angle must be in (0, π], got {}",
                self.dent_angle
            ));
        }
        if !(self.neck_radius > 0.0) {
            return bad(format!(
                "neck radius must be positive, got {}",
                self.neck_radius
            ));
        }
        if self.neck_radius >= 1.0 {
            return bad(format!(
                "neck radius {} must be smaller than the bulb radius 1",
                self.neck_radius
            ));
        }
        if !(0.0..0.5).contains(&self.noise) {
            return bad(format!("noise must be in [0, 0.5), got {}", self.noise));
        }
        Ok(())
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<TriMesh> {
    spec.validate()?;
    let k = spec.subdivision;
    let mesh = match spec.shape {
        Shape::Cube => subdivided_cube(k),
        Shape::Icosphere => icosphere(k),
        Shape::Cylinder => cylinder(k, spec.aspect),
        Shape::DentedSphere => dented_sphere(k, spec.dent_depth, spec.dent_angle),
        Shape::Dumbbell => dumbbell(k, spec.aspect, spec.neck_radius),
    };
    Ok(jitter(&mesh, spec.noise, spec.seed))
}

/// Scales each vertex about the origin by `1 + noise·u`, `u` uniform in `[−1, 1)`.
pub fn jitter(mesh: &TriMesh, noise: f64, seed: u64) -> TriMesh {
    if noise == 0.0 {
        return mesh.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = mesh
        .vertices()
        .iter()
        .map(|p| p * (1.0 + noise * rng.gen_range(-1.0..1.0)))
        .collect();
    mesh.with_vertices(pts)
}

fn build(vertices: Vec<Vec3>, faces: Vec<Triangle>) -> TriMesh {
    TriMesh::new(vertices, faces).expect("generator produced invalid indices")
}

/// Axis-aligned unit cube centered at the origin, two triangles per side.
pub fn unit_cube() -> TriMesh {
    let h = 0.5;
    let vertices = vec![
        Vec3::new(-h, -h, -h),
        Vec3::new(h, -h, -h),
        Vec3::new(h, h, -h),
        Vec3::new(-h, h, -h),
        Vec3::new(-h, -h, h),
        Vec3::new(h, -h, h),
        Vec3::new(h, h, h),
        Vec3::new(-h, h, h),
    ];
    let faces = vec![
        [0, 2, 1],
        [0, 3, 2],
        [4, 5, 6],
        [4, 6, 7],
        [0, 1, 5],
        [0, 5, 4],
        [3, 7, 6],
        [3, 6, 2],
        [0, 4, 7],
        [0, 7, 3],
        [1, 2, 6],
        [1, 6, 5],
    ];
    build(vertices, faces)
}

/// Regular tetrahedron inscribed in the cube `[−1, 1]³`.
pub fn regular_tetrahedron() -> TriMesh {
    let vertices = vec![
        Vec3::new(1.0, 1.0, 1.0),
        Vec3::new(1.0, -1.0, -1.0),
        Vec3::new(-1.0, 1.0, -1.0),
        Vec3::new(-1.0, -1.0, 1.0),
    ];
    build(vertices, vec![[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]])
}

/// Regular icosahedron with unit circumradius.
pub fn icosahedron() -> TriMesh {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        (-1.0, t, 0.0),
        (1.0, t, 0.0),
        (-1.0, -t, 0.0),
        (1.0, -t, 0.0),
        (0.0, -1.0, t),
        (0.0, 1.0, t),
        (0.0, -1.0, -t),
        (0.0, 1.0, -t),
        (t, 0.0, -1.0),
        (t, 0.0, 1.0),
        (-t, 0.0, -1.0),
        (-t, 0.0, 1.0),
    ];
    let vertices = raw
        .iter()
        .map(|&(x, y, z)| Vec3::new(x, y, z).normalize())
        .collect();
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
    build(vertices, faces)
}

/// Square pyramid with base `[−1, 1]² × {0}` and apex `(0, 0, height)`.
pub fn square_pyramid(height: f64) -> TriMesh {
    let vertices = vec![
        Vec3::new(-1.0, -1.0, 0.0),
        Vec3::new(1.0, -1.0, 0.0),
        Vec3::new(1.0, 1.0, 0.0),
        Vec3::new(-1.0, 1.0, 0.0),
        Vec3::new(0.0, 0.0, height),
    ];
    let faces = vec![
        [0, 1, 4],
        [1, 2, 4],
        [2, 3, 4],
        [3, 0, 4],
        [0, 2, 1],
        [0, 3, 2],
    ];
    build(vertices, faces)
}

/// One round of 1-to-4 midpoint subdivision; `place` positions each new
/// midpoint given the two edge endpoints.
pub fn subdivide(mesh: &TriMesh, place: impl Fn(&Vec3, &Vec3) -> Vec3) -> TriMesh {
    let mut vertices = mesh.vertices().to_vec();
    let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
    let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<Vec3>| -> usize {
        let key = (a.min(b), a.max(b));
        *midpoints.entry(key).or_insert_with(|| {
            let p = place(&vertices[key.0], &vertices[key.1]);
            vertices.push(p);
            vertices.len() - 1
        })
    };
    let mut faces = Vec::with_capacity(4 * mesh.face_count());
    for &[a, b, c] in mesh.faces() {
        let ab = midpoint(a, b, &mut vertices);
        let bc = midpoint(b, c, &mut vertices);
        let ca = midpoint(c, a, &mut vertices);
        faces.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
    }
    build(vertices, faces)
}

/// Unit cube with each triangle split `level` times; faces stay flat.
pub fn subdivided_cube(level: u32) -> TriMesh {
    (0..level).fold(unit_cube(), |m, _| subdivide(&m, |a, b| (a + b) * 0.5))
}

/// Unit sphere approximation by repeated subdivision of the icosahedron.
pub fn icosphere(level: u32) -> TriMesh {
    (0..level).fold(icosahedron(), |m, _| {
        subdivide(&m, |a, b| (a + b).normalize())
    })
}

/// Unit icosphere pushed inward around the +z pole by a smooth cos² bump.
pub fn dented_sphere(level: u32, depth: f64, angle: f64) -> TriMesh {
    let sphere = icosphere(level);
    if depth == 0.0 {
        return sphere;
    }
    sphere.map_vertices(|p| {
        let phi = p.z.clamp(-1.0, 1.0).acos();
        if phi >= angle {
            *p
        } else {
            let bump = (0.5 * PI * phi / angle).cos().powi(2);
            p * (1.0 - depth * bump)
        }
    })
}

/// Two bulbs of radius about 1 joined by a neck, along the x axis.
///
/// Built as an icosphere stretched by `aspect` along x and pinched near
/// `x = 0` to `neck` radius, so it stays embedded and keeps sphere topology.
pub fn dumbbell(level: u32, aspect: f64, neck: f64) -> TriMesh {
    icosphere(level).map_vertices(|p| {
        let pinch = 1.0 - (1.0 - neck) * (-(p.x / 0.35).powi(2)).exp();
        Vec3::new(2.0 * aspect * p.x, pinch * p.y, pinch * p.z)
    })
}

/// Capped cylinder of radius 1 centered at the origin with axis z.
///
/// `8·2^level` segments around; rows chosen so side quads are roughly
/// square; each cap is a fan around a center vertex.
pub fn cylinder(level: u32, aspect: f64) -> TriMesh {
    let segments = 8usize << level;
    let height = 2.0 * aspect;
    let rows = ((height / (2.0 * PI / segments as f64)).round() as usize).max(1);
    let mut vertices = Vec::with_capacity((rows + 1) * segments + 2);
    for j in 0..=rows {
        let z = -0.5 * height + height * j as f64 / rows as f64;
        for i in 0..segments {
            let a = 2.0 * PI * i as f64 / segments as f64;
            vertices.push(Vec3::new(a.cos(), a.sin(), z));
        }
    }
    let bottom = vertices.len();
    vertices.push(Vec3::new(0.0, 0.0, -0.5 * height));
    let top = vertices.len();
    vertices.push(Vec3::new(0.0, 0.0, 0.5 * height));

    let idx = |j: usize, i: usize| j * segments + i % segments;
    let mut faces = Vec::with_capacity(2 * rows * segments + 2 * segments);
    for j in 0..rows {
        for i in 0..segments {
            let (a, b, c, d) = (idx(j, i), idx(j, i + 1), idx(j + 1, i + 1), idx(j + 1, i));
            faces.push([a, b, c]);
            faces.push([a, c, d]);
        }
    }
    for i in 0..segments {
        faces.push([bottom, idx(0, i + 1), idx(0, i)]);
        faces.push([top, idx(rows, i), idx(rows, i + 1)]);
    }
    build(vertices, faces)
}
