#![allow(dead_code)]

use curvmorph::generate::{generate, icosahedron, GeneratorSpec, Shape};
use curvmorph::{TriMesh, Vec3};
use nalgebra::{Matrix3, Rotation3, Unit};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A jittered closed mesh with at most 500 vertices, scaled into the unit ball.
pub fn random_mesh(seed: u64) -> TriMesh {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = [
        (Shape::Icosphere, rng.gen_range(0..=2)),
        (Shape::Cube, rng.gen_range(0..=3)),
        (Shape::DentedSphere, 2),
        (Shape::Dumbbell, 2),
        (Shape::Cylinder, rng.gen_range(0..=1)),
    ];
    let (shape, level) = shapes[(seed % shapes.len() as u64) as usize];
    let mut spec = GeneratorSpec::new(shape, level);
    spec.noise = rng.gen_range(0.0..0.08);
    spec.seed = rng.gen();
    spec.aspect = rng.gen_range(0.5..2.0);
    spec.dent_depth = rng.gen_range(0.0..0.5);
    let mesh = generate(&spec).unwrap();
    assert!(mesh.vertex_count() <= 500);
    let r = mesh.vertices().iter().map(|p| p.norm()).fold(0.0, f64::max);
    mesh.map_vertices(|p| p / r)
}

pub fn random_rotation(rng: &mut impl Rng) -> Rotation3<f64> {
    let axis = Vec3::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    );
    let axis = Unit::new_normalize(axis + Vec3::new(1e-3, 0.0, 0.0));
    Rotation3::from_axis_angle(&axis, rng.gen_range(-3.1..3.1))
}

/// Random permutation `perm`, where old vertex `i` becomes vertex `perm[i]`.
pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Relabels vertices by `perm` and shuffles the face order.
pub fn relabel(mesh: &TriMesh, perm: &[usize], rng: &mut impl Rng) -> TriMesh {
    let mut pts = vec![Vec3::zeros(); mesh.vertex_count()];
    for (i, p) in mesh.vertices().iter().enumerate() {
        pts[perm[i]] = *p;
    }
    let mut faces: Vec<_> = mesh
        .faces()
        .iter()
        .map(|&[a, b, c]| [perm[a], perm[b], perm[c]])
        .collect();
    faces.shuffle(rng);
    TriMesh::new(pts, faces).unwrap()
}

/// Positions of `relabeled` read back in the original vertex order.
pub fn unlabel(relabeled: &TriMesh, perm: &[usize]) -> Vec<Vec3> {
    perm.iter().map(|&j| relabeled.vertices()[j]).collect()
}

/// The 60 rotations of the icosahedron, each with the vertex permutation it induces.
pub fn icosahedral_group() -> Vec<(Matrix3<f64>, Vec<usize>)> {
    let ico = icosahedron();
    let pts = ico.vertices();
    let frame = |a: usize, b: usize| {
        let e1 = pts[a].normalize();
        let e2 = (pts[b] - e1 * pts[b].dot(&e1)).normalize();
        Matrix3::from_columns(&[e1, e2, e1.cross(&e2)])
    };
    let [a0, b0, _] = ico.faces()[0];
    let source = frame(a0, b0);
    let mut group = Vec::new();
    for &[a, b, c] in ico.faces() {
        for (x, y) in [(a, b), (b, c), (c, a)] {
            let rot = frame(x, y) * source.transpose();
            let perm = pts
                .iter()
                .map(|p| {
                    let q = rot * p;
                    (0..pts.len())
                        .min_by(|&i, &j| (pts[i] - q).norm().total_cmp(&(pts[j] - q).norm()))
                        .unwrap()
                })
                .collect();
            group.push((rot, perm));
        }
    }
    group
}

/// Largest `‖R·p_i − p_perm(i)‖` over the group.
pub fn symmetry_defect(mesh: &TriMesh, group: &[(Matrix3<f64>, Vec<usize>)]) -> f64 {
    let pts = mesh.vertices();
    group
        .iter()
        .flat_map(|(rot, perm)| {
            pts.iter()
                .zip(perm)
                .map(move |(p, &j)| (rot * p - pts[j]).norm())
        })
        .fold(0.0, f64::max)
}
