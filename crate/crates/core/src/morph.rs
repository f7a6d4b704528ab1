//! Curvature-weighted inward/outward vertex moves and their schedules.
//!
//! With `w(p) = (K(p) − K_min)/(K_max − K_min)` and vertex normal `n_p`:
//!
//! - inward:  `p ← p − C·w(p)·n_p`
//! - outward: `p ← p + C·(1 − w(p))·n_p`
//!
//! Each elementary move updates every vertex simultaneously from weights
//! and normals of the input mesh. One iteration `T(k_in, k_out, C)` is
//! `k_in` inward moves followed by `k_out` outward moves. The alternating
//! preset runs, `m` times over, 100 iterations of `(2, 2, C)` then 100 of
//! `(2, 1, C)`, so `m` rounds are `200·m` iterations.

use crate::curvature::{compute_field_with, CurvatureField, Tolerances};
use crate::error::{Error, Result};
use crate::mesh::{EdgeAdjacency, TriMesh};

/// Iterations per phase in the alternating preset.
pub const PRESET_PHASE_LEN: usize = 100;
/// Default step magnitude of the alternating preset.
pub const PRESET_C: f64 = 0.25;
/// Default step magnitude relative to the bounding-box diagonal. Keeps
/// the preset stable for at least 3 rounds on unit-scale cubes and
/// dented spheres; larger values collapse them through the net inward
/// drift of the `(2, 1)` phase.
pub const DEFAULT_C_REL: f64 = 0.0005;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorphParams {
    k_in: u32,
    k_out: u32,
    c: f64,
}

impl MorphParams {
    pub fn new(k_in: u32, k_out: u32, c: f64) -> Result<Self> {
        if k_in + k_out == 0 {
            return Err(Error::InvalidParams(
                "k_in + k_out must be at least 1".into(),
            ));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParams(format!("C must be positive, got {c}")));
        }
        Ok(Self { k_in, k_out, c })
    }

    pub fn k_in(&self) -> u32 {
        self.k_in
    }

    pub fn k_out(&self) -> u32 {
        self.k_out
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn with_c(self, c: f64) -> Result<Self> {
        Self::new(self.k_in, self.k_out, c)
    }
}

/// When the curvature field and normals are re-evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Refresh {
    /// Before every elementary inward or outward move.
    #[default]
    PerStep,
    /// Once per iteration `T`; all its moves reuse the same weights and normals.
    FrozenPerT,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Inward,
    Outward,
}

/// Receives progress events from the morph engine.
pub trait MorphHook {
    fn on_step(&mut self, _kind: StepKind) {}
    /// Called after iteration `iteration` (1-based, counted across phases) completes.
    fn on_iteration(&mut self, _iteration: usize) {}
}

impl MorphHook for () {}

/// Counts elementary moves and iterations, keeping the move order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepCounter {
    pub log: Vec<StepKind>,
    pub iterations: usize,
}

impl StepCounter {
    pub fn inward(&self) -> usize {
        self.log.iter().filter(|&&k| k == StepKind::Inward).count()
    }

    pub fn outward(&self) -> usize {
        self.log.iter().filter(|&&k| k == StepKind::Outward).count()
    }
}

impl MorphHook for StepCounter {
    fn on_step(&mut self, kind: StepKind) {
        self.log.push(kind);
    }

    fn on_iteration(&mut self, _iteration: usize) {
        self.iterations += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phase {
    pub n: usize,
    pub params: MorphParams,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub phases: Vec<Phase>,
    /// Observer cadence in iterations; phase boundaries are always reported.
    pub stride: usize,
}

impl Schedule {
    pub fn new(phases: Vec<Phase>, stride: usize) -> Result<Self> {
        if stride == 0 {
            return Err(Error::InvalidParams(
                "checkpoint stride must be at least 1".into(),
            ));
        }
        Ok(Self { phases, stride })
    }

    /// `m` rounds of `100 × (2, 2, c)` followed by `100 × (2, 1, c)`.
    pub fn preset(m: usize, c: f64, stride: usize) -> Result<Self> {
        let wide = Phase {
            n: PRESET_PHASE_LEN,
            params: MorphParams::new(2, 2, c)?,
        };
        let narrow = Phase {
            n: PRESET_PHASE_LEN,
            params: MorphParams::new(2, 1, c)?,
        };
        let phases = (0..m).flat_map(|_| [wide, narrow]).collect();
        Self::new(phases, stride)
    }

    pub fn total_iterations(&self) -> usize {
        self.phases.iter().map(|p| p.n).sum()
    }

    /// Iterations at which the observer fires, in order, without duplicates.
    pub fn checkpoints(&self) -> Vec<usize> {
        let mut out = vec![0];
        let mut it = 0;
        for phase in &self.phases {
            for _ in 0..phase.n {
                it += 1;
                if it % self.stride == 0 {
                    out.push(it);
                }
            }
            if out.last() != Some(&it) {
                out.push(it);
            }
        }
        out
    }
}

/// Moves every vertex along its normal by the curvature weight.
fn displace(mesh: &TriMesh, field: &CurvatureField, c: f64, kind: StepKind) -> TriMesh {
    let pts = mesh
        .vertices()
        .iter()
        .zip(&field.vertex_normal)
        .enumerate()
        .map(|(p, (pos, n))| {
            let w = field.normalized_weight(p);
            match kind {
                StepKind::Inward => pos - n * (c * w),
                StepKind::Outward => pos + n * (c * (1.0 - w)),
            }
        })
        .collect();
    mesh.with_vertices(pts)
}

/// Runs the transformations with a given refresh policy and tolerances.
#[derive(Debug, Clone, Copy, Default)]
pub struct Morpher {
    pub refresh: Refresh,
    pub tolerances: Tolerances,
}

impl Morpher {
    pub fn new(refresh: Refresh) -> Self {
        Self {
            refresh,
            tolerances: Tolerances::default(),
        }
    }

    pub fn field(&self, mesh: &TriMesh, adj: &EdgeAdjacency) -> Result<CurvatureField> {
        compute_field_with(mesh, adj, &self.tolerances)
    }

    pub fn step(
        &self,
        mesh: &TriMesh,
        adj: &EdgeAdjacency,
        c: f64,
        kind: StepKind,
    ) -> Result<TriMesh> {
        Ok(displace(mesh, &self.field(mesh, adj)?, c, kind))
    }

    pub fn apply_t(
        &self,
        mesh: &TriMesh,
        adj: &EdgeAdjacency,
        params: &MorphParams,
        hook: &mut dyn MorphHook,
    ) -> Result<TriMesh> {
        let kinds = std::iter::repeat_n(StepKind::Inward, params.k_in as usize).chain(
            std::iter::repeat_n(StepKind::Outward, params.k_out as usize),
        );
        let mut current = mesh.clone();
        match self.refresh {
            Refresh::PerStep => {
                for kind in kinds {
                    current = self.step(&current, adj, params.c, kind)?;
                    hook.on_step(kind);
                }
            }
            Refresh::FrozenPerT => {
                let field = self.field(mesh, adj)?;
                for kind in kinds {
                    current = displace(&current, &field, params.c, kind);
                    hook.on_step(kind);
                }
            }
        }
        Ok(current)
    }

    pub fn morph_step(
        &self,
        mesh: &TriMesh,
        adj: &EdgeAdjacency,
        n: usize,
        params: &MorphParams,
        hook: &mut dyn MorphHook,
    ) -> Result<TriMesh> {
        let mut current = mesh.clone();
        for i in 1..=n {
            current = self
                .apply_t(&current, adj, params, hook)
                .map_err(|e| at_iteration(i, e))?;
            hook.on_iteration(i);
        }
        Ok(current)
    }

    /// Executes `schedule`, calling `observer(iteration, mesh)` at each
    /// checkpoint (see [`Schedule::checkpoints`]). Errors from the observer
    /// or the numerics abort the run, tagged with the iteration.
    pub fn run_schedule<F>(
        &self,
        mesh: &TriMesh,
        adj: &EdgeAdjacency,
        schedule: &Schedule,
        mut observer: F,
        hook: &mut dyn MorphHook,
    ) -> Result<TriMesh>
    where
        F: FnMut(usize, &TriMesh) -> Result<()>,
    {
        let mut current = mesh.clone();
        let mut it = 0;
        let mut last_reported = 0;
        observer(0, &current).map_err(|e| at_iteration(0, e))?;
        for phase in &schedule.phases {
            for _ in 0..phase.n {
                it += 1;
                current = self
                    .apply_t(&current, adj, &phase.params, hook)
                    .map_err(|e| at_iteration(it, e))?;
                hook.on_iteration(it);
                if it % schedule.stride == 0 {
                    observer(it, &current).map_err(|e| at_iteration(it, e))?;
                    last_reported = it;
                }
            }
            if last_reported != it {
                observer(it, &current).map_err(|e| at_iteration(it, e))?;
                last_reported = it;
            }
        }
        Ok(current)
    }
}

fn at_iteration(iteration: usize, err: Error) -> Error {
    match err {
        e @ Error::AtIteration { .. } => e,
        e => Error::AtIteration {
            iteration,
            cause: Box::new(e),
        },
    }
}

pub fn step_inward(mesh: &TriMesh, adj: &EdgeAdjacency, c: f64) -> Result<TriMesh> {
    Morpher::default().step(mesh, adj, c, StepKind::Inward)
}

pub fn step_outward(mesh: &TriMesh, adj: &EdgeAdjacency, c: f64) -> Result<TriMesh> {
    Morpher::default().step(mesh, adj, c, StepKind::Outward)
}

/// One iteration `T = O^k_out ∘ I^k_in`, refreshing the field before every move.
pub fn apply_t(mesh: &TriMesh, adj: &EdgeAdjacency, params: &MorphParams) -> Result<TriMesh> {
    Morpher::default().apply_t(mesh, adj, params, &mut ())
}

/// `n` iterations of `T`.
pub fn morph_step(
    mesh: &TriMesh,
    adj: &EdgeAdjacency,
    n: usize,
    params: &MorphParams,
) -> Result<TriMesh> {
    Morpher::default().morph_step(mesh, adj, n, params, &mut ())
}

/// `m` rounds of the alternating `(2, 2, c)` / `(2, 1, c)` preset.
pub fn morph_preset(mesh: &TriMesh, adj: &EdgeAdjacency, m: usize, c: f64) -> Result<TriMesh> {
    let schedule = Schedule::preset(m, c, usize::MAX)?;
    Morpher::default().run_schedule(mesh, adj, &schedule, |_, _| Ok(()), &mut ())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::compute_field;
    use crate::generate::{icosahedron, subdivided_cube, unit_cube};
    use crate::mesh::{build_adjacency, Vec3};

    fn params(k_in: u32, k_out: u32, c: f64) -> MorphParams {
        MorphParams::new(k_in, k_out, c).unwrap()
    }

    #[test]
    fn params_invariants() {
        assert!(MorphParams::new(0, 0, 0.25).is_err());
        assert!(MorphParams::new(1, 0, 0.0).is_err());
        assert!(MorphParams::new(1, 0, f64::NAN).is_err());
        assert!(MorphParams::new(0, 1, 0.25).is_ok());
        assert!(Schedule::new(vec![], 0).is_err());
    }

    #[test]
    fn substitution_examples() {
        let cube = unit_cube();
        let adj = build_adjacency(&cube).unwrap();
        let field = compute_field(&cube, &adj).unwrap();
        let c = 0.25;
        let inner = step_inward(&cube, &adj, c).unwrap();
        let outer = step_outward(&cube, &adj, c).unwrap();
        for p in 0..cube.vertex_count() {
            let w = field.normalized_weight(p);
            let n = field.vertex_normal[p];
            let q = cube.vertices()[p];
            if w == 0.0 {
                assert_eq!(inner.vertices()[p], q);
            }
            if w == 1.0 {
                assert_eq!(outer.vertices()[p], q);
                assert_eq!(inner.vertices()[p], q - n * c);
            }
            if w == 0.0 {
                assert_eq!(outer.vertices()[p], q + n * c);
            }
        }
    }

    #[test]
    fn icosahedron_inward_moves_half_c() {
        let m = icosahedron();
        let adj = build_adjacency(&m).unwrap();
        let c = 0.25;
        let out = step_inward(&m, &adj, c).unwrap();
        for p in out.vertices() {
            assert!((p.norm() - (1.0 - c / 2.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn apply_t_orders_inward_before_outward() {
        let m = subdivided_cube(1);
        let adj = build_adjacency(&m).unwrap();
        let mut counter = StepCounter::default();
        Morpher::default()
            .apply_t(&m, &adj, &params(2, 1, 0.01), &mut counter)
            .unwrap();
        use StepKind::*;
        assert_eq!(counter.log, vec![Inward, Inward, Outward]);
    }

    #[test]
    fn single_inward_pass() {
        let m = subdivided_cube(1);
        let adj = build_adjacency(&m).unwrap();
        assert_eq!(
            apply_t(&m, &adj, &params(1, 0, 0.01)).unwrap(),
            step_inward(&m, &adj, 0.01).unwrap()
        );
    }

    #[test]
    fn morph_step_composition() {
        let m = subdivided_cube(1);
        let adj = build_adjacency(&m).unwrap();
        let p = params(2, 1, 0.01);
        assert_eq!(morph_step(&m, &adj, 0, &p).unwrap(), m);
        let once = apply_t(&m, &adj, &p).unwrap();
        assert_eq!(morph_step(&m, &adj, 1, &p).unwrap(), once);
        let twice = apply_t(&once, &adj, &p).unwrap();
        assert_eq!(morph_step(&m, &adj, 2, &p).unwrap(), twice);
    }

    #[test]
    fn frozen_mode_reuses_first_field() {
        let m = subdivided_cube(1);
        let adj = build_adjacency(&m).unwrap();
        let field = compute_field(&m, &adj).unwrap();
        let c = 0.01;
        let out = Morpher::new(Refresh::FrozenPerT)
            .apply_t(&m, &adj, &params(2, 1, c), &mut ())
            .unwrap();
        for p in 0..m.vertex_count() {
            let w = field.normalized_weight(p);
            let expected = m.vertices()[p] + field.vertex_normal[p] * (c * (1.0 - 3.0 * w));
            assert!((out.vertices()[p] - expected).norm() < 1e-15);
        }
        let fresh = apply_t(&m, &adj, &params(2, 1, c)).unwrap();
        assert_ne!(out, fresh);
    }

    #[test]
    fn checkpoint_arithmetic() {
        let s = Schedule::preset(1, 0.01, 50).unwrap();
        assert_eq!(s.checkpoints(), vec![0, 50, 100, 150, 200]);
        let s = Schedule::preset(1, 0.01, 70).unwrap();
        assert_eq!(s.checkpoints(), vec![0, 70, 100, 140, 200]);
        assert_eq!(Schedule::new(vec![], 5).unwrap().checkpoints(), vec![0]);
    }

    #[test]
    fn observer_sees_checkpoints() {
        let m = subdivided_cube(1);
        let adj = build_adjacency(&m).unwrap();
        let s = Schedule::new(
            vec![
                Phase {
                    n: 3,
                    params: params(1, 1, 0.01),
                },
                Phase {
                    n: 0,
                    params: params(1, 1, 0.01),
                },
                Phase {
                    n: 2,
                    params: params(2, 1, 0.01),
                },
            ],
            2,
        )
        .unwrap();
        let mut seen = Vec::new();
        Morpher::default()
            .run_schedule(
                &m,
                &adj,
                &s,
                |it, _| {
                    seen.push(it);
                    Ok(())
                },
                &mut (),
            )
            .unwrap();
        assert_eq!(seen, s.checkpoints());
        assert_eq!(seen, vec![0, 2, 3, 4, 5]);
    }

    #[test]
    fn empty_schedule_is_identity() {
        let m = unit_cube();
        let adj = build_adjacency(&m).unwrap();
        let mut seen = Vec::new();
        let out = Morpher::default()
            .run_schedule(
                &m,
                &adj,
                &Schedule::new(vec![], 10).unwrap(),
                |it, _| {
                    seen.push(it);
                    Ok(())
                },
                &mut (),
            )
            .unwrap();
        assert_eq!(out, m);
        assert_eq!(seen, vec![0]);
    }

    #[test]
    fn observer_error_aborts_with_iteration() {
        let m = subdivided_cube(1);
        let adj = build_adjacency(&m).unwrap();
        let s = Schedule::new(
            vec![Phase {
                n: 10,
                params: params(1, 1, 0.01),
            }],
            3,
        )
        .unwrap();
        let err = Morpher::default()
            .run_schedule(
                &m,
                &adj,
                &s,
                |it, _| {
                    if it == 6 {
                        Err(Error::InvalidParams("stop".into()))
                    } else {
                        Ok(())
                    }
                },
                &mut (),
            )
            .unwrap_err();
        assert!(matches!(err, Error::AtIteration { iteration: 6, .. }));
    }

    #[test]
    fn numerical_failure_reports_iteration() {
        let cube = unit_cube();
        let mut pts = cube.vertices().to_vec();
        pts.push(Vec3::new(5.0, 5.0, 5.0));
        let m = TriMesh::new(pts, cube.faces().to_vec()).unwrap();
        let adj = build_adjacency(&m).unwrap();
        let err = morph_step(&m, &adj, 3, &params(1, 1, 0.01)).unwrap_err();
        match err {
            Error::AtIteration { iteration, cause } => {
                assert_eq!(iteration, 1);
                assert!(matches!(*cause, Error::Topology { vertex: 8, .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn topology_is_untouched() {
        let m = subdivided_cube(2);
        let adj = build_adjacency(&m).unwrap();
        let out = morph_preset(&m, &adj, 1, 0.002).unwrap();
        assert_eq!(out.faces(), m.faces());
        assert_ne!(out.vertices(), m.vertices());
    }

    #[test]
    fn preset_zero_is_identity() {
        let m = unit_cube();
        let adj = build_adjacency(&m).unwrap();
        assert_eq!(morph_preset(&m, &adj, 0, PRESET_C).unwrap(), m);
    }

    #[test]
    fn step_scale_covariance() {
        let m = subdivided_cube(1);
        let adj = build_adjacency(&m).unwrap();
        let s = 3.5;
        let a = step_inward(&m, &adj, 0.01).unwrap().map_vertices(|p| p * s);
        let b = step_inward(&m.map_vertices(|p| p * s), &adj, 0.01 * s).unwrap();
        for (x, y) in a.vertices().iter().zip(b.vertices()) {
            assert!((x - y).norm() < 1e-12);
        }
    }
}
