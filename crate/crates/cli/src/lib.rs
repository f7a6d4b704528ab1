//! Run driver behind the `curvmorph` binary: builds or loads a mesh,
//! executes a morph schedule, and writes snapshots plus a metrics CSV.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use curvmorph::generate::{generate, GeneratorSpec};
use curvmorph::mesh::validate;
use curvmorph::metrics::CSV_HEADER;
use curvmorph::morph::{MorphParams, Morpher, Phase, Refresh, Schedule, DEFAULT_C_REL};
use curvmorph::obj::{fmt_f64, load_obj, save_obj};
use curvmorph::{MetricsRecord, TriMesh};
use log::info;

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    File(PathBuf),
    Generated(GeneratorSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Plan {
    /// `m` rounds of 100 × (2, 2) then 100 × (2, 1).
    Preset { m: usize },
    /// Explicit `(n, k_in, k_out)` phases.
    Phases(Vec<(usize, u32, u32)>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSize {
    Absolute(f64),
    /// Fraction of the input's bounding-box diagonal.
    Relative(f64),
}

impl Default for StepSize {
    fn default() -> Self {
        StepSize::Relative(DEFAULT_C_REL)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: Source,
    pub plan: Plan,
    pub step: StepSize,
    pub stride: usize,
    pub out_dir: PathBuf,
    /// Defaults to `metrics.csv` inside `out_dir`.
    pub metrics: Option<PathBuf>,
    pub refresh: Refresh,
    pub dump_curvature: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub iterations: usize,
    pub c: f64,
    pub records: Vec<MetricsRecord>,
}

/// Parses `"n:kin:kout,n:kin:kout,..."`.
pub fn parse_phases(text: &str) -> Result<Vec<(usize, u32, u32)>> {
    text.split(',')
        .map(|part| {
            let fields: Vec<&str> = part.trim().split(':').collect();
            let [n, k_in, k_out] = fields[..] else {
                bail!("phase {part:?} is not of the form n:kin:kout");
            };
            Ok((
                n.parse()
                    .with_context(|| format!("bad count in {part:?}"))?,
                k_in.parse()
                    .with_context(|| format!("bad k_in in {part:?}"))?,
                k_out
                    .parse()
                    .with_context(|| format!("bad k_out in {part:?}"))?,
            ))
        })
        .collect()
}

pub fn load_source(source: &Source) -> Result<TriMesh> {
    match source {
        Source::File(path) => {
            if !path.exists() {
                bail!("input file not found: {}", path.display());
            }
            load_obj(path).with_context(|| format!("loading {}", path.display()))
        }
        Source::Generated(spec) => generate(spec).context("generating mesh"),
    }
}

pub fn build_schedule(plan: &Plan, c: f64, stride: usize) -> Result<Schedule> {
    let schedule = match plan {
        Plan::Preset { m } => Schedule::preset(*m, c, stride)?,
        Plan::Phases(phases) => {
            let phases = phases
                .iter()
                .map(|&(n, k_in, k_out)| {
                    Ok(Phase {
                        n,
                        params: MorphParams::new(k_in, k_out, c)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Schedule::new(phases, stride)?
        }
    };
    Ok(schedule)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

/// Executes a run. On a mid-run failure the snapshots and CSV rows written
/// so far are kept and the error names the failing iteration.
pub fn run(config: &RunConfig) -> Result<RunSummary> {
    if config.stride == 0 {
        bail!("stride must be at least 1");
    }
    let mesh = load_source(&config.source)?;
    let adj = validate(&mesh).context("input is not a valid closed oriented mesh")?;
    let c = match config.step {
        StepSize::Absolute(c) => c,
        StepSize::Relative(r) => r * mesh.bbox_diagonal(),
    };
    let schedule = build_schedule(&config.plan, c, config.stride)?;
    info!(
        "{} vertices, {} faces, C = {c}, {} iterations in {} phases",
        mesh.vertex_count(),
        mesh.face_count(),
        schedule.total_iterations(),
        schedule.phases.len()
    );

    fs::create_dir_all(&config.out_dir)
        .with_context(|| format!("creating {}", config.out_dir.display()))?;
    let metrics_path = config
        .metrics
        .clone()
        .unwrap_or_else(|| config.out_dir.join("metrics.csv"));
    let mut csv = create(&metrics_path)?;
    writeln!(csv, "{CSV_HEADER}")?;
    csv.flush()?;

    let mut phase_ends = Vec::new();
    let mut total = 0;
    for phase in &schedule.phases {
        total += phase.n;
        phase_ends.push((total, phase.n, phase.params));
    }

    let mut records = Vec::new();
    let morpher = Morpher::new(config.refresh);
    let result = morpher.run_schedule(
        &mesh,
        &adj,
        &schedule,
        |it, snap| {
            let record = MetricsRecord::compute(it, snap, &adj)?;
            writeln!(csv, "{}", record.csv_row())
                .and_then(|_| csv.flush())
                .map_err(|source| curvmorph::Error::Write {
                    path: metrics_path.clone(),
                    source,
                })?;
            save_obj(snap, config.out_dir.join(format!("snap_{it:06}.obj")))?;
            for (i, (end, n, params)) in phase_ends.iter().enumerate() {
                if *end == it && *n > 0 {
                    info!(
                        "phase {}/{} ({} × ({}, {})) done at iteration {it}: sphericity {:.6}",
                        i + 1,
                        phase_ends.len(),
                        n,
                        params.k_in(),
                        params.k_out(),
                        record.sphericity
                    );
                }
            }
            records.push(record);
            Ok(())
        },
        &mut (),
    );
    let final_mesh = result.context("morph run failed")?;

    save_obj(&final_mesh, config.out_dir.join("final.obj"))?;
    if let Some(path) = &config.dump_curvature {
        let field = morpher.field(&final_mesh, &adj)?;
        let mut out = create(path)?;
        writeln!(out, "vertex,k")?;
        for (p, k) in field.vertex_curvature.iter().enumerate() {
            writeln!(out, "{p},{}", fmt_f64(*k))?;
        }
        out.flush()?;
    }

    Ok(RunSummary {
        iterations: schedule.total_iterations(),
        c,
        records,
    })
}
