use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};
use curvmorph::generate::{GeneratorSpec, Shape};
use curvmorph::morph::{Refresh, DEFAULT_C_REL};
use curvmorph_cli::{parse_phases, run, Plan, RunConfig, Source, StepSize};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ShapeArg {
    Cube,
    Cylinder,
    Icosphere,
    DentedSphere,
    Dumbbell,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::Cube => Shape::Cube,
            ShapeArg::Cylinder => Shape::Cylinder,
            ShapeArg::Icosphere => Shape::Icosphere,
            ShapeArg::DentedSphere => Shape::DentedSphere,
            ShapeArg::Dumbbell => Shape::Dumbbell,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PresetArg {
    /// m rounds of 100 × (2,2,C) then 100 × (2,1,C)
    Standard,
}

/// Morph a closed triangle mesh toward a round sphere by curvature-weighted
/// inward and outward vertex moves.
#[derive(Debug, Parser)]
#[command(name = "curvmorph", version)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "gen"])))]
#[command(group(ArgGroup::new("step").args(["c", "c_rel"])))]
#[command(group(ArgGroup::new("plan").args(["preset", "phases"])))]
struct Args {
    /// Input OBJ file
    #[arg(long)]
    input: Option<PathBuf>,

    /// Generate a test mesh instead of reading one
    #[arg(long, value_enum)]
    gen: Option<ShapeArg>,

    /// Subdivision level for --gen
    #[arg(long, default_value_t = 3)]
    sub: u32,

    /// Seed for --noise
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Cylinder height / diameter, or dumbbell length / bulb diameter
    #[arg(long, default_value_t = 2.0)]
    aspect: f64,

    /// Dent depth on the unit sphere for dented_sphere
    #[arg(long, default_value_t = 0.4)]
    dent_depth: f64,

    /// Angular radius of the dent in radians
    #[arg(long, default_value_t = 1.0)]
    dent_angle: f64,

    /// Dumbbell neck radius (bulb radius is 1)
    #[arg(long, default_value_t = 0.4)]
    neck: f64,

    /// Relative amplitude of seeded radial jitter
    #[arg(long, default_value_t = 0.0)]
    noise: f64,

    /// Schedule preset
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,

    /// Rounds of the preset (200 iterations each)
    #[arg(long, default_value_t = 1)]
    m: usize,

    /// Explicit phases "n:kin:kout,..."
    #[arg(long)]
    phases: Option<String>,

    /// Absolute step magnitude C in mesh units
    #[arg(long)]
    c: Option<f64>,

    /// Step magnitude relative to the bounding-box diagonal [default: 0.0005]
    #[arg(long)]
    c_rel: Option<f64>,

    /// Checkpoint every N iterations (phase ends are always recorded)
    #[arg(long, default_value_t = 200)]
    stride: usize,

    /// Output directory for snapshots and final.obj
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Metrics CSV path [default: OUT/metrics.csv]
    #[arg(long)]
    metrics: Option<PathBuf>,

    /// Evaluate curvature once per iteration instead of before every move
    #[arg(long)]
    frozen_t: bool,

    /// Write per-vertex curvature of the final mesh as CSV "vertex,k"
    #[arg(long)]
    dump_curvature: Option<PathBuf>,
}

impl Args {
    fn into_config(self) -> anyhow::Result<RunConfig> {
        let source = match (self.input, self.gen) {
            (Some(path), _) => Source::File(path),
            (None, Some(shape)) => Source::Generated(GeneratorSpec {
                shape: shape.into(),
                subdivision: self.sub,
                aspect: self.aspect,
                dent_depth: self.dent_depth,
                dent_angle: self.dent_angle,
                neck_radius: self.neck,
                noise: self.noise,
                seed: self.seed,
            }),
            (None, None) => unreachable!("clap enforces a source"),
        };
        let plan = match self.phases {
            Some(text) => Plan::Phases(parse_phases(&text)?),
            None => Plan::Preset { m: self.m },
        };
        let step = match (self.c, self.c_rel) {
            (Some(c), _) => StepSize::Absolute(c),
            (None, r) => StepSize::Relative(r.unwrap_or(DEFAULT_C_REL)),
        };
        Ok(RunConfig {
            source,
            plan,
            step,
            stride: self.stride,
            out_dir: self.out,
            metrics: self.metrics,
            refresh: if self.frozen_t {
                Refresh::FrozenPerT
            } else {
                Refresh::PerStep
            },
            dump_curvature: self.dump_curvature,
        })
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let args = Args::parse();
    let result = args.into_config().and_then(|config| run(&config));
    match result {
        Ok(summary) => {
            if let Some(last) = summary.records.last() {
                log::info!(
                    "done: {} iterations, C = {}, final sphericity {:.6}",
                    summary.iterations,
                    summary.c,
                    last.sphericity
                );
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
