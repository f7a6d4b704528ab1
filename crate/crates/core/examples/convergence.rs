//! Prints sphericity and curvature spread per preset round for a few
//! step sizes. Usage: `cargo run --release --example convergence -- [m] [c_rel...]`

use curvmorph::generate::{generate, GeneratorSpec, Shape};
use curvmorph::mesh::validate;
use curvmorph::morph::Morpher;
use curvmorph::{MetricsRecord, Schedule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let m: usize = args.first().map_or(Ok(3), |s| s.parse())?;
    let c_rels: Vec<f64> = if args.len() > 1 {
        args[1..]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?
    } else {
        vec![0.0025]
    };

    let mut dented = GeneratorSpec::new(Shape::DentedSphere, 3);
    dented.dent_depth = 0.4;
    let shapes = [
        ("cube", GeneratorSpec::new(Shape::Cube, 3)),
        ("dented_sphere", dented),
        ("dumbbell", GeneratorSpec::new(Shape::Dumbbell, 3)),
        ("cylinder", GeneratorSpec::new(Shape::Cylinder, 1)),
    ];
    for (name, spec) in shapes {
        let mesh = generate(&spec)?;
        let adj = validate(&mesh)?;
        for &c_rel in &c_rels {
            let c = c_rel * mesh.bbox_diagonal();
            let schedule = Schedule::preset(m, c, 200)?;
            println!("{name} c_rel={c_rel} c={c:.5}");
            let result = Morpher::default().run_schedule(
                &mesh,
                &adj,
                &schedule,
                |it, snap| {
                    let r = MetricsRecord::compute(it, snap, &adj)?;
                    if it % 200 == 0 {
                        println!(
                            "  iter {:5} sphericity {:.6} k_cv {:.4} radius_cv {:.4} volume {:.4}",
                            it,
                            r.sphericity,
                            r.curvature_cv(),
                            r.radius.cv,
                            r.volume
                        );
                    }
                    Ok(())
                },
                &mut (),
            );
            if let Err(e) = result {
                println!("  failed: {e}");
            }
        }
    }
    Ok(())
}
