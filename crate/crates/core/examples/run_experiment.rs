//! Run a small n grid through the parallel harness, print each summary and
//! the log-rate fit, and write the JSON-lines file.

use uclab::harness::{run_experiment, write_run, Experiment, ExperimentConfig, OutputFormat};

fn main() -> uclab::Result<()> {
    let cfg = ExperimentConfig::new(Experiment::InhomRealizable)
        .with_n(&[256, 1024, 4096, 16384])
        .with_d(2)
        .with_trials(200)
        .with_seed(42)
        .with_workers(4);
    let run = run_experiment(&cfg)?;
    for b in &run.blocks {
        let s = &b.summary;
        println!(
            "n = {:>6}: success {:.3} [{:.3}, {:.3}], mean er_D {:.3e}, n * mean {:.3}",
            b.n,
            s.success.rate,
            s.success.ci.0,
            s.success.ci.1,
            s.er_d.mean,
            b.n as f64 * s.er_d.mean
        );
    }
    if let Some(fit) = &run.fit {
        println!(
            "n * er_D ~ {:.3} ln n + {:.3}, slope CI {:?}, log growth: {}",
            fit.a, fit.b, fit.slope_ci, fit.log_growth
        );
    }
    let path = std::env::temp_dir().join("uclab-inhom.jsonl");
    write_run(&run, &path, OutputFormat::Json)?;
    println!("wrote {}", path.display());
    Ok(())
}
