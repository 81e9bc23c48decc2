//! The aggregation primitives on their own.

use uclab::harness::{fit_rate, nearest_rank, spearman, wilson_interval};

fn main() -> uclab::Result<()> {
    for (s, t) in [(0, 10), (5, 10), (10, 10), (67, 1000)] {
        let (lo, hi) = wilson_interval(s, t, 0.95)?;
        println!("Wilson {s}/{t}: [{lo:.4}, {hi:.4}]");
    }

    let xs = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0];
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    println!(
        "median {:?}, p95 {:?}",
        nearest_rank(&sorted, 0.5),
        nearest_rank(&sorted, 0.95)
    );

    let flat: Vec<(u64, f64)> = [256u64, 1024, 4096, 16384]
        .iter()
        .map(|&n| (n, 5.0 / n as f64))
        .collect();
    let logy: Vec<(u64, f64)> = [256u64, 1024, 4096, 16384]
        .iter()
        .map(|&n| (n, (n as f64).ln() / n as f64))
        .collect();
    for (name, pts) in [("5/n", flat), ("ln n / n", logy)] {
        let f = fit_rate(&pts)?;
        println!(
            "{name}: slope {:.4} CI ({:.4}, {:.4}), log growth {}",
            f.a, f.slope_ci.0, f.slope_ci.1, f.log_growth
        );
    }

    let r = spearman(
        &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
        &[1.5, 1.7, 3.2, 3.1, 6.0, 7.5],
    )?;
    println!(
        "Spearman rho {:.3}, CI ({:.3}, {:.3})",
        r.rho, r.ci.0, r.ci.1
    );
    Ok(())
}
