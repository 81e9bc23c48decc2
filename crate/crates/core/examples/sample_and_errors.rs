//! Draw a seeded sample from a labelled circle and compare true and empirical
//! error of a few shifted semicircles, exactly.

use uclab::distributions::{empirical_error, sample_n, true_error, LabeledDist};
use uclab::geometry::{angle_from_turns, Semicircle};

fn main() -> uclab::Result<()> {
    let target = Semicircle::left_open(angle_from_turns(1, 8)?);
    let dist = LabeledDist::uniform_circle(64, &target)?;
    let sample = sample_n(&dist, 40, 2024);
    println!(
        "{} draws over {} distinct atoms",
        sample.n(),
        sample.distinct()
    );
    for j in [1, 2, 4, 8] {
        let h = Semicircle::left_open(angle_from_turns(j, 32)?);
        let d = true_error(&dist, &h)?;
        let s = empirical_error(&sample, &dist, &h)?;
        println!(
            "shift {j}/32: er_D = {d}, er_S = {s}, deviation = {}",
            d - s
        );
    }
    Ok(())
}
