//! Exact planar oracles: the worst consistent semicircle, the largest
//! deviation overall and inside a band, and the critical radii of a target.

use uclab::distributions::{sample_n, LabeledDist};
use uclab::geometry::{angle_from_turns, Semicircle};
use uclab::oracles2d::{critical_radii, sup_deviation, worst_consistent_error};
use uclab::Rational;

fn main() -> uclab::Result<()> {
    let target = Semicircle::left_open(angle_from_turns(3, 10)?);
    let dist = LabeledDist::uniform_circle(360, &target)?;
    let sample = sample_n(&dist, 50, 7);

    let worst = worst_consistent_error(&sample, &dist, &target)?;
    println!(
        "worst consistent error {} over {} arc(s)",
        worst.error,
        worst.arcs.len()
    );

    let all = sup_deviation(&sample, &dist, None)?;
    println!(
        "sup deviation {} at er_D = {}, er_S = {}",
        all.max_dev, all.er_d_at_max, all.er_s_at_max
    );
    for band in 2..=5 {
        match sup_deviation(&sample, &dist, Some(band)) {
            Ok(r) => println!("band {band}: sup deviation {}", r.max_dev),
            Err(e) => println!("band {band}: {e}"),
        }
    }

    let radii = critical_radii(&dist, Rational::new(1, 8), &target)?;
    let show = |t: Option<uclab::geometry::Angle>| t.map_or("none".to_string(), |a| a.to_string());
    println!(
        "critical radii at eps = 1/8: t+ = {}, t- = {}",
        show(radii.t_plus),
        show(radii.t_minus)
    );
    Ok(())
}
