//! Audit a sample for arcs whose deviation exceeds the uniform bound
//! c (ln(1/delta) + d ln(n/d)) / n, at a tiny and at the default constant.

use uclab::adversary::lemma8_audit;
use uclab::distributions::{sample_n, LabeledDist};
use uclab::geometry::{angle_from_turns, Semicircle};
use uclab::Rational;

fn main() -> uclab::Result<()> {
    let target = Semicircle::left_open(angle_from_turns(1, 3)?);
    let dist = LabeledDist::uniform_circle(512, &target)?;
    let sample = sample_n(&dist, 200, 5);
    for c in [Rational::new(1, 100), Rational::new(4, 1)] {
        let v = lemma8_audit(&sample, &dist, 2, Rational::new(1, 20), c)?;
        println!("c = {c}: {} violating arcs", v.len());
        if let Some(first) = v.first() {
            println!("  e.g. er_D = {}, er_S = {}", first.er_d, first.er_s);
        }
    }
    Ok(())
}
