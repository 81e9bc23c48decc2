//! The realizable lower-bound construction: sample, pick the unsampled point
//! in each block as a negative, and report the consistent hypothesis's error.

use uclab::adversary::Thm2Construction;
use uclab::constants::Constants;

fn main() -> uclab::Result<()> {
    let consts = Constants::default();
    for (n, d) in [(1024u64, 2u64), (4096, 4), (4096, 16)] {
        let c = Thm2Construction::new(n, d, None, &consts)?;
        let out = c.trial(1)?;
        println!(
            "n = {n}, d = {d}: k = {}, consistent = {}, er_D = {} ({:.3e}), success = {}",
            c.k(),
            out.consistent,
            out.er_d,
            uclab::rational::to_f64(&out.er_d),
            out.success
        );
    }
    Ok(())
}
