//! The agnostic lower-bound construction at several target error levels.

use uclab::adversary::{thm3_params, Thm3Construction};
use uclab::constants::Constants;
use uclab::Rational;

fn main() -> uclab::Result<()> {
    let consts = Constants::default();
    let n = 4096;
    for i in 3..=7 {
        let tau = Rational::new(1, 1 << i);
        let p = thm3_params(n, 2, tau, &consts)?;
        let c = Thm3Construction::new(n, 2, tau, &consts)?;
        let fired = (0..200)
            .map(|s| c.trial(s))
            .collect::<uclab::Result<Vec<_>>>()?;
        let hits = fired.iter().filter(|o| o.success).count();
        println!(
            "tau = 1/{}: k = {}, t = {}, tau_adj = {}, successful trials {hits}/200",
            1 << i,
            p.k,
            p.t,
            p.tau_adj
        );
    }
    Ok(())
}
