//! The dyadic construction: band layout and one trial's ring counts.

use uclab::adversary::thm7_construct;
use uclab::constants::Constants;
use uclab::distributions::sample_n;
use uclab::Rational;

fn main() -> uclab::Result<()> {
    let n = 1 << 20;
    let c = thm7_construct(n, 4, Rational::new(1, 100))?;
    println!(
        "k = {}, bands = {}, ln ln term = {:.4}",
        c.k,
        c.bands,
        c.log_log_term()
    );
    let sample = sample_n(c.dist(), n, 11);
    for (i, (count, mu)) in c.ring_counts(&sample).iter().zip(&c.mu).enumerate() {
        println!("band {}: count {count}, mean {mu}", i + 1);
    }
    let out = c.evaluate(&sample, 11, &Constants::default())?;
    println!("flags {:?}", out.flags);
    Ok(())
}
