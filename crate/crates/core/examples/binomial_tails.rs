//! Binomial tails in log space next to the exact rational sum, plus the
//! lemma checks built on them.

use num_traits::ToPrimitive;
use uclab::bounds::{
    binom_lower_exact, binom_tail, delta_schedule, paley_zygmund_check, reverse_chernoff_check,
    reverse_chernoff_grid, BinomQuery, TailSide,
};
use uclab::Rational;

fn main() -> uclab::Result<()> {
    let p = Rational::new(1, 10);
    for t in [70u64, 90, 100, 130] {
        let q = BinomQuery::new(1000, p, t)?;
        let lower = binom_tail(&q, TailSide::Lower);
        let exact = binom_lower_exact(1000, &p, t).to_f64().unwrap_or(f64::NAN);
        println!(
            "P(Bin(1000, 1/10) <= {t}) = {:.12e} (ln {:.6}), exact {:.12e}",
            lower.value, lower.ln_value, exact
        );
    }

    let far = binom_tail(
        &BinomQuery::new(1 << 20, Rational::new(1, 2), 1 << 18)?,
        TailSide::Lower,
    );
    println!("far tail at n = 2^20: ln P = {:.3}", far.ln_value);

    let p = Rational::new(1, 4);
    for delta in reverse_chernoff_grid(1024, &p).into_iter().take(3) {
        let r = reverse_chernoff_check(1024, p, delta)?;
        println!(
            "reverse Chernoff n=1024 p=1/4 delta={delta:.4}: holds = {}",
            r.holds
        );
    }
    let pz = paley_zygmund_check(40, Rational::new(1, 20))?;
    println!("Paley-Zygmund n=40 p=1/20: holds = {}", pz.holds);

    let s = delta_schedule(5, Rational::new(1, 10))?;
    println!(
        "delta schedule for m = 5: {:?} (sum {})",
        s.deltas.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        s.total()
    );
    Ok(())
}
