//! Evaluate every bound formula at one parameter point, then again with a
//! constant overridden.

use uclab::bounds::{bound_value, BoundKind, BoundParams};
use uclab::constants::Constants;

fn main() -> uclab::Result<()> {
    let params = BoundParams::new(1 << 14)
        .delta(0.05)
        .d(2)
        .er_s(0.01)
        .band(5);
    let defaults = Constants::default();
    let tuned = Constants::default().with_overrides(&["thm1_c=1/4"])?;
    for kind in BoundKind::ALL {
        let a = bound_value(kind, &params, &defaults);
        let b = bound_value(kind, &params, &tuned);
        match (a, b) {
            (Ok(a), Ok(b)) => println!("{:<18} {a:.6e}   (thm1_c = 1/4: {b:.6e})", kind.name()),
            (Err(e), _) | (_, Err(e)) => println!("{:<18} n/a: {e}", kind.name()),
        }
    }
    Ok(())
}
