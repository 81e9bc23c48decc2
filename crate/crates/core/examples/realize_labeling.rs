//! Realize a one-negative-per-block labelling with an inhomogeneous halfspace
//! and print the value of every support point.

use uclab::geometry::{build_support, realize_labeling, BlockLabeling};

fn main() -> uclab::Result<()> {
    let support = build_support(4, 6)?;
    let labels = BlockLabeling::new(&support, vec![Some(2), None])?;
    let h = realize_labeling(&support, &labels)?;
    println!("w = {:?}, b = {:.6}", h.w, h.b);
    for p in support.points() {
        let idx = support.flat_index(p.block, p.index);
        println!(
            "block {} point {} (angle {}): value {:+.6} -> {:?} (wanted {:?})",
            p.block,
            p.index,
            p.angle,
            support.evaluate(&h, idx)?,
            support.classify(&h, idx)?,
            labels.label(p.block, p.index)
        );
    }
    Ok(())
}
