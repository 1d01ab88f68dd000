//! On a sampled canonical curve, n <= 7 points always impose independent
//! conditions on quadrics, 8 or 9 points fail exactly when 8 of them lie on
//! a hyperplane.

use ciql::cigeom::{sample_smooth_canonical_curve, verify_disjointness, verify_independence_dichotomy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let curve = sample_smooth_canonical_curve(13, 4, 100, 9)?;
    println!("curve seed {} over F_13: {} points", curve.seed(), curve.points().len());
    for n in 1..=9 {
        let r = verify_independence_dichotomy(&curve, n, 20_000, 7)?;
        println!("n = {n}: {} trials, {} failures", r.trials, r.failures.len());
    }
    let r = verify_disjointness(&curve, 20_000, 7)?;
    println!("disjointness: {} trials, {} failures", r.trials, r.failures.len());
    Ok(())
}
