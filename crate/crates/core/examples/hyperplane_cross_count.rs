//! Count hyperplanar 8-subsets of a curve's rational points directly and
//! through the hyperplane sections that contain them.

use ciql::cigeom::{cross_count_with, hyperplane_census, sample_smooth_canonical_curve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for seed in 0..4 {
        let curve = sample_smooth_canonical_curve(31, seed, 100, 9)?;
        let census = hyperplane_census(&curve)?;
        let cc = cross_count_with(&curve, &census, u64::MAX)?;
        println!(
            "seed {seed}: {} points, max {} on a hyperplane, subsets {} vs sections {}",
            curve.points().len(),
            census.max_points_on_hyperplane,
            cc.by_subsets,
            cc.by_hyperplanes
        );
    }
    Ok(())
}
