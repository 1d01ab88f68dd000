//! The quadrics through 7 general points of P^3 form a net; through 9 points
//! of a canonical curve in P^4 they form exactly the net that cuts the curve.

use ciql::cigeom::{quadrics_through, sample_smooth_canonical_curve};
use ciql::exactmath::PrimeField;
use ciql::projgeom::Configuration;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = PrimeField::new(31)?;
    let seven = Configuration::from_i64(
        f,
        3,
        &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 1, 1, 1], vec![1, 2, 3, 4], vec![1, 5, 7, 11]],
    )?;
    println!("quadrics through 7 points of P^3:");
    for q in quadrics_through(&seven)? {
        println!("  {}", q.to_text(&f));
    }

    let curve = sample_smooth_canonical_curve(13, 1, 100, 9)?;
    let nine = curve.configuration().subset(&(0..9).collect::<Vec<_>>());
    let forms = quadrics_through(&nine)?;
    println!("curve over F_13 with {} rational points; quadrics through 9 of them: {}", curve.points().len(), forms.len());
    for q in curve.net().forms() {
        println!("  net form: {}", q.to_text(curve.field()));
    }
    Ok(())
}
