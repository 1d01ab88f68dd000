//! Seven general points of P^3 determine a net of quadrics whose base locus
//! has an eighth point. Recover it, and show the structured failures.

use ciql::cigeom::{recover_eighth_point, CiError};
use ciql::exactmath::PrimeField;
use ciql::projgeom::Configuration;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = PrimeField::new(31)?;
    let seven = Configuration::from_i64(
        f,
        3,
        &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 1, 1, 1], vec![1, 2, 3, 4], vec![1, 5, 7, 11]],
    )?;
    let eighth = recover_eighth_point(&seven)?;
    println!("eighth point: {:?}", eighth.coords());

    let collinear = Configuration::from_i64(
        f,
        3,
        &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 1, 0, 0], vec![1, 2, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 3, 5, 7]],
    )?;
    match recover_eighth_point(&collinear) {
        Err(CiError::Dependent(class)) => println!("four collinear points: dependent, {class:?}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
