//! Draw a seeded net of quadrics in P^4 over F_p whose rational base points
//! are all smooth, and print it as JSON.

use ciql::cigeom::sample_smooth_canonical_curve;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(13);
    let seed = std::env::args().nth(2).map(|s| s.parse()).transpose()?.unwrap_or(0);
    let curve = sample_smooth_canonical_curve(p, seed, 100, 9)?;
    println!("{}", serde_json::to_string_pretty(&curve.to_json())?);
    Ok(())
}
