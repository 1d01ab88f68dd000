//! Todd series of the relative dualizing sheaf and the Chern character of
//! the pushforward of its powers, in kappa classes.

use ciql::tautcalc::{grr_pushforward_omega_power, todd_of_line_bundle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let td = todd_of_line_bundle(-1, 8, 5)?;
    let coeffs: Vec<String> = td.coeffs().iter().map(ciql::exactmath::format_rational).collect();
    println!("Td(-K) coefficients: {}", coeffs.join(", "));
    for k in [2, 3] {
        println!("ch(f_* omega^{k}), genus 5:");
        for (m, c) in grr_pushforward_omega_power(k, 5, 3)?.iter().enumerate() {
            println!("  ch{m} = {c}");
        }
    }
    Ok(())
}
