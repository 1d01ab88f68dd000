//! Porteous classes of prod(1 + psi_i t) / lambda(t) with psi classes kept
//! and with psi set to zero.

use ciql::tautcalc::{porteous_class, standard_inputs, Assignments, DEFAULT_TRUNC};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (psi, lambda) = standard_inputs(2, DEFAULT_TRUNC);
    println!("n = 2, a = 2, b = 1: {}", porteous_class(&psi, &lambda, 2, 1, DEFAULT_TRUNC)?);

    let (psi, lambda) = standard_inputs(8, DEFAULT_TRUNC);
    let class = porteous_class(&psi, &lambda, 4, 1, DEFAULT_TRUNC)?;
    let mut zero_psi = Assignments::default();
    zero_psi.set("psi=0", DEFAULT_TRUNC)?;
    println!("n = 8, a = 4, b = 1, psi = 0: {}", zero_psi.apply(&class));
    println!("n = 8, a = 2, b = 2, psi = 0: {}", zero_psi.apply(&porteous_class(&psi, &lambda, 2, 2, DEFAULT_TRUNC)?));
    Ok(())
}
