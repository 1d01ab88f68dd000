//! The first Chern class identities at a marked point, and an expression
//! rewritten through them into psi and lambda classes.

use ciql::tautcalc::{evaluate, reduce_to_standard, relation_table, DEFAULT_TRUNC};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for r in relation_table(1, DEFAULT_TRUNC) {
        println!("{:>18}: {} = {}", r.name, r.lhs, r.rhs);
    }
    let e = evaluate("etaF1^2 - eta1*l1 + d1", DEFAULT_TRUNC)?;
    println!("{e}");
    println!("  = {}", reduce_to_standard(&e, 1));
    Ok(())
}
