//! Chern classes of Sym^2, a line twist and a Whitney quotient, from generic
//! total classes, and the Chern character round trip.

use ciql::tautcalc::{
    character_to_chern, chern_to_character, sym_square_chern, twist_by_line, whitney_quotient, GradedPoly, TotalClass,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let trunc = 3;
    let c = TotalClass::generic("c", 2, trunc)?;
    let sym2 = sym_square_chern(&c, 2, trunc)?;
    println!("c(Sym^2 E), rank 2: {}", sym2.poly());

    let x = GradedPoly::var("x", trunc)?;
    println!("c(E (x) L), rank 2: {}", twist_by_line(&c, 2, &x, trunc)?.poly());

    let a = TotalClass::generic("a", 3, trunc)?;
    println!("c(A) / c(E): {}", whitney_quotient(&a, &c, trunc).poly());

    let ch = chern_to_character(&c, 2, trunc);
    for (k, term) in ch.iter().enumerate() {
        println!("ch{k} = {term}");
    }
    println!("back to Chern: {}", character_to_chern(&ch, trunc).poly());
    Ok(())
}
