#![allow(dead_code)]

use std::collections::BTreeMap;

use ciql::exactmath::{rat, Rational};
use ciql::tautcalc::{sym_square_chern, twist_by_line, Generator, GradedPoly, TotalClass};
use num_traits::{One, Zero};

/// Elementary symmetric polynomials e_0..e_len of `roots`, by the product
/// of (1 + r t), one root at a time.
pub fn elementary(roots: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::one()];
    for r in roots {
        e.push(Rational::zero());
        for k in (1..e.len()).rev() {
            let prev = e[k - 1].clone();
            e[k] += prev * r;
        }
    }
    e
}

fn gen(name: &str, i: u32) -> Generator {
    Generator::standard(name, i).unwrap()
}

/// `c_k -> e_k(roots)` for the generic class named `c`, plus `x -> t`.
pub fn root_values(roots: &[Rational], t: &Rational) -> BTreeMap<Generator, Rational> {
    let e = elementary(roots);
    let mut m: BTreeMap<Generator, Rational> = (1..=roots.len()).map(|k| (gen("c", k as u32), e[k].clone())).collect();
    m.insert(Generator::parse("x").unwrap(), t.clone());
    m
}

/// Checks c(E (x) L) and c(Sym^2 E) degree by degree against the roots
/// `a_i + t` and `a_i + a_j` (i <= j). Returns the first mismatch.
pub fn splitting_check(roots: &[Rational], t: &Rational, max_degree: u32) -> Result<(), String> {
    let r = roots.len() as u32;
    let c = TotalClass::generic("c", r, max_degree).unwrap();
    let values = root_values(roots, t);
    let x = GradedPoly::var("x", max_degree).unwrap();

    let twisted = twist_by_line(&c, r, &x, max_degree).map_err(|e| e.to_string())?;
    let twist_roots: Vec<Rational> = roots.iter().map(|a| a + t).collect();
    let e_twist = elementary(&twist_roots);

    let sym = sym_square_chern(&c, r, max_degree).map_err(|e| e.to_string())?;
    let mut sym_roots = Vec::new();
    for i in 0..roots.len() {
        for j in i..roots.len() {
            sym_roots.push(&roots[i] + &roots[j]);
        }
    }
    let e_sym = elementary(&sym_roots);

    for d in 0..=max_degree {
        let got = twisted.poly().part(d).evaluate(&values).ok_or("unassigned generator")?;
        let want = e_twist.get(d as usize).cloned().unwrap_or_default();
        if got != want {
            return Err(format!("twist rank {r} degree {d}: {got} != {want}"));
        }
        let got = sym.poly().part(d).evaluate(&values).ok_or("unassigned generator")?;
        let want = e_sym.get(d as usize).cloned().unwrap_or_default();
        if got != want {
            return Err(format!("sym2 rank {r} degree {d}: {got} != {want}"));
        }
    }
    Ok(())
}

/// Coefficients of 1 / (1 + l1 t + ... + l5 t^5) by the recursion
/// h_k = -(l1 h_{k-1} + ... + l5 h_{k-5}), as polynomials in lambda.
pub fn complete_symmetric_in_lambda(order: usize, trunc: u32) -> Vec<GradedPoly> {
    let l: Vec<GradedPoly> = (1..=5).map(|j| GradedPoly::generator(gen("lambda", j), trunc)).collect();
    let mut h = vec![GradedPoly::one(trunc)];
    for k in 1..=order {
        let mut acc = GradedPoly::zero(trunc);
        for j in 1..=k.min(5) {
            acc = acc.add(&l[j - 1].mul(&h[k - j]));
        }
        h.push(acc.neg());
    }
    h
}

pub fn small_rational(n: i64, d: i64) -> Rational {
    rat(n, d.max(1))
}
