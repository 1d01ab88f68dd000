use super::poly::{Generator, GradedPoly};
use crate::exactmath::rat;

/// A named identity `lhs = rhs` whose left side is a single generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: &'static str,
    pub lhs: Generator,
    pub rhs: GradedPoly,
}

impl Relation {
    /// Replaces the left-hand generator by the right-hand side.
    pub fn apply(&self, p: &GradedPoly) -> GradedPoly {
        p.substitute(|g| (*g == self.lhs).then(|| self.rhs.with_trunc(p.trunc())))
    }

    pub fn lhs_poly(&self, trunc: u32) -> GradedPoly {
        GradedPoly::generator(self.lhs.clone(), trunc)
    }
}

fn gen(name: &str, i: u32) -> Generator {
    Generator::standard(name, i).expect("table generators are valid")
}

/// First Chern class identities at marked point `i`:
///
/// * `eta-first-chern`: `eta_i = psi_i - 1/5 lambda1` (pullback of O(1) along the i-th projection)
/// * `lambda1-det-S`: `lambda1 = 5 d1` (`d1` the first Chern class of the dual determinant)
/// * `L1-first-chern`: `l1 = -1/5 lambda1` (the twisting line bundle on the curve family)
/// * `L-on-M-omega`: `m1 = 2 psi_i` (the twisting line bundle on the canonical-divisor locus)
/// * `eta-F-first-chern`: `etaF_i = psi_i + m1`
pub fn relation_table(i: u32, trunc: u32) -> Vec<Relation> {
    let v = |name: &str, k: u32| GradedPoly::generator(gen(name, k), trunc);
    vec![
        Relation {
            name: "eta-first-chern",
            lhs: gen("eta", i),
            rhs: v("psi", i).sub(&v("lambda", 1).scale(&rat(1, 5))),
        },
        Relation {
            name: "lambda1-det-S",
            lhs: gen("lambda", 1),
            rhs: v("d", 1).scale(&rat(5, 1)),
        },
        Relation {
            name: "L1-first-chern",
            lhs: gen("l", 1),
            rhs: v("lambda", 1).scale(&rat(-1, 5)),
        },
        Relation {
            name: "L-on-M-omega",
            lhs: gen("m", 1),
            rhs: v("psi", i).scale(&rat(2, 1)),
        },
        Relation {
            name: "eta-F-first-chern",
            lhs: gen("etaF", i),
            rhs: v("psi", i).add(&v("m", 1)),
        },
    ]
}

pub fn relation(name: &str, i: u32, trunc: u32) -> Option<Relation> {
    relation_table(i, trunc).into_iter().find(|r| r.name == name)
}

/// Rewrites `p` into psi and lambda classes at marked point `i`: every
/// table entry is applied left to right except `lambda1-det-S`, which is
/// read right to left (`d1 = 1/5 lambda1`). Terminates because no
/// right-hand side mentions a left-hand generator after one more pass.
pub fn reduce_to_standard(p: &GradedPoly, i: u32) -> GradedPoly {
    let trunc = p.trunc();
    let rules: Vec<(Generator, GradedPoly)> = relation_table(i, trunc)
        .into_iter()
        .map(|r| {
            if r.name == "lambda1-det-S" {
                (gen("d", 1), r.lhs_poly(trunc).scale(&rat(1, 5)))
            } else {
                (r.lhs, r.rhs)
            }
        })
        .collect();
    let mut cur = p.clone();
    loop {
        let next = cur.substitute(|g| rules.iter().find(|(lhs, _)| lhs == g).map(|(_, rhs)| rhs.with_trunc(trunc)));
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        assert_eq!(relation("eta-first-chern", 1, 6).unwrap().rhs.to_string(), "-1/5*lambda1 + psi1");
        assert_eq!(relation("L-on-M-omega", 2, 6).unwrap().rhs.to_string(), "2*psi2");
        let l = relation("L-on-M-omega", 3, 6).unwrap();
        let f = relation("eta-F-first-chern", 3, 6).unwrap();
        assert_eq!(l.apply(&f.rhs).to_string(), "3*psi3");
        assert!(relation("nope", 1, 6).is_none());
    }

    #[test]
    fn reduction_reaches_psi_and_lambda() {
        let v = |n: &str, k: u32| GradedPoly::generator(gen(n, k), 6);
        assert_eq!(reduce_to_standard(&v("etaF", 2), 2).to_string(), "3*psi2");
        assert_eq!(reduce_to_standard(&v("d", 1), 1).to_string(), "1/5*lambda1");
        assert_eq!(reduce_to_standard(&v("l", 1), 1).to_string(), "-1/5*lambda1");
        let e = v("eta", 1).mul(&v("psi", 1));
        assert_eq!(reduce_to_standard(&e, 1).to_string(), "-1/5*lambda1*psi1 + psi1^2");
    }
}
