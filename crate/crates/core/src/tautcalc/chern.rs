use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{Generator, GradedPoly, Monomial};
use super::TautError;
use crate::exactmath::Rational;

/// Highest rank supported by [`sym_square_chern`].
pub const MAX_SYM2_RANK: u32 = 5;

/// A total Chern class: constant term exactly 1, optional declared rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalClass {
    poly: GradedPoly,
    rank: Option<u32>,
}

impl TotalClass {
    pub fn new(poly: GradedPoly, rank: Option<u32>) -> Result<Self, TautError> {
        if !poly.constant_term().is_one() {
            return Err(TautError::NotTotalClass(poly.to_string()));
        }
        Ok(Self { poly, rank })
    }

    /// `1 + c1 + ... + c_r` in the generators of family `name`.
    pub fn generic(name: &str, rank: u32, trunc: u32) -> Result<Self, TautError> {
        let mut p = GradedPoly::one(trunc);
        for i in 1..=rank {
            p = p.add(&GradedPoly::generator(Generator::standard(name, i)?, trunc));
        }
        Self::new(p, Some(rank))
    }

    pub fn poly(&self) -> &GradedPoly {
        &self.poly
    }
    pub fn rank(&self) -> Option<u32> {
        self.rank
    }
    /// The degree-k Chern class.
    pub fn chern(&self, k: u32) -> GradedPoly {
        self.poly.part(k)
    }

    fn declared(&self, rank: u32) -> Result<(), TautError> {
        match self.rank {
            Some(r) if r != rank => Err(TautError::RankMismatch { declared: r, given: rank }),
            _ => Ok(()),
        }
    }
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn factorial(k: u32) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, i| acc * int(i))
}

fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || n < 0 || k > n {
        return Rational::zero();
    }
    (0..k).fold(Rational::one(), |acc, i| acc * int(n - i) / int(i + 1))
}

pub fn total_class_inverse(c: &TotalClass, trunc: u32) -> TotalClass {
    let inv = c.poly.with_trunc(trunc).inverse().expect("constant term 1");
    TotalClass { poly: inv, rank: None }
}

/// The class `q` with `sub * q = total` modulo degree > trunc.
pub fn whitney_quotient(total: &TotalClass, sub: &TotalClass, trunc: u32) -> TotalClass {
    let q = total.poly.with_trunc(trunc).mul(&total_class_inverse(sub, trunc).poly);
    TotalClass {
        poly: q,
        rank: match (total.rank, sub.rank) {
            (Some(a), Some(b)) if a >= b => Some(a - b),
            _ => None,
        },
    }
}

/// `ch_0, ..., ch_trunc` from Newton's identities, with `ch_0 = rank`.
pub fn chern_to_character(c: &TotalClass, rank: u32, trunc: u32) -> Vec<GradedPoly> {
    let e: Vec<GradedPoly> = (0..=trunc).map(|k| c.poly.with_trunc(trunc).part(k)).collect();
    // power sums: p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
    let mut power: Vec<GradedPoly> = vec![GradedPoly::from_int(rank as i64, trunc)];
    for k in 1..=trunc {
        let sign = |i: u32| if i % 2 == 1 { int(1) } else { int(-1) };
        let mut pk = e[k as usize].scale(&(sign(k) * int(k as i64)));
        for i in 1..k {
            pk = pk.add(&e[i as usize].mul(&power[(k - i) as usize]).scale(&sign(i)));
        }
        power.push(pk);
    }
    power
        .iter()
        .enumerate()
        .map(|(k, p)| p.scale(&factorial(k as u32).recip()))
        .collect()
}

/// Inverse of [`chern_to_character`]; the rank is read from `ch[0]` when it is
/// a non-negative integer.
pub fn character_to_chern(ch: &[GradedPoly], trunc: u32) -> TotalClass {
    let power: Vec<GradedPoly> = ch
        .iter()
        .enumerate()
        .map(|(k, c)| c.with_trunc(trunc).scale(&factorial(k as u32)))
        .collect();
    // e_k = (1/k) sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
    let mut e = vec![GradedPoly::one(trunc)];
    for k in 1..=trunc.min(power.len().saturating_sub(1) as u32) {
        let mut acc = GradedPoly::zero(trunc);
        for i in 1..=k {
            let term = e[(k - i) as usize].mul(&power[i as usize]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        e.push(acc.scale(&int(k as i64).recip()));
    }
    let rank = ch.first().map(GradedPoly::constant_term).filter(|r| r.is_integer() && *r >= Rational::zero());
    TotalClass {
        poly: e.iter().fold(GradedPoly::zero(trunc), |a, p| a.add(p)),
        rank: rank.and_then(|r| u32::try_from(r.to_integer()).ok()),
    }
}

/// `c(E ⊗ L)` from `c(E)` and `x = c_1(L)`:
/// `c_k = sum_{i<=k} binomial(rank - i, k - i) x^(k-i) c_i`.
pub fn twist_by_line(c: &TotalClass, rank: u32, x: &GradedPoly, trunc: u32) -> Result<TotalClass, TautError> {
    c.declared(rank)?;
    if !x.is_homogeneous(1) {
        return Err(TautError::NotDegreeOne(x.to_string()));
    }
    let x = x.with_trunc(trunc);
    let parts: Vec<GradedPoly> = (0..=rank).map(|i| c.poly.with_trunc(trunc).part(i)).collect();
    let mut out = GradedPoly::zero(trunc);
    for k in 0..=rank.min(trunc) {
        for i in 0..=k {
            let coeff = binomial((rank - i) as i64, (k - i) as i64);
            out = out.add(&x.pow(k - i).mul(&parts[i as usize]).scale(&coeff));
        }
    }
    TotalClass::new(out, Some(rank))
}

/// The formal root `x_i`.
pub fn root(i: u32, trunc: u32) -> GradedPoly {
    GradedPoly::generator(Generator::standard("x", i).expect("valid root"), trunc)
}

/// The elementary symmetric generator `e_k`.
pub fn elementary_generator(k: u32) -> Generator {
    Generator::standard("e", k).expect("k >= 1")
}

/// `e_k(x_1, ..., x_r)` expanded in the roots.
pub fn elementary_in_roots(k: u32, r: u32, trunc: u32) -> GradedPoly {
    // coefficient of t^k in prod (1 + x_i t), built degree by degree
    let mut e = vec![GradedPoly::one(trunc)];
    for i in 1..=r {
        let xi = root(i, trunc);
        let mut next = e.clone();
        next.push(GradedPoly::zero(trunc));
        for j in 1..next.len() {
            next[j] = next[j].add(&e[j - 1].mul(&xi));
        }
        e = next;
    }
    e.get(k as usize).cloned().unwrap_or_else(|| GradedPoly::zero(trunc))
}

/// Rewrites a symmetric polynomial in the roots `x_1..x_r` as a polynomial in
/// `e_1..e_r`, by repeatedly cancelling the lexicographically leading term.
pub fn symmetric_reduce(sym: &GradedPoly, r: u32) -> Result<GradedPoly, TautError> {
    let roots: Vec<Generator> = (1..=r).map(|i| Generator::standard("x", i).expect("root")).collect();
    if let Some(g) = sym.generators().into_iter().find(|g| !roots.contains(g)) {
        return Err(TautError::NotSymmetric(format!("{g} is not one of x1..x{r}")));
    }
    let trunc = sym.trunc();
    for i in 0..roots.len().saturating_sub(1) {
        let swapped = sym.substitute(|g| {
            if *g == roots[i] {
                Some(GradedPoly::generator(roots[i + 1].clone(), trunc))
            } else if *g == roots[i + 1] {
                Some(GradedPoly::generator(roots[i].clone(), trunc))
            } else {
                None
            }
        });
        if swapped != *sym {
            return Err(TautError::NotSymmetric(sym.to_string()));
        }
    }
    let elementary: Vec<GradedPoly> = (0..=r).map(|k| elementary_in_roots(k, r, trunc)).collect();
    let mut rest = sym.clone();
    let mut out = GradedPoly::zero(trunc);
    while let Some((lead, c)) = rest
        .terms()
        .map(|(m, c)| (roots.iter().map(|g| m.exponent(g)).collect::<Vec<u32>>(), c.clone()))
        .max_by(|a, b| a.0.cmp(&b.0))
    {
        // leading exponents of a symmetric polynomial are non-increasing
        let mut in_roots = GradedPoly::constant(c.clone(), trunc);
        let mut in_e = Monomial::one();
        for k in 1..=r as usize {
            let next = if k < r as usize { lead[k] } else { 0 };
            let power = lead[k - 1] - next;
            in_roots = in_roots.mul(&elementary[k].pow(power));
            in_e = in_e.times(&Monomial::of(elementary_generator(k as u32), power));
        }
        out = out.add(&GradedPoly::term(in_e, c, trunc));
        rest = rest.sub(&in_roots);
    }
    Ok(out)
}

/// `c(Sym^2 E)` through the roots `x_i + x_j` (i <= j), written in the
/// Chern classes of `c`.
pub fn sym_square_chern(c: &TotalClass, rank: u32, trunc: u32) -> Result<TotalClass, TautError> {
    if rank > MAX_SYM2_RANK {
        return Err(TautError::RankTooLarge { rank, max: MAX_SYM2_RANK });
    }
    c.declared(rank)?;
    let mut product = GradedPoly::one(trunc);
    for i in 1..=rank {
        for j in i..=rank {
            product = product.mul(&GradedPoly::one(trunc).add(&root(i, trunc)).add(&root(j, trunc)));
        }
    }
    let in_e = symmetric_reduce(&product, rank)?;
    let cp = c.poly.with_trunc(trunc);
    let out = in_e.substitute(|g| (g.name() == "e").then(|| cp.part(g.index())));
    TotalClass::new(out, Some(rank * (rank + 1) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn v(name: &str, n: u32) -> GradedPoly {
        GradedPoly::var(name, n).unwrap()
    }

    #[test]
    fn inverse_examples() {
        let one = TotalClass::new(GradedPoly::one(4), None).unwrap();
        assert_eq!(total_class_inverse(&one, 4).poly(), &GradedPoly::one(4));
        let c = TotalClass::generic("lambda", 2, 2).unwrap();
        assert_eq!(total_class_inverse(&c, 2).poly().to_string(), "lambda1^2 - lambda2 - lambda1 + 1");
        assert!(TotalClass::new(v("psi1", 3), None).is_err());
    }

    #[test]
    fn whitney_example() {
        let hodge = TotalClass::generic("lambda", 5, 2).unwrap();
        let line = TotalClass::new(GradedPoly::one(2).add(&v("psi1", 2).scale(&rat(2, 1))), Some(1)).unwrap();
        let q = whitney_quotient(&hodge, &line, 2);
        assert_eq!(q.chern(1).to_string(), "lambda1 - 2*psi1");
        assert_eq!(q.chern(2).to_string(), "lambda2 - 2*lambda1*psi1 + 4*psi1^2");
        assert_eq!(whitney_quotient(&hodge, &hodge, 2).poly(), &GradedPoly::one(2));
    }

    #[test]
    fn character_examples() {
        let line = TotalClass::new(GradedPoly::one(2).add(&v("x", 2)), Some(1)).unwrap();
        let ch = chern_to_character(&line, 1, 2);
        assert_eq!(ch.iter().map(|p| p.to_string()).collect::<Vec<_>>(), ["1", "x", "1/2*x^2"]);
        let c = TotalClass::generic("c", 2, 2).unwrap();
        let ch = chern_to_character(&c, 2, 2);
        assert_eq!(ch[2].to_string(), "1/2*c1^2 - c2");
        let trivial = TotalClass::new(GradedPoly::one(4), Some(3)).unwrap();
        let ch = chern_to_character(&trivial, 3, 4);
        assert_eq!(ch[0], GradedPoly::from_int(3, 4));
        assert!(ch[1..].iter().all(GradedPoly::is_zero));
    }

    #[test]
    fn twist_examples() {
        let x = v("x", 3);
        let c1 = TotalClass::generic("c", 1, 3).unwrap();
        assert_eq!(twist_by_line(&c1, 1, &x, 3).unwrap().chern(1).to_string(), "c1 + x");
        let c2 = TotalClass::generic("c", 2, 3).unwrap();
        let t = twist_by_line(&c2, 2, &x, 3).unwrap();
        assert_eq!(t.chern(1).to_string(), "c1 + 2*x");
        assert_eq!(t.chern(2).to_string(), "c2 + c1*x + x^2");
        assert!(twist_by_line(&c2, 2, &x.pow(2), 3).is_err());
        assert!(twist_by_line(&c2, 3, &x, 3).is_err());
    }

    #[test]
    fn symmetric_reduce_examples() {
        let (x1, x2, x3) = (root(1, 6), root(2, 6), root(3, 6));
        let p2 = x1.pow(2).add(&x2.pow(2));
        assert_eq!(symmetric_reduce(&p2, 2).unwrap().to_string(), "e1^2 - 2*e2");
        let e1 = x1.add(&x2);
        assert_eq!(symmetric_reduce(&e1, 2).unwrap().to_string(), "e1");
        let p3 = x1.pow(3).add(&x2.pow(3)).add(&x3.pow(3));
        assert_eq!(symmetric_reduce(&p3, 3).unwrap().to_string(), "e1^3 - 3*e1*e2 + 3*e3");
        assert!(symmetric_reduce(&x1, 2).is_err());
        assert!(symmetric_reduce(&v("psi1", 2), 2).is_err());
    }

    #[test]
    fn sym2_first_chern() {
        for (r, k) in [(2, 3), (5, 6)] {
            let c = TotalClass::generic("c", r, 3).unwrap();
            let s = sym_square_chern(&c, r, 3).unwrap();
            assert_eq!(s.chern(1), v("c1", 3).scale(&rat(k, 1)));
        }
        let c = TotalClass::generic("c", 6, 3).unwrap();
        assert!(matches!(sym_square_chern(&c, 6, 3), Err(TautError::RankTooLarge { .. })));
    }
}
