use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use super::TautError;
use crate::exactmath::{format_rational, Rational};

/// Generator families of degree 1 regardless of index.
pub const DEGREE_ONE_FAMILIES: [&str; 6] = ["psi", "eta", "etaF", "x", "y", "z"];
/// Families written without an index (`x`, not `x0`).
pub const BARE_NAMES: [&str; 3] = ["x", "y", "z"];
/// Highest Hodge-class index.
pub const MAX_LAMBDA: u32 = 5;

/// A formal generator: a family name, an index and a fixed degree.
/// Ordered by `(name, index)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    name: String,
    index: u32,
    degree: u32,
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.name, self.index).cmp(&(&other.name, other.index))
    }
}

impl Generator {
    /// A generator with an explicit degree.
    pub fn new(name: &str, index: u32, degree: u32) -> Result<Self, TautError> {
        let valid = !name.is_empty()
            && name.chars().all(|c| c.is_ascii_alphabetic())
            && degree >= 1;
        if !valid {
            return Err(TautError::BadGenerator(format!("{name}{index} of degree {degree}")));
        }
        Ok(Self {
            name: name.to_string(),
            index,
            degree,
        })
    }

    /// A generator under the default degree rule: families in
    /// [`DEGREE_ONE_FAMILIES`] have degree 1, every other family has degree
    /// equal to its index. `lambda` stops at 5 and `kappa0` is not a generator.
    pub fn standard(name: &str, index: u32) -> Result<Self, TautError> {
        let bad = |why: &str| Err(TautError::BadGenerator(format!("{name}{index}: {why}")));
        if DEGREE_ONE_FAMILIES.contains(&name) {
            return Self::new(name, index, 1);
        }
        if index == 0 {
            return if name == "kappa" {
                bad("kappa0 is the scalar 2g - 2, not a generator")
            } else {
                bad("index must be positive")
            };
        }
        if name == "lambda" && index > MAX_LAMBDA {
            return bad("lambda classes stop at lambda5");
        }
        Self::new(name, index, index)
    }

    /// Parses `psi1`, `lambda2`, `etaF3`, `x`, ... with [`Generator::standard`].
    pub fn parse(text: &str) -> Result<Self, TautError> {
        let split = text.find(|c: char| c.is_ascii_digit()).unwrap_or(text.len());
        let (name, digits) = text.split_at(split);
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(TautError::BadGenerator(text.to_string()));
        }
        let index = if digits.is_empty() {
            if !BARE_NAMES.contains(&name) {
                return Err(TautError::BadGenerator(format!("{text}: missing index")));
            }
            0
        } else {
            digits
                .parse()
                .map_err(|_| TautError::BadGenerator(text.to_string()))?
        };
        Self::standard(name, index)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn index(&self) -> u32 {
        self.index
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 0 {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}{}", self.name, self.index)
        }
    }
}

/// A product of generator powers; exponents are positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<Generator, u32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn of(g: Generator, exp: u32) -> Self {
        let mut m = BTreeMap::new();
        if exp > 0 {
            m.insert(g, exp);
        }
        Self(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(g, e)| g.degree * e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, g: &Generator) -> u32 {
        self.0.get(g).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Generator, u32)> {
        self.0.iter().map(|(g, &e)| (g, e))
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (g, e) in &other.0 {
            *m.entry(g.clone()).or_insert(0) += e;
        }
        Self(m)
    }

    /// Print order: at the largest generator whose exponents differ, the
    /// smaller exponent comes first.
    fn print_cmp(&self, other: &Self) -> std::cmp::Ordering {
        let gens: std::collections::BTreeSet<&Generator> = self.0.keys().chain(other.0.keys()).collect();
        for g in gens.into_iter().rev() {
            let (a, b) = (self.exponent(g), other.exponent(g));
            if a != b {
                return a.cmp(&b);
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(g, &e)| if e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A polynomial in graded generators with rational coefficients, truncated
/// above degree `trunc`. No stored term has degree above `trunc` or a zero
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    trunc: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPoly {
    pub fn zero(trunc: u32) -> Self {
        Self {
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational, trunc: u32) -> Self {
        let mut p = Self::zero(trunc);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(trunc: u32) -> Self {
        Self::constant(Rational::one(), trunc)
    }

    pub fn from_int(c: i64, trunc: u32) -> Self {
        Self::constant(Rational::from_integer(c.into()), trunc)
    }

    pub fn generator(g: Generator, trunc: u32) -> Self {
        Self::term(Monomial::of(g, 1), Rational::one(), trunc)
    }

    pub fn term(m: Monomial, c: Rational, trunc: u32) -> Self {
        let mut p = Self::zero(trunc);
        p.add_term(m, c);
        p
    }

    /// Parses a generator name such as `lambda2` into a polynomial.
    pub fn var(name: &str, trunc: u32) -> Result<Self, TautError> {
        Ok(Self::generator(Generator::parse(name)?, trunc))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || m.degree() > self.trunc {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// Same terms, re-truncated at `trunc`.
    pub fn with_trunc(&self, trunc: u32) -> Self {
        let mut p = Self::zero(trunc);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest degree of a stored term; 0 for the zero polynomial.
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The degree-d part.
    pub fn part(&self, d: u32) -> Self {
        Self {
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when every term has degree `d` (vacuously for zero).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn generators(&self) -> std::collections::BTreeSet<Generator> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(g, _)| g.clone()))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.with_trunc(self.trunc.min(other.trunc));
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            trunc: self.trunc,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.trunc);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.trunc.min(other.trunc));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.degree() + m2.degree() <= out.trunc {
                    out.add_term(m1.times(m2), c1 * c2);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.trunc), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse modulo degree > trunc; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, TautError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(TautError::NoConstantTerm(self.to_string()));
        }
        let inv0 = c0.recip();
        // r_d = -(1/c0) * sum_{k=1..d} c_k r_{d-k}
        let mut parts = vec![Self::constant(inv0.clone(), self.trunc)];
        for d in 1..=self.trunc {
            let mut acc = Self::zero(self.trunc);
            for k in 1..=d {
                acc = acc.add(&self.part(k).mul(&parts[(d - k) as usize]));
            }
            parts.push(acc.scale(&-&inv0));
        }
        Ok(parts.iter().fold(Self::zero(self.trunc), |a, p| a.add(p)))
    }

    /// Replaces generators by polynomials; `f` returns `None` to keep a generator.
    pub fn substitute(&self, mut f: impl FnMut(&Generator) -> Option<GradedPoly>) -> Self {
        let mut out = Self::zero(self.trunc);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone(), self.trunc);
            for (g, e) in m.factors() {
                let base = f(g).unwrap_or_else(|| Self::generator(g.clone(), self.trunc));
                acc = acc.mul(&base.pow(e));
            }
            out = out.add(&acc);
        }
        out
    }

    /// Numeric value with every generator assigned; `None` if one is missing.
    pub fn evaluate(&self, values: &BTreeMap<Generator, Rational>) -> Option<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (g, e) in m.factors() {
                let x = values.get(g)?;
                for _ in 0..e {
                    v *= x;
                }
            }
            total += v;
        }
        Some(total)
    }

    /// Terms in print order: degree descending, then by [`Monomial`] print order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| a.print_cmp(b)));
        v
    }

    /// Term map in print order, coefficients as exact JSON values.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (m, c) in self.sorted_terms() {
            map.insert(m.to_string(), rational_json(c));
        }
        Value::Object(map)
    }
}

/// Bare integer when it fits, `"a/b"` string otherwise.
pub fn rational_json(q: &Rational) -> Value {
    if q.denom().is_one() {
        if let Ok(i) = i64::try_from(q.numer().clone()) {
            return Value::from(i);
        }
    }
    Value::String(format_rational(q))
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}
