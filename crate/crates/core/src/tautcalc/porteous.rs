use super::poly::{Generator, GradedPoly};
use super::TautError;
use super::poly::MAX_LAMBDA;

/// A truncated series in a formal parameter `t` with [`GradedPoly`]
/// coefficients. The t-degree and the internal grading are independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernSeries {
    coeffs: Vec<GradedPoly>,
}

impl ChernSeries {
    /// Coefficients of `t^0, ..., t^order`.
    pub fn new(coeffs: Vec<GradedPoly>) -> Self {
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn trunc(&self) -> u32 {
        self.coeffs.first().map(GradedPoly::trunc).unwrap_or(0)
    }

    /// Coefficient of `t^k`; zero outside `0..=order`.
    pub fn coeff(&self, k: i64) -> GradedPoly {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.coeffs.get(k).cloned())
            .unwrap_or_else(|| GradedPoly::zero(self.trunc()))
    }

    /// `1 + x t`.
    pub fn linear(x: &GradedPoly, order: usize) -> Self {
        let mut coeffs = vec![GradedPoly::one(x.trunc()), x.clone()];
        coeffs.resize(order + 1, GradedPoly::zero(x.trunc()));
        coeffs.truncate(order + 1);
        Self::new(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new(
            (0..=order)
                .map(|d| {
                    (0..=d).fold(GradedPoly::zero(self.trunc()), |acc, i| {
                        acc.add(&self.coeffs[i].mul(&other.coeffs[d - i]))
                    })
                })
                .collect(),
        )
    }

    /// Series inverse; the constant coefficient must be 1.
    pub fn inverse(&self) -> Result<Self, TautError> {
        if self.coeffs.first().is_none_or(|c| *c != GradedPoly::one(c.trunc())) {
            return Err(TautError::NotTotalClass(format!("t-series starting {}", self.coeff(0))));
        }
        let mut inv = vec![GradedPoly::one(self.trunc())];
        for d in 1..=self.order() {
            let s = (1..=d).fold(GradedPoly::zero(self.trunc()), |acc, i| acc.add(&self.coeffs[i].mul(&inv[d - i])));
            inv.push(s.neg());
        }
        Ok(Self::new(inv))
    }

    /// Determinant of the b x b matrix with (i, j) entry `coeff(a + j - i)`.
    pub fn porteous_determinant(&self, a: u32, b: u32) -> GradedPoly {
        let entries: Vec<Vec<GradedPoly>> = (0..b as i64)
            .map(|i| (0..b as i64).map(|j| self.coeff(a as i64 + j - i)).collect())
            .collect();
        determinant(&entries, self.trunc())
    }
}

/// Cofactor expansion along the first row; entries live in a commutative
/// ring without division, so elimination does not apply.
fn determinant(m: &[Vec<GradedPoly>], trunc: u32) -> GradedPoly {
    match m.len() {
        0 => GradedPoly::one(trunc),
        1 => m[0][0].clone(),
        n => (0..n).fold(GradedPoly::zero(trunc), |acc, j| {
            if m[0][j].is_zero() {
                return acc;
            }
            let minor: Vec<Vec<GradedPoly>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, e)| e.clone()).collect())
                .collect();
            let term = m[0][j].mul(&determinant(&minor, trunc));
            if j % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            }
        }),
    }
}

/// The series `prod (1 + psi_i t) / (1 + lambda_1 t + ... + lambda_5 t^5)` through `t^order`.
pub fn porteous_series(psi: &[GradedPoly], lambda: &[GradedPoly], order: usize, trunc: u32) -> Result<ChernSeries, TautError> {
    if lambda.len() > MAX_LAMBDA as usize {
        return Err(TautError::Precondition(format!("at most {MAX_LAMBDA} lambda classes, got {}", lambda.len())));
    }
    let numerator = psi
        .iter()
        .fold(ChernSeries::linear(&GradedPoly::zero(trunc), order), |acc, x| {
            acc.mul(&ChernSeries::linear(&x.with_trunc(trunc), order))
        });
    let mut denom = vec![GradedPoly::one(trunc)];
    denom.extend(lambda.iter().map(|l| l.with_trunc(trunc)));
    denom.resize(order + 1, GradedPoly::zero(trunc));
    denom.truncate(order + 1);
    Ok(numerator.mul(&ChernSeries::new(denom).inverse()?))
}

/// Porteous class: `Delta^b_a` of [`porteous_series`].
pub fn porteous_class(psi: &[GradedPoly], lambda: &[GradedPoly], a: u32, b: u32, trunc: u32) -> Result<GradedPoly, TautError> {
    if b == 0 {
        return Err(TautError::Precondition("b must be at least 1".into()));
    }
    if a * b > trunc {
        return Err(TautError::TruncationTooSmall { needed: a * b, trunc });
    }
    let order = (a + b) as usize;
    Ok(porteous_series(psi, lambda, order, trunc)?.porteous_determinant(a, b))
}

/// `psi_1..psi_n` and `lambda_1..lambda_5` as generators.
pub fn standard_inputs(n: u32, trunc: u32) -> (Vec<GradedPoly>, Vec<GradedPoly>) {
    let gen = |name: &str, i: u32| GradedPoly::generator(Generator::standard(name, i).expect("standard generator"), trunc);
    (
        (1..=n).map(|i| gen("psi", i)).collect(),
        (1..=MAX_LAMBDA).map(|j| gen("lambda", j)).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_only_class() {
        let (_, lambda) = standard_inputs(8, 6);
        let psi = vec![GradedPoly::zero(6); 8];
        let c = porteous_class(&psi, &lambda, 4, 1, 6).unwrap();
        assert_eq!(c.to_string(), "lambda1^4 - 3*lambda1^2*lambda2 + lambda2^2 + 2*lambda1*lambda3 - lambda4");
    }

    #[test]
    fn all_zero_gives_zero() {
        let z = vec![GradedPoly::zero(6); 5];
        assert!(porteous_class(&z[..3], &z, 4, 1, 6).unwrap().is_zero());
    }

    #[test]
    fn homogeneous_of_degree_ab() {
        let (psi, lambda) = standard_inputs(3, 6);
        for (a, b) in [(4, 1), (2, 2), (3, 2), (1, 3)] {
            let c = porteous_class(&psi, &lambda, a, b, 6).unwrap();
            assert!(!c.is_zero());
            assert!(c.is_homogeneous(a * b), "{a} {b}: {c}");
        }
        assert!(matches!(porteous_class(&psi, &lambda, 4, 2, 6), Err(TautError::TruncationTooSmall { .. })));
        assert!(porteous_class(&psi, &lambda, 4, 0, 6).is_err());
    }

    #[test]
    fn two_by_two_expands() {
        let (psi, lambda) = standard_inputs(2, 6);
        let s = porteous_series(&psi, &lambda, 4, 6).unwrap();
        let det = s.coeff(2).mul(&s.coeff(2)).sub(&s.coeff(3).mul(&s.coeff(1)));
        assert_eq!(porteous_class(&psi, &lambda, 2, 2, 6).unwrap(), det);
    }
}
