use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{Generator, GradedPoly};
use super::TautError;
use crate::exactmath::{rat, Rational};

/// Highest degree of the Todd coefficient table.
pub const TODD_TABLE_DEGREE: u32 = 12;

/// Coefficients of `y / (1 - e^(-y))` through degree 12, as `(num, den)`.
const TODD: [(i64, i64); 13] = [
    (1, 1),
    (1, 2),
    (1, 12),
    (0, 1),
    (-1, 720),
    (0, 1),
    (1, 30240),
    (0, 1),
    (-1, 1209600),
    (0, 1),
    (1, 47900160),
    (0, 1),
    (-691, 1307674368000),
];

/// A truncated power series in the relative canonical class `K`, with the
/// pushforward `K^0 -> 0`, `K -> 2g - 2`, `K^(m+1) -> kappa_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCurveSeries {
    coeffs: Vec<Rational>,
    genus: u32,
}

impl RelativeCurveSeries {
    pub fn new(coeffs: Vec<Rational>, genus: u32) -> Self {
        Self { coeffs, genus }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Degree of truncation (number of coefficients minus one).
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `e^(kK)` through degree `order`.
    pub fn exp(k: i64, order: usize, genus: u32) -> Self {
        let mut coeffs = vec![Rational::one()];
        for j in 1..=order {
            let prev = coeffs[j - 1].clone();
            coeffs.push(prev * Rational::from_integer(BigInt::from(k)) / Rational::from_integer(BigInt::from(j as i64)));
        }
        Self::new(coeffs, genus)
    }

    /// Product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|d| (0..=d).map(|i| self.coeff(i) * other.coeff(d - i)).sum())
            .collect();
        Self::new(coeffs, self.genus)
    }

    /// The pushforward of the degree-`d` coefficient alone.
    pub fn pushforward_degree(&self, d: usize, trunc: u32) -> GradedPoly {
        let c = self.coeff(d);
        match d {
            0 => GradedPoly::zero(trunc),
            1 => GradedPoly::constant(c * rat(2 * self.genus as i64 - 2, 1), trunc),
            _ => {
                let kappa = Generator::standard("kappa", (d - 1) as u32).expect("positive index");
                GradedPoly::generator(kappa, trunc).scale(&c)
            }
        }
    }

    /// The pushforward of the whole series.
    pub fn pushforward(&self, trunc: u32) -> GradedPoly {
        (0..=self.order()).fold(GradedPoly::zero(trunc), |acc, d| acc.add(&self.pushforward_degree(d, trunc)))
    }
}

/// `Td` of a line bundle with first Chern class `sign * K`: the series
/// `y / (1 - e^(-y))` at `y = sign * K`, through degree `order <= 12`.
pub fn todd_of_line_bundle(sign: i32, order: u32, genus: u32) -> Result<RelativeCurveSeries, TautError> {
    if order > TODD_TABLE_DEGREE {
        return Err(TautError::ToddTableBound(order));
    }
    if sign != 1 && sign != -1 {
        return Err(TautError::Precondition(format!("sign must be +1 or -1, got {sign}")));
    }
    let coeffs = TODD[..=order as usize]
        .iter()
        .enumerate()
        .map(|(k, &(n, d))| {
            let c = rat(n, d);
            if sign < 0 && k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    Ok(RelativeCurveSeries::new(coeffs, genus))
}

/// `ch_0, ..., ch_trunc` of `f_*(omega^k)` for `k >= 2`: `ch_m` is the
/// pushforward of the degree-(m+1) part of `e^(kK) Td(omega^dual)`.
pub fn grr_pushforward_omega_power(k: u32, genus: u32, trunc: u32) -> Result<Vec<GradedPoly>, TautError> {
    if k < 2 {
        return Err(TautError::PowerTooSmall(k));
    }
    let order = trunc + 1;
    let series = RelativeCurveSeries::exp(k as i64, order as usize, genus).mul(&todd_of_line_bundle(-1, order, genus)?);
    Ok((0..=trunc as usize)
        .map(|m| series.pushforward_degree(m + 1, trunc))
        .collect())
}
