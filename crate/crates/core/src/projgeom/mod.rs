//! Points of projective space over an exact field, monomial bases, evaluation
//! matrices against degree-d forms, and the seven-point classifier for
//! quadrics in P^3.

mod classify;
mod fixture;

pub use classify::{
    all_coplanar, classify_seven_points, exists_k_collinear, exists_six_on_plane_conic,
    is_hyperplanar, SevenPointClass,
};
pub use fixture::{AnyConfiguration, ConfigurationFixture};

use thiserror::Error;

use crate::exactmath::{rank_of_rows, Field, MathError, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("point has {got} coordinates, expected {expected}")]
    CoordinateCount { expected: usize, got: usize },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("expected a configuration in P^{expected}, got P^{got}")]
    AmbientDim { expected: usize, got: usize },
    #[error("expected {expected} points, got {got}")]
    PointCount { expected: usize, got: usize },
    #[error("collinearity test needs k >= 3, got {0}")]
    SubsetSize(usize),
    #[error("fixture: {0}")]
    Fixture(String),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// A point of P^m, stored as the representative whose first nonzero
/// coordinate is 1.
#[derive(Clone, Debug)]
pub struct ProjPoint<F: Field> {
    coords: Vec<F::Elem>,
}

impl<F: Field> PartialEq for ProjPoint<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl<F: Field> Eq for ProjPoint<F> {}

impl<F: Field> std::hash::Hash for ProjPoint<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl<F: Field> PartialOrd for ProjPoint<F> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on normalized coordinates.
impl<F: Field> Ord for ProjPoint<F> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl<F: Field> ProjPoint<F> {
    pub fn new(field: &F, coords: Vec<F::Elem>) -> Result<Self, GeomError> {
        if coords.iter().all(|c| field.is_zero(c)) {
            return Err(GeomError::ZeroVector);
        }
        if let Some(bad) = coords.iter().find(|c| !field.contains(c)) {
            return Err(MathError::ForeignElement {
                element: format!("{bad:?}"),
                characteristic: field.characteristic(),
            }
            .into());
        }
        Ok(Self {
            coords: crate::exactmath::normalize_leading(field, coords),
        })
    }

    pub fn from_i64(field: &F, coords: &[i64]) -> Result<Self, GeomError> {
        Self::new(field, coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// Wraps coordinates already in canonical form.
    pub(crate) fn from_normalized(coords: Vec<F::Elem>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }
}

/// An ordered list of pairwise distinct points in a common P^m.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration<F: Field> {
    field: F,
    ambient_dim: usize,
    points: Vec<ProjPoint<F>>,
}

impl<F: Field> Configuration<F> {
    pub fn new(field: F, ambient_dim: usize, points: Vec<ProjPoint<F>>) -> Result<Self, GeomError> {
        for p in &points {
            if p.coords.len() != ambient_dim + 1 {
                return Err(GeomError::CoordinateCount {
                    expected: ambient_dim + 1,
                    got: p.coords.len(),
                });
            }
        }
        for i in 0..points.len() {
            for j in 0..i {
                if points[i] == points[j] {
                    return Err(GeomError::DuplicatePoint(j, i));
                }
            }
        }
        Ok(Self {
            field,
            ambient_dim,
            points,
        })
    }

    pub fn from_i64(field: F, ambient_dim: usize, points: &[Vec<i64>]) -> Result<Self, GeomError> {
        let pts = points
            .iter()
            .map(|c| ProjPoint::from_i64(&field, c))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, ambient_dim, pts)
    }

    pub fn empty(field: F, ambient_dim: usize) -> Self {
        Self {
            field,
            ambient_dim,
            points: Vec::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn points(&self) -> &[ProjPoint<F>] {
        &self.points
    }
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The configuration formed by the points at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Self {
        Self {
            field: self.field.clone(),
            ambient_dim: self.ambient_dim,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    /// The n x (m+1) matrix of coordinates.
    pub fn coordinate_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(self.field.clone(), self.ambient_dim + 1, &self.coord_rows())
            .expect("coordinates are canonical")
    }

    /// Rank of the coordinate matrix (dimension of the linear span, plus one).
    pub fn span_rank(&self) -> usize {
        rank_of_rows(
            &self.field,
            self.ambient_dim + 1,
            self.points.iter().map(|p| p.coords.as_slice()),
        )
    }

    fn coord_rows(&self) -> Vec<Vec<F::Elem>> {
        self.points.iter().map(|p| p.coords.clone()).collect()
    }
}

/// Exponent vector of a monomial in `exponents.len()` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn evaluate<F: Field>(&self, field: &F, point: &[F::Elem]) -> F::Elem {
        self.exponents
            .iter()
            .zip(point)
            .filter(|(e, _)| **e > 0)
            .fold(field.one(), |acc, (&e, x)| field.mul(&acc, &field.pow(x, e)))
    }

    /// Text form such as `x0^2*x3`; the constant monomial prints as `1`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// All monomials of total degree `degree` in `num_vars` variables, graded-lex
/// order with the largest exponent on the first variable first.
pub fn monomial_basis(num_vars: usize, degree: u32) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<u32>, remaining: u32, vars_left: usize, out: &mut Vec<Monomial>) {
        if vars_left == 1 {
            prefix.push(remaining);
            out.push(Monomial {
                exponents: prefix.clone(),
            });
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            fill(prefix, remaining - e, vars_left - 1, out);
            prefix.pop();
        }
    }
    assert!(num_vars >= 1, "monomial basis needs at least one variable");
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(num_vars), degree, num_vars, &mut out);
    out
}

/// Values of every degree-d monomial at `point`, in [`monomial_basis`] order.
pub fn evaluation_row<F: Field>(field: &F, point: &ProjPoint<F>, degree: u32) -> Vec<F::Elem> {
    monomial_basis(point.coords.len(), degree)
        .iter()
        .map(|m| m.evaluate(field, &point.coords))
        .collect()
}

/// Row i holds the degree-d monomials evaluated at point i.
pub fn evaluation_matrix<F: Field>(cfg: &Configuration<F>, degree: u32) -> Matrix<F> {
    let basis = monomial_basis(cfg.ambient_dim + 1, degree);
    let rows: Vec<Vec<F::Elem>> = cfg
        .points
        .iter()
        .map(|p| basis.iter().map(|m| m.evaluate(&cfg.field, &p.coords)).collect())
        .collect();
    Matrix::from_rows(cfg.field.clone(), basis.len(), &rows).expect("evaluation rows are well-formed")
}

pub fn imposes_independent_conditions<F: Field>(cfg: &Configuration<F>, degree: u32) -> bool {
    evaluation_matrix(cfg, degree).rank() == cfg.len()
}

/// Advances `idx` (a strictly increasing k-subset of 0..n) to the next subset
/// in lexicographic order; returns false after the last one.
pub fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{PrimeField, RationalField};

    fn f11() -> PrimeField {
        PrimeField::new(11).unwrap()
    }

    #[test]
    fn monomial_counts_and_order() {
        assert_eq!(monomial_basis(5, 2).len(), 15);
        assert_eq!(monomial_basis(4, 2).len(), 10);
        let two: Vec<Vec<u32>> = monomial_basis(2, 2).into_iter().map(|m| m.exponents).collect();
        assert_eq!(two, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        for (n, d) in [(1, 3), (3, 0), (4, 3), (5, 2)] {
            assert_eq!(monomial_basis(n, d).len() as u64, binomial((n as u64) + d as u64 - 1, d as u64));
        }
    }

    #[test]
    fn points_normalize() {
        let f = f11();
        let p = ProjPoint::from_i64(&f, &[0, 3, 6, 9]).unwrap();
        assert_eq!(p.coords(), &[0, 1, 2, 3]);
        assert_eq!(ProjPoint::from_i64(&f, &[0, 0]), Err(GeomError::ZeroVector));
    }

    #[test]
    fn duplicates_rejected() {
        let f = f11();
        let err = Configuration::from_i64(f, 1, &[vec![1, 2], vec![2, 4]]).unwrap_err();
        assert_eq!(err, GeomError::DuplicatePoint(0, 1));
    }

    #[test]
    fn single_point_rank_one() {
        let f = PrimeField::new(31).unwrap();
        let cfg = Configuration::from_i64(f, 4, &[vec![1, 2, 3, 4, 5]]).unwrap();
        assert_eq!(evaluation_matrix(&cfg, 2).rank(), 1);
        assert!(imposes_independent_conditions(&cfg, 2));
    }

    #[test]
    fn four_collinear_points_rank_three() {
        // On the line x2 = x3 = 0 the quadric monomials reduce to s^2, st, t^2,
        // and the rows (1,0,0), (0,0,1), (1,1,1) are already independent.
        let cfg = Configuration::from_i64(
            f11(),
            3,
            &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 1, 0, 0], vec![1, 2, 0, 0]],
        )
        .unwrap();
        let m = evaluation_matrix(&cfg, 2);
        assert_eq!((m.rows(), m.cols()), (4, 10));
        assert_eq!(m.rank(), 3);
        assert!(!imposes_independent_conditions(&cfg, 2));
    }

    #[test]
    fn three_noncollinear_independent() {
        let cfg = Configuration::from_i64(
            RationalField,
            3,
            &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 1, 1, 0]],
        )
        .unwrap();
        assert!(imposes_independent_conditions(&cfg, 2));
    }

    #[test]
    fn combinations_enumerate_all() {
        let mut idx = vec![0, 1, 2];
        let mut count = 1;
        while next_combination(&mut idx, 6) {
            count += 1;
        }
        assert_eq!(count, 20);
        assert_eq!(binomial(32, 8), 10_518_300);
    }
}
