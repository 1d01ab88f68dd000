use super::CiError;
use crate::exactmath::{rank_of_rows, Field, Matrix, PrimeField};
use crate::projgeom::{evaluation_matrix, monomial_basis, Configuration, ProjPoint};

/// Hard cap on the modulus for base-locus enumeration.
pub const HARD_MODULUS_CAP: u32 = 101;
/// Default cap in P^4, where enumeration visits about p^4 points.
pub const DEFAULT_P4_MODULUS_CAP: u32 = 31;

/// A quadratic form in m+1 variables with coefficients indexed by
/// `monomial_basis(m + 1, 2)`: x0^2, x0x1, ..., x0xm, x1^2, x1x2, ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm<F: Field> {
    ambient_dim: usize,
    coeffs: Vec<F::Elem>,
}

/// Index pairs (i, j), i <= j, in quadric monomial order.
pub fn quadric_pairs(num_vars: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(num_vars * (num_vars + 1) / 2);
    for i in 0..num_vars {
        for j in i..num_vars {
            out.push((i, j));
        }
    }
    out
}

impl<F: Field> QuadraticForm<F> {
    pub fn new(field: &F, ambient_dim: usize, coeffs: Vec<F::Elem>) -> Result<Self, CiError> {
        let expected = (ambient_dim + 1) * (ambient_dim + 2) / 2;
        if coeffs.len() != expected {
            return Err(CiError::Precondition(format!(
                "quadratic form in P^{ambient_dim} needs {expected} coefficients, got {}",
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().find(|c| !field.contains(c)) {
            return Err(CiError::Precondition(format!("coefficient {bad:?} is not a field element")));
        }
        Ok(Self { ambient_dim, coeffs })
    }

    pub fn from_i64(field: &F, ambient_dim: usize, coeffs: &[i64]) -> Result<Self, CiError> {
        Self::new(field, ambient_dim, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }
    pub fn is_zero(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    pub fn eval(&self, field: &F, x: &[F::Elem]) -> F::Elem {
        quadric_pairs(self.ambient_dim + 1)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !field.is_zero(c))
            .fold(field.zero(), |acc, ((i, j), c)| {
                field.add(&acc, &field.mul(c, &field.mul(&x[i], &x[j])))
            })
    }

    /// Gradient at `x`: d/dx_k of sum c_ij x_i x_j.
    pub fn gradient(&self, field: &F, x: &[F::Elem]) -> Vec<F::Elem> {
        let n = self.ambient_dim + 1;
        let mut g = vec![field.zero(); n];
        for ((i, j), c) in quadric_pairs(n).into_iter().zip(&self.coeffs) {
            if field.is_zero(c) {
                continue;
            }
            if i == j {
                let two_c = field.add(c, c);
                g[i] = field.add(&g[i], &field.mul(&two_c, &x[i]));
            } else {
                g[i] = field.add(&g[i], &field.mul(c, &x[j]));
                g[j] = field.add(&g[j], &field.mul(c, &x[i]));
            }
        }
        g
    }

    /// Text form over the monomials `x0^2`, `x0*x1`, ...
    pub fn to_text(&self, field: &F) -> String {
        let basis = monomial_basis(self.ambient_dim + 1, 2);
        let terms: Vec<String> = basis
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(m, c)| {
                let s = field.format(c);
                if s == "1" {
                    m.to_text()
                } else {
                    format!("{s}*{}", m.to_text())
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// A net of quadrics: three linearly independent quadratic forms on P^m.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricNet<F: Field> {
    field: F,
    ambient_dim: usize,
    forms: [QuadraticForm<F>; 3],
}

impl<F: Field> QuadricNet<F> {
    pub fn new(field: F, forms: [QuadraticForm<F>; 3]) -> Result<Self, CiError> {
        let m = forms[0].ambient_dim;
        if forms.iter().any(|q| q.ambient_dim != m) {
            return Err(CiError::Precondition("forms live in different ambient spaces".into()));
        }
        let cols = forms[0].coeffs.len();
        let rank = rank_of_rows(&field, cols, forms.iter().map(|q| q.coeffs.as_slice()));
        if rank < 3 {
            return Err(CiError::DependentNet { rank });
        }
        Ok(Self {
            field,
            ambient_dim: m,
            forms,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn forms(&self) -> &[QuadraticForm<F>; 3] {
        &self.forms
    }

    pub fn vanishes_at(&self, x: &[F::Elem]) -> bool {
        self.forms.iter().all(|q| self.field.is_zero(&q.eval(&self.field, x)))
    }

    /// The 3 x (m+1) matrix of partial derivatives at `x`.
    pub fn jacobian_at(&self, x: &[F::Elem]) -> Matrix<F> {
        let rows: Vec<Vec<F::Elem>> = self.forms.iter().map(|q| q.gradient(&self.field, x)).collect();
        Matrix::from_rows(self.field.clone(), self.ambient_dim + 1, &rows).expect("gradient rows")
    }

    /// Rank of the Jacobian at a base-locus point; 3 means a smooth
    /// complete-intersection point.
    pub fn jacobian_rank_at(&self, pt: &ProjPoint<F>) -> Result<usize, CiError> {
        if pt.ambient_dim() != self.ambient_dim {
            return Err(CiError::Precondition("point and net live in different spaces".into()));
        }
        if !self.vanishes_at(pt.coords()) {
            return Err(CiError::NotOnBaseLocus);
        }
        Ok(self.jacobian_at(pt.coords()).rank())
    }
}

/// Basis of the quadratic forms vanishing at every point of `cfg`
/// (the kernel of the degree-2 evaluation matrix).
pub fn quadrics_through<F: Field>(cfg: &Configuration<F>) -> Result<Vec<QuadraticForm<F>>, CiError> {
    let m = cfg.ambient_dim();
    if !(m == 3 || m == 4) {
        return Err(CiError::Precondition(format!("quadrics_through needs P^3 or P^4, got P^{m}")));
    }
    let field = cfg.field();
    let basis = if cfg.is_empty() {
        Matrix::identity(field.clone(), (m + 1) * (m + 2) / 2).row_vecs()
    } else {
        evaluation_matrix(cfg, 2).kernel_basis()
    };
    basis
        .into_iter()
        .map(|coeffs| QuadraticForm::new(field, m, coeffs))
        .collect()
}

/// Every F_p-point of P^m on which all three forms vanish, in lexicographic
/// order of normalized representatives. `cap` bounds the modulus and may not
/// exceed [`HARD_MODULUS_CAP`].
pub fn base_locus_points_capped(net: &QuadricNet<PrimeField>, cap: u32) -> Result<Vec<ProjPoint<PrimeField>>, CiError> {
    let p = net.field.modulus();
    let cap = cap.min(HARD_MODULUS_CAP);
    if p > cap {
        return Err(CiError::ModulusCap { p, cap });
    }
    let n = net.ambient_dim + 1;
    let pairs = quadric_pairs(n);
    let forms: Vec<Vec<u64>> = net
        .forms
        .iter()
        .map(|q| q.coeffs.iter().map(|&c| c as u64).collect())
        .collect();
    let p64 = p as u64;
    let eval = |x: &[u32], coeffs: &[u64]| -> u64 {
        let mut acc = 0u64;
        for (&(i, j), &c) in pairs.iter().zip(coeffs) {
            if c != 0 {
                acc += c * ((x[i] as u64 * x[j] as u64) % p64);
            }
        }
        acc % p64
    };

    let mut out = Vec::new();
    for_each_normalized(p, n, |x| {
        if forms.iter().all(|q| eval(x, q) == 0) {
            out.push(ProjPoint::from_normalized(x.to_vec()));
        }
    });
    Ok(out)
}

/// Visits every normalized vector of F_p^n (first nonzero entry 1) exactly
/// once, in lexicographic order.
pub(crate) fn for_each_normalized(p: u32, n: usize, mut visit: impl FnMut(&[u32])) {
    let mut x = vec![0u32; n];
    for lead in (0..n).rev() {
        x.iter_mut().for_each(|c| *c = 0);
        x[lead] = 1;
        loop {
            visit(&x);
            let mut k = n;
            let mut carried = true;
            while k > lead + 1 && carried {
                k -= 1;
                x[k] += 1;
                if x[k] == p {
                    x[k] = 0;
                } else {
                    carried = false;
                }
            }
            if carried {
                break;
            }
        }
    }
}

/// [`base_locus_points_capped`] with the default cap: 101 in P^3, 31 in P^4.
pub fn base_locus_points(net: &QuadricNet<PrimeField>) -> Result<Vec<ProjPoint<PrimeField>>, CiError> {
    let cap = if net.ambient_dim >= 4 {
        DEFAULT_P4_MODULUS_CAP
    } else {
        HARD_MODULUS_CAP
    };
    base_locus_points_capped(net, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::RationalField;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Coefficient vector with a single monomial x_i x_j.
    fn mono(m: usize, i: usize, j: usize, c: i64) -> Vec<i64> {
        let pairs = quadric_pairs(m + 1);
        let mut v = vec![0; pairs.len()];
        v[pairs.iter().position(|&q| q == (i.min(j), i.max(j))).unwrap()] = c;
        v
    }

    fn add(a: Vec<i64>, b: Vec<i64>) -> Vec<i64> {
        a.into_iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn net_from(p: u32, m: usize, forms: [Vec<i64>; 3]) -> QuadricNet<PrimeField> {
        let fld = f(p);
        let [a, b, c] = forms.map(|v| QuadraticForm::from_i64(&fld, m, &v).unwrap());
        QuadricNet::new(fld, [a, b, c]).unwrap()
    }

    #[test]
    fn squares_net_has_single_point() {
        let net = net_from(13, 3, [mono(3, 0, 0, 1), mono(3, 1, 1, 1), mono(3, 2, 2, 1)]);
        let pts = base_locus_points(&net).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].coords(), &[0, 0, 0, 1]);
    }

    #[test]
    fn enumeration_matches_naive_scan() {
        // x0*x1 - x2^2, x1*x3 - x2^2, x0^2 - x3^2 over F_7
        let net = net_from(
            7,
            3,
            [
                add(mono(3, 0, 1, 1), mono(3, 2, 2, -1)),
                add(mono(3, 1, 3, 1), mono(3, 2, 2, -1)),
                add(mono(3, 0, 0, 1), mono(3, 3, 3, -1)),
            ],
        );
        let fast = base_locus_points(&net).unwrap();
        let fld = f(7);
        let mut naive = std::collections::BTreeSet::new();
        for a in 0..7 {
            for b in 0..7 {
                for c in 0..7 {
                    for d in 0..7 {
                        let v = vec![a, b, c, d];
                        if v.iter().all(|&x| x == 0) {
                            continue;
                        }
                        if net.vanishes_at(&v) {
                            naive.insert(ProjPoint::new(&fld, v).unwrap());
                        }
                    }
                }
            }
        }
        assert_eq!(fast, naive.into_iter().collect::<Vec<_>>());
        assert!(fast.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn modulus_caps() {
        let net = net_from(103, 3, [mono(3, 0, 0, 1), mono(3, 1, 1, 1), mono(3, 2, 2, 1)]);
        assert!(matches!(base_locus_points(&net), Err(CiError::ModulusCap { .. })));
        let net4 = net_from(37, 4, [mono(4, 0, 0, 1), mono(4, 1, 1, 1), mono(4, 2, 2, 1)]);
        assert!(matches!(base_locus_points(&net4), Err(CiError::ModulusCap { p: 37, cap: 31 })));
    }

    #[test]
    fn dependent_net_rejected() {
        let fld = f(7);
        let q = QuadraticForm::from_i64(&fld, 3, &mono(3, 0, 0, 1)).unwrap();
        let r = QuadraticForm::from_i64(&fld, 3, &mono(3, 0, 0, 2)).unwrap();
        let s = QuadraticForm::from_i64(&fld, 3, &mono(3, 1, 1, 1)).unwrap();
        assert!(matches!(
            QuadricNet::new(fld, [q, r, s]),
            Err(CiError::DependentNet { rank: 2 })
        ));
    }

    #[test]
    fn jacobian_at_rational_normal_style_point() {
        // x0x4 - x1^2, x1x4 - x2^2, x2x4 - x3^2 at (s^8, s^4, s^2, s, 1)
        let p = 31;
        let net = net_from(
            p,
            4,
            [
                add(mono(4, 0, 4, 1), mono(4, 1, 1, -1)),
                add(mono(4, 1, 4, 1), mono(4, 2, 2, -1)),
                add(mono(4, 2, 4, 1), mono(4, 3, 3, -1)),
            ],
        );
        let fld = f(p);
        for s in 0..p as i64 {
            let pw = |e: u32| fld.pow(&fld.reduce(s), e) as i64;
            let pt = ProjPoint::from_i64(&fld, &[pw(8), pw(4), pw(2), pw(1), 1]).unwrap();
            assert_eq!(net.jacobian_rank_at(&pt).unwrap(), 3);
        }
    }

    #[test]
    fn jacobian_degenerate_net() {
        // x0^2, x0x1, x0x2: every partial vanishes at (0:0:0:1)
        let fld = f(13);
        let forms = [mono(3, 0, 0, 1), mono(3, 0, 1, 1), mono(3, 0, 2, 1)];
        let net = net_from(13, 3, forms);
        let pt = ProjPoint::from_i64(&fld, &[0, 0, 0, 1]).unwrap();
        assert!(net.jacobian_rank_at(&pt).unwrap() < 3);
        let off = ProjPoint::from_i64(&fld, &[1, 0, 0, 0]).unwrap();
        assert_eq!(net.jacobian_rank_at(&off), Err(CiError::NotOnBaseLocus));
    }

    #[test]
    fn quadrics_through_dimensions() {
        let fld = f(31);
        let empty = Configuration::empty(fld, 4);
        assert_eq!(quadrics_through(&empty).unwrap().len(), 15);
        let q = Configuration::empty(RationalField, 3);
        assert_eq!(quadrics_through(&q).unwrap().len(), 10);
        let pts: Vec<Vec<i64>> = (1..=7).map(|i| vec![1, i, i * i, i * i * i, i * i * i * i]).collect();
        let seven = Configuration::from_i64(fld, 4, &pts).unwrap();
        let forms = quadrics_through(&seven).unwrap();
        assert_eq!(forms.len(), 8);
        for q in &forms {
            for p in seven.points() {
                assert_eq!(q.eval(&fld, p.coords()), 0);
            }
        }
    }
}
