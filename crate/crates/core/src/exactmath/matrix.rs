use super::{Field, MathError};

/// Dense row-major matrix over a single exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F: Field> {
    pub reduced: Matrix<F>,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self, MathError> {
        if data.len() != rows * cols {
            return Err(MathError::Shape {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if let Some(bad) = data.iter().find(|e| !field.contains(e)) {
            return Err(MathError::ForeignElement {
                element: format!("{bad:?}"),
                characteristic: field.characteristic(),
            });
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds from row vectors; every row must have length `cols`.
    pub fn from_rows<R: AsRef<[F::Elem]>>(field: F, cols: usize, rows: &[R]) -> Result<Self, MathError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(MathError::Shape {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    pub fn from_i64_rows(field: F, rows: &[Vec<i64>]) -> Result<Self, MathError> {
        let cols = rows.first().map_or(0, Vec::len);
        let converted: Vec<Vec<F::Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, &converted)
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }
    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MathError> {
        if self.cols != other.rows {
            return Err(MathError::Shape {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>, MathError> {
        if v.len() != self.cols {
            return Err(MathError::Shape {
                expected: self.cols,
                got: v.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row-echelon form. The pivot in each column is the first nonzero
    /// entry at or below the current pivot row.
    pub fn rref(&self) -> Rref<F> {
        let f = &self.field;
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivot_cols = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(r) = (pr..rows).find(|&r| !f.is_zero(m.get(r, c))) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = f.inv(m.get(pr, c)).expect("pivot is nonzero");
            for j in c..cols {
                let idx = pr * cols + j;
                m.data[idx] = f.mul(&m.data[idx], &inv);
            }
            for r2 in 0..rows {
                if r2 == pr || f.is_zero(m.get(r2, c)) {
                    continue;
                }
                let factor = m.get(r2, c).clone();
                for j in c..cols {
                    let sub = f.mul(&factor, &m.data[pr * cols + j]);
                    let idx = r2 * cols + j;
                    m.data[idx] = f.sub(&m.data[idx], &sub);
                }
            }
            pivot_cols.push(c);
            pr += 1;
        }
        Rref {
            reduced: m,
            rank: pivot_cols.len(),
            pivot_cols,
        }
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        rank_of_rows(&self.field, self.cols, self.data.chunks(self.cols.max(1)).take(self.rows))
    }

    /// Basis of the right null space, one vector per free column in column
    /// order, each scaled so its first nonzero entry is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let Rref {
            reduced, pivot_cols, ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = f.neg(reduced.get(row, free));
            }
            basis.push(normalize_leading(f, v));
        }
        basis
    }

    pub fn det(&self) -> Result<F::Elem, MathError> {
        if self.rows != self.cols {
            return Err(MathError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| !f.is_zero(m.get(r, c))) else {
                return Ok(f.zero());
            };
            if r != c {
                m.swap_rows(r, c);
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot)?;
            for r2 in c + 1..n {
                if f.is_zero(m.get(r2, c)) {
                    continue;
                }
                let factor = f.mul(m.get(r2, c), &inv);
                for j in c..n {
                    let sub = f.mul(&factor, &m.data[c * n + j]);
                    let idx = r2 * n + j;
                    m.data[idx] = f.sub(&m.data[idx], &sub);
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Scales `v` so its first nonzero entry is 1; the zero vector is returned unchanged.
pub fn normalize_leading<F: Field>(f: &F, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
    if let Some(lead) = v.iter().find(|e| !f.is_zero(e)).cloned() {
        let inv = f.inv(&lead).expect("nonzero");
        for e in &mut v {
            *e = f.mul(e, &inv);
        }
    }
    v
}

/// Rank of the matrix whose rows are given by `rows`, without building a [`Matrix`].
pub fn rank_of_rows<'a, F, I>(f: &F, cols: usize, rows: I) -> usize
where
    F: Field + 'a,
    I: IntoIterator<Item = &'a [F::Elem]>,
{
    let mut echelon: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    for row in rows {
        let mut v = row.to_vec();
        debug_assert_eq!(v.len(), cols);
        for (pc, b) in &echelon {
            if f.is_zero(&v[*pc]) {
                continue;
            }
            let factor = v[*pc].clone();
            for j in *pc..cols {
                v[j] = f.sub(&v[j], &f.mul(&factor, &b[j]));
            }
        }
        if let Some(pc) = v.iter().position(|e| !f.is_zero(e)) {
            let inv = f.inv(&v[pc]).expect("nonzero");
            for e in v.iter_mut().skip(pc) {
                *e = f.mul(e, &inv);
            }
            echelon.push((pc, v));
            if echelon.len() == cols {
                break;
            }
        }
    }
    echelon.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, PrimeField, RationalField};

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(f7(), 3);
        let r = id.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
        assert_eq!(r.reduced, id);

        let z = Matrix::zeros(RationalField, 2, 2);
        let r = z.rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivot_cols.is_empty());
    }

    #[test]
    fn rref_proportional_rows() {
        let m = Matrix::from_i64_rows(RationalField, &[vec![1, 2], vec![2, 4]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
        assert_eq!(r.reduced.row(0), &[rat(1, 1), rat(2, 1)]);
    }

    #[test]
    fn rank_examples() {
        let f11 = PrimeField::new(11).unwrap();
        let mut row = vec![0u32; 15];
        row[4] = 3;
        assert_eq!(Matrix::from_rows(f11, 15, &[row]).unwrap().rank(), 1);
        assert_eq!(Matrix::identity(f11, 5).rank(), 5);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(f7(), 3).kernel_basis().is_empty());
        let m = Matrix::from_i64_rows(f7(), &[vec![1, 1]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![1, 6]]);
        let z = Matrix::zeros(f7(), 2, 2);
        assert_eq!(z.kernel_basis(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn kernel_vectors_are_leading_one() {
        // free column 2 has a nonzero pivot-column entry ahead of it
        let m = Matrix::from_i64_rows(f7(), &[vec![1, 0, 3], vec![0, 1, 2]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![1, 3, 2]]);
        assert_eq!(m.mul_vec(&k[0]).unwrap(), vec![0, 0]);
    }

    #[test]
    fn det_examples() {
        assert_eq!(Matrix::identity(f7(), 4).det().unwrap(), 1);
        let d = Matrix::from_i64_rows(RationalField, &[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(d.det().unwrap(), rat(6, 1));
        let rep = Matrix::from_i64_rows(f7(), &[vec![1, 2, 3], vec![4, 5, 6], vec![1, 2, 3]]).unwrap();
        assert_eq!(rep.det().unwrap(), 0);
        let swap = Matrix::from_i64_rows(RationalField, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(swap.det().unwrap(), rat(-1, 1));
        let rect = Matrix::zeros(f7(), 2, 3);
        assert!(matches!(rect.det(), Err(MathError::NotSquare { .. })));
    }

    #[test]
    fn construction_is_checked() {
        assert!(matches!(
            Matrix::new(f7(), 2, 2, vec![0, 1, 2]),
            Err(MathError::Shape { .. })
        ));
        // 9 is an F_11 value, not a canonical F_7 element
        assert!(matches!(
            Matrix::new(f7(), 1, 2, vec![1, 9]),
            Err(MathError::ForeignElement { .. })
        ));
    }
}
