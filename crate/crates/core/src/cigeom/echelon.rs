//! Incremental row echelon form over a small prime field, with fixed-size
//! storage. Used in the subset sweeps, where millions of short matrices are
//! ranked and the generic [`Matrix`](crate::exactmath::Matrix) would allocate.

pub(crate) const MAX_COLS: usize = 16;

#[derive(Clone, Debug)]
pub(crate) struct SmallField {
    p: u32,
    inv: Vec<u32>,
}

impl SmallField {
    /// `p` must be an odd prime at most 2^16 so that the inverse table stays small.
    pub(crate) fn new(p: u32) -> Self {
        assert!(p <= 1 << 16, "inverse table is for small moduli");
        let mut inv = vec![0u32; p as usize];
        for a in 1..p {
            inv[a as usize] = pow_mod(a, p - 2, p);
        }
        Self { p, inv }
    }

    pub(crate) fn echelon(&self, cols: usize) -> Echelon<'_> {
        assert!(cols <= MAX_COLS);
        Echelon {
            field: self,
            cols,
            len: 0,
            pivots: [0; MAX_COLS],
            rows: [[0; MAX_COLS]; MAX_COLS],
        }
    }

    pub(crate) fn rank<'a, I: IntoIterator<Item = &'a [u32]>>(&self, cols: usize, rows: I) -> usize {
        let mut e = self.echelon(cols);
        for r in rows {
            e.insert(r);
            if e.len == cols {
                break;
            }
        }
        e.len
    }
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut acc, m) = (1u64, p as u64);
    let mut b = a as u64 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u32
}

/// Rows kept normalized (pivot entry 1) and reduced against earlier rows.
#[derive(Clone)]
pub(crate) struct Echelon<'f> {
    field: &'f SmallField,
    cols: usize,
    len: usize,
    pivots: [usize; MAX_COLS],
    rows: [[u32; MAX_COLS]; MAX_COLS],
}

impl Echelon<'_> {
    pub(crate) fn rank(&self) -> usize {
        self.len
    }

    /// Adds a row; returns whether the rank grew.
    pub(crate) fn insert(&mut self, v: &[u32]) -> bool {
        let p = self.field.p as u64;
        let cols = self.cols;
        let mut w = [0u32; MAX_COLS];
        w[..cols].copy_from_slice(&v[..cols]);
        for k in 0..self.len {
            let pc = self.pivots[k];
            let c = w[pc];
            if c == 0 {
                continue;
            }
            let factor = p - c as u64;
            let row = &self.rows[k];
            for j in pc..cols {
                w[j] = ((w[j] as u64 + factor * row[j] as u64) % p) as u32;
            }
        }
        let Some(pc) = w[..cols].iter().position(|&x| x != 0) else {
            return false;
        };
        if self.len == MAX_COLS {
            return false;
        }
        let inv = self.field.inv[w[pc] as usize] as u64;
        for x in &mut w[pc..cols] {
            *x = (*x as u64 * inv % p) as u32;
        }
        self.pivots[self.len] = pc;
        self.rows[self.len] = w;
        self.len += 1;
        true
    }

    /// Drops rows back to `len`; later rows never feed earlier ones, so this
    /// restores the exact earlier state.
    pub(crate) fn truncate(&mut self, len: usize) {
        self.len = self.len.min(len);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{Field, Matrix, PrimeField};
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn agrees_with_generic_rank(rows in prop::collection::vec(prop::collection::vec(0u32..13, 6), 0..9)) {
            let fp = SmallField::new(13);
            let fast = fp.rank(6, rows.iter().map(|r| r.as_slice()));
            let f = PrimeField::new(13).unwrap();
            let slow = if rows.is_empty() { 0 } else { Matrix::from_rows(f, 6, &rows).unwrap().rank() };
            prop_assert_eq!(fast, slow);
        }
    }

    #[test]
    fn truncate_restores_state() {
        let fp = SmallField::new(7);
        let mut e = fp.echelon(3);
        assert!(e.insert(&[1, 2, 3]));
        assert!(e.insert(&[0, 1, 1]));
        e.truncate(1);
        assert_eq!(e.rank(), 1);
        assert!(!e.insert(&[2, 4, 6]));
        assert!(e.insert(&[0, 0, 5]));
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(fp.inv[a as usize], f.inv(&a).unwrap());
        }
    }
}
