use serde::Serialize;

use super::{evaluation_matrix, next_combination, Configuration, GeomError, ProjPoint};
use crate::exactmath::{Field, Matrix};

/// Verdict of [`classify_seven_points`]. Every flag is computed on its own;
/// `independent` comes from the rank of the quadric evaluation matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SevenPointClass {
    pub independent: bool,
    pub coplanar7: bool,
    pub six_on_conic: bool,
    pub four_collinear: bool,
    pub evaluation_rank: usize,
}

impl SevenPointClass {
    pub fn any_degeneracy(&self) -> bool {
        self.coplanar7 || self.six_on_conic || self.four_collinear
    }

    /// The classification contract: independence holds exactly when no degeneracy does.
    pub fn is_consistent(&self) -> bool {
        self.independent == !self.any_degeneracy()
    }
}

fn require_dim<F: Field>(cfg: &Configuration<F>, dim: usize) -> Result<(), GeomError> {
    if cfg.ambient_dim() != dim {
        return Err(GeomError::AmbientDim {
            expected: dim,
            got: cfg.ambient_dim(),
        });
    }
    Ok(())
}

fn span_rank_of<F: Field>(cfg: &Configuration<F>, idx: &[usize]) -> usize {
    crate::exactmath::rank_of_rows(
        cfg.field(),
        cfg.ambient_dim() + 1,
        idx.iter().map(|&i| cfg.points()[i].coords()),
    )
}

/// True iff some k of the points lie on a line.
pub fn exists_k_collinear<F: Field>(cfg: &Configuration<F>, k: usize) -> Result<bool, GeomError> {
    if k < 3 {
        return Err(GeomError::SubsetSize(k));
    }
    let n = cfg.len();
    if n < k {
        return Ok(false);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if span_rank_of(cfg, &idx) <= 2 {
            return Ok(true);
        }
        if !next_combination(&mut idx, n) {
            return Ok(false);
        }
    }
}

/// True iff all points of a configuration in P^3 lie in one plane.
pub fn all_coplanar<F: Field>(cfg: &Configuration<F>) -> Result<bool, GeomError> {
    require_dim(cfg, 3)?;
    Ok(cfg.span_rank() <= 3)
}

/// True iff the points of a configuration in P^4 lie in one hyperplane.
pub fn is_hyperplanar<F: Field>(cfg: &Configuration<F>) -> Result<bool, GeomError> {
    require_dim(cfg, 4)?;
    Ok(cfg.span_rank() <= 4)
}

/// True iff some 6 of the points are coplanar and lie on a conic of their plane.
pub fn exists_six_on_plane_conic<F: Field>(cfg: &Configuration<F>) -> Result<bool, GeomError> {
    require_dim(cfg, 3)?;
    let n = cfg.len();
    if n < 6 {
        return Ok(false);
    }
    let mut idx: Vec<usize> = (0..6).collect();
    loop {
        if six_on_conic(cfg, &idx)? {
            return Ok(true);
        }
        if !next_combination(&mut idx, n) {
            return Ok(false);
        }
    }
}

fn six_on_conic<F: Field>(cfg: &Configuration<F>, idx: &[usize]) -> Result<bool, GeomError> {
    let f = cfg.field();
    let rank = span_rank_of(cfg, idx);
    if rank > 3 {
        return Ok(false);
    }
    if rank <= 2 {
        // collinear points lie on every conic containing their line
        return Ok(true);
    }
    let pts: Vec<&ProjPoint<F>> = idx.iter().map(|&i| &cfg.points()[i]).collect();
    let basis = plane_basis(cfg, idx);
    let conic_rows: Vec<Vec<F::Elem>> = pts
        .iter()
        .map(|p| {
            let (a, b, c) = plane_coordinates(f, &basis, p.coords());
            vec![
                f.mul(&a, &a),
                f.mul(&a, &b),
                f.mul(&a, &c),
                f.mul(&b, &b),
                f.mul(&b, &c),
                f.mul(&c, &c),
            ]
        })
        .collect();
    let m = Matrix::from_rows(f.clone(), 6, &conic_rows)?;
    Ok(f.is_zero(&m.det()?))
}

/// Three vectors spanning the plane of the (coplanar, rank 3) points at `idx`:
/// the first three points when they are not collinear, otherwise the nonzero
/// rows of the reduced echelon form of the coordinate matrix.
fn plane_basis<F: Field>(cfg: &Configuration<F>, idx: &[usize]) -> [Vec<F::Elem>; 3] {
    let pts = cfg.points();
    if span_rank_of(cfg, &idx[..3]) == 3 {
        return [
            pts[idx[0]].coords().to_vec(),
            pts[idx[1]].coords().to_vec(),
            pts[idx[2]].coords().to_vec(),
        ];
    }
    let rref = cfg.subset(idx).coordinate_matrix().rref();
    debug_assert_eq!(rref.rank, 3);
    let r = rref.reduced;
    [r.row(0).to_vec(), r.row(1).to_vec(), r.row(2).to_vec()]
}

/// Coordinates of `v` in the basis `b` of a plane containing it.
fn plane_coordinates<F: Field>(f: &F, b: &[Vec<F::Elem>; 3], v: &[F::Elem]) -> (F::Elem, F::Elem, F::Elem) {
    // columns b0 b1 b2 v; the kernel is one-dimensional with a nonzero last entry
    let rows: Vec<Vec<F::Elem>> = (0..4)
        .map(|r| vec![b[0][r].clone(), b[1][r].clone(), b[2][r].clone(), v[r].clone()])
        .collect();
    let m = Matrix::from_rows(f.clone(), 4, &rows).expect("4x4");
    let kernel = m.kernel_basis();
    let k = &kernel[0];
    let scale = f.neg(&f.inv(&k[3]).expect("point lies in the plane"));
    (f.mul(&k[0], &scale), f.mul(&k[1], &scale), f.mul(&k[2], &scale))
}

/// Classifies 7 distinct points of P^3 against the three ways they can fail
/// to impose independent conditions on quadrics.
pub fn classify_seven_points<F: Field>(cfg: &Configuration<F>) -> Result<SevenPointClass, GeomError> {
    require_dim(cfg, 3)?;
    if cfg.len() != 7 {
        return Err(GeomError::PointCount {
            expected: 7,
            got: cfg.len(),
        });
    }
    let evaluation_rank = evaluation_matrix(cfg, 2).rank();
    Ok(SevenPointClass {
        independent: evaluation_rank == 7,
        coplanar7: all_coplanar(cfg)?,
        six_on_conic: exists_six_on_plane_conic(cfg)?,
        four_collinear: exists_k_collinear(cfg, 4)?,
        evaluation_rank,
    })
}
