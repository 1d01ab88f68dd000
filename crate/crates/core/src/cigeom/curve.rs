use serde_json::{json, Value};

use super::echelon::SmallField;
use super::net::{base_locus_points_capped, for_each_normalized, QuadraticForm, QuadricNet, DEFAULT_P4_MODULUS_CAP};
use super::rng::{random_elem, stream};
use super::CiError;
use crate::exactmath::PrimeField;
use crate::projgeom::{binomial, Configuration, ProjPoint};

/// An accepted sample has at least this many rational points.
pub const MIN_ACCEPTED_POINTS: usize = 9;

/// A net of quadrics in P^4 with its F_p-rational base locus and per-point
/// smoothness flags. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSample {
    net: QuadricNet<PrimeField>,
    points: Vec<ProjPoint<PrimeField>>,
    smooth_flags: Vec<bool>,
    seed: u64,
    tries: u32,
}

impl CurveSample {
    /// Enumerates the base locus of a net in P^4 and flags each point.
    pub fn from_net(net: QuadricNet<PrimeField>, seed: u64, modulus_cap: u32) -> Result<Self, CiError> {
        if net.ambient_dim() != 4 {
            return Err(CiError::Precondition("curve samples live in P^4".into()));
        }
        let points = base_locus_points_capped(&net, modulus_cap)?;
        let smooth_flags = points
            .iter()
            .map(|pt| net.jacobian_at(pt.coords()).rank() == 3)
            .collect();
        Ok(Self {
            net,
            points,
            smooth_flags,
            seed,
            tries: 1,
        })
    }

    pub fn net(&self) -> &QuadricNet<PrimeField> {
        &self.net
    }
    pub fn field(&self) -> &PrimeField {
        self.net.field()
    }
    pub fn p(&self) -> u32 {
        self.net.field().modulus()
    }
    pub fn points(&self) -> &[ProjPoint<PrimeField>] {
        &self.points
    }
    pub fn smooth_flags(&self) -> &[bool] {
        &self.smooth_flags
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }
    pub fn tries(&self) -> u32 {
        self.tries
    }

    /// Every rational point smooth and at least [`MIN_ACCEPTED_POINTS`] of them.
    pub fn is_accepted(&self) -> bool {
        self.points.len() >= MIN_ACCEPTED_POINTS && self.smooth_flags.iter().all(|&s| s)
    }

    pub fn configuration(&self) -> Configuration<PrimeField> {
        Configuration::new(*self.field(), 4, self.points.clone()).expect("base locus points are distinct")
    }

    pub(crate) fn require_accepted(&self) -> Result<(), CiError> {
        if self.is_accepted() {
            Ok(())
        } else {
            Err(CiError::NotAccepted)
        }
    }

    pub fn to_json(&self) -> Value {
        let f = self.field();
        json!({
            "p": self.p(),
            "seed": self.seed,
            "tries": self.tries,
            "accepted": self.is_accepted(),
            "forms": self.net.forms().iter().map(|q| q.to_text(f)).collect::<Vec<_>>(),
            "coefficients": self.net.forms().iter().map(|q| q.coeffs().to_vec()).collect::<Vec<_>>(),
            "points": self.points.iter().map(|pt| pt.coords().to_vec()).collect::<Vec<_>>(),
            "smoothFlags": self.smooth_flags,
        })
    }

    fn rejection(&self, min_points: usize) -> Option<String> {
        if let Some(i) = self.smooth_flags.iter().position(|&s| !s) {
            return Some(format!("Jacobian rank < 3 at {:?}", self.points[i].coords()));
        }
        if self.points.len() < min_points {
            return Some(format!("{} rational points, need {min_points}", self.points.len()));
        }
        None
    }
}

/// [`sample_smooth_canonical_curve_capped`] with the default P^4 modulus cap.
pub fn sample_smooth_canonical_curve(p: u32, seed: u64, max_tries: u32, min_points: usize) -> Result<CurveSample, CiError> {
    sample_smooth_canonical_curve_capped(p, seed, max_tries, min_points, DEFAULT_P4_MODULUS_CAP)
}

/// Draws nets of quadrics in P^4 with uniform coefficients from stream
/// `(seed, try)` until one has only smooth rational points and at least
/// `min_points` of them (raised to [`MIN_ACCEPTED_POINTS`] if smaller).
pub fn sample_smooth_canonical_curve_capped(
    p: u32,
    seed: u64,
    max_tries: u32,
    min_points: usize,
    modulus_cap: u32,
) -> Result<CurveSample, CiError> {
    let f = PrimeField::new(p)?;
    let cap = modulus_cap.min(super::HARD_MODULUS_CAP);
    if p > cap {
        return Err(CiError::ModulusCap { p, cap });
    }
    let min_points = min_points.max(MIN_ACCEPTED_POINTS);
    let mut reason = String::from("no tries allowed");
    for attempt in 0..max_tries {
        let mut rng = stream(seed, attempt as u64);
        let forms: [QuadraticForm<PrimeField>; 3] = std::array::from_fn(|_| {
            let coeffs = (0..15).map(|_| random_elem(&f, &mut rng)).collect();
            QuadraticForm::new(&f, 4, coeffs).expect("15 canonical coefficients")
        });
        let net = match QuadricNet::new(f, forms) {
            Ok(net) => net,
            Err(e) => {
                reason = e.to_string();
                continue;
            }
        };
        let mut sample = CurveSample::from_net(net, seed, cap)?;
        sample.tries = attempt + 1;
        match sample.rejection(min_points) {
            None => return Ok(sample),
            Some(r) => reason = r,
        }
    }
    Err(CiError::Exhausted {
        tries: max_tries,
        reason,
    })
}

/// A hyperplane meeting the curve's rational points in exactly 8 transversal points.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperplaneSection {
    /// Normalized dual coordinates.
    pub hyperplane: ProjPoint<PrimeField>,
    /// Positions in `curve.points()`, increasing.
    pub indices: Vec<usize>,
    pub points: Configuration<PrimeField>,
}

/// Outcome of scanning every hyperplane of P^4(F_p).
#[derive(Clone, Debug, PartialEq)]
pub struct SectionCensus {
    pub sections: Vec<HyperplaneSection>,
    /// Largest number of curve points on a single hyperplane.
    pub max_points_on_hyperplane: usize,
    /// Hyperplanes with 8 or more curve points: `(hyperplane index, point count)`.
    pub rich_hyperplanes: Vec<(Vec<u32>, usize)>,
    /// Hyperplanes with exactly 8 points, at least one non-transversal.
    pub non_transversal: usize,
}

/// Tangent directions: the 2-dimensional kernel of the Jacobian at each point.
fn tangent_kernels(curve: &CurveSample) -> Vec<Vec<Vec<u32>>> {
    curve
        .points
        .iter()
        .map(|pt| curve.net.jacobian_at(pt.coords()).kernel_basis())
        .collect()
}

fn dot(p: u64, a: &[u32], b: &[u32]) -> u64 {
    a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % p
}

pub fn hyperplane_census(curve: &CurveSample) -> Result<SectionCensus, CiError> {
    curve.require_accepted()?;
    let p = curve.p();
    let p64 = p as u64;
    let f = *curve.field();
    let coords: Vec<&[u32]> = curve.points.iter().map(|pt| pt.coords()).collect();
    let kernels = tangent_kernels(curve);
    let mut census = SectionCensus {
        sections: Vec::new(),
        max_points_on_hyperplane: 0,
        rich_hyperplanes: Vec::new(),
        non_transversal: 0,
    };
    let mut on = Vec::with_capacity(coords.len());
    for_each_normalized(p, 5, |h| {
        on.clear();
        on.extend((0..coords.len()).filter(|&i| dot(p64, h, coords[i]) == 0));
        census.max_points_on_hyperplane = census.max_points_on_hyperplane.max(on.len());
        if on.len() >= 8 {
            census.rich_hyperplanes.push((h.to_vec(), on.len()));
        }
        if on.len() != 8 {
            return;
        }
        let transversal = on
            .iter()
            .all(|&i| kernels[i].iter().any(|v| dot(p64, h, v) != 0));
        if !transversal {
            census.non_transversal += 1;
            return;
        }
        let pts = on.iter().map(|&i| curve.points[i].clone()).collect();
        census.sections.push(HyperplaneSection {
            hyperplane: ProjPoint::from_normalized(h.to_vec()),
            indices: on.clone(),
            points: Configuration::new(f, 4, pts).expect("distinct curve points"),
        });
    });
    Ok(census)
}

/// Hyperplanes of P^4(F_p) meeting the curve's rational points in exactly 8
/// points, each transversal, in lexicographic order of the hyperplane.
pub fn hyperplane_sections(curve: &CurveSample) -> Result<Vec<HyperplaneSection>, CiError> {
    Ok(hyperplane_census(curve)?.sections)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossCount {
    pub by_subsets: u64,
    pub by_hyperplanes: u64,
    pub exhaustive: bool,
}

impl CrossCount {
    /// Equality is only asserted when the subset count was exhaustive.
    pub fn holds(&self) -> bool {
        !self.exhaustive || self.by_subsets == self.by_hyperplanes
    }
}

pub fn cross_count_hyperplanar(curve: &CurveSample, subset_budget: u64) -> Result<CrossCount, CiError> {
    let census = hyperplane_census(curve)?;
    cross_count_with(curve, &census, subset_budget)
}

/// Counts hyperplanar 8-subsets of the curve's points two ways. When
/// `binomial(N, 8)` exceeds the budget the subset side is taken from the
/// hyperplane scan and flagged non-exhaustive.
pub fn cross_count_with(curve: &CurveSample, census: &SectionCensus, subset_budget: u64) -> Result<CrossCount, CiError> {
    curve.require_accepted()?;
    let n = curve.points.len();
    let by_hyperplanes = census.sections.len() as u64;
    if binomial(n as u64, 8) > subset_budget {
        let by_subsets = census
            .rich_hyperplanes
            .iter()
            .map(|&(_, k)| binomial(k as u64, 8))
            .sum();
        return Ok(CrossCount {
            by_subsets,
            by_hyperplanes,
            exhaustive: false,
        });
    }
    let fp = SmallField::new(curve.p());
    let coords: Vec<&[u32]> = curve.points.iter().map(|pt| pt.coords()).collect();
    let mut echelon = fp.echelon(5);
    let by_subsets = count_low_span(&coords, 0, 8, &mut echelon);
    Ok(CrossCount {
        by_subsets,
        by_hyperplanes,
        exhaustive: true,
    })
}

/// Number of `remaining`-element extensions, drawn from `coords[start..]`,
/// that keep the span rank at most 4. Rank only grows, so a branch is cut as
/// soon as it reaches 5; the count equals a plain scan over all subsets.
fn count_low_span(coords: &[&[u32]], start: usize, remaining: usize, echelon: &mut super::echelon::Echelon<'_>) -> u64 {
    if remaining == 0 {
        return 1;
    }
    let mut total = 0;
    let base = echelon.rank();
    for i in start..=coords.len().saturating_sub(remaining) {
        echelon.insert(coords[i]);
        if echelon.rank() <= 4 {
            total += count_low_span(coords, i + 1, remaining - 1, echelon);
        }
        echelon.truncate(base);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::{is_hyperplanar, next_combination};

    fn sample() -> CurveSample {
        sample_smooth_canonical_curve(13, 5, 50, 9).unwrap()
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(matches!(sample_smooth_canonical_curve(4, 0, 5, 9), Err(CiError::Math(_))));
        assert!(matches!(sample_smooth_canonical_curve(5, 0, 5, 9), Err(CiError::Math(_))));
        assert!(matches!(
            sample_smooth_canonical_curve(37, 0, 5, 9),
            Err(CiError::ModulusCap { p: 37, cap: 31 })
        ));
    }

    #[test]
    fn small_field_exhausts() {
        match sample_smooth_canonical_curve(7, 1, 3, 40) {
            Err(CiError::Exhausted { tries: 3, reason }) => assert!(!reason.is_empty()),
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn sample_is_accepted_and_deterministic() {
        let a = sample();
        assert!(a.is_accepted());
        assert_eq!(a, sample());
        for pt in a.points() {
            assert!(a.net().vanishes_at(pt.coords()));
        }
    }

    #[test]
    fn sections_are_hyperplanar_and_low_rank() {
        let c = sample();
        for s in hyperplane_sections(&c).unwrap() {
            assert_eq!(s.points.len(), 8);
            assert!(is_hyperplanar(&s.points).unwrap());
            assert_eq!(crate::projgeom::evaluation_matrix(&s.points, 2).rank(), 7);
        }
    }

    #[test]
    fn pruned_count_matches_plain_scan() {
        let c = sample();
        let census = hyperplane_census(&c).unwrap();
        let cc = cross_count_with(&c, &census, u64::MAX).unwrap();
        assert!(cc.exhaustive);
        let cfg = c.configuration();
        let n = cfg.len();
        let mut idx: Vec<usize> = (0..8).collect();
        let mut plain = 0;
        loop {
            if cfg.subset(&idx).span_rank() <= 4 {
                plain += 1;
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        assert_eq!(cc.by_subsets, plain);
        assert_eq!(cc.by_subsets, cc.by_hyperplanes);
        let capped = cross_count_with(&c, &census, 0).unwrap();
        assert!(!capped.exhaustive);
    }
}
