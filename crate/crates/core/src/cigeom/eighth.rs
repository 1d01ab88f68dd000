use super::net::{base_locus_points, quadrics_through, QuadricNet};
use super::CiError;
use crate::exactmath::PrimeField;
use crate::projgeom::{classify_seven_points, Configuration, ConfigurationFixture, ProjPoint};

/// The eighth base point of the net of quadrics through seven points of P^3.
///
/// Fails with [`CiError::Dependent`] when the seven points do not impose
/// independent conditions, and with [`CiError::NonTransversal`] when the base
/// locus is not 8 distinct smooth rational points containing the inputs.
pub fn recover_eighth_point(seven: &Configuration<PrimeField>) -> Result<ProjPoint<PrimeField>, CiError> {
    let class = classify_seven_points(seven)?;
    if !class.independent {
        return Err(CiError::Dependent(class));
    }
    let [a, b, c]: [_; 3] = quadrics_through(seven)?
        .try_into()
        .map_err(|v: Vec<_>| CiError::Precondition(format!("expected 3 quadrics, got {}", v.len())))?;
    let net = QuadricNet::new(*seven.field(), [a, b, c])?;
    let locus = base_locus_points(&net)?;
    let non_transversal = || CiError::NonTransversal {
        locus: ConfigurationFixture::from_prime(
            &Configuration::new(*seven.field(), 3, locus.clone()).expect("enumerated points are distinct"),
        ),
    };
    if locus.len() != 8 || !seven.points().iter().all(|p| locus.contains(p)) {
        return Err(non_transversal());
    }
    if locus.iter().any(|p| net.jacobian_at(p.coords()).rank() != 3) {
        return Err(non_transversal());
    }
    Ok(locus
        .iter()
        .find(|p| !seven.points().contains(p))
        .expect("8 points, 7 of them inputs")
        .clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cigeom::rng::{random_point, stream};
    use crate::exactmath::Field;

    fn random_seven(f: PrimeField, seed: u64, i: u64) -> Option<Configuration<PrimeField>> {
        let mut rng = stream(seed, i);
        let pts = (0..7).map(|_| random_point(&f, 3, &mut rng)).collect();
        Configuration::new(f, 3, pts).ok()
    }

    #[test]
    fn recovers_and_round_trips() {
        let f = PrimeField::new(31).unwrap();
        let mut successes = 0;
        for i in 0..40 {
            let Some(seven) = random_seven(f, 11, i) else { continue };
            let eighth = match recover_eighth_point(&seven) {
                Ok(pt) => pt,
                // a double base point: the seventh input lies on the Weddle
                // surface of the other six, a codimension-1 event (about 7/p)
                Err(CiError::NonTransversal { .. }) => continue,
                Err(e) => panic!("unexpected error {e}"),
            };
            successes += 1;
            assert!(!seven.points().contains(&eighth));
            for q in quadrics_through(&seven).unwrap() {
                assert!(f.is_zero(&q.eval(&f, eighth.coords())));
            }
            let mut swapped = seven.points().to_vec();
            let last = swapped.pop().unwrap();
            swapped.push(eighth);
            let back = recover_eighth_point(&Configuration::new(f, 3, swapped).unwrap()).unwrap();
            assert_eq!(back, last);
        }
        assert!(successes >= 20, "only {successes} recoveries");
    }

    #[test]
    fn four_collinear_is_dependent() {
        let f = PrimeField::new(31).unwrap();
        let pts = vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![1, 1, 0, 0],
            vec![1, 2, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![1, 3, 5, 7],
        ];
        let cfg = Configuration::from_i64(f, 3, &pts).unwrap();
        match recover_eighth_point(&cfg) {
            Err(CiError::Dependent(class)) => assert!(class.four_collinear),
            other => panic!("expected dependent, got {other:?}"),
        }
    }
}
