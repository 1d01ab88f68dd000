use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use super::curve::{cross_count_with, hyperplane_census, sample_smooth_canonical_curve_capped, CurveSample, HyperplaneSection};
use super::echelon::SmallField;
use super::eighth::recover_eighth_point;
use super::net::{base_locus_points, quadrics_through, QuadricNet, HARD_MODULUS_CAP};
use super::rng::{random_point, random_subset, substream, StreamRng};
use super::CiError;
use crate::exactmath::{Field, PrimeField};
use crate::projgeom::{
    binomial, classify_seven_points, evaluation_matrix, evaluation_row, next_combination, Configuration,
    ConfigurationFixture, ProjPoint, SevenPointClass,
};

/// One counterexample: the offending configuration and the ranks seen.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FailureRecord {
    pub configuration: ConfigurationFixture,
    pub observed_rank: usize,
    pub expected_rank: usize,
    pub flags: BTreeMap<String, Value>,
}

/// Result of a verification driver. `passes + failures.len() == trials`;
/// skipped cases are counted apart and never enter `trials`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub claim_id: String,
    pub p: u32,
    pub seed: u64,
    pub trials: u64,
    pub passes: u64,
    pub skipped: u64,
    pub failures: Vec<FailureRecord>,
    pub runtime_millis: u64,
}

impl VerificationReport {
    pub fn new(claim: impl Into<String>, p: u32, seed: u64) -> Self {
        Self {
            claim_id: claim.into(),
            p,
            seed,
            trials: 0,
            passes: 0,
            skipped: 0,
            failures: Vec::new(),
            runtime_millis: 0,
        }
    }

    fn pass(&mut self) {
        self.trials += 1;
        self.passes += 1;
    }

    fn fail(&mut self, record: FailureRecord) {
        self.trials += 1;
        self.failures.push(record);
    }

    fn skip(&mut self) {
        self.skipped += 1;
    }

    /// Adds another report's counts and failures to this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.trials += other.trials;
        self.passes += other.passes;
        self.skipped += other.skipped;
        self.failures.extend(other.failures);
    }

    /// Sorts failures by their serialized form and stamps the runtime.
    pub fn finish(mut self, started: Instant) -> Self {
        self.failures
            .sort_by_cached_key(|f| serde_json::to_string(f).expect("failure records serialize"));
        self.runtime_millis = started.elapsed().as_millis() as u64;
        self
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    /// The report without `runtimeMillis`: a pure function of claim, seed and parameters.
    pub fn payload(&self) -> Value {
        let mut v = self.to_json();
        v.as_object_mut().expect("object").remove("runtimeMillis");
        v
    }
}

/// Precomputed rows for rank checks on subsets of a curve's points.
struct Tables<'a> {
    fp: SmallField,
    eval: Vec<Vec<u32>>,
    coords: Vec<&'a [u32]>,
}

impl<'a> Tables<'a> {
    fn new(curve: &'a CurveSample) -> Self {
        let f = curve.field();
        Self {
            fp: SmallField::new(curve.p()),
            eval: curve.points().iter().map(|pt| evaluation_row(f, pt, 2)).collect(),
            coords: curve.points().iter().map(|pt| pt.coords()).collect(),
        }
    }

    fn eval_rank(&self, idx: &[usize]) -> usize {
        self.fp.rank(15, idx.iter().map(|&i| self.eval[i].as_slice()))
    }

    fn hyperplanar(&self, idx: &[usize]) -> bool {
        self.fp.rank(5, idx.iter().map(|&i| self.coords[i])) <= 4
    }

    /// Number of hyperplanar 8-subsets of a 9-subset.
    fn hyperplanar_eights(&self, idx: &[usize]) -> usize {
        (0..idx.len())
            .filter(|&drop| {
                let rest: Vec<usize> = idx.iter().enumerate().filter(|&(k, _)| k != drop).map(|(_, &i)| i).collect();
                self.hyperplanar(&rest)
            })
            .count()
    }
}

/// Visits every k-subset when there are at most `budget` of them, otherwise the
/// forced subsets followed by `budget` uniform samples. Returns whether the
/// visit was exhaustive.
fn visit_subsets(n: usize, k: usize, budget: u64, forced: &[Vec<usize>], rng: &mut StreamRng, mut visit: impl FnMut(&[usize])) -> bool {
    if binomial(n as u64, k as u64) <= budget {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            visit(&idx);
            if !next_combination(&mut idx, n) {
                return true;
            }
        }
    }
    for s in forced {
        visit(s);
    }
    for _ in 0..budget {
        visit(&random_subset(n, k, rng));
    }
    false
}

/// Sections (n = 8), or sections plus each other point (n = 9).
fn witnesses(curve: &CurveSample, sections: &[HyperplaneSection], n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for s in sections {
        match n {
            8 => out.push(s.indices.clone()),
            9 => {
                for extra in (0..curve.points().len()).filter(|i| !s.indices.contains(i)) {
                    let mut v = s.indices.clone();
                    v.push(extra);
                    v.sort_unstable();
                    out.push(v);
                }
            }
            _ => {}
        }
    }
    out.sort();
    out.dedup();
    out
}

fn subset_fixture(curve: &CurveSample, idx: &[usize]) -> ConfigurationFixture {
    ConfigurationFixture::from_prime(&curve.configuration().subset(idx))
}

fn flags(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn check_curve(curve: &CurveSample, n: usize) -> Result<(), CiError> {
    curve.require_accepted()?;
    if curve.points().len() < n {
        return Err(CiError::Precondition(format!(
            "curve has {} points, subsets of size {n} requested",
            curve.points().len()
        )));
    }
    Ok(())
}

pub fn verify_independence_dichotomy(curve: &CurveSample, n: usize, subset_budget: u64, seed: u64) -> Result<VerificationReport, CiError> {
    let sections = if n >= 8 { hyperplane_census(curve)?.sections } else { Vec::new() };
    verify_independence_dichotomy_with(curve, &sections, n, subset_budget, seed)
}

/// Checks the rank dichotomy for n-subsets of the curve's rational points:
/// rank n for n <= 7; for n = 8 corank 1 exactly on hyperplanar subsets; for
/// n = 9 corank 1 exactly when some 8-subset is hyperplanar.
pub fn verify_independence_dichotomy_with(
    curve: &CurveSample,
    sections: &[HyperplaneSection],
    n: usize,
    subset_budget: u64,
    seed: u64,
) -> Result<VerificationReport, CiError> {
    if !(1..=9).contains(&n) {
        return Err(CiError::Precondition(format!("subset size must be in 1..=9, got {n}")));
    }
    check_curve(curve, n)?;
    let started = Instant::now();
    let tables = Tables::new(curve);
    let forced = witnesses(curve, sections, n);
    let mut rng = substream(seed, n as u64, 0);
    let mut report = VerificationReport::new(format!("prop22-n{n}"), curve.p(), seed);
    visit_subsets(curve.points().len(), n, subset_budget, &forced, &mut rng, |idx| {
        let rank = tables.eval_rank(idx);
        let (ok, expected, extra) = match n {
            8 => {
                let hyp = tables.hyperplanar(idx);
                ((rank < 8) == hyp && rank >= 7, if hyp { 7 } else { 8 }, ("hyperplanar", json!(hyp)))
            }
            9 => {
                let h = tables.hyperplanar_eights(idx);
                ((rank < 9) == (h > 0) && rank >= 8, if h > 0 { 8 } else { 9 }, ("hyperplanarSubsets", json!(h)))
            }
            _ => (rank == n, n, ("n", json!(n))),
        };
        if ok {
            report.pass();
        } else {
            report.fail(FailureRecord {
                configuration: subset_fixture(curve, idx),
                observed_rank: rank,
                expected_rank: expected,
                flags: flags([extra, ("curveSeed", json!(curve.seed())), ("indices", json!(idx))]),
            });
        }
    });
    Ok(report.finish(started))
}

pub fn verify_disjointness(curve: &CurveSample, subset_budget: u64, seed: u64) -> Result<VerificationReport, CiError> {
    let sections = hyperplane_census(curve)?.sections;
    verify_disjointness_with(curve, &sections, subset_budget, seed)
}

/// No 9-subset of the curve's points contains two distinct hyperplanar 8-subsets.
pub fn verify_disjointness_with(
    curve: &CurveSample,
    sections: &[HyperplaneSection],
    subset_budget: u64,
    seed: u64,
) -> Result<VerificationReport, CiError> {
    check_curve(curve, 9)?;
    let started = Instant::now();
    let tables = Tables::new(curve);
    let forced = witnesses(curve, sections, 9);
    let mut rng = substream(seed, 10, 0);
    let mut report = VerificationReport::new("disjointness", curve.p(), seed);
    visit_subsets(curve.points().len(), 9, subset_budget, &forced, &mut rng, |idx| {
        let h = tables.hyperplanar_eights(idx);
        if h <= 1 {
            report.pass();
        } else {
            report.fail(FailureRecord {
                configuration: subset_fixture(curve, idx),
                observed_rank: tables.eval_rank(idx),
                expected_rank: 8,
                flags: flags([
                    ("hyperplanarSubsets", json!(h)),
                    ("curveSeed", json!(curve.seed())),
                    ("indices", json!(idx)),
                ]),
            });
        }
    });
    Ok(report.finish(started))
}

fn random_distinct(f: PrimeField, rng: &mut StreamRng, mut draw: impl FnMut(&mut StreamRng) -> Vec<ProjPoint<PrimeField>>) -> Configuration<PrimeField> {
    loop {
        if let Ok(cfg) = Configuration::new(f, 3, draw(rng)) {
            return cfg;
        }
    }
}

/// Three points spanning a plane of P^3.
fn random_plane(f: &PrimeField, rng: &mut StreamRng) -> [Vec<u32>; 3] {
    loop {
        let b: [ProjPoint<PrimeField>; 3] = std::array::from_fn(|_| random_point(f, 3, rng));
        let cfg = Configuration::new(*f, 3, b.to_vec());
        if cfg.is_ok_and(|c| c.span_rank() == 3) {
            return b.map(|p| p.coords().to_vec());
        }
    }
}

fn combine(f: &PrimeField, basis: &[Vec<u32>], weights: &[u32]) -> ProjPoint<PrimeField> {
    let mut v = vec![0u32; basis[0].len()];
    for (b, w) in basis.iter().zip(weights) {
        for (x, y) in v.iter_mut().zip(b) {
            *x = f.add(x, &f.mul(w, y));
        }
    }
    ProjPoint::new(f, v).expect("independent basis and nonzero weights")
}

/// Points `t` of P^1(F_p) as weight pairs; index `p` is the point at infinity.
fn p1_param(f: &PrimeField, t: usize) -> (u32, u32) {
    if t == f.modulus() as usize {
        (0, 1)
    } else {
        (1, t as u32)
    }
}

#[derive(Clone, Copy, Debug)]
enum Family {
    Random,
    Coplanar,
    SixOnConic,
    FourCollinear,
}

fn draw_family(f: PrimeField, family: Family, rng: &mut StreamRng) -> Configuration<PrimeField> {
    let p = f.modulus() as usize;
    random_distinct(f, rng, |rng| match family {
        Family::Random => (0..7).map(|_| random_point(&f, 3, rng)).collect(),
        Family::Coplanar => {
            let plane = random_plane(&f, rng);
            (0..7)
                .map(|_| loop {
                    let w: Vec<u32> = (0..3).map(|_| super::rng::random_elem(&f, rng)).collect();
                    if w.iter().any(|&x| x != 0) {
                        break combine(&f, &plane, &w);
                    }
                })
                .collect()
        }
        Family::SixOnConic => {
            let plane = random_plane(&f, rng);
            let mut pts: Vec<_> = random_subset(p + 1, 6, rng)
                .into_iter()
                .map(|t| {
                    let (s, u) = p1_param(&f, t);
                    // (s^2, s*u, u^2) on the conic x0*x2 = x1^2
                    combine(&f, &plane, &[f.mul(&s, &s), f.mul(&s, &u), f.mul(&u, &u)])
                })
                .collect();
            pts.push(random_point(&f, 3, rng));
            pts
        }
        Family::FourCollinear => {
            let [a, b, _] = random_plane(&f, rng);
            let line = [a, b];
            let mut pts: Vec<_> = random_subset(p + 1, 4, rng)
                .into_iter()
                .map(|t| {
                    let (s, u) = p1_param(&f, t);
                    combine(&f, &line, &[s, u])
                })
                .collect();
            pts.extend((0..3).map(|_| random_point(&f, 3, rng)));
            pts
        }
    })
}

fn class_flags(class: &SevenPointClass, family: Family) -> BTreeMap<String, Value> {
    let mut m = flags([("family", json!(format!("{family:?}")))]);
    if let Value::Object(o) = serde_json::to_value(class).expect("class serializes") {
        m.extend(o);
    }
    m
}

/// Classifier sweep over P^3(F_p): `random_trials` uniform 7-point sets and
/// `family_trials` sets from each degenerate family. A trial passes when the
/// classifier's degeneracy flags agree with the rank-7 test, and for a
/// constructed family when its own flag is raised.
pub fn verify_seven_point_classifier(p: u32, random_trials: u64, family_trials: u64, seed: u64) -> Result<VerificationReport, CiError> {
    let f = PrimeField::new(p)?;
    let started = Instant::now();
    let mut report = VerificationReport::new("lemma31", p, seed);
    let plan = [
        (Family::Random, 1u64, random_trials),
        (Family::Coplanar, 2, family_trials),
        (Family::SixOnConic, 3, family_trials),
        (Family::FourCollinear, 4, family_trials),
    ];
    for (family, salt, count) in plan {
        for i in 0..count {
            let mut rng = substream(seed, salt, i);
            let cfg = draw_family(f, family, &mut rng);
            let class = classify_seven_points(&cfg)?;
            let own_flag = match family {
                Family::Random => true,
                Family::Coplanar => class.coplanar7,
                Family::SixOnConic => class.six_on_conic,
                Family::FourCollinear => class.four_collinear,
            };
            if class.is_consistent() && own_flag {
                report.pass();
            } else {
                report.fail(FailureRecord {
                    configuration: ConfigurationFixture::from_prime(&cfg),
                    observed_rank: class.evaluation_rank,
                    expected_rank: if class.any_degeneracy() { 6 } else { 7 },
                    flags: class_flags(&class, family),
                });
            }
        }
    }
    Ok(report.finish(started))
}

/// Nets in P^3 through 7 random points whose base locus is 8 distinct smooth
/// rational points. Each such net counts as a trial: every 7 of the 8 points
/// have rank 7, all 8 have rank exactly 7 with a 3-dimensional kernel, and
/// replacing any input by the eighth point recovers that input. Other nets
/// are skipped. Stops after `trials` effective trials or `50 * trials + 100`
/// attempts.
pub fn verify_seven_always_independent_in_p3(trials: u64, p: u32, seed: u64) -> Result<VerificationReport, CiError> {
    let f = PrimeField::new(p)?;
    if p > HARD_MODULUS_CAP {
        return Err(CiError::ModulusCap { p, cap: HARD_MODULUS_CAP });
    }
    let started = Instant::now();
    let mut report = VerificationReport::new("lemma31-ci", p, seed);
    let max_attempts = trials.saturating_mul(50).saturating_add(100);
    let mut attempt = 0;
    while report.trials < trials && attempt < max_attempts {
        let mut rng = substream(seed, 5, attempt);
        attempt += 1;
        let Ok(seven) = Configuration::new(f, 3, (0..7).map(|_| random_point(&f, 3, &mut rng)).collect()) else {
            report.skip();
            continue;
        };
        let Some((eight, eighth)) = transversal_octet(&seven)? else {
            report.skip();
            continue;
        };
        let mut problems: Vec<String> = Vec::new();
        let mut idx: Vec<usize> = (0..7).collect();
        loop {
            if evaluation_matrix(&eight.subset(&idx), 2).rank() != 7 {
                problems.push(format!("7-subset {idx:?} has rank < 7"));
            }
            if !next_combination(&mut idx, 8) {
                break;
            }
        }
        let full_rank = evaluation_matrix(&eight, 2).rank();
        if full_rank != 7 {
            problems.push(format!("all 8 have rank {full_rank}"));
        }
        let kernel_dim = quadrics_through(&eight)?.len();
        if kernel_dim != 3 {
            problems.push(format!("kernel dimension {kernel_dim}"));
        }
        for j in 0..7 {
            let mut swapped = seven.points().to_vec();
            swapped[j] = eighth.clone();
            let back = Configuration::new(f, 3, swapped).map_err(CiError::from).and_then(|c| recover_eighth_point(&c));
            if back.as_ref() != Ok(&seven.points()[j]) {
                problems.push(format!("replacing input {j} did not recover it"));
            }
        }
        if problems.is_empty() {
            report.pass();
        } else {
            report.fail(FailureRecord {
                configuration: ConfigurationFixture::from_prime(&eight),
                observed_rank: full_rank,
                expected_rank: 7,
                flags: flags([("problems", json!(problems)), ("attempt", json!(attempt - 1))]),
            });
        }
    }
    Ok(report.finish(started))
}

type Octet = (Configuration<PrimeField>, ProjPoint<PrimeField>);

/// The 8 base points (inputs first) and the extra one, when the net through
/// `seven` cuts exactly 8 distinct smooth rational points.
fn transversal_octet(seven: &Configuration<PrimeField>) -> Result<Option<Octet>, CiError> {
    let forms = quadrics_through(seven)?;
    let Ok([a, b, c]) = <[_; 3]>::try_from(forms) else {
        return Ok(None);
    };
    let net = QuadricNet::new(*seven.field(), [a, b, c])?;
    let locus = base_locus_points(&net)?;
    if locus.len() != 8
        || !seven.points().iter().all(|pt| locus.contains(pt))
        || locus.iter().any(|pt| net.jacobian_at(pt.coords()).rank() != 3)
    {
        return Ok(None);
    }
    let eighth = locus.into_iter().find(|pt| !seven.points().contains(pt)).expect("one extra point");
    let mut pts = seven.points().to_vec();
    pts.push(eighth.clone());
    Ok(Some((Configuration::new(*seven.field(), 3, pts)?, eighth)))
}

/// Named verification claims accepted by [`run_claim`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    Prop22N7,
    Prop22N8,
    Prop22N9,
    Lemma31,
    Lemma31Ci,
    Disjointness,
    CrossCount,
}

impl Claim {
    pub const ALL: [Claim; 7] = [
        Claim::Prop22N7,
        Claim::Prop22N8,
        Claim::Prop22N9,
        Claim::Lemma31,
        Claim::Lemma31Ci,
        Claim::Disjointness,
        Claim::CrossCount,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Claim::Prop22N7 => "prop22-n7",
            Claim::Prop22N8 => "prop22-n8",
            Claim::Prop22N9 => "prop22-n9",
            Claim::Lemma31 => "lemma31",
            Claim::Lemma31Ci => "lemma31-ci",
            Claim::Disjointness => "disjointness",
            Claim::CrossCount => "cross-count",
        }
    }

    /// Whether the claim runs over sampled curves in P^4.
    pub fn uses_curves(self) -> bool {
        !matches!(self, Claim::Lemma31 | Claim::Lemma31Ci)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Claim {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown claim {s:?}"))
    }
}

/// Parameters shared by the verification sweeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepParams {
    pub p: u32,
    pub seed: u64,
    pub curves: u64,
    pub subset_budget: u64,
    /// Trials for the P^3 claims; `None` picks 10000 (lemma31) or 500 (lemma31-ci).
    pub trials: Option<u64>,
    /// Per-family trials for lemma31; `None` picks a tenth of `trials`.
    pub family_trials: Option<u64>,
    pub max_tries: u32,
    pub modulus_cap: u32,
}

impl Default for SweepParams {
    fn default() -> Self {
        Self {
            p: 31,
            seed: 0,
            curves: 20,
            subset_budget: 200_000,
            trials: None,
            family_trials: None,
            max_tries: 100,
            modulus_cap: super::DEFAULT_P4_MODULUS_CAP,
        }
    }
}

/// Accepted curves with seeds `seed, seed + 1, ...`.
pub fn sample_sweep_curves(params: &SweepParams) -> Result<Vec<CurveSample>, CiError> {
    (0..params.curves)
        .map(|i| {
            sample_smooth_canonical_curve_capped(
                params.p,
                params.seed.wrapping_add(i),
                params.max_tries,
                super::MIN_ACCEPTED_POINTS,
                params.modulus_cap,
            )
        })
        .collect()
}

pub fn run_claim(claim: Claim, params: &SweepParams) -> Result<VerificationReport, CiError> {
    let started = Instant::now();
    let mut report = VerificationReport::new(claim.as_str(), params.p, params.seed);
    match claim {
        Claim::Lemma31 => {
            let trials = params.trials.unwrap_or(10_000);
            let family = params.family_trials.unwrap_or((trials / 10).max(1));
            report.absorb(verify_seven_point_classifier(params.p, trials, family, params.seed)?);
        }
        Claim::Lemma31Ci => {
            let trials = params.trials.unwrap_or(500);
            report.absorb(verify_seven_always_independent_in_p3(trials, params.p, params.seed)?);
        }
        _ => {
            for curve in sample_sweep_curves(params)? {
                let budget = params.subset_budget;
                let s = curve.seed();
                match claim {
                    Claim::Prop22N7 => {
                        for n in 1..=7 {
                            report.absorb(verify_independence_dichotomy_with(&curve, &[], n, budget, s)?);
                        }
                    }
                    Claim::Prop22N8 | Claim::Prop22N9 => {
                        let n = if claim == Claim::Prop22N8 { 8 } else { 9 };
                        let sections = hyperplane_census(&curve)?.sections;
                        report.absorb(verify_independence_dichotomy_with(&curve, &sections, n, budget, s)?);
                    }
                    Claim::Disjointness => {
                        let sections = hyperplane_census(&curve)?.sections;
                        report.absorb(verify_disjointness_with(&curve, &sections, budget, s)?);
                    }
                    Claim::CrossCount => {
                        let census = hyperplane_census(&curve)?;
                        let cc = cross_count_with(&curve, &census, budget)?;
                        if !cc.exhaustive {
                            report.skip();
                        } else if cc.by_subsets == cc.by_hyperplanes && census.max_points_on_hyperplane <= 8 {
                            report.pass();
                        } else {
                            report.fail(FailureRecord {
                                configuration: ConfigurationFixture::from_prime(&curve.configuration()),
                                observed_rank: cc.by_subsets as usize,
                                expected_rank: cc.by_hyperplanes as usize,
                                flags: flags([
                                    ("curveSeed", json!(s)),
                                    ("maxPointsOnHyperplane", json!(census.max_points_on_hyperplane)),
                                    ("nonTransversal", json!(census.non_transversal)),
                                ]),
                            });
                        }
                    }
                    Claim::Lemma31 | Claim::Lemma31Ci => unreachable!(),
                }
            }
        }
    }
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cigeom::sample_smooth_canonical_curve;

    fn curve() -> CurveSample {
        sample_smooth_canonical_curve(13, 5, 50, 9).unwrap()
    }

    #[test]
    fn report_counts_and_payload() {
        let c = curve();
        let r = verify_independence_dichotomy(&c, 3, 1_000_000, 1).unwrap();
        let n = c.points().len() as u64;
        assert_eq!(r.trials, binomial(n, 3));
        assert_eq!(r.passes + r.failures.len() as u64, r.trials);
        let payload = r.payload();
        assert!(payload.get("runtimeMillis").is_none());
        let json = r.to_json();
        let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            ["claimId", "p", "seed", "trials", "passes", "skipped", "failures", "runtimeMillis"]
        );
    }

    #[test]
    fn sampled_runs_are_deterministic() {
        let c = curve();
        let a = verify_independence_dichotomy(&c, 9, 300, 4).unwrap();
        let b = verify_independence_dichotomy(&c, 9, 300, 4).unwrap();
        assert_eq!(a.payload(), b.payload());
    }

    #[test]
    fn rejects_bad_inputs() {
        let c = curve();
        assert!(matches!(verify_independence_dichotomy(&c, 10, 10, 0), Err(CiError::Precondition(_))));
        assert!(matches!(verify_independence_dichotomy(&c, 0, 10, 0), Err(CiError::Precondition(_))));
    }

    #[test]
    fn claim_names_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.as_str().parse::<Claim>().unwrap(), c);
        }
        assert!("prop22-n10".parse::<Claim>().is_err());
    }

    #[test]
    fn classifier_sweep_small() {
        let r = verify_seven_point_classifier(11, 200, 50, 3).unwrap();
        assert_eq!(r.trials, 350);
        assert!(r.is_clean(), "{:?}", r.failures.first());
    }

    #[test]
    fn p3_octets_small() {
        let r = verify_seven_always_independent_in_p3(10, 31, 2).unwrap();
        assert_eq!(r.trials, 10);
        assert!(r.is_clean(), "{:?}", r.failures.first());
    }
}
