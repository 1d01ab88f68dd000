use std::path::Path;

use serde_json::{json, Value};

use super::{CliError, Cli, Command, CurveArgs, TautCommon, TautOp, EXIT_FAILURES, EXIT_OK, EXIT_USAGE};
use crate::cigeom::{
    cross_count_with, hyperplane_census, quadrics_through, recover_eighth_point, run_claim, sample_smooth_canonical_curve_capped,
    sample_sweep_curves, CiError, SweepParams, DEFAULT_P4_MODULUS_CAP, HARD_MODULUS_CAP,
};
use crate::exactmath::{Field, MathError};
use crate::projgeom::{classify_seven_points, AnyConfiguration, Configuration, ConfigurationFixture, GeomError};
use crate::tautcalc::{
    evaluate, grr_pushforward_omega_power, porteous_class, rational_json, reduce_to_standard, relation_table, standard_inputs,
    todd_of_line_bundle, Assignments, GradedPoly, TautError,
};

/// What a successful command prints, the deterministic payload logged for
/// it, and its exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub payload: Value,
    pub exit: i32,
}

impl Outcome {
    fn json(v: Value, exit: i32) -> Self {
        Self {
            text: pretty(&v),
            payload: v,
            exit,
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::Math(m) => m.into(),
            e => CliError::precondition("input", e.to_string()),
        }
    }
}

impl From<MathError> for CliError {
    fn from(e: MathError) -> Self {
        match e {
            MathError::NotPrime(_) | MathError::ExcludedCharacteristic(_) => CliError::usage(e.to_string()),
            e => CliError::precondition("input", e.to_string()),
        }
    }
}

impl From<CiError> for CliError {
    fn from(e: CiError) -> Self {
        let details = match &e {
            CiError::Geom(g) => return g.clone().into(),
            CiError::Math(m) => return m.clone().into(),
            CiError::ModulusCap { .. } => return CliError::usage(e.to_string()),
            CiError::Dependent(class) => Some(json!({ "classification": class })),
            CiError::NonTransversal { locus } => Some(json!({ "baseLocus": locus })),
            _ => None,
        };
        let kind = match &e {
            CiError::Dependent(_) => "dependent",
            CiError::NonTransversal { .. } => "non-transversal",
            CiError::Exhausted { .. } => "exhausted",
            _ => "precondition",
        };
        CliError {
            details,
            ..CliError::precondition(kind, e.to_string())
        }
    }
}

impl From<TautError> for CliError {
    fn from(e: TautError) -> Self {
        match e {
            TautError::Parse { .. } | TautError::BadGenerator(_) => CliError {
                kind: "parse",
                exit: EXIT_USAGE,
                ..CliError::usage(e.to_string())
            },
            e => CliError::precondition("precondition", e.to_string()),
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::precondition("io", format!("{}: {e}", path.display())))
}

fn load_fixture(path: &Path) -> Result<AnyConfiguration, CliError> {
    Ok(ConfigurationFixture::from_json(&read_input(path)?)?.load()?)
}

/// An exact JSON value for a field element: integers bare, rationals as "a/b".
fn elem_json<F: Field>(f: &F, x: &F::Elem) -> Value {
    let s = f.format(x);
    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
}

fn quadrics_json<F: Field>(cfg: &Configuration<F>) -> Result<Value, CliError> {
    let f = cfg.field();
    let forms = quadrics_through(cfg)?;
    Ok(json!({
        "characteristic": f.characteristic(),
        "ambientDim": cfg.ambient_dim(),
        "points": cfg.len(),
        "dimension": forms.len(),
        "forms": forms.iter().map(|q| q.to_text(f)).collect::<Vec<_>>(),
        "coefficients": forms
            .iter()
            .map(|q| q.coeffs().iter().map(|c| elem_json(f, c)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    }))
}

fn sweep_params(c: &CurveArgs) -> SweepParams {
    SweepParams {
        p: c.p,
        seed: c.seed,
        curves: c.curves,
        subset_budget: c.subset_budget,
        trials: None,
        family_trials: None,
        max_tries: c.max_tries,
        modulus_cap: if c.allow_large_p { HARD_MODULUS_CAP } else { DEFAULT_P4_MODULUS_CAP },
    }
}

/// Runs a parsed and validated command. Never writes to any stream.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Classify(a) => {
            let class = match load_fixture(&a.input)? {
                AnyConfiguration::Prime(c) => classify_seven_points(&c)?,
                AnyConfiguration::Rational(c) => classify_seven_points(&c)?,
            };
            Ok(Outcome::json(json!(class), EXIT_OK))
        }
        Command::QuadricsThrough(a) => {
            let v = match load_fixture(&a.input)? {
                AnyConfiguration::Prime(c) => quadrics_json(&c)?,
                AnyConfiguration::Rational(c) => quadrics_json(&c)?,
            };
            Ok(Outcome::json(v, EXIT_OK))
        }
        Command::RecoverEighth(a) => match load_fixture(&a.input)? {
            AnyConfiguration::Prime(c) => {
                let pt = recover_eighth_point(&c)?;
                Ok(Outcome::json(
                    json!({ "characteristic": c.field().modulus(), "point": pt.coords() }),
                    EXIT_OK,
                ))
            }
            AnyConfiguration::Rational(_) => Err(CliError::precondition(
                "input",
                "eighth-point recovery enumerates F_p points; the fixture needs a prime characteristic",
            )),
        },
        Command::SampleCurve(a) => {
            let cap = if a.allow_large_p { HARD_MODULUS_CAP } else { DEFAULT_P4_MODULUS_CAP };
            let curve = sample_smooth_canonical_curve_capped(a.p, a.seed, a.max_tries, a.min_points, cap)?;
            Ok(Outcome::json(curve.to_json(), EXIT_OK))
        }
        Command::Verify(v) => {
            let params = SweepParams {
                trials: v.trials,
                family_trials: v.family_trials,
                ..sweep_params(&v.curve)
            };
            let report = run_claim(v.claim, &params)?;
            let exit = if report.is_clean() { EXIT_OK } else { EXIT_FAILURES };
            Ok(Outcome {
                text: pretty(&report.to_json()),
                payload: report.payload(),
                exit,
            })
        }
        Command::CrossCount(c) => cross_count(c),
        Command::Taut(t) => taut(&t.op),
        Command::Replay(a) => replay_log(&a.input),
    }
}

fn cross_count(c: &CurveArgs) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    let mut all_hold = true;
    for curve in sample_sweep_curves(&sweep_params(c))? {
        let census = hyperplane_census(&curve)?;
        let cc = cross_count_with(&curve, &census, c.subset_budget)?;
        let holds = cc.holds() && census.max_points_on_hyperplane <= 8;
        all_hold &= holds;
        rows.push(json!({
            "seed": curve.seed(),
            "points": curve.points().len(),
            "bySubsets": cc.by_subsets,
            "byHyperplanes": cc.by_hyperplanes,
            "exhaustive": cc.exhaustive,
            "maxPointsOnHyperplane": census.max_points_on_hyperplane,
            "nonTransversal": census.non_transversal,
            "holds": holds,
        }));
    }
    let v = json!({ "p": c.p, "seed": c.seed, "subsetBudget": c.subset_budget, "curves": rows, "allHold": all_hold });
    Ok(Outcome::json(v, if all_hold { EXIT_OK } else { EXIT_FAILURES }))
}

fn assignments(common: &TautCommon) -> Result<Assignments, CliError> {
    let mut a = Assignments::default();
    for spec in &common.set {
        a.set(spec, common.trunc)?;
    }
    Ok(a)
}

fn poly_outcome(p: &GradedPoly, as_json: bool) -> Outcome {
    let text = p.to_string();
    let payload = json!({ "expr": text, "terms": p.to_json() });
    Outcome {
        text: if as_json { pretty(&payload) } else { format!("{text}\n") },
        payload,
        exit: EXIT_OK,
    }
}

fn taut(op: &TautOp) -> Result<Outcome, CliError> {
    match op {
        TautOp::Porteous { n, a, b, common } => {
            let set = assignments(common)?;
            let (psi, lambda) = standard_inputs(*n, common.trunc);
            let class = porteous_class(&psi, &lambda, *a, *b, common.trunc)?;
            Ok(poly_outcome(&set.apply(&class), common.json))
        }
        TautOp::Expand {
            expr,
            relations,
            index,
            common,
        } => {
            let set = assignments(common)?;
            let mut p = evaluate(expr, common.trunc)?;
            if *relations {
                let indices: Vec<u32> = match index {
                    Some(i) => vec![*i],
                    None => {
                        let mut v: Vec<u32> = p.generators().iter().map(|g| g.index()).filter(|&i| i > 0).collect();
                        v.dedup();
                        v
                    }
                };
                for i in indices {
                    p = reduce_to_standard(&p, i);
                }
            }
            Ok(poly_outcome(&set.apply(&p), common.json))
        }
        TautOp::Grr { k, g, common } => {
            let set = assignments(common)?;
            let ch: Vec<GradedPoly> = grr_pushforward_omega_power(*k, *g, common.trunc)?
                .iter()
                .map(|c| set.apply(c))
                .collect();
            let payload = json!({
                "k": k,
                "genus": g,
                "ch": ch.iter().map(|c| json!({ "expr": c.to_string(), "terms": c.to_json() })).collect::<Vec<_>>(),
            });
            let text = if common.json {
                pretty(&payload)
            } else {
                ch.iter().enumerate().map(|(m, c)| format!("ch{m} = {c}\n")).collect()
            };
            Ok(Outcome { text, payload, exit: EXIT_OK })
        }
        TautOp::Todd { sign, order, common } => {
            let series = todd_of_line_bundle(*sign, *order, 0)?;
            let coeffs: Vec<Value> = series.coeffs().iter().map(rational_json).collect();
            let text = series_text(&series.coeffs().iter().map(crate::exactmath::format_rational).collect::<Vec<_>>());
            let payload = json!({ "sign": sign, "order": order, "series": text, "coefficients": coeffs });
            Ok(Outcome {
                text: if common.json { pretty(&payload) } else { format!("{text}\n") },
                payload,
                exit: EXIT_OK,
            })
        }
        TautOp::Relations { index, common } => {
            let set = assignments(common)?;
            let rows: Vec<(String, String, GradedPoly)> = relation_table(*index, common.trunc)
                .into_iter()
                .map(|r| (r.name.to_string(), r.lhs.to_string(), set.apply(&r.rhs)))
                .collect();
            let payload = Value::Array(
                rows.iter()
                    .map(|(n, l, r)| json!({ "name": n, "lhs": l, "rhs": r.to_string(), "terms": r.to_json() }))
                    .collect(),
            );
            let text = if common.json {
                pretty(&payload)
            } else {
                rows.iter().map(|(n, l, r)| format!("{n}: {l} = {r}\n")).collect()
            };
            Ok(Outcome { text, payload, exit: EXIT_OK })
        }
    }
}

/// `c0 + c1*K + c2*K^2 + ...` with zero terms dropped.
fn series_text(coeffs: &[String]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().filter(|(_, c)| c.as_str() != "0") {
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, c.as_str()),
        };
        if out.is_empty() {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (k, mag) {
            (0, m) => out.push_str(m),
            (1, "1") => out.push('K'),
            (1, m) => out.push_str(&format!("{m}*K")),
            (_, "1") => out.push_str(&format!("K^{k}")),
            (_, m) => out.push_str(&format!("{m}*K^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn replay_log(path: &Path) -> Result<Outcome, CliError> {
    let (records, bad_lines) = super::read_run_log(path).map_err(|e| CliError::precondition("io", format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    let mut all_match = true;
    for (line, record) in &records {
        if record.command.first().map(String::as_str) == Some("replay") {
            continue;
        }
        let matches = super::replay(record).unwrap_or(false);
        all_match &= matches;
        rows.push(json!({ "line": line, "command": record.command, "matches": matches }));
    }
    let v = json!({ "replayed": rows.len(), "malformedLines": bad_lines, "records": rows, "allMatch": all_match });
    Ok(Outcome::json(v, if all_match { EXIT_OK } else { EXIT_FAILURES }))
}
