use std::collections::BTreeMap;

use psrange::admissibility::{combine, historical_compare, search_pairs, RangeReport};
use psrange::bounds::derive_e_terms;
use psrange::exponent::{apply_word, reference_pair, ProcessWord};
use psrange::expsum::trilinear::{envelope_ratio_with_budget, TrilinearSpec};
use psrange::expsum::{default_suite, kusmin_landau_check, spacing_bound_ratio, spacing_count_naive, spacing_count_sorted, verify_vaaler, KlOutcome};
use psrange::primes::{is_prime, membership, pi_c_with, psi_difference_sum_with, CountOptions};
use psrange::{Error, ExponentPair, Rational, Result};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::{Command, PairArgs, Suite, VerifyCommand};

/// Longest word length `search` accepts; the word count doubles per letter.
pub const SEARCH_MAX_LEN: usize = 20;

const DECIMALS: usize = 6;

pub struct Run {
    pub params: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub result: Value,
    /// Flat rows for CSV output; every cell also appears in `result`.
    pub rows: Vec<Map<String, Value>>,
}

impl Run {
    fn new(params: BTreeMap<String, String>) -> Self {
        Run { params, seed: None, result: Value::Null, rows: Vec::new() }
    }

    /// Result made of rows only: a single object for one row, else an array.
    fn tabular(mut self, rows: Vec<Map<String, Value>>, always_array: bool) -> Self {
        self.result = if rows.len() == 1 && !always_array {
            Value::Object(rows[0].clone())
        } else {
            Value::Array(rows.iter().cloned().map(Value::Object).collect())
        };
        self.rows = rows;
        self
    }
}

fn to_row<T: Serialize>(value: &T) -> Result<Map<String, Value>> {
    match serde_json::to_value(value) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(other) => Err(Error::Internal(format!("row serialized to {other}"))),
        Err(e) => Err(Error::Internal(e.to_string())),
    }
}

fn params<const N: usize>(items: [(&str, String); N]) -> BTreeMap<String, String> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn resolve_pair(args: &PairArgs) -> Result<ExponentPair> {
    match (&args.kappa, &args.lambda) {
        (Some(k), Some(l)) => ExponentPair::validated(k.clone(), l.clone()),
        _ => Ok(reference_pair().pair),
    }
}

fn pair_params(pair: &ExponentPair) -> [(&'static str, String); 2] {
    [("kappa", pair.kappa.to_string()), ("lambda", pair.lambda.to_string())]
}

pub fn run(command: &Command) -> Result<Run> {
    match command {
        Command::DeriveRange { pair, .. } => derive_range(&resolve_pair(pair)?),
        Command::Search { max_len, .. } => search(*max_len),
        Command::History { pair, .. } => history(&resolve_pair(pair)?),
        Command::Count { c, x, budget, output } => {
            let opts = CountOptions { budget: *budget, ..Default::default() };
            let mut run = Run::new(params([
                ("c", c.to_string()),
                ("x", join(x)),
                ("budget", budget.to_string()),
                ("segment_width", opts.segment_width.to_string()),
                ("threads", output.threads.map_or("auto".into(), |t| t.to_string())),
            ]));
            let rows = x
                .iter()
                .map(|&x| {
                    let r = pi_c_with(x, *c, opts)?;
                    to_row(&json!({
                        "x": r.x, "c": r.c, "count": r.count,
                        "main_term": r.main_term, "ratio": r.ratio,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            run = run.tabular(rows, false);
            Ok(run)
        }
        Command::Membership { pr, c, .. } => {
            let run = Run::new(params([("p", pr.to_string()), ("c", c.to_string())]));
            let row = to_row(&json!({
                "p": pr, "c": c,
                "member": membership(*pr, *c)?,
                "is_prime": is_prime(*pr),
            }))?;
            Ok(run.tabular(vec![row], false))
        }
        Command::PsiSum { c, x, budget, .. } => {
            let run = Run::new(params([("c", c.to_string()), ("x", x.to_string()), ("budget", budget.to_string())]));
            let r = psi_difference_sum_with(*x, *c, *budget)?;
            Ok(run.tabular(vec![to_row(&r)?], false))
        }
        Command::Pairs { word, .. } => {
            let run = Run::new(params([("word", word.clone())]));
            let w = ProcessWord::parse(word)?;
            let pair = apply_word(word)?;
            let row = to_row(&json!({
                "word": w.to_string(),
                "kappa": pair.kappa,
                "lambda": pair.lambda,
                "kappa_decimal": pair.kappa.decimal(DECIMALS),
                "lambda_decimal": pair.lambda.decimal(DECIMALS),
                "valid": pair.is_valid(),
            }))?;
            Ok(run.tabular(vec![row], false))
        }
        Command::Verify { check } => verify(check),
    }
}

fn range_json(report: &RangeReport) -> Value {
    let constraints: Vec<Value> = report
        .all_constraints
        .iter()
        .map(|c| {
            json!({
                "source_label": c.source_label,
                "direction": c.direction,
                "threshold": c.threshold,
                "decimal": c.threshold.decimal(DECIMALS),
            })
        })
        .collect();
    json!({
        "pair": report.pair,
        "gamma_min": report.gamma_min,
        "gamma_min_decimal": report.gamma_min.decimal(DECIMALS),
        "c_max": report.c_max,
        "c_max_decimal": report.c_max.decimal(DECIMALS),
        "binding_source": report.binding_source,
        "constraints": constraints,
        "always_satisfied": report.always_satisfied,
    })
}

fn derive_range(pair: &ExponentPair) -> Result<Run> {
    let mut run = Run::new(params(pair_params(pair)));
    let report = combine(pair)?;
    let mut result = range_json(&report);
    result["e_terms"] = serde_json::to_value(derive_e_terms(pair)?).map_err(|e| Error::Internal(e.to_string()))?;

    let summary = |kind: &str, value: &Rational, direction: &str| {
        to_row(&json!({
            "kind": kind,
            "label": report.binding_source,
            "direction": direction,
            "value": value,
            "decimal": value.decimal(DECIMALS),
        }))
    };
    let mut rows = vec![summary("gamma_min", &report.gamma_min, "greater")?, summary("c_max", &report.c_max, "less")?];
    for c in &report.all_constraints {
        rows.push(to_row(&json!({
            "kind": "constraint",
            "label": c.source_label,
            "direction": c.direction,
            "value": c.threshold,
            "decimal": c.threshold.decimal(DECIMALS),
        }))?);
    }
    for label in &report.always_satisfied {
        rows.push(to_row(&json!({
            "kind": "always_satisfied", "label": label,
            "direction": Value::Null, "value": Value::Null, "decimal": Value::Null,
        }))?);
    }
    run.result = result;
    run.rows = rows;
    Ok(run)
}

fn search(max_len: usize) -> Result<Run> {
    if max_len > SEARCH_MAX_LEN {
        return Err(Error::InvalidArgument(format!("max-len must be at most {SEARCH_MAX_LEN}, got {max_len}")));
    }
    let run = Run::new(params([("max_len", max_len.to_string())]));
    let s = search_pairs(max_len)?;
    let row = to_row(&json!({
        "word": s.word,
        "kappa": s.pair.kappa,
        "lambda": s.pair.lambda,
        "gamma_min": s.report.gamma_min,
        "c_max": s.report.c_max,
        "c_max_decimal": s.report.c_max.decimal(DECIMALS),
        "binding_source": s.report.binding_source,
        "candidates": s.candidates,
    }))?;
    Ok(run.tabular(vec![row], false))
}

fn history(pair: &ExponentPair) -> Result<Run> {
    let run = Run::new(params(pair_params(pair)));
    let report = combine(pair)?;
    let rows = historical_compare(&report).iter().map(to_row).collect::<Result<Vec<_>>>()?;
    Ok(run.tabular(rows, true))
}

fn verify(check: &VerifyCommand) -> Result<Run> {
    match check {
        VerifyCommand::Vaaler { h, grid, .. } => {
            if *grid < 100 {
                return Err(Error::InvalidArgument(format!("grid must be at least 100, got {grid}")));
            }
            let run = Run::new(params([("H", join(h)), ("grid", grid.to_string())]));
            let rows = h.iter().map(|&h| to_row(&verify_vaaler(h, *grid))).collect::<Result<Vec<_>>>()?;
            Ok(run.tabular(rows, false))
        }
        VerifyCommand::Kl { suite, .. } => {
            let Suite::Default = suite;
            let run = Run::new(params([("suite", "default".into())]));
            let rows = default_suite()
                .iter()
                .map(|case| {
                    let mut row = to_row(case)?;
                    let (status, sum_abs, lambda, bound, pass, reason) = match kusmin_landau_check(case) {
                        KlOutcome::Checked { sum_abs, lambda, bound, pass } => {
                            ("checked", json!(sum_abs), json!(lambda), json!(bound), json!(pass), Value::Null)
                        }
                        KlOutcome::Skipped { reason } => ("skipped", Value::Null, Value::Null, Value::Null, Value::Null, json!(reason)),
                    };
                    row.insert("status".into(), json!(status));
                    row.insert("sum_abs".into(), sum_abs);
                    row.insert("lambda".into(), lambda);
                    row.insert("bound".into(), bound);
                    row.insert("pass".into(), pass);
                    row.insert("reason".into(), reason);
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(run.tabular(rows, true))
        }
        VerifyCommand::Spacing { m, n, alpha, beta, delta, .. } => {
            let run = Run::new(params([
                ("M", join(m)),
                ("N", join(n)),
                ("alpha", join(alpha)),
                ("beta", join(beta)),
                ("delta", join(delta)),
            ]));
            let mut rows = Vec::new();
            for &mm in m {
                for &nn in n {
                    for a in alpha {
                        for b in beta {
                            for d in delta {
                                let (af, bf, df) = (a.to_f64(), b.to_f64(), d.to_f64());
                                rows.push(to_row(&json!({
                                    "M": mm, "N": nn, "alpha": a, "beta": b, "delta": d,
                                    "count_naive": spacing_count_naive(mm, nn, af, bf, df)?,
                                    "count_sorted": spacing_count_sorted(mm, nn, af, bf, df)?,
                                    "ratio": spacing_bound_ratio(mm, nn, af, bf, df)?,
                                }))?);
                            }
                        }
                    }
                }
            }
            Ok(run.tabular(rows, false))
        }
        VerifyCommand::T2 { x, h, m, n, alpha, beta, gamma, seed, wu_compare, budget, pair, .. } => {
            let pair = resolve_pair(pair)?;
            let [kp, lp] = pair_params(&pair);
            let mut run = Run::new(params([
                ("X", join(x)),
                ("H", join(h)),
                ("M", join(m)),
                ("N", join(n)),
                ("alpha", alpha.to_string()),
                ("beta", beta.to_string()),
                ("gamma", gamma.to_string()),
                ("wu_compare", wu_compare.to_string()),
                ("budget", budget.to_string()),
                ("rng", "ChaCha8".into()),
                kp,
                lp,
            ]));
            run.seed = Some(*seed);
            let mut rows = Vec::new();
            for xx in x {
                for &hh in h {
                    for &mm in m {
                        for &nn in n {
                            let spec = TrilinearSpec::random(xx.to_f64(), hh, mm, nn, alpha.to_f64(), beta.to_f64(), gamma.to_f64(), *seed);
                            let r = envelope_ratio_with_budget(&spec, &pair, *budget)?;
                            let mut row = to_row(&json!({
                                "X": xx, "H": hh, "M": mm, "N": nn,
                                "alpha": alpha, "beta": beta, "gamma": gamma, "seed": seed,
                                "t_abs": r.t_abs, "envelope": r.envelope, "ratio": r.ratio,
                                "log_factor": r.log_factor, "near_violation": r.near_violation,
                            }))?;
                            if *wu_compare {
                                let wu = r.wu.as_ref();
                                row.insert("wu_k".into(), json!(wu.map(|w| w.k)));
                                row.insert("wu_envelope".into(), json!(wu.map(|w| w.envelope)));
                                row.insert("wu_ratio".into(), json!(wu.map(|w| w.ratio)));
                            }
                            rows.push(row);
                        }
                    }
                }
            }
            Ok(run.tabular(rows, false))
        }
    }
}
