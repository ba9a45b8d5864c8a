//! Command execution behind the CLI: parse inputs, dispatch to the
//! computational modules, and render deterministic CSV/JSON reports.
//!
//! Exit codes: 0 for success, 2 when a condition check or verification
//! reports "fail" (data, not an error), 1 for errors (mapped by the binary).
//! Identical configs and seeds produce byte-identical output.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::folner::{
    check_condition, folner_search, free_expansion_check, ratio_table, ratio_to_f64, ConditionId,
    ConditionParams, ConditionReport, Rat, RatioRow, SearchBudget, SearchStrategy,
};
use crate::groups::{ball, element_to_text, parse_group_doc, FiniteSubset, GroupSpec};
use crate::multinorm::{
    growth, multinorm_lattice_11, multinorm_pq, oracle, summing_constants, ClosedForm,
    GrowthMode, Mat, SolverParams, SpaceSpec, VectorTuple,
};
use crate::rearrange::{
    build_partition, instance_from_group, min_separation_bruteforce, verify_partition,
    RearrangementInstance, RearrangementResult,
};
use crate::{Error, Result};

/// Version tag stamped on every JSON document.
pub const SCHEMA: &str = "folner-lab/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "csv" => OutputFormat::Csv,
            "json" => OutputFormat::Json,
            _ => return Err(Error::Parse(format!("unknown format {s:?} (expected csv|json)"))),
        })
    }
}

/// Resource limits shared across subcommands.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub ball_cap: usize,
    pub growth: u64,
    pub search: SearchBudget,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            ball_cap: crate::groups::DEFAULT_BALL_CAP,
            growth: growth::DEFAULT_GROWTH_BUDGET,
            search: SearchBudget::default(),
        }
    }
}

impl Budgets {
    fn validate(&self) -> Result<()> {
        if self.ball_cap == 0
            || self.growth == 0
            || self.search.max_radius == 0
            || self.search.max_box_side == 0
            || self.search.max_steps == 0
            || self.search.set_cap == 0
        {
            return Err(Error::InvalidParams("budgets must be positive".into()));
        }
        Ok(())
    }
}

/// One fully described run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub format: OutputFormat,
    /// Output file (or directory for `examples`); stdout when absent.
    pub out: Option<PathBuf>,
    pub budgets: Budgets,
    pub command: Command,
}

#[derive(Clone, Debug)]
pub enum Command {
    Folner {
        /// Inline JSON or a path to a group/sets document.
        group: String,
        condition: String,
        epsilon: String,
        nmin: Option<u64>,
        /// Extra named sets to merge into the document's sets.
        sets: Option<String>,
        /// When set, search for a witness C instead of tabulating named sets.
        search: Option<String>,
    },
    Multinorm {
        space: Option<String>,
        tuple: String,
        p: f64,
        q: f64,
        closed_form: String,
        restarts: Option<usize>,
        oracle: bool,
    },
    Summing {
        matrix: String,
        q: f64,
        p: f64,
        n_max: usize,
        target_exponent: f64,
        oracle: bool,
    },
    Rearrange {
        instance: Option<String>,
        group: Option<String>,
        e_set: Option<String>,
        s_set: Option<String>,
        verify_only: bool,
        result: Option<String>,
    },
    Examples,
}

/// What a run produced: the rendered primary output and the exit status.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub stdout: String,
}

/// Treats arguments starting with '{' or '[' as inline JSON, anything else as
/// a path.
pub fn load_input(arg: &str) -> Result<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Ok(arg.to_string())
    } else {
        Ok(fs::read_to_string(arg)?)
    }
}

pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    config.budgets.validate()?;
    let (rendered, exit_code) = match &config.command {
        Command::Folner { group, condition, epsilon, nmin, sets, search } => run_folner(
            config,
            group,
            condition,
            epsilon,
            *nmin,
            sets.as_deref(),
            search.as_deref(),
        )?,
        Command::Multinorm { space, tuple, p, q, closed_form, restarts, oracle } => {
            run_multinorm(config, space.as_deref(), tuple, *p, *q, closed_form, *restarts, *oracle)?
        }
        Command::Summing { matrix, q, p, n_max, target_exponent, oracle } => {
            run_summing(config, matrix, *q, *p, *n_max, *target_exponent, *oracle)?
        }
        Command::Rearrange { instance, group, e_set, s_set, verify_only, result } => run_rearrange(
            config,
            instance.as_deref(),
            group.as_deref(),
            e_set.as_deref(),
            s_set.as_deref(),
            *verify_only,
            result.as_deref(),
        )?,
        Command::Examples => return run_examples(config),
    };
    if let Some(path) = &config.out {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent)?;
            }
        }
        fs::write(path, rendered.as_bytes())?;
    }
    Ok(RunOutcome { exit_code, stdout: rendered })
}

fn solver_params(config: &RunConfig, restarts: Option<usize>) -> Result<SolverParams> {
    let seed = config.seed.ok_or_else(|| {
        Error::SeedRequired("the ascent solver is a seeded heuristic; pass --seed".into())
    })?;
    let mut params = SolverParams::seeded(seed);
    if let Some(r) = restarts {
        params.restarts = r;
    }
    Ok(params)
}

fn rat_json(r: Rat) -> Value {
    json!({"num": *r.numer(), "den": *r.denom(), "decimal": ratio_to_f64(r)})
}

// ---------------------------------------------------------------------------
// folner

#[allow(clippy::too_many_arguments)]
fn run_folner(
    config: &RunConfig,
    group_arg: &str,
    condition: &str,
    epsilon: &str,
    nmin: Option<u64>,
    sets_arg: Option<&str>,
    search: Option<&str>,
) -> Result<(String, i32)> {
    let mut doc = parse_group_doc(&load_input(group_arg)?)?;
    if let Some(arg) = sets_arg {
        let extra: Value = serde_json::from_str(&load_input(arg)?)?;
        let obj = extra
            .get("sets")
            .unwrap_or(&extra)
            .as_object()
            .ok_or_else(|| Error::Parse("--sets must be an object of named sets".into()))?;
        for (name, arr) in obj {
            let arr = arr
                .as_array()
                .ok_or_else(|| Error::Parse(format!("set {name:?} must be an array")))?;
            let elems = arr
                .iter()
                .map(|e| crate::groups::element_from_json(&doc.spec, e))
                .collect::<Result<Vec<_>>>()?;
            doc.sets.insert(name.clone(), FiniteSubset::new(doc.spec.clone(), elems)?);
        }
    }
    let condition = ConditionId::parse(condition)?;
    let epsilon = crate::folner::parse_ratio(epsilon)?;
    let params = ConditionParams::new(condition, epsilon, nmin)?;
    let f = doc
        .sets
        .get("F")
        .ok_or_else(|| Error::InvalidParams("the sets document must name a set \"F\"".into()))?
        .clone();

    let (rows, passed_all) = match search {
        Some(strategy) => {
            let strategy = SearchStrategy::parse(strategy)?;
            let outcome =
                folner_search(&doc.spec, &f, &params, strategy, &config.budgets.search)?;
            let Some(best) = outcome.best else {
                return Err(Error::InvalidParams("search produced no candidates".into()));
            };
            let row = report_to_row(&doc.spec, &params, "search:best", &best);
            (vec![(row, best)], outcome.passed)
        }
        None => {
            let family: Vec<(String, FiniteSubset)> = doc
                .sets
                .iter()
                .filter(|(name, _)| name.as_str() != "F")
                .map(|(name, set)| (name.clone(), set.clone()))
                .collect();
            if family.is_empty() {
                return Err(Error::InvalidParams(
                    "no candidate sets: name at least one set other than \"F\" or use --search"
                        .into(),
                ));
            }
            let table = ratio_table(&f, &family, &params)?;
            let mut rows = Vec::new();
            for ((_, c), row) in family.iter().zip(table) {
                let report = check_condition(&params, &f, c)?;
                rows.push((row, report));
            }
            let ok = rows.iter().all(|(r, _)| r.pass);
            (rows, ok)
        }
    };

    let rendered = match config.format {
        OutputFormat::Csv => folner_csv(rows.iter().map(|(r, _)| r))?,
        OutputFormat::Json => {
            let rows: Vec<Value> = rows.iter().map(|(r, _)| row_json(r)).collect();
            pretty(&json!({"schema": SCHEMA, "rows": rows}))
        }
    };
    Ok((rendered, if passed_all { 0 } else { 2 }))
}

fn report_to_row(
    spec: &GroupSpec,
    params: &ConditionParams,
    c_id: &str,
    report: &ConditionReport,
) -> RatioRow {
    let witness = report
        .worst_witness
        .elements()
        .iter()
        .map(|g| element_to_text(spec, g))
        .collect::<Vec<_>>()
        .join(";");
    RatioRow {
        group: spec.to_string(),
        condition: params.condition,
        epsilon: params.epsilon,
        n_min: params.n_threshold,
        c_id: c_id.to_string(),
        c_card: report.c_set.card(),
        worst_ratio: report.worst_ratio,
        witness,
        pass: report.pass,
        exhaustive: report.exhaustive,
    }
}

fn folner_csv<'a>(rows: impl Iterator<Item = &'a RatioRow>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "group",
        "condition",
        "epsilon",
        "n_min",
        "C_id",
        "|C|",
        "worst_ratio_num",
        "worst_ratio_den",
        "witness_E",
        "pass",
        "exhaustive",
        "worst_ratio_decimal",
    ])
    .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.group.clone(),
            r.condition.to_string(),
            format!("{}/{}", r.epsilon.numer(), r.epsilon.denom()),
            r.n_min.map(|n| n.to_string()).unwrap_or_default(),
            r.c_id.clone(),
            r.c_card.to_string(),
            r.worst_ratio.numer().to_string(),
            r.worst_ratio.denom().to_string(),
            r.witness.clone(),
            r.pass.to_string(),
            r.exhaustive.to_string(),
            format!("{:.9}", ratio_to_f64(r.worst_ratio)),
        ])
        .map_err(csv_err)?;
    }
    finish_csv(w)
}

fn row_json(r: &RatioRow) -> Value {
    json!({
        "group": r.group,
        "condition": r.condition.to_string(),
        "epsilon": rat_json(r.epsilon),
        "n_min": r.n_min,
        "c_id": r.c_id,
        "c_card": r.c_card,
        "worst_ratio": rat_json(r.worst_ratio),
        "witness_E": r.witness,
        "pass": r.pass,
        "exhaustive": r.exhaustive,
    })
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(format!("csv: {e}"))
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Parse(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(format!("csv utf8: {e}")))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("valid json value");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// multinorm

#[allow(clippy::too_many_arguments)]
fn run_multinorm(
    config: &RunConfig,
    space: Option<&str>,
    tuple_arg: &str,
    p: f64,
    q: f64,
    closed_form: &str,
    restarts: Option<usize>,
    oracle_on: bool,
) -> Result<(String, i32)> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(&load_input(tuple_arg)?)?;
    let dim = rows.first().map(Vec::len).unwrap_or(0);
    let space = match space {
        Some(s) => parse_space(s)?,
        None => SpaceSpec::l1(dim.max(1)),
    };
    let xs = VectorTuple::new(space, rows)?;
    let closed_form = ClosedForm::parse(closed_form)?;
    let needs_solver = matches!(closed_form, ClosedForm::None)
        || (matches!(closed_form, ClosedForm::Auto) && q != 1.0);
    let params = if needs_solver {
        solver_params(config, restarts)?
    } else {
        SolverParams { restarts: restarts.unwrap_or(16), ..SolverParams::seeded(0) }
    };
    let result = multinorm_pq(&xs, p, q, &params, closed_form)?;
    let oracle_value = if oracle_on { Some(oracle::multinorm_oracle(&xs, p, q)?) } else { None };
    let rendered = match config.format {
        OutputFormat::Json => pretty(&json!({
            "schema": SCHEMA,
            "space": format!("l1:{}", xs.dim()),
            "n": xs.n(),
            "p": p,
            "q": q,
            "value": result.value,
            "certified_lower": result.certified_lower,
            "oracle_value": oracle_value,
            "iterations": result.iterations,
            "converged": result.converged,
            "method": result.method,
        })),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "p",
                "q",
                "value",
                "certified_lower",
                "oracle_value",
                "iterations",
                "converged",
                "method",
            ])
            .map_err(csv_err)?;
            w.write_record([
                format!("{p}"),
                format!("{q}"),
                format!("{:.12}", result.value),
                format!("{:.12}", result.certified_lower),
                oracle_value.map(|v| format!("{v:.12}")).unwrap_or_default(),
                result.iterations.to_string(),
                result.converged.to_string(),
                result.method.clone(),
            ])
            .map_err(csv_err)?;
            finish_csv(w)?
        }
    };
    Ok((rendered, 0))
}

fn parse_space(s: &str) -> Result<SpaceSpec> {
    let (name, dim) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("space {s:?} should look like l1:3")))?;
    let dim: usize =
        dim.parse().map_err(|_| Error::Parse(format!("bad dimension in space {s:?}")))?;
    match name {
        "l1" => SpaceSpec::new(dim, 1.0),
        "l2" => SpaceSpec::new(dim, 2.0),
        "linf" => SpaceSpec::new(dim, f64::INFINITY),
        _ => Err(Error::UnsupportedSpace(format!(
            "space {name:?} (expected l1|l2|linf)"
        ))),
    }
}

// ---------------------------------------------------------------------------
// summing

fn run_summing(
    config: &RunConfig,
    matrix_arg: &str,
    q: f64,
    p: f64,
    n_max: usize,
    target_exponent: f64,
    oracle_on: bool,
) -> Result<(String, i32)> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(&load_input(matrix_arg)?)?;
    let t = Mat::from_rows(rows)?;
    let params = solver_params(config, None)?;
    let values = summing_constants(&t, target_exponent, q, p, n_max, &params)?;
    let ratios: Vec<f64> = values
        .iter()
        .enumerate()
        .map(|(i, v)| v.value / ((i + 1) as f64).powf(1.0 / q))
        .collect();
    let oracle_values: Option<Vec<f64>> = if oracle_on {
        let mut out = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            out.push(oracle::summing_oracle(&t, target_exponent, q, p, n)?);
        }
        Some(out)
    } else {
        None
    };
    let rendered = match config.format {
        OutputFormat::Json => pretty(&json!({
            "schema": SCHEMA,
            "q": q,
            "p": p,
            "target_exponent": target_exponent,
            "n_max": n_max,
            "values": values.iter().map(|v| v.value).collect::<Vec<_>>(),
            "ratios": ratios,
            "oracle_values": oracle_values,
            "converged": values.iter().all(|v| v.converged),
        })),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "value", "ratio", "oracle_value", "iterations", "converged"])
                .map_err(csv_err)?;
            for (i, v) in values.iter().enumerate() {
                w.write_record([
                    (i + 1).to_string(),
                    format!("{:.12}", v.value),
                    format!("{:.12}", ratios[i]),
                    oracle_values
                        .as_ref()
                        .map(|o| format!("{:.12}", o[i]))
                        .unwrap_or_default(),
                    v.iterations.to_string(),
                    v.converged.to_string(),
                ])
                .map_err(csv_err)?;
            }
            finish_csv(w)?
        }
    };
    Ok((rendered, 0))
}

// ---------------------------------------------------------------------------
// rearrange

fn run_rearrange(
    config: &RunConfig,
    instance_arg: Option<&str>,
    group_arg: Option<&str>,
    e_set: Option<&str>,
    s_set: Option<&str>,
    verify_only: bool,
    result_arg: Option<&str>,
) -> Result<(String, i32)> {
    if config.format == OutputFormat::Csv {
        return Err(Error::InvalidParams("rearrange reports are JSON only".into()));
    }
    let instance = match (instance_arg, group_arg) {
        (Some(arg), None) => RearrangementInstance::from_json(&load_input(arg)?)?,
        (None, Some(group)) => {
            let doc = parse_group_doc(&load_input(group)?)?;
            // A set spec is either a name from the document or an inline
            // JSON array of elements.
            let resolve = |flag: &str, arg: Option<&str>| -> Result<FiniteSubset> {
                let arg = arg.ok_or_else(|| {
                    Error::InvalidParams(format!("--from-group needs --{flag} <set>"))
                })?;
                if arg.trim_start().starts_with('[') {
                    let arr: Value = serde_json::from_str(arg)?;
                    let elems = arr
                        .as_array()
                        .ok_or_else(|| Error::Parse(format!("--{flag} must be an array")))?
                        .iter()
                        .map(|e| crate::groups::element_from_json(&doc.spec, e))
                        .collect::<Result<Vec<_>>>()?;
                    FiniteSubset::new(doc.spec.clone(), elems)
                } else {
                    doc.sets
                        .get(arg)
                        .cloned()
                        .ok_or_else(|| Error::InvalidParams(format!("no set named {arg:?}")))
                }
            };
            let e = resolve("E", e_set)?;
            let s = resolve("S", s_set)?;
            instance_from_group(e.elements(), &s)?
        }
        _ => {
            return Err(Error::InvalidParams(
                "pass exactly one of --instance or --from-group".into(),
            ))
        }
    };

    let (result, verify) = if verify_only {
        let arg = result_arg.ok_or_else(|| {
            Error::InvalidParams("--verify-only needs --result <json>".into())
        })?;
        let result: RearrangementResult = serde_json::from_str(&load_input(arg)?)?;
        let verify = verify_partition(&instance, &result);
        (result, verify)
    } else {
        let result = build_partition(&instance)?;
        let verify = verify_partition(&instance, &result);
        (result, verify)
    };

    let rendered = pretty(&json!({
        "schema": SCHEMA,
        "n": instance.n(),
        "m": instance.m(),
        "blocks": result.blocks,
        "exceptional": result.exceptional,
        "K": result.k,
        "bounds": {"K_limit": verify.k_limit, "E_limit": verify.e_limit},
        "pass": verify.pass,
        "violations": verify.violations,
        "large_exceptional": result.large_exceptional,
        "small_exceptional": result.small_exceptional,
    }));
    Ok((rendered, if verify.pass { 0 } else { 2 }))
}

// ---------------------------------------------------------------------------
// examples

/// Numerical quadrature of the integral of dt/ln t over [a, b] (composite
/// Simpson; the integrand is smooth on [2, inf)).
pub fn log_integral(a: f64, b: f64) -> f64 {
    let steps = 4096usize;
    let h = (b - a) / steps as f64;
    let f = |t: f64| 1.0 / t.ln();
    let mut acc = f(a) + f(b);
    for i in 1..steps {
        let t = a + i as f64 * h;
        acc += if i % 2 == 1 { 4.0 * f(t) } else { 2.0 * f(t) };
    }
    acc * h / 3.0
}

struct ExampleCheck {
    name: String,
    pass: bool,
    detail: String,
}

/// Regenerates the worked examples into a report directory: the slow-decay
/// basis table with its integral lower bound, the three-rotations
/// rearrangement instance, the free-group expansion margins, and the unit
/// basis growth sequence.
fn run_examples(config: &RunConfig) -> Result<RunOutcome> {
    let dir = config.out.clone().unwrap_or_else(|| PathBuf::from("examples-report"));
    fs::create_dir_all(&dir)?;
    let mut checks: Vec<ExampleCheck> = Vec::new();
    let mut stdout = String::new();

    // 1. Slow-decay basis: lattice value vs direct sum vs integral bound.
    {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "value", "integral_lower_bound", "value_ge_bound"])
            .map_err(csv_err)?;
        let mut all_ok = true;
        let mut max_dev = 0.0f64;
        for n in 1..=50usize {
            let tuple = growth::log_basis_tuple(n);
            let value = multinorm_lattice_11(&tuple);
            let direct: f64 = (2..=n + 1).map(|k| 1.0 / (k as f64).ln()).sum();
            max_dev = max_dev.max((value - direct).abs());
            let bound = log_integral(2.0, (n + 2) as f64);
            let ok = value >= bound;
            all_ok &= ok && (value - direct).abs() <= 1e-12;
            w.write_record([
                n.to_string(),
                format!("{value:.12}"),
                format!("{bound:.12}"),
                ok.to_string(),
            ])
            .map_err(csv_err)?;
        }
        fs::write(dir.join("gk_table.csv"), finish_csv(w)?)?;
        checks.push(ExampleCheck {
            name: "slow-decay basis table (value matches sum, exceeds integral)".into(),
            pass: all_ok,
            detail: format!("max |value - sum| = {max_dev:.2e}"),
        });
    }

    // 2. The three-rotations instance: minimal separation 3, bounds hold.
    {
        let spec = GroupSpec::CyclicProduct { moduli: vec![3] };
        let e: Vec<crate::groups::GroupElement> =
            (0..3).map(|x| crate::groups::GroupElement::Vector(vec![x])).collect();
        let s = FiniteSubset::new(
            spec,
            vec![
                crate::groups::GroupElement::Vector(vec![0]),
                crate::groups::GroupElement::Vector(vec![1]),
            ],
        )?;
        let instance = instance_from_group(&e, &s)?;
        let result = build_partition(&instance)?;
        let verify = verify_partition(&instance, &result);
        let min_sep = min_separation_bruteforce(&instance)?;
        let pass = verify.pass && min_sep == 3;
        fs::write(
            dir.join("z3_rearrange.json"),
            pretty(&json!({
                "schema": SCHEMA,
                "n": instance.n(),
                "m": instance.m(),
                "blocks": result.blocks,
                "exceptional": result.exceptional,
                "K": result.k,
                "min_separation": min_sep,
                "pass": pass,
            })),
        )?;
        checks.push(ExampleCheck {
            name: "three-rotations instance (minimal separation 3, bounds hold)".into(),
            pass,
            detail: format!("K = {}, |E| = {}, min separation = {min_sep}", result.k,
                result.exceptional.len()),
        });
    }

    // 3. Free-group expansion margins on balls of radius 1..4.
    {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["rank", "radius", "|C|", "|FC\\C|", "margin", "pass"])
            .map_err(csv_err)?;
        let mut all_ok = true;
        for rank in [2usize, 3] {
            let spec = GroupSpec::FreeGroup { rank };
            let gens = FiniteSubset::new(spec.clone(), spec.generators())?;
            for radius in 1..=4usize {
                let c = ball(&spec, &gens, radius, config.budgets.ball_cap)?;
                let check = free_expansion_check(rank, &c)?;
                all_ok &= check.pass;
                w.write_record([
                    rank.to_string(),
                    radius.to_string(),
                    c.card().to_string(),
                    check.expansion.to_string(),
                    check.margin.to_string(),
                    check.pass.to_string(),
                ])
                .map_err(csv_err)?;
            }
        }
        fs::write(dir.join("free_margins.csv"), finish_csv(w)?)?;
        checks.push(ExampleCheck {
            name: "free-group expansion margins all positive".into(),
            pass: all_ok,
            detail: "ranks 2-3, ball radii 1-4".into(),
        });
    }

    // 4. Growth of the unit basis of l^1_5 at (1,1): a_n = min(n, 5).
    {
        let d = 5usize;
        let basis: Vec<Vec<f64>> = (0..d)
            .map(|i| {
                let mut v = vec![0.0; d];
                v[i] = 1.0;
                v
            })
            .collect();
        let seq = growth::growth_sequence(
            &basis,
            1.0,
            1.0,
            10,
            GrowthMode::Auto,
            config.budgets.growth,
            &SolverParams::seeded(config.seed.unwrap_or(0)),
        )?;
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "a_n", "expected", "ratio"]).map_err(csv_err)?;
        let mut all_ok = seq.exhaustive;
        for (i, v) in seq.values.iter().enumerate() {
            let expected = (i + 1).min(d) as f64;
            all_ok &= *v == expected;
            w.write_record([
                (i + 1).to_string(),
                format!("{v:.12}"),
                format!("{expected:.12}"),
                format!("{:.12}", v / (i + 1) as f64),
            ])
            .map_err(csv_err)?;
        }
        fs::write(dir.join("growth_basis.csv"), finish_csv(w)?)?;
        checks.push(ExampleCheck {
            name: "unit-basis growth a_n = min(n, 5)".into(),
            pass: all_ok,
            detail: "exhaustive sweep".into(),
        });
    }

    let all_pass = checks.iter().all(|c| c.pass);
    let summary: Vec<Value> = checks
        .iter()
        .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
        .collect();
    fs::write(
        dir.join("summary.json"),
        pretty(&json!({"schema": SCHEMA, "checks": summary, "pass": all_pass})),
    )?;
    for c in &checks {
        stdout.push_str(&format!(
            "{} {} ({})\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    stdout.push_str(&format!("report directory: {}\n", dir.display()));
    Ok(RunOutcome { exit_code: if all_pass { 0 } else { 2 }, stdout })
}

/// Convenience wrapper for tests and bindings: run the example suite into a
/// directory and return pass/fail.
pub fn example_suite(dir: &Path) -> Result<bool> {
    let outcome = run(&RunConfig {
        seed: Some(0),
        format: OutputFormat::Json,
        out: Some(dir.to_path_buf()),
        budgets: Budgets::default(),
        command: Command::Examples,
    })?;
    Ok(outcome.exit_code == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_doc() -> String {
        r#"{"group": {"type": "integers", "d": 1},
            "sets": {"F": [[1]],
                     "C100": [RANGE]}}"#
            .replace(
                "[RANGE]",
                &format!(
                    "[{}]",
                    (0..100).map(|x| format!("[{x}]")).collect::<Vec<_>>().join(",")
                ),
            )
    }

    fn base_config(command: Command, format: OutputFormat) -> RunConfig {
        RunConfig { seed: Some(7), format, out: None, budgets: Budgets::default(), command }
    }

    #[test]
    fn folner_table_passes_interval_example() {
        let config = base_config(
            Command::Folner {
                group: z_doc(),
                condition: "F".into(),
                epsilon: "0.02".into(),
                nmin: None,
                sets: None,
                search: None,
            },
            OutputFormat::Csv,
        );
        let outcome = run(&config).unwrap();
        assert_eq!(outcome.exit_code, 0);
        assert!(outcome.stdout.contains("C100"));
        assert!(outcome.stdout.contains(",1,100,"), "{}", outcome.stdout);
    }

    #[test]
    fn folner_fail_exit_code() {
        let config = base_config(
            Command::Folner {
                group: z_doc(),
                condition: "F".into(),
                epsilon: "0.005".into(),
                nmin: None,
                sets: None,
                search: None,
            },
            OutputFormat::Json,
        );
        let outcome = run(&config).unwrap();
        assert_eq!(outcome.exit_code, 2);
        assert!(outcome.stdout.contains("\"pass\": false"));
    }

    #[test]
    fn multinorm_lattice_run() {
        let config = base_config(
            Command::Multinorm {
                space: None,
                tuple: "[[1,0],[0,1]]".into(),
                p: 1.0,
                q: 1.0,
                closed_form: "auto".into(),
                restarts: None,
                oracle: true,
            },
            OutputFormat::Json,
        );
        let outcome = run(&config).unwrap();
        assert_eq!(outcome.exit_code, 0);
        assert!(outcome.stdout.contains("\"value\": 2.0"), "{}", outcome.stdout);
    }

    #[test]
    fn summing_scalar_ratio_column() {
        let config = base_config(
            Command::Summing {
                matrix: "[[1]]".into(),
                q: 1.0,
                p: 1.0,
                n_max: 8,
                target_exponent: 2.0,
                oracle: false,
            },
            OutputFormat::Csv,
        );
        let outcome = run(&config).unwrap();
        assert_eq!(outcome.exit_code, 0);
        for n in 1..=8u32 {
            let expected = format!("{:.12}", 1.0 / n as f64);
            assert!(outcome.stdout.contains(&expected), "missing 1/{n}: {}", outcome.stdout);
        }
    }

    #[test]
    fn rearrange_from_group_z3() {
        let doc = r#"{"group": {"type": "cyclic_product", "moduli": [3]},
                      "sets": {"E": [[0],[1],[2]], "S": [[0],[1]]}}"#;
        let config = base_config(
            Command::Rearrange {
                instance: None,
                group: Some(doc.into()),
                e_set: Some("E".into()),
                s_set: Some("S".into()),
                verify_only: false,
                result: None,
            },
            OutputFormat::Json,
        );
        let outcome = run(&config).unwrap();
        assert_eq!(outcome.exit_code, 0);
        assert!(outcome.stdout.contains("\"pass\": true"));
    }

    #[test]
    fn seed_required_for_solver_paths() {
        let mut config = base_config(
            Command::Multinorm {
                space: None,
                tuple: "[[1,0],[0,1]]".into(),
                p: 1.0,
                q: 2.0,
                closed_form: "auto".into(),
                restarts: None,
                oracle: false,
            },
            OutputFormat::Json,
        );
        config.seed = None;
        assert!(matches!(run(&config), Err(Error::SeedRequired(_))));
    }

    #[test]
    fn runs_are_byte_identical() {
        for command in [
            Command::Folner {
                group: z_doc(),
                condition: "subset".into(),
                epsilon: "0.25".into(),
                nmin: Some(1),
                sets: None,
                search: None,
            },
            Command::Multinorm {
                space: None,
                tuple: "[[0.4,-0.2],[0.1,0.9]]".into(),
                p: 1.5,
                q: 2.0,
                closed_form: "none".into(),
                restarts: None,
                oracle: false,
            },
        ] {
            let config = base_config(command, OutputFormat::Json);
            let a = run(&config).unwrap();
            let b = run(&config).unwrap();
            assert_eq!(a.stdout, b.stdout);
        }
    }

    #[test]
    fn log_integral_sanity() {
        // Strictly below the sum it bounds, and increasing in the endpoint.
        assert!(log_integral(2.0, 3.0) < 1.0 / 2.0f64.ln());
        assert!(log_integral(2.0, 10.0) < log_integral(2.0, 11.0));
    }
}
