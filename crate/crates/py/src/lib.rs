//! Python bindings: group arithmetic, condition checks, multi-norms, summing
//! constants, and the row-injective partition builder.
//!
//! Elements cross the boundary in their canonical textual forms (words like
//! "a b^-1" for free groups, compact JSON otherwise); larger inputs and
//! outputs are JSON strings matching the CLI schemas.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use folner_lab::folner::{
    check_condition, parse_ratio, ratio_to_f64, ConditionId, ConditionParams,
};
use folner_lab::groups::{self, element_from_text, element_to_text, parse_group_doc, GroupSpec};
use folner_lab::multinorm::{
    growth, multinorm_pq, oracle, summing_adjoint_route, summing_constants, ClosedForm,
    GrowthMode, Mat, SolverParams, SpaceSpec, VectorTuple,
};
use folner_lab::rearrange::{
    build_partition, instance_from_group, min_separation_bruteforce, verify_partition,
    RearrangementInstance,
};
use folner_lab::runner;

fn err(e: folner_lab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finitely generated group with exact element arithmetic.
#[pyclass]
struct Group {
    spec: GroupSpec,
}

impl Group {
    fn parse_set(&self, elems: Vec<String>) -> PyResult<groups::FiniteSubset> {
        let elems = elems
            .iter()
            .map(|s| element_from_text(&self.spec, s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        groups::FiniteSubset::new(self.spec.clone(), elems).map_err(err)
    }

    fn render_set(&self, set: &groups::FiniteSubset) -> Vec<String> {
        set.elements().iter().map(|g| element_to_text(&self.spec, g)).collect()
    }
}

#[pymethods]
impl Group {
    /// Builds a group from a spec like {"type": "free", "rank": 2}.
    #[staticmethod]
    fn from_json(spec_json: &str) -> PyResult<Self> {
        let spec: GroupSpec =
            serde_json::from_str(spec_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
        spec.validate().map_err(err)?;
        Ok(Group { spec })
    }

    fn identity(&self) -> String {
        element_to_text(&self.spec, &self.spec.identity())
    }

    fn compose(&self, a: &str, b: &str) -> PyResult<String> {
        let a = element_from_text(&self.spec, a).map_err(err)?;
        let b = element_from_text(&self.spec, b).map_err(err)?;
        Ok(element_to_text(&self.spec, &self.spec.compose(&a, &b).map_err(err)?))
    }

    fn inverse(&self, a: &str) -> PyResult<String> {
        let a = element_from_text(&self.spec, a).map_err(err)?;
        Ok(element_to_text(&self.spec, &self.spec.inverse(&a).map_err(err)?))
    }

    fn generators(&self) -> Vec<String> {
        self.spec.generators().iter().map(|g| element_to_text(&self.spec, g)).collect()
    }

    /// All products of at most `radius` standard generators.
    #[pyo3(signature = (radius, cap = 1_000_000))]
    fn ball(&self, radius: usize, cap: usize) -> PyResult<Vec<String>> {
        let gens = groups::FiniteSubset::new(self.spec.clone(), self.spec.generators())
            .map_err(err)?;
        let b = groups::ball(&self.spec, &gens, radius, cap).map_err(err)?;
        Ok(self.render_set(&b))
    }

    fn product_set(&self, e: Vec<String>, c: Vec<String>) -> PyResult<Vec<String>> {
        let e = self.parse_set(e)?;
        let c = self.parse_set(c)?;
        Ok(self.render_set(&groups::product_set(&e, &c).map_err(err)?))
    }

    fn translate_difference(&self, t: &str, c: Vec<String>) -> PyResult<Vec<String>> {
        let t = element_from_text(&self.spec, t).map_err(err)?;
        let c = self.parse_set(c)?;
        Ok(self.render_set(&groups::translate_difference(&t, &c).map_err(err)?))
    }

    /// Worst ratio and pass flag of one condition check; returns
    /// (ratio, pass, exhaustive).
    #[pyo3(signature = (condition, epsilon, f, c, nmin = None))]
    fn condition_check(
        &self,
        condition: &str,
        epsilon: &str,
        f: Vec<String>,
        c: Vec<String>,
        nmin: Option<u64>,
    ) -> PyResult<(f64, bool, bool)> {
        let params = ConditionParams::new(
            ConditionId::parse(condition).map_err(err)?,
            parse_ratio(epsilon).map_err(err)?,
            nmin,
        )
        .map_err(err)?;
        let f = self.parse_set(f)?;
        let c = self.parse_set(c)?;
        let report = check_condition(&params, &f, &c).map_err(err)?;
        Ok((ratio_to_f64(report.worst_ratio), report.pass, report.exhaustive))
    }

    fn __repr__(&self) -> String {
        format!("Group({})", self.spec)
    }
}

/// The condition table for a full group/sets document, as the CLI's JSON.
#[pyfunction]
#[pyo3(signature = (group_doc, condition, epsilon, nmin = None))]
fn folner_rows(
    group_doc: &str,
    condition: &str,
    epsilon: &str,
    nmin: Option<u64>,
) -> PyResult<String> {
    let outcome = runner::run(&runner::RunConfig {
        seed: Some(0),
        format: runner::OutputFormat::Json,
        out: None,
        budgets: runner::Budgets::default(),
        command: runner::Command::Folner {
            group: group_doc.to_string(),
            condition: condition.to_string(),
            epsilon: epsilon.to_string(),
            nmin,
            sets: None,
            search: None,
        },
    })
    .map_err(err)?;
    Ok(outcome.stdout)
}

/// Weak p-summing norm of a tuple in l^r_d (exponent inf encodes r = inf).
#[pyfunction]
#[pyo3(signature = (rows, exponent, p, seed = 0))]
fn weak_p_norm(rows: Vec<Vec<f64>>, exponent: f64, p: f64, seed: u64) -> PyResult<f64> {
    let dim = rows.first().map(Vec::len).unwrap_or(0);
    let space = SpaceSpec::new(dim.max(1), exponent).map_err(err)?;
    let xs = VectorTuple::new(space, rows).map_err(err)?;
    folner_lab::multinorm::weak_p_norm(&xs, p, &SolverParams::seeded(seed)).map_err(err)
}

/// Coordinate-wise dual-ball test: true iff sum_i |phi_i(j)|^p <= 1 for
/// every coordinate j.
#[pyfunction]
fn dual_ball_check(rows: Vec<Vec<f64>>, p: f64) -> PyResult<bool> {
    let dim = rows.first().map(Vec::len).unwrap_or(0);
    let xs = VectorTuple::new(SpaceSpec::linf(dim.max(1)), rows).map_err(err)?;
    Ok(folner_lab::multinorm::dual_ball_constraint_check(&xs, p))
}

/// Value of the (p,q)-multi-norm of an l^1 tuple.
#[pyfunction]
#[pyo3(signature = (rows, p, q, closed_form = "auto", seed = 0, restarts = 16))]
fn multinorm(
    rows: Vec<Vec<f64>>,
    p: f64,
    q: f64,
    closed_form: &str,
    seed: u64,
    restarts: usize,
) -> PyResult<f64> {
    let dim = rows.first().map(Vec::len).unwrap_or(0);
    let xs = VectorTuple::new(SpaceSpec::l1(dim.max(1)), rows).map_err(err)?;
    let mut params = SolverParams::seeded(seed);
    params.restarts = restarts;
    let result =
        multinorm_pq(&xs, p, q, &params, ClosedForm::parse(closed_form).map_err(err)?)
            .map_err(err)?;
    Ok(result.value)
}

/// Brute-force oracle value of the (p,q)-multi-norm (tiny instances only).
#[pyfunction]
fn multinorm_oracle(rows: Vec<Vec<f64>>, p: f64, q: f64) -> PyResult<f64> {
    let dim = rows.first().map(Vec::len).unwrap_or(0);
    let xs = VectorTuple::new(SpaceSpec::l1(dim.max(1)), rows).map_err(err)?;
    oracle::multinorm_oracle(&xs, p, q).map_err(err)
}

/// The summing constants pi^{(n)} of a matrix l^inf_d -> l^s_e, n = 1..=n_max.
#[pyfunction]
#[pyo3(signature = (matrix, q, p, n_max, target = 2.0, seed = 0))]
fn summing(
    matrix: Vec<Vec<f64>>,
    q: f64,
    p: f64,
    n_max: usize,
    target: f64,
    seed: u64,
) -> PyResult<Vec<f64>> {
    let t = Mat::from_rows(matrix).map_err(err)?;
    let values = summing_constants(&t, target, q, p, n_max, &SolverParams::seeded(seed))
        .map_err(err)?;
    Ok(values.iter().map(|v| v.value).collect())
}

/// The adjoint-route value of pi^{(n)} (independent of the direct route).
#[pyfunction]
#[pyo3(signature = (matrix, q, p, n, target = 2.0, seed = 0))]
fn summing_adjoint(
    matrix: Vec<Vec<f64>>,
    q: f64,
    p: f64,
    n: usize,
    target: f64,
    seed: u64,
) -> PyResult<f64> {
    let t = Mat::from_rows(matrix).map_err(err)?;
    summing_adjoint_route(&t, target, q, p, n, &SolverParams::seeded(seed)).map_err(err)
}

/// Growth sequence a_n of a finite set in l^1_d.
#[pyfunction]
#[pyo3(signature = (vectors, p, q, n_max, mode = "auto", seed = 0))]
fn growth_values(
    vectors: Vec<Vec<f64>>,
    p: f64,
    q: f64,
    n_max: usize,
    mode: &str,
    seed: u64,
) -> PyResult<Vec<f64>> {
    let seq = growth::growth_sequence(
        &vectors,
        p,
        q,
        n_max,
        GrowthMode::parse(mode).map_err(err)?,
        growth::DEFAULT_GROWTH_BUDGET,
        &SolverParams::seeded(seed),
    )
    .map_err(err)?;
    Ok(seq.values)
}

/// Builds and verifies a partition for an instance JSON; returns the CLI's
/// result JSON.
#[pyfunction]
fn rearrange_build(instance_json: &str) -> PyResult<String> {
    let instance = RearrangementInstance::from_json(instance_json).map_err(err)?;
    render_rearrangement(&instance)
}

/// Builds the (E, S) instance from a group document and partitions it.
#[pyfunction]
fn rearrange_from_group(group_doc: &str, e_set: &str, s_set: &str) -> PyResult<String> {
    let doc = parse_group_doc(group_doc).map_err(err)?;
    let fetch = |name: &str| {
        doc.sets
            .get(name)
            .cloned()
            .ok_or_else(|| PyValueError::new_err(format!("no set named {name:?}")))
    };
    let e = fetch(e_set)?;
    let s = fetch(s_set)?;
    let instance = instance_from_group(e.elements(), &s).map_err(err)?;
    render_rearrangement(&instance)
}

fn render_rearrangement(instance: &RearrangementInstance) -> PyResult<String> {
    let result = build_partition(instance).map_err(err)?;
    let verify = verify_partition(instance, &result);
    let min_sep = if instance.part_count() <= 12 {
        Some(min_separation_bruteforce(instance).map_err(err)?)
    } else {
        None
    };
    let doc = serde_json::json!({
        "schema": runner::SCHEMA,
        "instance": instance.to_json(),
        "blocks": result.blocks,
        "exceptional": result.exceptional,
        "K": result.k,
        "bounds": {"K_limit": verify.k_limit, "E_limit": verify.e_limit},
        "pass": verify.pass,
        "violations": verify.violations,
        "min_separation": min_sep,
    });
    Ok(serde_json::to_string_pretty(&doc).expect("valid json"))
}

#[pymodule]
fn folner_lab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("SCHEMA", runner::SCHEMA)?;
    m.add_class::<Group>()?;
    m.add_function(wrap_pyfunction!(folner_rows, m)?)?;
    m.add_function(wrap_pyfunction!(weak_p_norm, m)?)?;
    m.add_function(wrap_pyfunction!(dual_ball_check, m)?)?;
    m.add_function(wrap_pyfunction!(multinorm, m)?)?;
    m.add_function(wrap_pyfunction!(multinorm_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(summing, m)?)?;
    m.add_function(wrap_pyfunction!(summing_adjoint, m)?)?;
    m.add_function(wrap_pyfunction!(growth_values, m)?)?;
    m.add_function(wrap_pyfunction!(rearrange_build, m)?)?;
    m.add_function(wrap_pyfunction!(rearrange_from_group, m)?)?;
    Ok(())
}
