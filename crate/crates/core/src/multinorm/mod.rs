//! Weak p-summing norms, (p,q)-multi-norms on finite-dimensional l^1, and
//! (q,p)-summing constants of matrices out of l^inf.
//!
//! Evaluation runs in three tiers: exact closed forms (the lattice form for
//! (1,1) and the column form for q = 1), exact extreme-point enumeration for
//! convex objectives over polytopal balls, and a seeded multi-start ascent
//! whose iterates stay feasible, so the best value is always a certified
//! lower bound. A dense-grid oracle (see [`oracle`]) cross-validates the
//! ascent at tiny sizes.

pub mod growth;
pub mod oracle;
mod solver;

pub use growth::{
    axioms_check, c_pq_estimate, d_pq_lower, growth_sequence, AxiomsReport, CpqEstimate,
    CpqValue, GrowthMode, GrowthSequence,
};

use serde::Serialize;

use crate::{Error, Result};

/// The sequence space l^r_d.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpaceSpec {
    pub dim: usize,
    /// Exponent r in [1, inf]; `f64::INFINITY` encodes r = inf.
    pub exponent: f64,
}

impl SpaceSpec {
    pub fn new(dim: usize, exponent: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::UnsupportedSpace("dimension must be >= 1".into()));
        }
        if exponent < 1.0 || exponent.is_nan() {
            return Err(Error::UnsupportedSpace(format!("exponent {exponent} must be >= 1")));
        }
        Ok(SpaceSpec { dim, exponent })
    }

    pub fn l1(dim: usize) -> Self {
        SpaceSpec { dim, exponent: 1.0 }
    }

    pub fn linf(dim: usize) -> Self {
        SpaceSpec { dim, exponent: f64::INFINITY }
    }

    /// Conjugate exponent, with 1' = inf and inf' = 1.
    pub fn dual_exponent(&self) -> f64 {
        conjugate(self.exponent)
    }
}

pub fn conjugate(r: f64) -> f64 {
    if r == 1.0 {
        f64::INFINITY
    } else if r.is_infinite() {
        1.0
    } else {
        r / (r - 1.0)
    }
}

/// An n-tuple of vectors in one sequence space; row i is the vector x_i.
#[derive(Clone, Debug)]
pub struct VectorTuple {
    space: SpaceSpec,
    rows: Vec<Vec<f64>>,
}

impl VectorTuple {
    pub fn new(space: SpaceSpec, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParams("tuple must have n >= 1 vectors".into()));
        }
        for row in &rows {
            if row.len() != space.dim {
                return Err(Error::InvalidParams(format!(
                    "vector of length {} in a space of dimension {}",
                    row.len(),
                    space.dim
                )));
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidParams("tuple entries must be finite".into()));
            }
        }
        Ok(VectorTuple { space, rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}

/// A dense matrix acting as an operator l^inf_d -> l^s_e (row-major, e x d).
#[derive(Clone, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::InvalidParams("matrix must be nonempty".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParams("matrix rows have unequal lengths".into()));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("matrix entries must be finite".into()));
        }
        let data = rows.iter().flatten().copied().collect();
        Ok(Mat { rows: rows.len(), cols, data })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    /// T x.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// T* y (the transpose applied to y).
    pub fn apply_transpose(&self, y: &[f64]) -> Vec<f64> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j) * y[i]).sum())
            .collect()
    }
}

/// Knobs of the multi-start ascent.
#[derive(Clone, Copy, Debug)]
pub struct SolverParams {
    pub restarts: usize,
    pub max_iters: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl SolverParams {
    pub fn seeded(seed: u64) -> Self {
        SolverParams { restarts: 16, max_iters: 300, tolerance: 1e-12, seed }
    }
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams::seeded(0)
    }
}

/// Which evaluation path `multinorm_pq` takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// Pick the best available path for (p, q).
    Auto,
    /// Force the (1,1) lattice form.
    Lattice,
    /// Force the q = 1 column form.
    Q1,
    /// Force the numeric solver.
    None,
}

impl ClosedForm {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => ClosedForm::Auto,
            "lattice" => ClosedForm::Lattice,
            "q1" => ClosedForm::Q1,
            "none" => ClosedForm::None,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown closed-form choice {s:?} (expected auto|lattice|q1|none)"
                )))
            }
        })
    }
}

/// The outcome of a norm evaluation. `certified_lower` is the direct value of
/// an explicit feasible dual witness, so it never exceeds the true supremum.
#[derive(Clone, Debug, Serialize)]
pub struct NormValue {
    pub value: f64,
    pub certified_lower: f64,
    pub iterations: usize,
    pub converged: bool,
    pub method: String,
}

/// |x|^p without going through `powf` for the common exponents.
pub(crate) fn abs_pow(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x.abs()
    } else if p == 2.0 {
        x * x
    } else {
        x.abs().powf(p)
    }
}

/// The l^p norm of a slice, with p = inf as the max norm. Power sums are
/// computed on entries rescaled by the max magnitude, so tiny vectors do not
/// underflow to zero.
pub(crate) fn lp_norm(v: &[f64], p: f64) -> f64 {
    let top = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if p.is_infinite() || top == 0.0 {
        return top;
    }
    if p == 1.0 {
        return v.iter().map(|x| x.abs()).sum();
    }
    if p == 2.0 {
        let s: f64 = v.iter().map(|x| (x / top) * (x / top)).sum();
        return top * s.sqrt();
    }
    let s: f64 = v.iter().map(|x| abs_pow(x / top, p)).sum();
    top * s.powf(1.0 / p)
}

/// The unit-l^p-ball maximizer of w . c (zero stays zero). The maximum value
/// is the dual norm |w|_{p'}. Entries are rescaled by the max magnitude
/// before the power map, keeping the output exactly feasible even for tiny w.
pub(crate) fn align_dual(w: &[f64], p: f64) -> Vec<f64> {
    let top = w.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if top == 0.0 {
        return vec![0.0; w.len()];
    }
    if p == 1.0 {
        // Vertex of the cross-polytope at the first max-magnitude coordinate.
        let mut best = 0;
        for (i, x) in w.iter().enumerate() {
            if x.abs() > w[best].abs() {
                best = i;
            }
        }
        let mut c = vec![0.0; w.len()];
        c[best] = w[best].signum();
        return c;
    }
    if p.is_infinite() {
        return w.iter().map(|x| if *x == 0.0 { 0.0 } else { x.signum() }).collect();
    }
    let pc = conjugate(p);
    let scaled: Vec<f64> = w.iter().map(|x| x / top).collect();
    let norm = lp_norm(&scaled, pc);
    scaled
        .iter()
        .map(|x| x.signum() * abs_pow((x.abs() / norm).min(1.0), pc - 1.0))
        .collect()
}

/// Weak p-summing norm: sup over the dual unit ball of
/// (sum_i |<x_i, lambda>|^p)^{1/p}.
///
/// Exact for r in {1, 2 with p = 2, inf}; numeric multi-start ascent
/// otherwise. For r = 1 the dual ball is the cube and the convex objective is
/// maximized over the 2^d sign vertices when d <= 20.
pub fn weak_p_norm(xs: &VectorTuple, p: f64, params: &SolverParams) -> Result<f64> {
    if p < 1.0 || !p.is_finite() {
        return Err(Error::InvalidParams(format!("p = {p} must lie in [1, inf)")));
    }
    let d = xs.dim();
    let r = xs.space.exponent;
    let objective = |lambda: &[f64]| -> f64 {
        let s: f64 =
            xs.rows.iter().map(|x| abs_pow(dot(x, lambda), p)).sum();
        s.powf(1.0 / p)
    };
    if r.is_infinite() {
        // Dual ball is the l^1 ball; extreme points are +-e_j.
        let best = (0..d)
            .map(|j| {
                xs.rows.iter().map(|x| abs_pow(x[j], p)).sum::<f64>().powf(1.0 / p)
            })
            .fold(0.0f64, f64::max);
        return Ok(best);
    }
    if r == 1.0 && d <= 20 {
        let mut best = 0.0f64;
        let mut sigma = vec![1.0; d];
        for mask in 0..(1u64 << (d - 1)) {
            // Global sign symmetry: pin the last coordinate to +1.
            for (j, s) in sigma.iter_mut().enumerate().take(d - 1) {
                *s = if mask >> j & 1 == 1 { -1.0 } else { 1.0 };
            }
            best = best.max(objective(&sigma));
        }
        return Ok(best);
    }
    if r == 2.0 && p == 2.0 {
        return Ok(solver::top_singular_value(&xs.rows, d));
    }
    // Conditional-gradient ascent over the dual ball l^{r'}.
    Ok(solver::weak_norm_ascent(&xs.rows, d, p, conjugate(r), params))
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Coordinate-wise test for mu_{p,n}(phi) <= 1 when the rows live in l^inf_d:
/// true iff sum_i |phi_i(j)|^p <= 1 for every coordinate j.
pub fn dual_ball_constraint_check(phis: &VectorTuple, p: f64) -> bool {
    (0..phis.dim()).all(|j| {
        phis.rows.iter().map(|row| abs_pow(row[j], p)).sum::<f64>() <= 1.0
    })
}

/// The (1,1)-multi-norm on l^1_d in closed form: the l^1 norm of the
/// coordinate-wise maximum of |x_i|.
pub fn multinorm_lattice_11(xs: &VectorTuple) -> f64 {
    (0..xs.dim())
        .map(|j| xs.rows.iter().map(|row| row[j].abs()).fold(0.0f64, f64::max))
        .sum()
}

/// The (p,q)-multi-norm of a tuple in l^1_d: the supremum of
/// (sum_j |<x_j, lambda_j>|^q)^{1/q} over dual tuples whose columns satisfy
/// the coordinate-wise constraint sum_i |lambda_i(j)|^p <= 1.
pub fn multinorm_pq(
    xs: &VectorTuple,
    p: f64,
    q: f64,
    params: &SolverParams,
    closed_form: ClosedForm,
) -> Result<NormValue> {
    if xs.space.exponent != 1.0 {
        return Err(Error::UnsupportedSpace(format!(
            "multi-norm is computed on l^1_d tuples, got exponent {}",
            xs.space.exponent
        )));
    }
    validate_pq(p, q)?;
    match closed_form {
        ClosedForm::Lattice => {
            if p != 1.0 || q != 1.0 {
                return Err(Error::InvalidParams(
                    "lattice form only applies to (p,q) = (1,1)".into(),
                ));
            }
            let v = multinorm_lattice_11(xs);
            Ok(NormValue {
                value: v,
                certified_lower: v,
                iterations: 0,
                converged: true,
                method: "lattice".into(),
            })
        }
        ClosedForm::Q1 => {
            if q != 1.0 {
                return Err(Error::InvalidParams("column form only applies to q = 1".into()));
            }
            Ok(solver::multinorm_q1(xs.rows(), xs.dim(), p))
        }
        ClosedForm::Auto => {
            if q == 1.0 {
                // Covers (1,1): the column form with p' = inf is the lattice sum.
                Ok(solver::multinorm_q1(xs.rows(), xs.dim(), p))
            } else {
                Ok(solver::multinorm_ascent(xs.rows(), xs.dim(), p, q, params))
            }
        }
        ClosedForm::None => Ok(solver::multinorm_ascent(xs.rows(), xs.dim(), p, q, params)),
    }
}

fn validate_pq(p: f64, q: f64) -> Result<()> {
    for (name, v) in [("p", p), ("q", q)] {
        if v < 1.0 || !v.is_finite() {
            return Err(Error::InvalidParams(format!("{name} = {v} must lie in [1, inf)")));
        }
    }
    Ok(())
}

/// The (q,p)-summing constants pi^{(n)} of T : l^inf_d -> l^s_e for
/// n = 1..=n_max, computed by direct maximization over domain tuples with
/// mu_{p,n}(x) <= 1 (the coordinate-wise constraint set). Each step warm-starts
/// from the previous solution padded with a zero row, which makes the
/// sequence nondecreasing by construction.
pub fn summing_constants(
    t: &Mat,
    target_exponent: f64,
    q: f64,
    p: f64,
    n_max: usize,
    params: &SolverParams,
) -> Result<Vec<NormValue>> {
    validate_pq(p, q)?;
    if target_exponent < 1.0 || target_exponent.is_nan() {
        return Err(Error::UnsupportedSpace(format!(
            "target exponent {target_exponent} must be >= 1"
        )));
    }
    if n_max == 0 {
        return Err(Error::InvalidParams("n must be >= 1".into()));
    }
    Ok(solver::summing_ascent_sequence(t, target_exponent, q, p, n_max, params))
}

/// pi^{(n)}_{q,p}(T) for a single n.
pub fn summing_constant(
    t: &Mat,
    target_exponent: f64,
    q: f64,
    p: f64,
    n: usize,
    params: &SolverParams,
) -> Result<NormValue> {
    let mut seq = summing_constants(t, target_exponent, q, p, n, params)?;
    Ok(seq.pop().expect("n >= 1"))
}

/// The diagnostic ratio sequence pi^{(n)}(T) / n^{1/q} for n = 1..=n_max.
/// For every finite-dimensional T the sequence trends to zero.
pub fn summing_ratio_sequence(
    t: &Mat,
    target_exponent: f64,
    q: f64,
    p: f64,
    n_max: usize,
    params: &SolverParams,
) -> Result<Vec<f64>> {
    let values = summing_constants(t, target_exponent, q, p, n_max, params)?;
    Ok(values
        .iter()
        .enumerate()
        .map(|(i, v)| v.value / ((i + 1) as f64).powf(1.0 / q))
        .collect())
}

/// The adjoint route to pi^{(n)}_{q,p}(T): the supremum of the (p,q)-multi-norm
/// of (T* mu_1, ..., T* mu_n) over tuples from the dual unit ball of the
/// target space. Computed by alternating exact block maximizations, entirely
/// independent of the direct route in [`summing_constants`]; the two must
/// agree.
pub fn summing_adjoint_route(
    t: &Mat,
    target_exponent: f64,
    q: f64,
    p: f64,
    n: usize,
    params: &SolverParams,
) -> Result<f64> {
    validate_pq(p, q)?;
    if n == 0 {
        return Err(Error::InvalidParams("n must be >= 1".into()));
    }
    Ok(solver::adjoint_route(t, target_exponent, q, p, n, params))
}
