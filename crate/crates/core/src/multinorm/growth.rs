//! Growth sequences a_n of tuple multi-norms over a finite set B, the
//! asymptotic constants they estimate, and numerical checks of the multi-norm
//! axioms and monotonicity inequalities.

use serde::Serialize;

use super::{solver, SolverParams, SpaceSpec, VectorTuple};
use crate::{Error, Result};

/// Default cap on the number of tuples an exhaustive growth sweep may evaluate.
pub const DEFAULT_GROWTH_BUDGET: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthMode {
    /// Exhaustive while the tuple count fits the budget, greedy beyond.
    Auto,
    Exhaustive,
    Greedy,
}

impl GrowthMode {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => GrowthMode::Auto,
            "exhaustive" => GrowthMode::Exhaustive,
            "greedy" => GrowthMode::Greedy,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown growth mode {s:?} (expected auto|exhaustive|greedy)"
                )))
            }
        })
    }
}

/// a_n = sup over n-tuples drawn from B (with repetition) of the
/// (p,q)-multi-norm, for n = 1..=N.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthSequence {
    pub q: f64,
    pub values: Vec<f64>,
    pub exhaustive: bool,
}

impl GrowthSequence {
    /// The normalized ratios a_n / n^{1/q}.
    pub fn ratios(&self) -> Vec<f64> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, a)| a / ((i + 1) as f64).powf(1.0 / self.q))
            .collect()
    }

    /// Running minimum of the ratios.
    pub fn inf_prefix(&self) -> Vec<f64> {
        let mut best = f64::INFINITY;
        self.ratios()
            .into_iter()
            .map(|r| {
                best = best.min(r);
                best
            })
            .collect()
    }

    /// a_{m+n}^q <= a_m^q + a_n^q for all recorded m, n.
    pub fn fekete_ok(&self, tol: f64) -> bool {
        let pw: Vec<f64> = self.values.iter().map(|a| a.powf(self.q)).collect();
        for m in 1..=self.values.len() {
            for n in 1..=self.values.len() - m {
                if pw[m + n - 1] > pw[m - 1] + pw[n - 1] + tol {
                    return false;
                }
            }
        }
        true
    }

    /// a_n nondecreasing in n.
    pub fn nondecreasing_ok(&self, tol: f64) -> bool {
        self.values.windows(2).all(|w| w[1] >= w[0] - tol)
    }
}

fn eval_multinorm(rows: &[Vec<f64>], d: usize, p: f64, q: f64, params: &SolverParams) -> f64 {
    if q == 1.0 {
        solver::multinorm_q1(rows, d, p).value
    } else {
        solver::multinorm_core(rows, d, p, q, params).0
    }
}

/// Canonical order on vectors: lexicographic on coordinates.
fn canonical_sort(b: &mut [Vec<f64>]) {
    b.sort_by(|a, c| {
        a.iter()
            .zip(c)
            .find_map(|(x, y)| x.partial_cmp(y).filter(|o| o.is_ne()))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

/// Number of multisets of size n from k symbols, saturating.
fn multiset_count(k: u64, n: u64) -> u64 {
    // C(k + n - 1, n)
    let mut acc: u128 = 1;
    for i in 0..n {
        acc = acc.saturating_mul((k + i) as u128) / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

fn for_each_multiset(k: usize, n: usize, f: &mut impl FnMut(&[usize])) {
    let mut idx = vec![0usize; n];
    loop {
        f(&idx);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] + 1 < k {
                let v = idx[i] + 1;
                for slot in idx.iter_mut().skip(i) {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// Computes the growth sequence of B in l^1_d.
///
/// Exhaustive mode maximizes over all multisets of size n (permutation
/// invariance makes ordered tuples redundant); greedy mode extends a single
/// tuple by the element maximizing the norm, breaking ties to the
/// canonically smallest element, and flags the result non-exhaustive.
pub fn growth_sequence(
    b: &[Vec<f64>],
    p: f64,
    q: f64,
    n_max: usize,
    mode: GrowthMode,
    budget: u64,
    params: &SolverParams,
) -> Result<GrowthSequence> {
    if b.is_empty() || n_max == 0 {
        return Err(Error::InvalidParams("growth sequence needs B nonempty and N >= 1".into()));
    }
    let d = b[0].len();
    // Validate through the tuple type once.
    VectorTuple::new(SpaceSpec::l1(d), b.to_vec())?;
    let mut b = b.to_vec();
    canonical_sort(&mut b);

    let total: u64 = (1..=n_max as u64)
        .map(|n| multiset_count(b.len() as u64, n))
        .fold(0u64, u64::saturating_add);
    let exhaustive = match mode {
        GrowthMode::Exhaustive => {
            if total > budget {
                return Err(Error::InvalidParams(format!(
                    "exhaustive growth sweep needs {total} tuple evaluations, budget is {budget}"
                )));
            }
            true
        }
        GrowthMode::Auto => total <= budget,
        GrowthMode::Greedy => false,
    };

    let mut values = Vec::with_capacity(n_max);
    if exhaustive {
        for n in 1..=n_max {
            let mut best = 0.0f64;
            let mut rows: Vec<Vec<f64>> = vec![Vec::new(); n];
            for_each_multiset(b.len(), n, &mut |idx| {
                for (slot, &i) in rows.iter_mut().zip(idx) {
                    *slot = b[i].clone();
                }
                best = best.max(eval_multinorm(&rows, d, p, q, params));
            });
            values.push(best);
        }
    } else {
        let mut prefix: Vec<Vec<f64>> = Vec::new();
        for _ in 0..n_max {
            let mut best_val = f64::NEG_INFINITY;
            let mut best_elem = 0usize;
            for (i, cand) in b.iter().enumerate() {
                prefix.push(cand.clone());
                let val = eval_multinorm(&prefix, d, p, q, params);
                prefix.pop();
                if val > best_val {
                    best_val = val;
                    best_elem = i;
                }
            }
            prefix.push(b[best_elem].clone());
            values.push(best_val);
        }
    }
    Ok(GrowthSequence { q, values, exhaustive })
}

/// The estimate for c_{p,q}(B): either declared infinite by the caller (for
/// unbounded B) or the prefix infimum of a_n / n^{1/q}, an upper bound that is
/// exact in the limit.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CpqValue {
    Infinite,
    Finite { value: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct CpqEstimate {
    pub value: CpqValue,
    pub trend: Vec<f64>,
    pub exhaustive: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn c_pq_estimate(
    b: &[Vec<f64>],
    p: f64,
    q: f64,
    n_max: usize,
    mode: GrowthMode,
    declared_unbounded: bool,
    budget: u64,
    params: &SolverParams,
) -> Result<CpqEstimate> {
    if declared_unbounded {
        // Unbounded B forces c = d = infinity; reported symbolically.
        return Ok(CpqEstimate { value: CpqValue::Infinite, trend: Vec::new(), exhaustive: true });
    }
    let seq = growth_sequence(b, p, q, n_max, mode, budget, params)?;
    let trend = seq.ratios();
    let value = trend.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(CpqEstimate { value: CpqValue::Finite { value }, trend, exhaustive: seq.exhaustive })
}

/// Heuristic lower-bound probe for d_{p,q}: the prefix infimum of
/// the ratio along one explicit sequence (no search over sequences).
pub fn d_pq_lower(
    seq: &[Vec<f64>],
    p: f64,
    q: f64,
    n_max: usize,
    params: &SolverParams,
) -> Result<f64> {
    if seq.is_empty() {
        return Err(Error::InvalidParams("sequence probe needs at least one vector".into()));
    }
    let d = seq[0].len();
    VectorTuple::new(SpaceSpec::l1(d), seq.to_vec())?;
    let upto = n_max.min(seq.len());
    if upto == 0 {
        return Err(Error::InvalidParams("N must be >= 1".into()));
    }
    let mut inf = f64::INFINITY;
    for n in 1..=upto {
        let val = eval_multinorm(&seq[..n], d, p, q, params);
        inf = inf.min(val / (n as f64).powf(1.0 / q));
    }
    Ok(inf)
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomsReport {
    pub checks: Vec<AxiomCheck>,
    pub pass: bool,
}

/// Numerically verifies the multi-norm axioms, subset monotonicity, and the
/// two exponent-monotonicity inequalities on the given tuple. Failures are
/// recorded per check; they indicate solver trouble, not a property of the
/// mathematics.
pub fn axioms_check(
    xs: &VectorTuple,
    p: f64,
    q: f64,
    params: &SolverParams,
) -> Result<AxiomsReport> {
    if xs.space().exponent != 1.0 {
        return Err(Error::UnsupportedSpace("axioms are checked on l^1_d tuples".into()));
    }
    let d = xs.dim();
    let rows = xs.rows().to_vec();
    let n = rows.len();
    let eval = |rows: &[Vec<f64>], pp: f64, qq: f64| eval_multinorm(rows, d, pp, qq, params);
    let base = eval(&rows, p, q);
    let tol = 1e-8f64.max(1e-6 * base.abs());
    let mut checks: Vec<AxiomCheck> = Vec::new();
    let record = |name: &str, lhs: f64, rhs: f64, checks: &mut Vec<AxiomCheck>| {
        checks.push(AxiomCheck { name: name.into(), lhs, rhs, ok: lhs <= rhs + tol });
    };

    // (A1) permutation invariance, via reversal.
    let mut reversed = rows.clone();
    reversed.reverse();
    let v = eval(&reversed, p, q);
    record("A1 permutation (reversed == original)", (v - base).abs(), 0.0, &mut checks);

    // (A2) contraction by scalars of modulus <= 1.
    let damped: Vec<Vec<f64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let alpha = [1.0, 0.5, 0.25][i % 3];
            r.iter().map(|x| alpha * x).collect()
        })
        .collect();
    record("A2 contraction", eval(&damped, p, q), base, &mut checks);

    // (A3) appending the zero vector.
    let mut padded = rows.clone();
    padded.push(vec![0.0; d]);
    let v = eval(&padded, p, q);
    record("A3 zero padding (equal)", (v - base).abs(), 0.0, &mut checks);

    // (A4) duplicating the last entry. Equality is a multi-norm axiom and
    // needs p <= q; beyond that only the subset inequality survives.
    let mut doubled = rows.clone();
    doubled.push(rows[n - 1].clone());
    let v = eval(&doubled, p, q);
    if p <= q {
        record("A4 duplicate last (equal)", (v - base).abs(), 0.0, &mut checks);
    } else {
        record("A4 duplicate last (>= by subset rule)", base, v, &mut checks);
    }

    // Subset monotonicity: a subtuple never exceeds the tuple.
    if n > 1 {
        record("subset monotonicity", eval(&rows[..n - 1], p, q), base, &mut checks);
    }

    // Normalized growth chain: value(p, q)/n^{1/q} nondecreasing in the
    // second exponent.
    let nf = n as f64;
    let grid = [q, q + 0.75, q + 1.5];
    for pair in grid.windows(2) {
        let lo = eval(&rows, p, pair[0]) / nf.powf(1.0 / pair[0]);
        let hi = eval(&rows, p, pair[1]) / nf.powf(1.0 / pair[1]);
        record(&format!("normalized chain q={} -> r={}", pair[0], pair[1]), lo, hi, &mut checks);
    }

    // The first exponent is monotone: p -> value(p, q) increasing.
    let grid = [p, p + 0.5, p + 1.0];
    for pair in grid.windows(2) {
        let lo = eval(&rows, pair[0], q);
        let hi = eval(&rows, pair[1], q);
        record(&format!("p-monotone {} -> {}", pair[0], pair[1]), lo, hi, &mut checks);
    }

    let pass = checks.iter().all(|c| c.ok);
    Ok(AxiomsReport { checks, pass })
}

/// Convenience: the truncated example tuple g_k = delta_k / ln(k+1) for
/// k = 1..=n inside l^1_{n+1}.
pub fn log_basis_tuple(n: usize) -> VectorTuple {
    let mut rows = Vec::with_capacity(n);
    for k in 1..=n {
        let mut row = vec![0.0; n + 1];
        row[k] = 1.0 / ((k as f64) + 1.0).ln();
        rows.push(row);
    }
    VectorTuple::new(SpaceSpec::l1(n + 1), rows).expect("valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(d: usize) -> Vec<Vec<f64>> {
        (0..d)
            .map(|i| {
                let mut v = vec![0.0; d];
                v[i] = 1.0;
                v
            })
            .collect()
    }

    #[test]
    fn unit_basis_growth_is_min_n_d() {
        for d in [2usize, 5] {
            let seq = growth_sequence(
                &basis(d),
                1.0,
                1.0,
                8,
                GrowthMode::Auto,
                DEFAULT_GROWTH_BUDGET,
                &SolverParams::default(),
            )
            .unwrap();
            assert!(seq.exhaustive);
            for (i, v) in seq.values.iter().enumerate() {
                assert_eq!(*v, (i + 1).min(d) as f64);
            }
            assert!(seq.fekete_ok(1e-9));
            assert!(seq.nondecreasing_ok(1e-12));
        }
    }

    #[test]
    fn zero_set_growth_is_zero() {
        let seq = growth_sequence(
            &[vec![0.0, 0.0]],
            1.5,
            2.0,
            4,
            GrowthMode::Auto,
            DEFAULT_GROWTH_BUDGET,
            &SolverParams::default(),
        )
        .unwrap();
        assert!(seq.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn log_basis_growth_lower_bound() {
        let n = 8;
        let tuple = log_basis_tuple(n);
        let b: Vec<Vec<f64>> = tuple.rows().to_vec();
        let seq = growth_sequence(
            &b,
            1.0,
            1.0,
            n,
            GrowthMode::Greedy,
            DEFAULT_GROWTH_BUDGET,
            &SolverParams::default(),
        )
        .unwrap();
        for k in 1..=n {
            let bound: f64 = (2..=k + 1).map(|j| 1.0 / (j as f64).ln()).sum();
            assert!(seq.values[k - 1] >= bound - 1e-9, "k={k}");
        }
    }

    #[test]
    fn greedy_matches_exhaustive_on_basis() {
        let b = basis(3);
        let ex = growth_sequence(
            &b,
            1.0,
            1.0,
            5,
            GrowthMode::Exhaustive,
            DEFAULT_GROWTH_BUDGET,
            &SolverParams::default(),
        )
        .unwrap();
        let gr = growth_sequence(
            &b,
            1.0,
            1.0,
            5,
            GrowthMode::Greedy,
            DEFAULT_GROWTH_BUDGET,
            &SolverParams::default(),
        )
        .unwrap();
        assert!(!gr.exhaustive);
        for (a, b) in ex.values.iter().zip(&gr.values) {
            assert!(b <= a && *b >= a - 1e-12);
        }
    }

    #[test]
    fn cpq_estimates() {
        let est = c_pq_estimate(
            &basis(3),
            1.0,
            1.0,
            12,
            GrowthMode::Auto,
            false,
            DEFAULT_GROWTH_BUDGET,
            &SolverParams::default(),
        )
        .unwrap();
        match est.value {
            CpqValue::Finite { value } => assert!((value - 3.0 / 12.0).abs() < 1e-12),
            CpqValue::Infinite => panic!("finite set reported infinite"),
        }
        // Prefix infimum is nonincreasing.
        let infs = GrowthSequence { q: 1.0, values: vec![1.0, 2.0, 2.0], exhaustive: true }
            .inf_prefix();
        assert!(infs.windows(2).all(|w| w[1] <= w[0]));

        let declared = c_pq_estimate(
            &basis(2),
            1.0,
            1.0,
            4,
            GrowthMode::Auto,
            true,
            DEFAULT_GROWTH_BUDGET,
            &SolverParams::default(),
        )
        .unwrap();
        assert!(matches!(declared.value, CpqValue::Infinite));
    }

    #[test]
    fn d_probe_examples() {
        // Constant sequence: ratio |x| / n^{1/q} has its inf at n = N.
        let x = vec![0.5, 0.5];
        let seq: Vec<Vec<f64>> = vec![x.clone(); 6];
        let v = d_pq_lower(&seq, 1.0, 1.0, 6, &SolverParams::default()).unwrap();
        assert!((v - 1.0 / 6.0).abs() < 1e-12);

        // Cycled basis in l^1_d at (1,1): inf is d/N for N >= d.
        let d = 3;
        let cyc: Vec<Vec<f64>> = (0..9).map(|i| basis(d)[i % d].clone()).collect();
        let v = d_pq_lower(&cyc, 1.0, 1.0, 9, &SolverParams::default()).unwrap();
        assert!((v - 3.0 / 9.0).abs() < 1e-12);

        let zeros: Vec<Vec<f64>> = vec![vec![0.0, 0.0]; 3];
        assert_eq!(d_pq_lower(&zeros, 2.0, 2.0, 3, &SolverParams::default()).unwrap(), 0.0);
    }

    #[test]
    fn axioms_pass_on_random_style_tuple() {
        let xs = VectorTuple::new(
            SpaceSpec::l1(3),
            vec![vec![0.4, -0.1, 0.3], vec![-0.2, 0.5, 0.1], vec![0.0, 0.2, -0.6]],
        )
        .unwrap();
        for (p, q) in [(1.0, 1.0), (1.5, 1.5), (2.0, 1.0), (1.0, 2.0)] {
            let report = axioms_check(&xs, p, q, &SolverParams::default()).unwrap();
            assert!(
                report.pass,
                "(p,q)=({p},{q}) failed: {:?}",
                report.checks.iter().filter(|c| !c.ok).collect::<Vec<_>>()
            );
        }
    }
}
