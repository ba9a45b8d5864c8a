//! Ascent engines behind the norm evaluations.
//!
//! Every objective here is convex in its variable, so conditional-gradient
//! steps (move to the feasible point maximizing the linearization) increase
//! the objective monotonically and keep the iterate exactly feasible. The
//! multi-norm solver first rewrites the supremum over dual tuples as a
//! maximization over the nonnegative part of an n-dimensional sphere: swapping
//! the two sups in
//!   sup_{mu_{p,n}(lambda) <= 1} |(<x_i, lambda_i>)_i|_q
//!     = sup_{|u|_{q'} <= 1} sum_j |(u_i x_i(j))_i|_{p'}
//! is exact, the inner per-coordinate maximizations are Hoelder alignments,
//! and the objective only depends on |u_i|. The grid oracle works on the raw
//! lambda variables instead, so the two routes stay independent.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{abs_pow, align_dual, conjugate, dot, lp_norm, Mat, NormValue, SolverParams};

/// Largest singular value of the n x d matrix given by rows, via power
/// iteration on the d x d Gram matrix.
pub(super) fn top_singular_value(rows: &[Vec<f64>], d: usize) -> f64 {
    let mut gram = vec![0.0; d * d];
    for row in rows {
        for j in 0..d {
            for k in 0..d {
                gram[j * d + k] += row[j] * row[k];
            }
        }
    }
    let mut v: Vec<f64> = (0..d).map(|i| 1.0 + 0.01 * (i + 1) as f64).collect();
    let norm = lp_norm(&v, 2.0);
    v.iter_mut().for_each(|x| *x /= norm);
    let mut eig = 0.0f64;
    for _ in 0..1000 {
        let w: Vec<f64> = (0..d)
            .map(|j| (0..d).map(|k| gram[j * d + k] * v[k]).sum())
            .collect();
        let norm = lp_norm(&w, 2.0);
        if norm == 0.0 {
            return 0.0;
        }
        let next = norm;
        v = w.iter().map(|x| x / norm).collect();
        if (next - eig).abs() <= 1e-15 * next.max(1.0) {
            eig = next;
            break;
        }
        eig = next;
    }
    eig.sqrt()
}

/// sup of (sum_i |<x_i, lambda>|^p)^{1/p} over the l^{dual_r} unit ball.
pub(super) fn weak_norm_ascent(
    rows: &[Vec<f64>],
    d: usize,
    p: f64,
    dual_r: f64,
    params: &SolverParams,
) -> f64 {
    let objective = |lambda: &[f64]| -> f64 {
        rows.iter().map(|x| abs_pow(dot(x, lambda), p)).sum::<f64>().powf(1.0 / p)
    };
    let gradient = |lambda: &[f64]| -> Vec<f64> {
        let mut g = vec![0.0; d];
        for x in rows {
            let v = dot(x, lambda);
            let w = if p == 1.0 { v.signum() } else { abs_pow(v, p - 1.0) * v.signum() };
            for j in 0..d {
                g[j] += w * x[j];
            }
        }
        g
    };
    let mut starts: Vec<Vec<f64>> = rows.iter().map(|x| align_dual(x, dual_r)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x77ee);
    for _ in 0..params.restarts {
        let raw: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        starts.push(align_dual(&raw, dual_r));
    }
    let mut best = 0.0f64;
    for mut lambda in starts {
        if lambda.iter().all(|x| *x == 0.0) {
            continue;
        }
        let mut val = objective(&lambda);
        for _ in 0..params.max_iters {
            let g = gradient(&lambda);
            let next = align_dual(&g, dual_r);
            if next.iter().all(|x| *x == 0.0) {
                break;
            }
            lambda = next;
            let new_val = objective(&lambda);
            if (new_val - val).abs() <= params.tolerance * new_val.max(1.0) {
                val = new_val;
                break;
            }
            val = new_val;
        }
        best = best.max(val);
    }
    best
}

/// Column closed form for q = 1: sum_j of the l^{p'} norm of column j.
pub(super) fn multinorm_q1(rows: &[Vec<f64>], d: usize, p: f64) -> NormValue {
    let p_dual = conjugate(p);
    let value: f64 = (0..d)
        .map(|j| {
            let col: Vec<f64> = rows.iter().map(|r| r[j]).collect();
            lp_norm(&col, p_dual)
        })
        .sum();
    let u = vec![1.0; rows.len()];
    let lambda = reconstruct_dual_tuple(rows, d, p, &u);
    let certified_lower = direct_objective(rows, &lambda, 1.0);
    NormValue { value, certified_lower, iterations: 0, converged: true, method: "column-q1".into() }
}

/// h(u) = sum_j |(u_i |x_i(j)|)_i|_{p'} for nonnegative u.
fn h_value(abs_cols: &[Vec<f64>], u: &[f64], p_dual: f64) -> f64 {
    abs_cols
        .iter()
        .map(|col| {
            if p_dual.is_infinite() {
                col.iter().zip(u).map(|(a, w)| a * w).fold(0.0, f64::max)
            } else {
                let scaled: Vec<f64> = col.iter().zip(u).map(|(a, w)| a * w).collect();
                lp_norm(&scaled, p_dual)
            }
        })
        .sum()
}

/// A (sub)gradient of h at nonnegative u.
fn h_gradient(abs_cols: &[Vec<f64>], u: &[f64], p_dual: f64) -> Vec<f64> {
    let n = u.len();
    let mut g = vec![0.0; n];
    for col in abs_cols {
        let w: Vec<f64> = col.iter().zip(u).map(|(a, x)| a * x).collect();
        if p_dual.is_infinite() {
            let mut k = 0;
            for i in 1..n {
                if w[i] > w[k] {
                    k = i;
                }
            }
            if w[k] > 0.0 {
                g[k] += col[k];
            }
        } else {
            let norm = lp_norm(&w, p_dual);
            if norm > 0.0 {
                for i in 0..n {
                    if w[i] > 0.0 {
                        g[i] += col[i] * abs_pow(w[i] / norm, p_dual - 1.0);
                    }
                }
            }
        }
    }
    g
}

/// Normalizes nonnegative g onto the q'-sphere point maximizing <g, u>.
fn align_nonneg(g: &[f64], q: f64) -> Option<Vec<f64>> {
    let norm_q = lp_norm(g, q);
    if norm_q == 0.0 {
        return None;
    }
    let mut u: Vec<f64> = g.iter().map(|x| abs_pow(x / norm_q, q - 1.0)).collect();
    // Guard against drift off the sphere.
    let q_dual = conjugate(q);
    let s = lp_norm(&u, q_dual);
    if s > 0.0 {
        u.iter_mut().for_each(|x| *x /= s);
    }
    Some(u)
}

/// Feasible dual tuple achieving h(u): per coordinate j, the Hoelder-aligned
/// column against the weights (u_i x_i(j))_i.
pub(super) fn reconstruct_dual_tuple(
    rows: &[Vec<f64>],
    d: usize,
    p: f64,
    u: &[f64],
) -> Vec<Vec<f64>> {
    let n = rows.len();
    let mut lambda = vec![vec![0.0; d]; n];
    for j in 0..d {
        let w: Vec<f64> = rows.iter().zip(u).map(|(x, ui)| ui * x[j]).collect();
        let col = align_dual(&w, p);
        for i in 0..n {
            lambda[i][j] = col[i];
        }
    }
    lambda
}

/// (sum_i |<x_i, lambda_i>|^q)^{1/q}, evaluated directly.
pub(super) fn direct_objective(rows: &[Vec<f64>], lambda: &[Vec<f64>], q: f64) -> f64 {
    let v: Vec<f64> = rows.iter().zip(lambda).map(|(x, l)| dot(x, l)).collect();
    lp_norm(&v, q)
}

/// Core multi-norm maximization; returns the value, the best sphere point u,
/// total iterations, and whether the best start converged.
pub(super) fn multinorm_core(
    rows: &[Vec<f64>],
    d: usize,
    p: f64,
    q: f64,
    params: &SolverParams,
) -> (f64, Vec<f64>, usize, bool) {
    let n = rows.len();
    let p_dual = conjugate(p);
    let abs_cols: Vec<Vec<f64>> =
        (0..d).map(|j| rows.iter().map(|r| r[j].abs()).collect()).collect();
    if abs_cols.iter().all(|c| c.iter().all(|a| *a == 0.0)) {
        return (0.0, vec![0.0; n], 0, true);
    }
    if q == 1.0 {
        // q' = inf and h is monotone in each u_i, so the nonnegative vertex
        // u = (1,...,1) is the exact maximizer.
        let u = vec![1.0; n];
        let value = h_value(&abs_cols, &u, p_dual);
        return (value, u, 1, true);
    }
    let q_dual = conjugate(q);
    let normalize = |v: &[f64]| -> Option<Vec<f64>> {
        let s = lp_norm(v, q_dual);
        if s == 0.0 {
            return None;
        }
        Some(v.iter().map(|x| x.abs() / s).collect())
    };
    let mut starts: Vec<Vec<f64>> = Vec::new();
    if let Some(u) = normalize(&vec![1.0; n]) {
        starts.push(u);
    }
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        starts.push(e);
    }
    let weights: Vec<f64> = rows.iter().map(|r| lp_norm(r, 1.0)).collect();
    if let Some(u) = normalize(&weights) {
        starts.push(u);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x6d6e);
    for _ in 0..params.restarts {
        let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
        if let Some(u) = normalize(&raw) {
            starts.push(u);
        }
    }

    let mut best_val = f64::NEG_INFINITY;
    let mut best_u = vec![0.0; n];
    let mut best_converged = false;
    let mut total_iters = 0usize;
    for mut u in starts {
        let mut val = h_value(&abs_cols, &u, p_dual);
        let mut converged = false;
        for _ in 0..params.max_iters {
            total_iters += 1;
            let g = h_gradient(&abs_cols, &u, p_dual);
            let Some(next) = align_nonneg(&g, q) else {
                converged = true;
                break;
            };
            u = next;
            let new_val = h_value(&abs_cols, &u, p_dual);
            if (new_val - val).abs() <= params.tolerance * new_val.max(1.0) {
                val = new_val;
                converged = true;
                break;
            }
            val = new_val;
        }
        if val > best_val {
            best_val = val;
            best_u = u;
            best_converged = converged;
        }
    }
    (best_val, best_u, total_iters, best_converged)
}

/// Multi-start solver path for the (p,q)-multi-norm.
pub(super) fn multinorm_ascent(
    rows: &[Vec<f64>],
    d: usize,
    p: f64,
    q: f64,
    params: &SolverParams,
) -> NormValue {
    let (value, u, iterations, converged) = multinorm_core(rows, d, p, q, params);
    let lambda = reconstruct_dual_tuple(rows, d, p, &u);
    let certified_lower = direct_objective(rows, &lambda, q);
    NormValue { value, certified_lower, iterations, converged, method: "ascent".into() }
}

/// State of the direct summing-constant maximization: the feasible tuple X
/// (rows x_i in the cube's coordinate-constrained set) and its value.
struct SummingProblem<'a> {
    t: &'a Mat,
    s: f64,
    s_dual: f64,
    q: f64,
    p: f64,
}

impl SummingProblem<'_> {
    fn value(&self, x: &[Vec<f64>]) -> f64 {
        let total: f64 =
            x.iter().map(|xi| abs_pow(lp_norm(&self.t.apply(xi), self.s), self.q)).sum();
        total.powf(1.0 / self.q)
    }

    /// One conditional-gradient pass; returns the new value.
    fn step(&self, x: &mut [Vec<f64>]) -> f64 {
        let d = self.t.cols;
        let n = x.len();
        let mut grad = vec![vec![0.0; d]; n];
        for (i, xi) in x.iter().enumerate() {
            let v = self.t.apply(xi);
            let norm = lp_norm(&v, self.s);
            if norm == 0.0 {
                continue;
            }
            let mu = align_dual(&v, self.s_dual);
            let scale = if self.q == 1.0 { 1.0 } else { self.q * abs_pow(norm, self.q - 1.0) };
            let back = self.t.apply_transpose(&mu);
            for j in 0..d {
                grad[i][j] = scale * back[j];
            }
        }
        for j in 0..d {
            let w: Vec<f64> = (0..n).map(|i| grad[i][j]).collect();
            if w.iter().all(|x| *x == 0.0) {
                continue;
            }
            let col = align_dual(&w, self.p);
            for i in 0..n {
                x[i][j] = col[i];
            }
        }
        self.value(x)
    }

    fn ascend(&self, x: &mut [Vec<f64>], params: &SolverParams) -> (f64, usize, bool) {
        let mut val = self.value(x);
        let mut iters = 0;
        let mut converged = false;
        for _ in 0..params.max_iters {
            iters += 1;
            let new_val = self.step(x);
            if (new_val - val).abs() <= params.tolerance * new_val.max(1.0) {
                val = new_val;
                converged = true;
                break;
            }
            val = new_val;
        }
        (val, iters, converged)
    }
}

/// pi^{(n)} for n = 1..=n_max by direct maximization over the constraint set,
/// with warm starts making the sequence nondecreasing.
pub(super) fn summing_ascent_sequence(
    t: &Mat,
    s: f64,
    q: f64,
    p: f64,
    n_max: usize,
    params: &SolverParams,
) -> Vec<NormValue> {
    let d = t.cols;
    let problem = SummingProblem { t, s, s_dual: conjugate(s), q, p };
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x5150);
    let mut out: Vec<NormValue> = Vec::with_capacity(n_max);
    let mut prev_best: Vec<Vec<f64>> = Vec::new();
    let mut prev_value = 0.0f64;
    for n in 1..=n_max {
        let mut candidates: Vec<Vec<Vec<f64>>> = Vec::new();
        let mut warm = prev_best.clone();
        warm.push(vec![0.0; d]);
        candidates.push(warm);
        if n == 1 && d <= 20 {
            // Exact vertex sweep of the cube; the convex objective peaks there.
            let mut best_vertex = vec![1.0; d];
            let mut best_val = f64::NEG_INFINITY;
            let mut sigma = vec![1.0; d];
            for mask in 0..(1u64 << (d.saturating_sub(1))) {
                for (j, sgn) in sigma.iter_mut().enumerate().take(d - 1) {
                    *sgn = if mask >> j & 1 == 1 { -1.0 } else { 1.0 };
                }
                let val = lp_norm(&t.apply(&sigma), s);
                if val > best_val {
                    best_val = val;
                    best_vertex = sigma.clone();
                }
            }
            // A single row must also satisfy the column constraint |x(j)|^p <= 1,
            // which the cube vertex does with equality.
            candidates.push(vec![best_vertex]);
        }
        if n >= 2 && !prev_best.is_empty() {
            let scale = (n as f64).powf(-1.0 / p);
            let row: Vec<f64> = prev_best[0].iter().map(|x| x * scale).collect();
            candidates.push(vec![row; n]);
        }
        for _ in 0..params.restarts {
            let mut x: Vec<Vec<f64>> =
                (0..n).map(|_| (0..d).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
            for j in 0..d {
                let col: Vec<f64> = (0..n).map(|i| x[i][j]).collect();
                let norm = lp_norm(&col, p);
                if norm > 1.0 {
                    for xi in x.iter_mut() {
                        xi[j] /= norm;
                    }
                }
            }
            candidates.push(x);
        }
        let mut best_val = f64::NEG_INFINITY;
        let mut best_x: Vec<Vec<f64>> = Vec::new();
        let mut best_conv = false;
        let mut iters = 0usize;
        for mut x in candidates {
            let (val, it, conv) = problem.ascend(&mut x, params);
            iters += it;
            if val > best_val {
                best_val = val;
                best_x = x;
                best_conv = conv;
            }
        }
        // Iterates are feasible throughout, so the value is a certified lower
        // bound; the warm start makes the sequence nondecreasing.
        let value = best_val.max(prev_value);
        out.push(NormValue {
            value,
            certified_lower: best_val,
            iterations: iters,
            converged: best_conv,
            method: "ascent".into(),
        });
        prev_best = best_x;
        prev_value = value;
    }
    out
}

/// Adjoint route: sup over tuples mu_i in the dual ball of the target space of
/// the (p,q)-multi-norm of (T* mu_1, ..., T* mu_n), by alternating exact block
/// maximizations in mu and in the multi-norm's dual variables.
pub(super) fn adjoint_route(
    t: &Mat,
    s: f64,
    q: f64,
    p: f64,
    n: usize,
    params: &SolverParams,
) -> f64 {
    let e = t.rows;
    let d = t.cols;
    let s_dual = conjugate(s);
    let inner = SolverParams { restarts: 6, ..*params };
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0xad01);

    // One alternation pass from a given tuple: inner multi-norm maximization,
    // then exact per-block maximization over each dual ball.
    let ascend = |mu: &mut Vec<Vec<f64>>| -> f64 {
        let mut val = f64::NEG_INFINITY;
        for _ in 0..params.max_iters.min(60) {
            let rows: Vec<Vec<f64>> = mu.iter().map(|m| t.apply_transpose(m)).collect();
            let (value, u, _, _) = multinorm_core(&rows, d, p, q, &inner);
            if value <= val + params.tolerance * value.max(1.0) {
                return val.max(value);
            }
            val = value;
            let lambda = reconstruct_dual_tuple(&rows, d, p, &u);
            // Maximize sum_i u_i <mu_i, T lambda_i> over each dual ball.
            for i in 0..n {
                let z = t.apply(&lambda[i]);
                let w: Vec<f64> = z.iter().map(|x| u[i] * x).collect();
                if w.iter().any(|x| *x != 0.0) {
                    mu[i] = align_dual(&w, s_dual);
                }
            }
        }
        val
    };

    let mut starts: Vec<Vec<Vec<f64>>> = Vec::new();
    starts.push(vec![align_dual(&vec![1.0; e], s_dual); n]);
    for k in 0..e {
        let mut basis = vec![0.0; e];
        basis[k] = 1.0;
        starts.push(vec![basis; n]);
    }
    // Sign patterns of the target cube, rescaled onto the dual ball.
    if e <= 6 {
        for mask in 0..(1u64 << (e - 1)) {
            let sigma: Vec<f64> = (0..e)
                .map(|k| if mask >> k & 1 == 1 { -1.0 } else { 1.0 })
                .collect();
            starts.push(vec![align_dual(&sigma, s_dual); n]);
        }
    }
    for _ in 0..params.restarts {
        let mut mu: Vec<Vec<f64>> =
            (0..n).map(|_| (0..e).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
        for m in mu.iter_mut() {
            let norm = lp_norm(m, s_dual);
            if norm > 1.0 {
                m.iter_mut().for_each(|x| *x /= norm);
            }
        }
        starts.push(mu);
    }

    let mut best = 0.0f64;
    let mut best_mu: Option<Vec<Vec<f64>>> = None;
    for mut mu in starts {
        let val = ascend(&mut mu);
        if val > best {
            best = val;
            best_mu = Some(mu);
        }
    }
    // Basin hopping around the best point: the alternation can stall on
    // coordinate-wise optima, especially at vertex-valued exponents.
    if let Some(anchor) = best_mu {
        for _ in 0..8 {
            let mut mu = anchor.clone();
            for m in mu.iter_mut() {
                for x in m.iter_mut() {
                    *x += rng.random_range(-0.35..0.35);
                }
                let norm = lp_norm(m, s_dual);
                if norm > 1.0 {
                    m.iter_mut().for_each(|x| *x /= norm);
                }
            }
            best = best.max(ascend(&mut mu));
        }
    }
    best
}
