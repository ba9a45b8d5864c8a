//! Dense-grid brute-force maximization over the raw constraint sets, used to
//! cross-validate the ascent solvers at tiny sizes.
//!
//! The oracle never looks at the solver: it grids the cube of dual variables,
//! rescales columns onto the feasible set, evaluates the objective directly,
//! and zooms on the best cells until two successive refinements agree to
//! 1e-4. Instances are capped at 12 grid variables.

use super::{abs_pow, dot, lp_norm, Mat, VectorTuple};
use crate::{Error, Result};

const MAX_VARS: usize = 12;
const AGREE_TOL: f64 = 1e-4;

/// Black-box grid maximization with beam zooming over [-1, 1]^vars.
fn grid_zoom_max(vars: usize, objective: &dyn Fn(&[f64]) -> f64) -> f64 {
    let coarse = if vars <= 6 { 7 } else { 5 };
    let beam_width = 8;
    let mut beam: Vec<(f64, Vec<f64>)> = Vec::new();
    let push = |beam: &mut Vec<(f64, Vec<f64>)>, val: f64, point: Vec<f64>| {
        beam.push((val, point));
        beam.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        beam.truncate(beam_width);
    };

    // Level 0: full coarse grid.
    let mut point = vec![0.0; vars];
    let mut index = vec![0usize; vars];
    loop {
        for (x, &i) in point.iter_mut().zip(&index) {
            *x = -1.0 + 2.0 * i as f64 / (coarse - 1) as f64;
        }
        push(&mut beam, objective(&point), point.clone());
        let mut carry = 0;
        loop {
            if carry == vars {
                break;
            }
            index[carry] += 1;
            if index[carry] < coarse {
                break;
            }
            index[carry] = 0;
            carry += 1;
        }
        if carry == vars {
            break;
        }
    }

    // Zoom levels: 3-point local grids around each beam point.
    let mut best = beam[0].0;
    let mut width = 2.0 / (coarse - 1) as f64;
    for _level in 0..40 {
        let centers: Vec<Vec<f64>> = beam.iter().map(|(_, p)| p.clone()).collect();
        for center in &centers {
            let mut offs = vec![0usize; vars];
            loop {
                let candidate: Vec<f64> = center
                    .iter()
                    .zip(&offs)
                    .map(|(c, &o)| (c + (o as f64 - 1.0) * width).clamp(-1.0, 1.0))
                    .collect();
                push(&mut beam, objective(&candidate), candidate);
                let mut carry = 0;
                loop {
                    if carry == vars {
                        break;
                    }
                    offs[carry] += 1;
                    if offs[carry] < 3 {
                        break;
                    }
                    offs[carry] = 0;
                    carry += 1;
                }
                if carry == vars {
                    break;
                }
            }
        }
        let new_best = beam[0].0;
        let improved = new_best - best;
        best = new_best;
        width *= 0.55;
        if improved.abs() <= AGREE_TOL * best.max(1.0) && width < 1e-6 {
            break;
        }
    }
    best
}

/// Rescales each column of the n x d matrix onto the l^p column ball.
fn rescale_columns(flat: &[f64], n: usize, d: usize, p: f64) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> =
        (0..n).map(|i| flat[i * d..(i + 1) * d].to_vec()).collect();
    for j in 0..d {
        let col: Vec<f64> = (0..n).map(|i| rows[i][j]).collect();
        let norm = lp_norm(&col, p);
        if norm > 1.0 {
            for row in rows.iter_mut() {
                row[j] /= norm;
            }
        }
    }
    rows
}

/// Brute-force value of the (p,q)-multi-norm of an l^1_d tuple.
pub fn multinorm_oracle(xs: &VectorTuple, p: f64, q: f64) -> Result<f64> {
    let n = xs.n();
    let d = xs.dim();
    if n * d > MAX_VARS {
        return Err(Error::SweepTooLarge(format!(
            "oracle handles at most {MAX_VARS} grid variables, got {}",
            n * d
        )));
    }
    let rows = xs.rows().to_vec();
    let objective = move |flat: &[f64]| -> f64 {
        let lambda = rescale_columns(flat, n, d, p);
        let total: f64 =
            rows.iter().zip(&lambda).map(|(x, l)| abs_pow(dot(x, l), q)).sum();
        total.powf(1.0 / q)
    };
    Ok(grid_zoom_max(n * d, &objective))
}

/// Brute-force value of pi^{(n)}_{q,p}(T) for T : l^inf_d -> l^s_e.
pub fn summing_oracle(t: &Mat, target_exponent: f64, q: f64, p: f64, n: usize) -> Result<f64> {
    let d = t.cols;
    if n * d > MAX_VARS {
        return Err(Error::SweepTooLarge(format!(
            "oracle handles at most {MAX_VARS} grid variables, got {}",
            n * d
        )));
    }
    let t = t.clone();
    let objective = move |flat: &[f64]| -> f64 {
        let x = rescale_columns(flat, n, d, p);
        let total: f64 = x
            .iter()
            .map(|xi| abs_pow(lp_norm(&t.apply(xi), target_exponent), q))
            .sum();
        total.powf(1.0 / q)
    };
    Ok(grid_zoom_max(n * d, &objective))
}
