//! Følner-type set-expansion conditions on finite subsets of a group.
//!
//! All ratios are exact rationals built from integer cardinalities, and every
//! pass/fail verdict uses the strict inequality `ratio < epsilon`. Sweeps over
//! subsets are exact up to a configurable size bound and fall back to a greedy
//! heuristic with an honesty flag beyond it.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::groups::{
    ball, element_to_text, product_set, translate_difference, FiniteSubset, GroupElement,
    GroupSpec,
};
use crate::{Error, Result};

/// Exact nonnegative rational.
pub type Rat = Ratio<u64>;

/// Largest |F| for which the exhaustive subset sweep is permitted.
pub const SUBSET_EXHAUSTIVE_MAX: usize = 22;

/// Parses an exact rational from "0.05", "1/20", or "2".
pub fn parse_ratio(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = |m: &str| Error::Parse(format!("bad rational {s:?}: {m}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: u64 = n.trim().parse().map_err(|_| bad("numerator"))?;
        let d: u64 = d.trim().parse().map_err(|_| bad("denominator"))?;
        if d == 0 {
            return Err(bad("zero denominator"));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 18 || frac.chars().any(|c| !c.is_ascii_digit()) {
            return Err(bad("fractional part"));
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad("integer part"))? };
        let scale = 10u64.pow(frac.len() as u32);
        let frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad("fractional part"))? };
        let num = int
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(|| bad("overflow"))?;
        return Ok(Rat::new(num, scale));
    }
    let n: u64 = s.parse().map_err(|_| bad("integer"))?;
    Ok(Rat::from_integer(n))
}

/// Renders a rational as a decimal for display columns.
pub fn ratio_to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Which condition a check runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ConditionId {
    F,
    Wf,
    WfStar,
    Subset,
    Pa,
    Wpa,
}

impl ConditionId {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "F" => ConditionId::F,
            "WF" => ConditionId::Wf,
            "WFstar" | "WF*" => ConditionId::WfStar,
            "subset" | "Subset" => ConditionId::Subset,
            "PA" => ConditionId::Pa,
            "WPA" => ConditionId::Wpa,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown condition {s:?} (expected F|WF|WFstar|subset|PA|WPA)"
                )))
            }
        })
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConditionId::F => "F",
            ConditionId::Wf => "WF",
            ConditionId::WfStar => "WFstar",
            ConditionId::Subset => "subset",
            ConditionId::Pa => "PA",
            ConditionId::Wpa => "WPA",
        };
        f.write_str(s)
    }
}

/// Parameters of one condition check.
#[derive(Clone, Debug)]
pub struct ConditionParams {
    pub condition: ConditionId,
    pub epsilon: Rat,
    /// n_eps for the subset condition, n_0 for WPA; ignored elsewhere.
    pub n_threshold: Option<u64>,
}

impl ConditionParams {
    pub fn new(condition: ConditionId, epsilon: Rat, n_threshold: Option<u64>) -> Result<Self> {
        if epsilon == Rat::from_integer(0) {
            return Err(Error::InvalidParams("epsilon must be positive".into()));
        }
        if matches!(condition, ConditionId::Wf | ConditionId::WfStar | ConditionId::Wpa)
            && epsilon >= Rat::from_integer(1)
        {
            return Err(Error::InvalidParams(format!("{condition} requires epsilon in (0,1)")));
        }
        match condition {
            ConditionId::Subset | ConditionId::Wpa => {
                let n = n_threshold.ok_or_else(|| {
                    Error::InvalidParams(format!("{condition} requires a threshold n >= 1"))
                })?;
                if n == 0 {
                    return Err(Error::InvalidParams("threshold must be >= 1".into()));
                }
            }
            _ => {}
        }
        Ok(ConditionParams { condition, epsilon, n_threshold })
    }
}

/// Outcome of checking one condition on a concrete (F, C) pair.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub params: ConditionParams,
    pub f_set: FiniteSubset,
    pub c_set: FiniteSubset,
    pub worst_ratio: Rat,
    /// The subset E, or the singleton {t}, achieving the worst ratio.
    pub worst_witness: FiniteSubset,
    pub pass: bool,
    /// True iff the sweep behind the ratio was exact.
    pub exhaustive: bool,
}

/// max over t in F of |tC \ C| / |C|, with the maximizing t
/// (ties break to the canonically smallest element).
pub fn ratio_f(f: &FiniteSubset, c: &FiniteSubset) -> Result<(Rat, GroupElement)> {
    if c.is_empty() {
        return Err(Error::InvalidParams("ratio_f: C is empty".into()));
    }
    if f.is_empty() {
        return Err(Error::InvalidParams("ratio_f: F is empty".into()));
    }
    let mut best: Option<(Rat, GroupElement)> = None;
    for t in f.elements() {
        let r = Rat::new(translate_difference(t, c)?.card() as u64, c.card() as u64);
        match &best {
            Some((b, _)) if *b >= r => {}
            _ => best = Some((r, t.clone())),
        }
    }
    Ok(best.expect("F nonempty"))
}

/// (1/n) * sum_i |t_i C \ C| / |C| over a list of translates (repeats allowed).
pub fn ratio_wf_star(ts: &[GroupElement], c: &FiniteSubset) -> Result<Rat> {
    if ts.is_empty() || c.is_empty() {
        return Err(Error::InvalidParams("ratio_wf_star: empty input".into()));
    }
    let mut total = 0u64;
    for t in ts {
        total += translate_difference(t, c)?.card() as u64;
    }
    Ok(Rat::new(total, ts.len() as u64 * c.card() as u64))
}

/// How a subset sweep should run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    Greedy,
}

/// max over E subseteq F with |E| >= n_min of |EC| / (|E| |C|).
///
/// Exhaustive mode enumerates every subset (only allowed while |F| <=
/// `SUBSET_EXHAUSTIVE_MAX`); greedy mode grows E by the locally maximal
/// marginal ratio and is flagged non-exhaustive. Ties in the witness break to
/// the canonically smallest subset.
pub fn worst_subset_ratio(
    f: &FiniteSubset,
    c: &FiniteSubset,
    n_min: usize,
    mode: SweepMode,
) -> Result<(Rat, FiniteSubset, bool)> {
    if n_min == 0 || f.card() < n_min {
        return Err(Error::InvalidParams(format!(
            "subset sweep needs 1 <= n_min <= |F| (got n_min={n_min}, |F|={})",
            f.card()
        )));
    }
    if c.is_empty() {
        return Err(Error::InvalidParams("subset sweep: C is empty".into()));
    }
    // Intern the universe FC and precompute translate id lists.
    let spec = f.spec().clone();
    let mut ids: BTreeMap<GroupElement, u32> = BTreeMap::new();
    let mut translates: Vec<Vec<u32>> = Vec::with_capacity(f.card());
    for t in f.elements() {
        let mut list = Vec::with_capacity(c.card());
        for x in c.elements() {
            let y = spec.compose(t, x)?;
            let next = ids.len() as u32;
            let id = *ids.entry(y).or_insert(next);
            list.push(id);
        }
        list.sort_unstable();
        list.dedup();
        translates.push(list);
    }
    let c_card = c.card() as u64;
    let witness = |mask: u64| -> FiniteSubset {
        let elems: Vec<GroupElement> = f
            .elements()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, g)| g.clone())
            .collect();
        FiniteSubset::new(spec.clone(), elems).expect("subset of a valid set")
    };

    match mode {
        SweepMode::Exhaustive => {
            let n = f.card();
            if n > SUBSET_EXHAUSTIVE_MAX {
                return Err(Error::SweepTooLarge(format!(
                    "|F| = {n} exceeds the exhaustive cap {SUBSET_EXHAUSTIVE_MAX}"
                )));
            }
            let mut counts = vec![0u32; ids.len()];
            let mut distinct = 0u64;
            let mut best: Option<(Rat, u64)> = None;
            // Gray-code walk: each step toggles exactly one translate.
            for k in 1u64..(1 << n) {
                let gray = k ^ (k >> 1);
                let bit = k.trailing_zeros() as usize;
                if gray >> bit & 1 == 1 {
                    for &id in &translates[bit] {
                        if counts[id as usize] == 0 {
                            distinct += 1;
                        }
                        counts[id as usize] += 1;
                    }
                } else {
                    for &id in &translates[bit] {
                        counts[id as usize] -= 1;
                        if counts[id as usize] == 0 {
                            distinct -= 1;
                        }
                    }
                }
                let size = gray.count_ones() as u64;
                if (size as usize) < n_min {
                    continue;
                }
                let ratio = Rat::new(distinct, size * c_card);
                let better = match &best {
                    None => true,
                    Some((b, m)) => {
                        ratio > *b
                            || (ratio == *b && mask_indices(gray) < mask_indices(*m))
                    }
                };
                if better {
                    best = Some((ratio, gray));
                }
            }
            let (ratio, mask) = best.expect("at least one admissible subset");
            Ok((ratio, witness(mask), true))
        }
        SweepMode::Greedy => {
            let n = f.card();
            let mut counts = vec![0u32; ids.len()];
            let mut distinct = 0u64;
            let mut in_set = vec![false; n];
            let mut mask = 0u64;
            let mut best: Option<(Rat, u64)> = None;
            for size in 1..=n {
                let mut pick = usize::MAX;
                let mut pick_gain = 0usize;
                for i in 0..n {
                    if in_set[i] {
                        continue;
                    }
                    let gain =
                        translates[i].iter().filter(|&&id| counts[id as usize] == 0).count();
                    // Strict > keeps the canonically smallest maximizer.
                    if pick == usize::MAX || gain > pick_gain {
                        pick = i;
                        pick_gain = gain;
                    }
                }
                in_set[pick] = true;
                mask |= 1 << pick;
                for &id in &translates[pick] {
                    if counts[id as usize] == 0 {
                        distinct += 1;
                    }
                    counts[id as usize] += 1;
                }
                if size >= n_min {
                    let ratio = Rat::new(distinct, size as u64 * c_card);
                    if best.as_ref().is_none_or(|(b, _)| ratio > *b) {
                        best = Some((ratio, mask));
                    }
                }
            }
            let (ratio, mask) = best.expect("|F| >= n_min");
            Ok((ratio, witness(mask), false))
        }
    }
}

fn mask_indices(mask: u64) -> Vec<u32> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Runs one condition check on concrete sets, with strict-inequality
/// semantics throughout.
pub fn check_condition(
    params: &ConditionParams,
    f: &FiniteSubset,
    c: &FiniteSubset,
) -> Result<ConditionReport> {
    let singleton = |g: &GroupElement| {
        FiniteSubset::new(f.spec().clone(), vec![g.clone()]).expect("element of a valid set")
    };
    let (worst_ratio, worst_witness, exhaustive) = match params.condition {
        ConditionId::F | ConditionId::Wf => {
            let (r, t) = ratio_f(f, c)?;
            (r, singleton(&t), true)
        }
        ConditionId::WfStar => {
            let r = ratio_wf_star(f.elements(), c)?;
            (r, f.clone(), true)
        }
        ConditionId::Subset => {
            let n_min = params.n_threshold.expect("validated") as usize;
            let mode = if f.card() <= SUBSET_EXHAUSTIVE_MAX {
                SweepMode::Exhaustive
            } else {
                SweepMode::Greedy
            };
            worst_subset_ratio(f, c, n_min, mode)?
        }
        ConditionId::Pa | ConditionId::Wpa => {
            if params.condition == ConditionId::Wpa {
                let n0 = params.n_threshold.expect("validated");
                if (f.card() as u64) < n0 {
                    return Err(Error::InvalidParams(format!(
                        "WPA checks need |F| >= n_0 (got |F|={}, n_0={n0})",
                        f.card()
                    )));
                }
            }
            if f.is_empty() || c.is_empty() {
                return Err(Error::InvalidParams("PA/WPA: empty input".into()));
            }
            let fc = product_set(f, c)?;
            let r = Rat::new(fc.card() as u64, f.card() as u64 * c.card() as u64);
            (r, f.clone(), true)
        }
    };
    Ok(ConditionReport {
        params: params.clone(),
        f_set: f.clone(),
        c_set: c.clone(),
        pass: worst_ratio < params.epsilon,
        worst_ratio,
        worst_witness,
        exhaustive,
    })
}

/// Smallest n_0 with eps_0 + 1/n_0 < 1, plus delta_0 = eps_0 + 1/n_0.
///
/// Used to turn a translate-wise witness into a subset-condition witness via
/// m(EC) < m(C) + |E| eps_0 m(C) <= delta_0 |E| m(C).
pub fn wf_to_subset_threshold(eps0: Rat) -> Result<(u64, Rat)> {
    if eps0 >= Rat::from_integer(1) || eps0 == Rat::from_integer(0) {
        return Err(Error::InvalidParams("eps_0 must lie in (0,1)".into()));
    }
    let (num, den) = (*eps0.numer(), *eps0.denom());
    // Smallest integer strictly above den/(den-num).
    let n0 = den / (den - num) + 1;
    let delta0 = eps0 + Rat::new(1, n0);
    debug_assert!(delta0 < Rat::from_integer(1));
    Ok((n0, delta0))
}

/// Candidate generation strategy for the witness search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Cayley balls of increasing radius around the identity.
    Balls,
    /// Coordinate boxes [0,N)^d; only for Integers(d).
    Boxes,
    /// Start from {identity} and add the neighbour that minimizes the
    /// objective ratio.
    GreedyAugment,
}

impl SearchStrategy {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "balls" => SearchStrategy::Balls,
            "boxes" => SearchStrategy::Boxes,
            "greedy" => SearchStrategy::GreedyAugment,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown search strategy {s:?} (expected balls|boxes|greedy)"
                )))
            }
        })
    }
}

/// Resource limits for the witness search.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_radius: usize,
    pub max_box_side: usize,
    pub max_steps: usize,
    pub set_cap: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_radius: 8, max_box_side: 64, max_steps: 64, set_cap: 250_000 }
    }
}

/// Result of a witness search: the best candidate found within budget.
/// A failed search never claims non-existence.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub best: Option<ConditionReport>,
    pub passed: bool,
    pub budget_exhausted: bool,
    pub candidates_tried: usize,
}

/// Searches for a set C making the condition pass on F, scanning a
/// deterministic candidate stream until a witness is found or the budget is
/// spent. Returns the best-scoring candidate either way.
pub fn folner_search(
    spec: &GroupSpec,
    f: &FiniteSubset,
    params: &ConditionParams,
    strategy: SearchStrategy,
    budget: &SearchBudget,
) -> Result<SearchOutcome> {
    if f.is_empty() {
        return Err(Error::InvalidParams("search: F is empty".into()));
    }
    let mut outcome =
        SearchOutcome { best: None, passed: false, budget_exhausted: false, candidates_tried: 0 };
    let consider = |c: FiniteSubset, outcome: &mut SearchOutcome| -> Result<bool> {
        let report = check_condition(params, f, &c)?;
        outcome.candidates_tried += 1;
        let better = match &outcome.best {
            None => true,
            Some(prev) => report.worst_ratio < prev.worst_ratio,
        };
        if better {
            outcome.best = Some(report.clone());
        }
        if report.pass {
            outcome.passed = true;
            return Ok(true);
        }
        Ok(false)
    };

    match strategy {
        SearchStrategy::Balls => {
            let gens = FiniteSubset::new(spec.clone(), spec.generators())?;
            for r in 0..=budget.max_radius {
                let c = match ball(spec, &gens, r, budget.set_cap) {
                    Ok(c) => c,
                    Err(Error::BudgetExceeded { .. }) => {
                        outcome.budget_exhausted = true;
                        break;
                    }
                    Err(e) => return Err(e),
                };
                if consider(c, &mut outcome)? {
                    return Ok(outcome);
                }
            }
            if outcome.candidates_tried == budget.max_radius + 1 {
                outcome.budget_exhausted = true;
            }
        }
        SearchStrategy::Boxes => {
            let GroupSpec::Integers { d } = spec else {
                return Err(Error::InvalidParams(
                    "box search is only defined for integer lattices".into(),
                ));
            };
            for side in 1..=budget.max_box_side {
                if (side as f64).powi(*d as i32) > budget.set_cap as f64 {
                    outcome.budget_exhausted = true;
                    break;
                }
                let c = integer_box(*d, side)?;
                if consider(c, &mut outcome)? {
                    return Ok(outcome);
                }
            }
            if !outcome.budget_exhausted && outcome.candidates_tried == budget.max_box_side {
                outcome.budget_exhausted = true;
            }
        }
        SearchStrategy::GreedyAugment => {
            let gens = spec.generators();
            let mut current = FiniteSubset::new(spec.clone(), vec![spec.identity()])?;
            if consider(current.clone(), &mut outcome)? {
                return Ok(outcome);
            }
            for _ in 0..budget.max_steps {
                if current.card() >= budget.set_cap {
                    outcome.budget_exhausted = true;
                    break;
                }
                // Neighbour pool Cg \ C, scanned in canonical order.
                let mut pool: Vec<GroupElement> = Vec::new();
                for x in current.elements() {
                    for g in &gens {
                        let y = spec.compose(x, g)?;
                        if !current.contains(&y) {
                            pool.push(y);
                        }
                    }
                }
                pool.sort_unstable();
                pool.dedup();
                let mut pick: Option<(Rat, GroupElement, ConditionReport)> = None;
                for cand in pool {
                    let mut elems = current.elements().to_vec();
                    elems.push(cand.clone());
                    let grown = FiniteSubset::new(spec.clone(), elems)?;
                    let report = check_condition(params, f, &grown)?;
                    outcome.candidates_tried += 1;
                    let better = match &pick {
                        None => true,
                        Some((r, _, _)) => report.worst_ratio < *r,
                    };
                    if better {
                        pick = Some((report.worst_ratio, cand, report));
                    }
                }
                let Some((_, chosen, report)) = pick else { break };
                let mut elems = current.elements().to_vec();
                elems.push(chosen);
                current = FiniteSubset::new(spec.clone(), elems)?;
                let better = match &outcome.best {
                    None => true,
                    Some(prev) => report.worst_ratio < prev.worst_ratio,
                };
                if better {
                    outcome.best = Some(report.clone());
                }
                if report.pass {
                    outcome.passed = true;
                    return Ok(outcome);
                }
            }
            outcome.budget_exhausted = true;
        }
    }
    Ok(outcome)
}

/// The box [0, side)^d in Z^d.
pub fn integer_box(d: usize, side: usize) -> Result<FiniteSubset> {
    let spec = GroupSpec::Integers { d };
    let mut elems = Vec::new();
    let mut coords = vec![0i64; d];
    loop {
        elems.push(GroupElement::Vector(coords.clone()));
        let mut i = 0;
        loop {
            if i == d {
                return FiniteSubset::new(spec, elems);
            }
            coords[i] += 1;
            if coords[i] < side as i64 {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
    }
}

/// Margin of the free-group expansion inequality |FC \ C| > (n-1)|C|,
/// where F is the set of the n positive free generators.
#[derive(Clone, Copy, Debug)]
pub struct FreeExpansion {
    pub expansion: usize,
    pub margin: i64,
    pub pass: bool,
}

pub fn free_expansion_check(rank: usize, c: &FiniteSubset) -> Result<FreeExpansion> {
    let GroupSpec::FreeGroup { rank: spec_rank } = c.spec() else {
        return Err(Error::InvalidParams("expansion check needs a free-group set".into()));
    };
    if *spec_rank != rank {
        return Err(Error::SpecMismatch(format!(
            "set lives in F_{spec_rank}, check asked for F_{rank}"
        )));
    }
    if c.is_empty() {
        return Err(Error::InvalidParams("expansion check: C is empty".into()));
    }
    let spec = c.spec().clone();
    let f = FiniteSubset::new(
        spec,
        (1..=rank as i32).map(|k| GroupElement::Word(vec![k])).collect(),
    )?;
    let fc_minus_c = product_set(&f, c)?.difference(c)?.card();
    let margin = fc_minus_c as i64 - ((rank - 1) * c.card()) as i64;
    Ok(FreeExpansion { expansion: fc_minus_c, margin, pass: margin > 0 })
}

/// One row of a ratio table: a condition evaluated against one candidate C.
#[derive(Clone, Debug)]
pub struct RatioRow {
    pub group: String,
    pub condition: ConditionId,
    pub epsilon: Rat,
    pub n_min: Option<u64>,
    pub c_id: String,
    pub c_card: usize,
    pub worst_ratio: Rat,
    pub witness: String,
    pub pass: bool,
    pub exhaustive: bool,
}

/// Evaluates the condition against every candidate C in the family, one row
/// per candidate, in input order.
pub fn ratio_table(
    f: &FiniteSubset,
    c_family: &[(String, FiniteSubset)],
    params: &ConditionParams,
) -> Result<Vec<RatioRow>> {
    let spec = f.spec();
    let mut rows = Vec::with_capacity(c_family.len());
    for (c_id, c) in c_family {
        let report = check_condition(params, f, c)?;
        let witness = report
            .worst_witness
            .elements()
            .iter()
            .map(|g| element_to_text(spec, g))
            .collect::<Vec<_>>()
            .join(";");
        rows.push(RatioRow {
            group: spec.to_string(),
            condition: params.condition,
            epsilon: params.epsilon,
            n_min: params.n_threshold,
            c_id: c_id.clone(),
            c_card: c.card(),
            worst_ratio: report.worst_ratio,
            witness,
            pass: report.pass,
            exhaustive: report.exhaustive,
        });
    }
    Ok(rows)
}
