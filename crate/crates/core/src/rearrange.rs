//! Constructive partition of a family of parts into row-injective blocks plus
//! a small exceptional set.
//!
//! The instance is a family of pairwise disjoint rows R_1..R_n (each of size
//! at most m) partitioned into parts A_u, with no part containing two items
//! of one row. The construction returns blocks D_1..D_K and an exceptional
//! set E such that the row map is injective on each block's union, with
//! K <= n^{3/4} m and |E| <= 2 n^{3/4} m. All fractional-power thresholds are
//! compared exactly on integers (x >= n^{1/4} as x^4 >= n, and so on).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::groups::{element_to_text, FiniteSubset, GroupElement};
use crate::{Error, Result};

/// A validated instance: rows of items and a row-injective partition into
/// parts. Items and parts are addressed by their external string names.
#[derive(Clone, Debug)]
pub struct RearrangementInstance {
    /// Number of rows n.
    n: usize,
    /// Max row cardinality m.
    m: usize,
    /// row -> item indices.
    rows: Vec<Vec<u32>>,
    /// item index -> row.
    row_of: Vec<u32>,
    /// item index -> external name.
    item_names: Vec<String>,
    /// part keys in canonical (sorted) order.
    part_keys: Vec<String>,
    /// part index -> item indices.
    parts: Vec<Vec<u32>>,
}

impl RearrangementInstance {
    /// Builds and validates an instance from explicit rows and parts.
    pub fn new(rows: Vec<Vec<String>>, parts: BTreeMap<String, Vec<String>>) -> Result<Self> {
        let n = rows.len();
        let mut item_names = Vec::new();
        let mut row_of = Vec::new();
        let mut index_of: BTreeMap<String, u32> = BTreeMap::new();
        let mut row_lists = Vec::with_capacity(n);
        for (r, row) in rows.into_iter().enumerate() {
            let mut list = Vec::with_capacity(row.len());
            for name in row {
                if index_of.contains_key(&name) {
                    return Err(Error::InvalidInstance(format!(
                        "item {name:?} appears twice (rows must be disjoint)"
                    )));
                }
                let idx = item_names.len() as u32;
                index_of.insert(name.clone(), idx);
                item_names.push(name);
                row_of.push(r as u32);
                list.push(idx);
            }
            row_lists.push(list);
        }
        let m = row_lists.iter().map(Vec::len).max().unwrap_or(0);

        let mut part_keys = Vec::with_capacity(parts.len());
        let mut part_lists = Vec::with_capacity(parts.len());
        let mut seen_items = vec![false; item_names.len()];
        for (key, members) in parts {
            let mut list = Vec::with_capacity(members.len());
            let mut rows_hit = BTreeSet::new();
            for name in members {
                let idx = *index_of.get(&name).ok_or_else(|| {
                    Error::InvalidInstance(format!("part {key:?} mentions unknown item {name:?}"))
                })?;
                if seen_items[idx as usize] {
                    return Err(Error::InvalidInstance(format!(
                        "item {name:?} occurs in more than one part"
                    )));
                }
                seen_items[idx as usize] = true;
                if !rows_hit.insert(row_of[idx as usize]) {
                    return Err(Error::InvalidInstance(format!(
                        "part {key:?} has two items in row {}",
                        row_of[idx as usize]
                    )));
                }
                list.push(idx);
            }
            part_keys.push(key);
            part_lists.push(list);
        }
        if let Some(idx) = seen_items.iter().position(|covered| !covered) {
            return Err(Error::InvalidInstance(format!(
                "item {:?} is not covered by any part",
                item_names[idx]
            )));
        }
        Ok(RearrangementInstance {
            n,
            m,
            rows: row_lists,
            row_of,
            item_names,
            part_keys,
            parts: part_lists,
        })
    }

    /// Parses `{"rows": [[item]], "parts": {"u": [item]}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        let rows = v
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("instance needs a \"rows\" array".into()))?;
        let rows: Vec<Vec<String>> = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("each row must be an array".into()))?
                    .iter()
                    .map(|x| {
                        Ok(match x {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let parts_obj = v
            .get("parts")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("instance needs a \"parts\" object".into()))?;
        let mut parts = BTreeMap::new();
        for (key, members) in parts_obj {
            let members = members
                .as_array()
                .ok_or_else(|| Error::Parse(format!("part {key:?} must be an array")))?
                .iter()
                .map(|x| {
                    Ok(match x {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            parts.insert(key.clone(), members);
        }
        Self::new(rows, parts)
    }

    /// Renders the instance back to its `{"rows", "parts"}` JSON form.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|&i| Value::String(self.item_names[i as usize].clone()))
                        .collect(),
                )
            })
            .collect();
        let mut parts = serde_json::Map::new();
        for (key, members) in self.part_keys.iter().zip(&self.parts) {
            parts.insert(
                key.clone(),
                Value::Array(
                    members
                        .iter()
                        .map(|&i| Value::String(self.item_names[i as usize].clone()))
                        .collect(),
                ),
            );
        }
        serde_json::json!({"rows": rows, "parts": parts})
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn part_keys(&self) -> &[String] {
        &self.part_keys
    }

    /// Rows hit by the given part key.
    fn part_rows(&self, part: usize) -> Vec<u32> {
        let mut rows: Vec<u32> =
            self.parts[part].iter().map(|&i| self.row_of[i as usize]).collect();
        rows.sort_unstable();
        rows
    }
}

/// Rows R_i = {(t_i, s) : s in S} with parts A_u = {(t, s) : t s = u}. Row
/// injectivity of each part holds because t determines the row and s = t^{-1}u
/// is then unique, but the builder validates it rather than assuming it.
pub fn instance_from_group(
    e_list: &[GroupElement],
    s: &FiniteSubset,
) -> Result<RearrangementInstance> {
    let spec = s.spec().clone();
    for t in e_list {
        spec.validate_element(t)?;
    }
    for pair in 0..e_list.len() {
        for other in pair + 1..e_list.len() {
            if e_list[pair] == e_list[other] {
                return Err(Error::InvalidParams(format!(
                    "duplicate translate {} in E",
                    element_to_text(&spec, &e_list[pair])
                )));
            }
        }
    }
    let mut rows = Vec::with_capacity(e_list.len());
    let mut parts: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (i, t) in e_list.iter().enumerate() {
        let mut row = Vec::with_capacity(s.card());
        for (j, x) in s.elements().iter().enumerate() {
            let item = format!("({i},{j})");
            let u = spec.compose(t, x)?;
            parts.entry(element_to_text(&spec, &u)).or_default().push(item.clone());
            row.push(item);
        }
        rows.push(row);
    }
    RearrangementInstance::new(rows, parts)
}

/// Output of the constructive partition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RearrangementResult {
    /// Blocks D_1..D_K as lists of part keys.
    pub blocks: Vec<Vec<String>>,
    /// The exceptional set of part keys.
    pub exceptional: Vec<String>,
    /// Number of blocks K.
    pub k: usize,
    /// How many exceptional parts came from the large-part extraction.
    pub large_exceptional: usize,
    /// How many exceptional parts came from the per-level cover sets.
    pub small_exceptional: usize,
}

/// K <= n^{3/4} m, compared exactly as K^4 <= n^3 m^4.
pub fn k_bound_ok(k: usize, n: usize, m: usize) -> bool {
    pow4(k as u64) <= pow3(n as u64) * pow4(m as u64)
}

/// |E| <= 2 n^{3/4} m, compared exactly as |E|^4 <= 16 n^3 m^4.
pub fn e_bound_ok(e: usize, n: usize, m: usize) -> bool {
    pow4(e as u64) <= 16 * pow3(n as u64) * pow4(m as u64)
}

fn pow4(x: u64) -> u128 {
    let x = x as u128;
    x * x * x * x
}

fn pow3(x: u64) -> u128 {
    let x = x as u128;
    x * x * x
}

/// Internal part identity during the construction. Padding parts sort after
/// every real part, so canonical scans see real parts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum PartId {
    Real(u32),
    Pad(u64),
}

#[derive(Clone, Debug)]
struct LivePart {
    id: PartId,
    rows: Vec<u32>,
}

/// Builds a row-injective block partition meeting both bounds.
///
/// Stage 1 moves every part with |A_u| >= n^{1/4} to the exceptional set (at
/// most n^{3/4} m of them). Stage 2 walks the remaining small parts level by
/// level: rows are padded to a uniform size with fresh singleton parts, a
/// maximal admissible sequence of blocks is extracted (each block accumulates
/// canonically-first candidate parts with pairwise new disjoint rows until it
/// covers n^{1/2} rows), a cover set of at most n^{3/4} parts absorbs the
/// untouched rows, and the level recurses with the row bound reduced by one.
/// Padding parts are stripped from the final answer.
pub fn build_partition(inst: &RearrangementInstance) -> Result<RearrangementResult> {
    let n = inst.n;
    let mut exceptional: Vec<String> = Vec::new();

    // Stage 1: strip large parts.
    let mut alive: Vec<LivePart> = Vec::new();
    let mut large = 0usize;
    for idx in 0..inst.parts.len() {
        let rows = inst.part_rows(idx);
        if pow4(rows.len() as u64) >= n as u128 {
            exceptional.push(inst.part_keys[idx].clone());
            large += 1;
        } else {
            alive.push(LivePart { id: PartId::Real(idx as u32), rows });
        }
    }
    if !(pow4(large as u64) <= pow3(n as u64) * pow4(inst.m as u64)) {
        return Err(Error::ConstructionFailure(format!(
            "large-part count {large} exceeds n^(3/4) m for n={n}, m={}",
            inst.m
        )));
    }

    // Stage 2: recursion on the row-size bound, run iteratively.
    let mut level = alive
        .iter()
        .flat_map(|p| p.rows.iter())
        .fold(vec![0usize; n], |mut acc, &r| {
            acc[r as usize] += 1;
            acc
        })
        .into_iter()
        .max()
        .unwrap_or(0);
    let mut blocks: Vec<Vec<PartId>> = Vec::new();
    let mut small_exceptional: Vec<PartId> = Vec::new();
    let mut pad_counter = 0u64;

    while level > 1 && !alive.is_empty() {
        // Pad every row to exactly `level` items with fresh singleton parts.
        let mut row_size = vec![0usize; n];
        for p in &alive {
            for &r in &p.rows {
                row_size[r as usize] += 1;
            }
        }
        for (r, &size) in row_size.iter().enumerate() {
            for _ in size..level {
                alive.push(LivePart { id: PartId::Pad(pad_counter), rows: vec![r as u32] });
                pad_counter += 1;
            }
        }
        debug_assert!(alive.windows(2).all(|w| w[0].id < w[1].id));

        let mut assigned = vec![false; alive.len()];
        let mut used_rows = vec![false; n];
        let mut used_count = 0usize;
        let mut row_stamp = vec![0u32; n];
        let mut stamp = 0u32;

        // Maximal admissible sequence.
        while pow4((n - used_count) as u64) > pow3(n as u64) {
            stamp += 1;
            let mut block: Vec<usize> = Vec::new();
            let mut covered = 0u64;
            let mut cursor = 0usize;
            while (covered as u128) * (covered as u128) < n as u128 {
                let mut found = None;
                while cursor < alive.len() {
                    let cand = cursor;
                    cursor += 1;
                    if assigned[cand] {
                        continue;
                    }
                    let rows = &alive[cand].rows;
                    if rows.iter().any(|&r| row_stamp[r as usize] == stamp) {
                        continue;
                    }
                    if rows.iter().all(|&r| used_rows[r as usize]) {
                        continue;
                    }
                    found = Some(cand);
                    break;
                }
                let Some(v) = found else {
                    // The existence of a next candidate is guaranteed while
                    // fewer than n - n^{3/4} rows are used and the block
                    // covers fewer than n^{1/2} rows.
                    return Err(Error::ConstructionFailure(format!(
                        "no admissible candidate part (n={n}, level={level}, \
                         used_rows={used_count}, covered={covered})"
                    )));
                };
                for &r in &alive[v].rows {
                    row_stamp[r as usize] = stamp;
                }
                covered += alive[v].rows.len() as u64;
                block.push(v);
            }
            let mut new_rows = 0u64;
            for &v in &block {
                assigned[v] = true;
                for &r in &alive[v].rows {
                    if !used_rows[r as usize] {
                        used_rows[r as usize] = true;
                        used_count += 1;
                        new_rows += 1;
                    }
                }
            }
            debug_assert!(pow4(new_rows) >= n as u128, "admissible block added too few rows");
            blocks.push(block.iter().map(|&v| alive[v].id).collect());
        }

        // Cover the untouched rows with one part each.
        let mut part_of_row: Vec<Option<usize>> = vec![None; n];
        for (idx, p) in alive.iter().enumerate() {
            if assigned[idx] {
                continue;
            }
            for &r in &p.rows {
                let slot = &mut part_of_row[r as usize];
                if slot.is_none() {
                    *slot = Some(idx);
                }
            }
        }
        let mut cover: BTreeSet<usize> = BTreeSet::new();
        for r in 0..n {
            if used_rows[r] {
                continue;
            }
            let Some(p) = part_of_row[r] else {
                return Err(Error::ConstructionFailure(format!(
                    "row {r} has no remaining part after padding (n={n}, level={level})"
                )));
            };
            cover.insert(p);
        }
        debug_assert!(pow4(cover.len() as u64) <= pow3(n as u64));
        for &p in &cover {
            assigned[p] = true;
            small_exceptional.push(alive[p].id);
        }

        let mut idx = 0;
        alive.retain(|_| {
            let keep = !assigned[idx];
            idx += 1;
            keep
        });
        level -= 1;
    }
    if !alive.is_empty() {
        blocks.push(alive.iter().map(|p| p.id).collect());
    }

    // Strip padding parts; drop blocks emptied by the strip.
    let real_key = |id: &PartId| -> Option<String> {
        match id {
            PartId::Real(i) => Some(inst.part_keys[*i as usize].clone()),
            PartId::Pad(_) => None,
        }
    };
    let blocks: Vec<Vec<String>> = blocks
        .iter()
        .map(|b| b.iter().filter_map(real_key).collect::<Vec<String>>())
        .filter(|b| !b.is_empty())
        .collect();
    let small_exceptional: Vec<String> =
        small_exceptional.iter().filter_map(real_key).collect();
    let small_count = small_exceptional.len();
    exceptional.extend(small_exceptional);

    let k = blocks.len();
    if !k_bound_ok(k, n, inst.m) || !e_bound_ok(exceptional.len(), n, inst.m) {
        return Err(Error::ConstructionFailure(format!(
            "bounds violated: K={k}, |E|={}, n={n}, m={}",
            exceptional.len(),
            inst.m
        )));
    }
    Ok(RearrangementResult {
        blocks,
        exceptional,
        k,
        large_exceptional: large,
        small_exceptional: small_count,
    })
}

/// Outcome of checking a result against its instance. Violations are data,
/// not errors.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub violations: Vec<String>,
    pub k: usize,
    pub exceptional_card: usize,
    /// Real-valued bound n^{3/4} m on K.
    pub k_limit: f64,
    /// Real-valued bound 2 n^{3/4} m on |E|.
    pub e_limit: f64,
}

/// Checks that the blocks plus the exceptional set partition the part family,
/// that the row map is injective on every block's union, and that both
/// numeric bounds hold (exactly, on integers).
pub fn verify_partition(
    inst: &RearrangementInstance,
    result: &RearrangementResult,
) -> VerifyReport {
    let mut violations = Vec::new();
    let known: BTreeMap<&str, usize> = inst
        .part_keys
        .iter()
        .enumerate()
        .map(|(i, k)| (k.as_str(), i))
        .collect();
    let mut seen = vec![0usize; inst.parts.len()];
    let mut resolve = |key: &String, violations: &mut Vec<String>| -> Option<usize> {
        match known.get(key.as_str()) {
            Some(&i) => {
                seen[i] += 1;
                Some(i)
            }
            None => {
                violations.push(format!("unknown part key {key:?}"));
                None
            }
        }
    };

    for (b, block) in result.blocks.iter().enumerate() {
        let mut rows_hit: BTreeMap<u32, &str> = BTreeMap::new();
        for key in block {
            let Some(idx) = resolve(key, &mut violations) else { continue };
            for r in inst.part_rows(idx) {
                if let Some(prev) = rows_hit.insert(r, key.as_str()) {
                    violations.push(format!(
                        "block {b}: parts {prev:?} and {key:?} both hit row {r}"
                    ));
                }
            }
        }
    }
    for key in &result.exceptional {
        resolve(key, &mut violations);
    }
    for (i, &count) in seen.iter().enumerate() {
        if count == 0 {
            violations.push(format!("part {:?} not covered", inst.part_keys[i]));
        } else if count > 1 {
            violations.push(format!("part {:?} covered {count} times", inst.part_keys[i]));
        }
    }
    let k = result.blocks.len();
    if result.k != k {
        violations.push(format!("declared K = {} but there are {k} blocks", result.k));
    }
    if !k_bound_ok(k, inst.n, inst.m) {
        violations.push(format!("K = {k} exceeds n^(3/4) m (n={}, m={})", inst.n, inst.m));
    }
    if !e_bound_ok(result.exceptional.len(), inst.n, inst.m) {
        violations.push(format!(
            "|E| = {} exceeds 2 n^(3/4) m (n={}, m={})",
            result.exceptional.len(),
            inst.n,
            inst.m
        ));
    }
    let k_limit = (inst.n as f64).powf(0.75) * inst.m as f64;
    VerifyReport {
        pass: violations.is_empty(),
        violations,
        k,
        exceptional_card: result.exceptional.len(),
        k_limit,
        e_limit: 2.0 * k_limit,
    }
}

/// Minimal number of classes in any partition of the part family into
/// row-injective blocks (exceptional parts counted as singleton blocks), by
/// exhaustive search. Only for instances with at most 12 parts.
pub fn min_separation_bruteforce(inst: &RearrangementInstance) -> Result<usize> {
    let p = inst.parts.len();
    if p > 12 {
        return Err(Error::SweepTooLarge(format!(
            "minimal separation search needs at most 12 parts, got {p}"
        )));
    }
    if p == 0 {
        return Ok(0);
    }
    // Conflict graph: parts sharing a row cannot share a block; the answer is
    // its chromatic number.
    let mut conflict = vec![0u16; p];
    let rows: Vec<Vec<u32>> = (0..p).map(|i| inst.part_rows(i)).collect();
    for i in 0..p {
        for j in i + 1..p {
            if rows[i].iter().any(|r| rows[j].binary_search(r).is_ok()) {
                conflict[i] |= 1 << j;
                conflict[j] |= 1 << i;
            }
        }
    }
    let full: u16 = if p == 16 { u16::MAX } else { (1 << p) - 1 };
    let size = full as usize + 1;
    let mut independent = vec![false; size];
    independent[0] = true;
    for s in 1..size {
        let low = (s as u16).trailing_zeros() as usize;
        let rest = s & (s - 1);
        independent[s] = independent[rest] && (conflict[low] as usize & rest) == 0;
    }
    let mut dp = vec![u32::MAX; size];
    dp[0] = 0;
    for s in 1..size {
        let low_bit = s & s.wrapping_neg();
        let mut best = u32::MAX;
        let mut t = s;
        while t > 0 {
            if t & low_bit != 0 && independent[t] && dp[s & !t] != u32::MAX {
                best = best.min(1 + dp[s & !t]);
            }
            t = (t - 1) & s;
        }
        dp[s] = best;
    }
    Ok(dp[full as usize] as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;

    fn z3_instance() -> RearrangementInstance {
        let spec = GroupSpec::CyclicProduct { moduli: vec![3] };
        let e: Vec<GroupElement> =
            (0..3).map(|x| GroupElement::Vector(vec![x])).collect();
        let s = FiniteSubset::new(
            spec,
            vec![GroupElement::Vector(vec![0]), GroupElement::Vector(vec![1])],
        )
        .unwrap();
        instance_from_group(&e, &s).unwrap()
    }

    #[test]
    fn z3_instance_shape() {
        let inst = z3_instance();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.m(), 2);
        assert_eq!(inst.part_count(), 3);
        // Every part pairs two items from distinct rows.
        for i in 0..3 {
            assert_eq!(inst.part_rows(i).len(), 2);
        }
    }

    #[test]
    fn z3_minimal_separation_is_three() {
        let inst = z3_instance();
        assert_eq!(min_separation_bruteforce(&inst).unwrap(), 3);
    }

    #[test]
    fn z3_construction_verifies_and_respects_bounds() {
        let inst = z3_instance();
        let result = build_partition(&inst).unwrap();
        let report = verify_partition(&inst, &result);
        assert!(report.pass, "{:?}", report.violations);
        assert!(k_bound_ok(result.k, 3, 2));
        // Minimal separation is a lower bound for the construction.
        assert!(min_separation_bruteforce(&inst).unwrap() <= result.k + result.exceptional.len());
    }

    #[test]
    fn single_row_bound_one() {
        // m = 1 with small parts: one block carrying the whole family.
        let rows: Vec<Vec<String>> = (0..12).map(|i| vec![format!("x{i}")]).collect();
        let parts: BTreeMap<String, Vec<String>> =
            (0..12).map(|i| (format!("u{i}"), vec![format!("x{i}")])).collect();
        let inst = RearrangementInstance::new(rows, parts).unwrap();
        let result = build_partition(&inst).unwrap();
        assert_eq!(result.k, 1);
        assert!(result.exceptional.is_empty());
        assert!(verify_partition(&inst, &result).pass);
        assert_eq!(min_separation_bruteforce(&inst).unwrap(), 1);
    }

    #[test]
    fn single_translate_gives_singleton_parts() {
        let spec = GroupSpec::Integers { d: 1 };
        let s = FiniteSubset::new(
            spec,
            (0..4).map(|x| GroupElement::Vector(vec![x])).collect(),
        )
        .unwrap();
        let inst = instance_from_group(&[GroupElement::Vector(vec![7])], &s).unwrap();
        assert_eq!(inst.n(), 1);
        assert_eq!(inst.part_count(), 4);
        assert!((0..4).all(|i| inst.parts[i].len() == 1));
    }

    #[test]
    fn pairwise_disjoint_rows_need_one_block() {
        // Parts hitting pairwise distinct rows fit into a single class.
        let rows: Vec<Vec<String>> =
            (0..4).map(|i| vec![format!("a{i}"), format!("b{i}")]).collect();
        let mut parts = BTreeMap::new();
        parts.insert("u0".to_string(), vec!["a0".to_string(), "b1".to_string()]);
        parts.insert("u1".to_string(), vec!["a2".to_string(), "b3".to_string()]);
        parts.insert("u2".to_string(), vec!["b0".to_string(), "a1".to_string()]);
        parts.insert("u3".to_string(), vec!["b2".to_string(), "a3".to_string()]);
        let inst = RearrangementInstance::new(rows, parts).unwrap();
        // u0 and u2 share rows 0 and 1, u1 and u3 share rows 2 and 3.
        assert_eq!(min_separation_bruteforce(&inst).unwrap(), 2);

        let rows: Vec<Vec<String>> = (0..4).map(|i| vec![format!("x{i}")]).collect();
        let mut parts = BTreeMap::new();
        parts.insert("u".to_string(), vec!["x0".to_string(), "x1".to_string()]);
        parts.insert("v".to_string(), vec!["x2".to_string(), "x3".to_string()]);
        let inst = RearrangementInstance::new(rows, parts).unwrap();
        assert_eq!(min_separation_bruteforce(&inst).unwrap(), 1);
    }

    #[test]
    fn row_disjoint_parts_separate_in_one_block() {
        let rows = vec![
            vec!["a0".to_string(), "a1".to_string()],
            vec!["b0".to_string(), "b1".to_string()],
        ];
        let mut parts = BTreeMap::new();
        parts.insert("u".into(), vec!["a0".to_string(), "b0".to_string()]);
        parts.insert("v".into(), vec!["a1".to_string(), "b1".to_string()]);
        let inst = RearrangementInstance::new(rows, parts).unwrap();
        assert_eq!(min_separation_bruteforce(&inst).unwrap(), 2);
        let result = build_partition(&inst).unwrap();
        assert!(verify_partition(&inst, &result).pass);
    }

    #[test]
    fn invalid_instances_error() {
        // Two items of one row inside a part.
        let rows = vec![vec!["a".to_string(), "b".to_string()]];
        let mut parts = BTreeMap::new();
        parts.insert("u".into(), vec!["a".to_string(), "b".to_string()]);
        assert!(RearrangementInstance::new(rows, parts).is_err());

        // Uncovered item.
        let rows = vec![vec!["a".to_string(), "b".to_string()]];
        let mut parts = BTreeMap::new();
        parts.insert("u".into(), vec!["a".to_string()]);
        assert!(RearrangementInstance::new(rows, parts).is_err());

        // Duplicate item across rows.
        let rows = vec![vec!["a".to_string()], vec!["a".to_string()]];
        assert!(RearrangementInstance::new(rows, BTreeMap::new()).is_err());

        // Duplicate translate in E.
        let spec = GroupSpec::Integers { d: 1 };
        let s = FiniteSubset::new(spec, vec![GroupElement::Vector(vec![0])]).unwrap();
        let e = vec![GroupElement::Vector(vec![1]), GroupElement::Vector(vec![1])];
        assert!(instance_from_group(&e, &s).is_err());
    }

    #[test]
    fn verify_reports_violations() {
        let inst = z3_instance();
        let keys = inst.part_keys().to_vec();
        // All parts in one block: every pair collides on some row.
        let bad = RearrangementResult {
            blocks: vec![keys.clone()],
            exceptional: vec![],
            k: 1,
            large_exceptional: 0,
            small_exceptional: 0,
        };
        let report = verify_partition(&inst, &bad);
        assert!(!report.pass);
        assert!(report.violations.iter().any(|v| v.contains("both hit row")));

        // Declared K off by one.
        let mut result = build_partition(&inst).unwrap();
        result.k += 1;
        assert!(!verify_partition(&inst, &result).pass);
    }

    #[test]
    fn bound_violation_detected() {
        // A valid-looking result whose K exceeds the bound must be flagged.
        let rows: Vec<Vec<String>> = (0..2).map(|i| vec![format!("x{i}")]).collect();
        let parts: BTreeMap<String, Vec<String>> =
            (0..2).map(|i| (format!("u{i}"), vec![format!("x{i}")])).collect();
        let inst = RearrangementInstance::new(rows, parts).unwrap();
        // n = 2, m = 1: K limit is 2^{3/4} < 2, so two singleton blocks violate it.
        let bad = RearrangementResult {
            blocks: vec![vec!["u0".into()], vec!["u1".into()]],
            exceptional: vec![],
            k: 2,
            large_exceptional: 0,
            small_exceptional: 0,
        };
        let report = verify_partition(&inst, &bad);
        assert!(!report.pass);
        assert!(report.violations.iter().any(|v| v.contains("exceeds")));
    }

    #[test]
    fn free_group_instance_example() {
        let spec = GroupSpec::FreeGroup { rank: 2 };
        let gens = FiniteSubset::new(spec.clone(), spec.generators()).unwrap();
        let ball1 = crate::groups::ball(&spec, &gens, 1, 10_000).unwrap();
        let e = vec![GroupElement::Word(vec![1]), GroupElement::Word(vec![2])];
        let inst = instance_from_group(&e, &ball1).unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.m(), 5);
        assert_eq!(inst.part_count(), 9);
        let sizes: Vec<usize> = (0..9).map(|i| inst.parts[i].len()).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 1);
        assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 8);
    }

    #[test]
    fn json_roundtrip() {
        let inst = RearrangementInstance::from_json(
            r#"{"rows": [["a", "b"], ["c"]], "parts": {"u": ["a", "c"], "v": ["b"]}}"#,
        )
        .unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.m(), 2);
        let result = build_partition(&inst).unwrap();
        assert!(verify_partition(&inst, &result).pass);
    }
}
