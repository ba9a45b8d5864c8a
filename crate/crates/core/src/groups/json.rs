//! JSON and textual forms for group specifications, elements, and named sets.
//!
//! The element encoding depends on the group: integer-like groups use
//! coordinate arrays, free groups use words such as `"a b^-1 a^2"`, the
//! lamplighter uses `{"lamps": [...], "head": k}`, and direct products use
//! arrays of component forms. A full document looks like
//! `{"group": {"type": ..., ...}, "sets": {"name": [elements]}}`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{FiniteSubset, GroupElement, GroupSpec};
use crate::{Error, Result};

/// A parsed `{"group": ..., "sets": ...}` document.
#[derive(Clone, Debug)]
pub struct GroupDoc {
    pub spec: GroupSpec,
    pub sets: BTreeMap<String, FiniteSubset>,
}

pub fn parse_group_doc(text: &str) -> Result<GroupDoc> {
    let v: Value = serde_json::from_str(text)?;
    let group = v
        .get("group")
        .ok_or_else(|| Error::Parse("document has no \"group\" field".into()))?;
    let spec: GroupSpec = serde_json::from_value(group.clone())?;
    spec.validate()?;
    let mut sets = BTreeMap::new();
    if let Some(obj) = v.get("sets") {
        let obj = obj
            .as_object()
            .ok_or_else(|| Error::Parse("\"sets\" must be an object".into()))?;
        for (name, arr) in obj {
            let arr = arr.as_array().ok_or_else(|| {
                Error::Parse(format!("set {name:?} must be an array of elements"))
            })?;
            let elems = arr
                .iter()
                .map(|e| element_from_json(&spec, e))
                .collect::<Result<Vec<_>>>()?;
            sets.insert(name.clone(), FiniteSubset::new(spec.clone(), elems)?);
        }
    }
    Ok(GroupDoc { spec, sets })
}

pub fn element_to_json(spec: &GroupSpec, g: &GroupElement) -> Value {
    match (spec, g) {
        (GroupSpec::FreeGroup { .. }, GroupElement::Word(_)) => {
            Value::String(element_to_text(spec, g))
        }
        (_, GroupElement::Vector(v)) => json!(v),
        (_, GroupElement::Heisenberg(a, b, c)) => json!([a, b, c]),
        (_, GroupElement::Lamplighter { lamps, head }) => json!({"lamps": lamps, "head": head}),
        (GroupSpec::DirectProduct { factors }, GroupElement::Tuple(parts)) => Value::Array(
            factors.iter().zip(parts).map(|(f, p)| element_to_json(f, p)).collect(),
        ),
        _ => Value::Null,
    }
}

pub fn element_from_json(spec: &GroupSpec, v: &Value) -> Result<GroupElement> {
    let g = match spec {
        GroupSpec::Integers { .. } | GroupSpec::CyclicProduct { .. } => {
            GroupElement::Vector(int_array(v)?)
        }
        GroupSpec::FreeGroup { rank } => {
            let s = v
                .as_str()
                .ok_or_else(|| Error::Parse(format!("free-group element must be a word: {v}")))?;
            parse_word(s, *rank)?
        }
        GroupSpec::Heisenberg => {
            let t = int_array(v)?;
            if t.len() != 3 {
                return Err(Error::Parse(format!("Heisenberg element needs 3 coordinates: {v}")));
            }
            GroupElement::Heisenberg(t[0], t[1], t[2])
        }
        GroupSpec::Lamplighter => {
            let obj = v.as_object().ok_or_else(|| {
                Error::Parse(format!("lamplighter element must be {{\"lamps\", \"head\"}}: {v}"))
            })?;
            let lamps = int_array(
                obj.get("lamps").ok_or_else(|| Error::Parse("missing \"lamps\"".into()))?,
            )?;
            let head = obj
                .get("head")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse("missing integer \"head\"".into()))?;
            let mut lamps = lamps;
            lamps.sort_unstable();
            lamps.dedup();
            GroupElement::Lamplighter { lamps, head }
        }
        GroupSpec::DirectProduct { factors } => {
            let arr = v.as_array().ok_or_else(|| {
                Error::Parse(format!("product element must be an array of components: {v}"))
            })?;
            if arr.len() != factors.len() {
                return Err(Error::Parse(format!(
                    "product element has {} components, expected {}",
                    arr.len(),
                    factors.len()
                )));
            }
            GroupElement::Tuple(
                factors
                    .iter()
                    .zip(arr)
                    .map(|(f, c)| element_from_json(f, c))
                    .collect::<Result<_>>()?,
            )
        }
    };
    spec.validate_element(&g)?;
    Ok(g)
}

/// Canonical textual form; for non-free groups this is compact JSON.
pub fn element_to_text(spec: &GroupSpec, g: &GroupElement) -> String {
    if let (GroupSpec::FreeGroup { .. }, GroupElement::Word(w)) = (spec, g) {
        if w.is_empty() {
            return "e".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let l = w[i];
            let mut run = 1;
            while i + run < w.len() && w[i + run] == l {
                run += 1;
            }
            let letter = (b'a' + (l.unsigned_abs() as u8 - 1)) as char;
            let exp = if l > 0 { run as i64 } else { -(run as i64) };
            if exp == 1 {
                parts.push(letter.to_string());
            } else {
                parts.push(format!("{letter}^{exp}"));
            }
            i += run;
        }
        return parts.join(" ");
    }
    element_to_json(spec, g).to_string()
}

pub fn element_from_text(spec: &GroupSpec, s: &str) -> Result<GroupElement> {
    if let GroupSpec::FreeGroup { rank } = spec {
        return parse_word(s, *rank);
    }
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("{e}: {s:?}")))?;
    element_from_json(spec, &v)
}

fn int_array(v: &Value) -> Result<Vec<i64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array of integers: {v}")))?;
    arr.iter()
        .map(|x| x.as_i64().ok_or_else(|| Error::Parse(format!("expected an integer: {x}"))))
        .collect()
}

/// Parses a word like "a b^-1 a^2"; "e" or "" is the identity. The result is
/// reduced.
fn parse_word(s: &str, rank: usize) -> Result<GroupElement> {
    let mut letters: Vec<i32> = Vec::new();
    for tok in s.split_whitespace() {
        if tok == "e" {
            continue;
        }
        let mut chars = tok.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::Parse(format!("empty token in word {s:?}")))?;
        if !letter.is_ascii_lowercase() {
            return Err(Error::Parse(format!("bad generator letter {letter:?} in {s:?}")));
        }
        let idx = (letter as u8 - b'a') as usize + 1;
        if idx > rank {
            return Err(Error::Parse(format!(
                "letter {letter:?} outside free group of rank {rank}"
            )));
        }
        let rest: String = chars.collect();
        let exp: i64 = if rest.is_empty() {
            1
        } else {
            let stripped = rest
                .strip_prefix('^')
                .ok_or_else(|| Error::Parse(format!("expected ^ in token {tok:?}")))?;
            stripped
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in token {tok:?}")))?
        };
        if exp == 0 {
            continue;
        }
        let letter_signed = if exp > 0 { idx as i32 } else { -(idx as i32) };
        for _ in 0..exp.unsigned_abs() {
            if letters.last() == Some(&-letter_signed) {
                letters.pop();
            } else {
                letters.push(letter_signed);
            }
        }
    }
    Ok(GroupElement::Word(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_roundtrip() {
        let spec = GroupSpec::FreeGroup { rank: 2 };
        for s in ["e", "a", "a b^-1 a^2", "b^-3 a"] {
            let g = element_from_text(&spec, s).unwrap();
            assert_eq!(element_to_text(&spec, &g), s);
        }
        // Unreduced input reduces.
        let g = element_from_text(&spec, "a a^-1 b").unwrap();
        assert_eq!(element_to_text(&spec, &g), "b");
    }

    #[test]
    fn doc_parses_sets() {
        let doc = parse_group_doc(
            r#"{"group": {"type": "integers", "d": 1},
                "sets": {"F": [[0], [1]], "C": [[0], [1], [2]]}}"#,
        )
        .unwrap();
        assert_eq!(doc.sets["F"].card(), 2);
        assert_eq!(doc.sets["C"].card(), 3);
    }

    #[test]
    fn lamplighter_json_roundtrip() {
        let spec = GroupSpec::Lamplighter;
        let g = GroupElement::Lamplighter { lamps: vec![-1, 2], head: 3 };
        let v = element_to_json(&spec, &g);
        assert_eq!(element_from_json(&spec, &v).unwrap(), g);
    }

    #[test]
    fn product_element_json() {
        let spec = GroupSpec::DirectProduct {
            factors: vec![GroupSpec::Integers { d: 1 }, GroupSpec::FreeGroup { rank: 1 }],
        };
        let v: Value = serde_json::from_str(r#"[[3], "a^2"]"#).unwrap();
        let g = element_from_json(&spec, &v).unwrap();
        assert_eq!(
            g,
            GroupElement::Tuple(vec![
                GroupElement::Vector(vec![3]),
                GroupElement::Word(vec![1, 1]),
            ])
        );
        assert_eq!(element_from_json(&spec, &element_to_json(&spec, &g)).unwrap(), g);
    }

    #[test]
    fn bad_inputs_error() {
        assert!(parse_group_doc(r#"{"sets": {}}"#).is_err());
        let spec = GroupSpec::FreeGroup { rank: 1 };
        assert!(element_from_text(&spec, "b").is_err());
        assert!(element_from_text(&spec, "a^x").is_err());
        let cyc = GroupSpec::CyclicProduct { moduli: vec![3] };
        assert!(element_from_text(&cyc, "[5]").is_err());
    }
}
