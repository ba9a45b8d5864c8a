//! Exact arithmetic for a fixed menu of finitely generated groups, Cayley-ball
//! enumeration, and finite-set algebra under counting measure.
//!
//! Elements are kept in a canonical form unique per group element, so equality
//! is structural and sets are plain sorted vectors. All operations are pure;
//! everything is deterministic.

mod json;

pub use json::{
    element_from_json, element_from_text, element_to_json, element_to_text, parse_group_doc,
    GroupDoc,
};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default cap on the number of elements a ball enumeration may produce.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// Which group we are working in, with its structural parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupSpec {
    /// Z^d under addition.
    Integers { d: usize },
    /// Free group on `rank` generators.
    #[serde(rename = "free")]
    FreeGroup { rank: usize },
    /// 3x3 upper unitriangular integer matrices, stored as (a, b, c) for
    /// rows [1 a c; 0 1 b; 0 0 1].
    Heisenberg,
    /// Z_2 wr Z: a finite set of lit lamp positions plus a head position.
    Lamplighter,
    /// Product of cyclic groups Z_{m_1} x ... x Z_{m_k}.
    CyclicProduct { moduli: Vec<u64> },
    /// Direct product of arbitrary factors.
    DirectProduct { factors: Vec<GroupSpec> },
}

/// A group element in canonical form. The variant must match the spec;
/// structural equality is group equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    /// Integer vector (Integers, CyclicProduct; cyclic coordinates reduced mod m_i).
    Vector(Vec<i64>),
    /// Reduced word; letter +k is generator k, -k its inverse (k is 1-based).
    Word(Vec<i32>),
    /// Heisenberg triple (a, b, c).
    Heisenberg(i64, i64, i64),
    /// Lamplighter: sorted duplicate-free lit positions plus head.
    Lamplighter { lamps: Vec<i64>, head: i64 },
    /// Component list for a direct product.
    Tuple(Vec<GroupElement>),
}

impl GroupSpec {
    /// Structural validity of the spec itself.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Integers { d } => {
                if *d == 0 {
                    return Err(Error::InvalidSpec("integers: dimension must be >= 1".into()));
                }
            }
            GroupSpec::FreeGroup { rank } => {
                if *rank == 0 || *rank > 26 {
                    return Err(Error::InvalidSpec(
                        "free group: rank must be in 1..=26 (letters a..z)".into(),
                    ));
                }
            }
            GroupSpec::Heisenberg | GroupSpec::Lamplighter => {}
            GroupSpec::CyclicProduct { moduli } => {
                if moduli.is_empty() {
                    return Err(Error::InvalidSpec("cyclic product: no moduli".into()));
                }
                if let Some(m) = moduli.iter().find(|&&m| m < 2) {
                    return Err(Error::InvalidSpec(format!(
                        "cyclic product: modulus {m} must be >= 2"
                    )));
                }
            }
            GroupSpec::DirectProduct { factors } => {
                if factors.is_empty() {
                    return Err(Error::InvalidSpec("direct product: no factors".into()));
                }
                for f in factors {
                    f.validate()?;
                }
            }
        }
        Ok(())
    }

    /// The identity element.
    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::Integers { d } => GroupElement::Vector(vec![0; *d]),
            GroupSpec::FreeGroup { .. } => GroupElement::Word(Vec::new()),
            GroupSpec::Heisenberg => GroupElement::Heisenberg(0, 0, 0),
            GroupSpec::Lamplighter => GroupElement::Lamplighter { lamps: Vec::new(), head: 0 },
            GroupSpec::CyclicProduct { moduli } => GroupElement::Vector(vec![0; moduli.len()]),
            GroupSpec::DirectProduct { factors } => {
                GroupElement::Tuple(factors.iter().map(|f| f.identity()).collect())
            }
        }
    }

    /// Checks that `g` is a canonical element of this group.
    pub fn validate_element(&self, g: &GroupElement) -> Result<()> {
        match (self, g) {
            (GroupSpec::Integers { d }, GroupElement::Vector(v)) => {
                if v.len() != *d {
                    return Err(Error::InvalidElement(format!(
                        "vector length {} does not match dimension {d}",
                        v.len()
                    )));
                }
            }
            (GroupSpec::FreeGroup { rank }, GroupElement::Word(w)) => {
                for &l in w {
                    if l == 0 || l.unsigned_abs() as usize > *rank {
                        return Err(Error::InvalidElement(format!(
                            "letter {l} outside rank {rank}"
                        )));
                    }
                }
                if w.windows(2).any(|p| p[0] == -p[1]) {
                    return Err(Error::InvalidElement("word is not reduced".into()));
                }
            }
            (GroupSpec::Heisenberg, GroupElement::Heisenberg(..)) => {}
            (GroupSpec::Lamplighter, GroupElement::Lamplighter { lamps, .. }) => {
                if lamps.windows(2).any(|p| p[0] >= p[1]) {
                    return Err(Error::InvalidElement(
                        "lamp positions must be sorted and duplicate-free".into(),
                    ));
                }
            }
            (GroupSpec::CyclicProduct { moduli }, GroupElement::Vector(v)) => {
                if v.len() != moduli.len() {
                    return Err(Error::InvalidElement(format!(
                        "vector length {} does not match {} moduli",
                        v.len(),
                        moduli.len()
                    )));
                }
                for (x, m) in v.iter().zip(moduli) {
                    if *x < 0 || *x as u64 >= *m {
                        return Err(Error::InvalidElement(format!(
                            "coordinate {x} not reduced mod {m}"
                        )));
                    }
                }
            }
            (GroupSpec::DirectProduct { factors }, GroupElement::Tuple(parts)) => {
                if parts.len() != factors.len() {
                    return Err(Error::InvalidElement(format!(
                        "tuple length {} does not match {} factors",
                        parts.len(),
                        factors.len()
                    )));
                }
                for (f, p) in factors.iter().zip(parts) {
                    f.validate_element(p)?;
                }
            }
            _ => {
                return Err(Error::SpecMismatch(format!(
                    "element {g:?} has the wrong shape for {self}"
                )))
            }
        }
        Ok(())
    }

    /// Canonical form of g*h.
    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.validate_element(g)?;
        self.validate_element(h)?;
        Ok(match (self, g, h) {
            (GroupSpec::Integers { .. }, GroupElement::Vector(a), GroupElement::Vector(b)) => {
                GroupElement::Vector(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| x.checked_add(*y).ok_or_else(overflow))
                        .collect::<Result<_>>()?,
                )
            }
            (GroupSpec::FreeGroup { .. }, GroupElement::Word(a), GroupElement::Word(b)) => {
                let mut out = a.clone();
                for &l in b {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                GroupElement::Word(out)
            }
            (
                GroupSpec::Heisenberg,
                &GroupElement::Heisenberg(a, b, c),
                &GroupElement::Heisenberg(a2, b2, c2),
            ) => {
                // Matrix product gives c'' = c + c' + a*b'.
                let ab = a.checked_mul(b2).ok_or_else(overflow)?;
                GroupElement::Heisenberg(
                    a.checked_add(a2).ok_or_else(overflow)?,
                    b.checked_add(b2).ok_or_else(overflow)?,
                    c.checked_add(c2).and_then(|s| s.checked_add(ab)).ok_or_else(overflow)?,
                )
            }
            (
                GroupSpec::Lamplighter,
                GroupElement::Lamplighter { lamps: l1, head: k1 },
                GroupElement::Lamplighter { lamps: l2, head: k2 },
            ) => {
                // (L1, k1)(L2, k2) = (L1 xor (k1 + L2), k1 + k2).
                let mut lamps: BTreeSet<i64> = l1.iter().copied().collect();
                for &x in l2 {
                    let shifted = k1.checked_add(x).ok_or_else(overflow)?;
                    if !lamps.remove(&shifted) {
                        lamps.insert(shifted);
                    }
                }
                GroupElement::Lamplighter {
                    lamps: lamps.into_iter().collect(),
                    head: k1.checked_add(*k2).ok_or_else(overflow)?,
                }
            }
            (
                GroupSpec::CyclicProduct { moduli },
                GroupElement::Vector(a),
                GroupElement::Vector(b),
            ) => GroupElement::Vector(
                a.iter()
                    .zip(b)
                    .zip(moduli)
                    .map(|((x, y), m)| (x + y).rem_euclid(*m as i64))
                    .collect(),
            ),
            (
                GroupSpec::DirectProduct { factors },
                GroupElement::Tuple(a),
                GroupElement::Tuple(b),
            ) => GroupElement::Tuple(
                factors
                    .iter()
                    .zip(a.iter().zip(b))
                    .map(|(f, (x, y))| f.compose(x, y))
                    .collect::<Result<_>>()?,
            ),
            _ => unreachable!("validated above"),
        })
    }

    /// Canonical form of g^{-1}.
    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.validate_element(g)?;
        Ok(match (self, g) {
            (GroupSpec::Integers { .. }, GroupElement::Vector(v)) => {
                GroupElement::Vector(v.iter().map(|x| -x).collect())
            }
            (GroupSpec::FreeGroup { .. }, GroupElement::Word(w)) => {
                GroupElement::Word(w.iter().rev().map(|l| -l).collect())
            }
            (GroupSpec::Heisenberg, &GroupElement::Heisenberg(a, b, c)) => {
                let ab = a.checked_mul(b).ok_or_else(overflow)?;
                GroupElement::Heisenberg(-a, -b, ab.checked_sub(c).ok_or_else(overflow)?)
            }
            (GroupSpec::Lamplighter, GroupElement::Lamplighter { lamps, head }) => {
                let mut moved: Vec<i64> = lamps
                    .iter()
                    .map(|x| x.checked_sub(*head).ok_or_else(overflow))
                    .collect::<Result<_>>()?;
                moved.sort_unstable();
                GroupElement::Lamplighter { lamps: moved, head: -head }
            }
            (GroupSpec::CyclicProduct { moduli }, GroupElement::Vector(v)) => GroupElement::Vector(
                v.iter().zip(moduli).map(|(x, m)| (-x).rem_euclid(*m as i64)).collect(),
            ),
            (GroupSpec::DirectProduct { factors }, GroupElement::Tuple(parts)) => {
                GroupElement::Tuple(
                    factors
                        .iter()
                        .zip(parts)
                        .map(|(f, p)| f.inverse(p))
                        .collect::<Result<_>>()?,
                )
            }
            _ => unreachable!("validated above"),
        })
    }

    /// The distinguished finite generating set: standard generators and their
    /// inverses, deduplicated.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut gens = BTreeSet::new();
        match self {
            GroupSpec::Integers { d } => {
                for i in 0..*d {
                    for s in [1i64, -1] {
                        let mut v = vec![0; *d];
                        v[i] = s;
                        gens.insert(GroupElement::Vector(v));
                    }
                }
            }
            GroupSpec::FreeGroup { rank } => {
                for k in 1..=*rank as i32 {
                    gens.insert(GroupElement::Word(vec![k]));
                    gens.insert(GroupElement::Word(vec![-k]));
                }
            }
            GroupSpec::Heisenberg => {
                for (a, b) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    gens.insert(GroupElement::Heisenberg(a, b, 0));
                }
            }
            GroupSpec::Lamplighter => {
                // Head moves and the lamp toggle at the origin (self-inverse).
                gens.insert(GroupElement::Lamplighter { lamps: vec![], head: 1 });
                gens.insert(GroupElement::Lamplighter { lamps: vec![], head: -1 });
                gens.insert(GroupElement::Lamplighter { lamps: vec![0], head: 0 });
            }
            GroupSpec::CyclicProduct { moduli } => {
                for (i, m) in moduli.iter().enumerate() {
                    let mut v = vec![0; moduli.len()];
                    v[i] = 1;
                    gens.insert(GroupElement::Vector(v.clone()));
                    v[i] = (*m as i64) - 1;
                    gens.insert(GroupElement::Vector(v));
                }
            }
            GroupSpec::DirectProduct { factors } => {
                for (i, f) in factors.iter().enumerate() {
                    for g in f.generators() {
                        let mut parts: Vec<GroupElement> =
                            factors.iter().map(|f| f.identity()).collect();
                        parts[i] = g;
                        gens.insert(GroupElement::Tuple(parts));
                    }
                }
            }
        }
        gens.into_iter().collect()
    }
}

fn overflow() -> Error {
    Error::InvalidElement("integer overflow in group arithmetic".into())
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Integers { d } => {
                if *d == 1 {
                    write!(f, "Z")
                } else {
                    write!(f, "Z^{d}")
                }
            }
            GroupSpec::FreeGroup { rank } => write!(f, "F_{rank}"),
            GroupSpec::Heisenberg => write!(f, "Heis"),
            GroupSpec::Lamplighter => write!(f, "Z2wrZ"),
            GroupSpec::CyclicProduct { moduli } => {
                let parts: Vec<String> = moduli.iter().map(|m| format!("Z/{m}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            GroupSpec::DirectProduct { factors } => {
                let parts: Vec<String> = factors.iter().map(|g| g.to_string()).collect();
                write!(f, "({})", parts.join(" x "))
            }
        }
    }
}

/// An exact finite subset of one group; carries the counting measure via
/// `card`. Elements are sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSubset {
    spec: GroupSpec,
    elems: Vec<GroupElement>,
}

impl FiniteSubset {
    /// Builds a set, validating every element against the spec; input order
    /// and duplicates are irrelevant.
    pub fn new(spec: GroupSpec, mut elems: Vec<GroupElement>) -> Result<Self> {
        spec.validate()?;
        for e in &elems {
            spec.validate_element(e)?;
        }
        elems.sort_unstable();
        elems.dedup();
        Ok(FiniteSubset { spec, elems })
    }

    fn from_sorted(spec: GroupSpec, elems: Vec<GroupElement>) -> Self {
        debug_assert!(elems.windows(2).all(|p| p[0] < p[1]));
        FiniteSubset { spec, elems }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Counting measure m(F) = |F|.
    pub fn card(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elems.binary_search(g).is_ok()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elems
    }

    /// Members of `self` not in `other` (set difference).
    pub fn difference(&self, other: &FiniteSubset) -> Result<FiniteSubset> {
        same_spec(self, other)?;
        let elems =
            self.elems.iter().filter(|e| !other.contains(e)).cloned().collect::<Vec<_>>();
        Ok(FiniteSubset::from_sorted(self.spec.clone(), elems))
    }
}

fn same_spec(a: &FiniteSubset, b: &FiniteSubset) -> Result<()> {
    if a.spec != b.spec {
        return Err(Error::SpecMismatch(format!("{} vs {}", a.spec, b.spec)));
    }
    Ok(())
}

/// All products of at most `radius` generators, breadth-first and
/// deduplicated. Aborts with an explicit error if more than `cap` elements
/// would be produced.
pub fn ball(
    spec: &GroupSpec,
    generators: &FiniteSubset,
    radius: usize,
    cap: usize,
) -> Result<FiniteSubset> {
    if generators.spec != *spec {
        return Err(Error::SpecMismatch("generators come from a different group".into()));
    }
    if generators.is_empty() {
        return Err(Error::InvalidParams("ball: generating set is empty".into()));
    }
    let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
    seen.insert(spec.identity());
    let mut frontier: Vec<GroupElement> = vec![spec.identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for g in &frontier {
            for s in generators.elements() {
                let h = spec.compose(g, s)?;
                if seen.insert(h.clone()) {
                    if seen.len() > cap {
                        return Err(Error::BudgetExceeded { partial: seen.len(), cap });
                    }
                    next.push(h);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(FiniteSubset::from_sorted(spec.clone(), seen.into_iter().collect()))
}

/// The product set EC = { t c : t in E, c in C }, exact and deduplicated.
pub fn product_set(e: &FiniteSubset, c: &FiniteSubset) -> Result<FiniteSubset> {
    same_spec(e, c)?;
    let spec = &e.spec;
    let mut out = BTreeSet::new();
    for t in e.elements() {
        for x in c.elements() {
            out.insert(spec.compose(t, x)?);
        }
    }
    Ok(FiniteSubset::from_sorted(spec.clone(), out.into_iter().collect()))
}

/// The translate difference tC \ C.
pub fn translate_difference(t: &GroupElement, c: &FiniteSubset) -> Result<FiniteSubset> {
    let spec = &c.spec;
    spec.validate_element(t)?;
    let mut out = Vec::new();
    for x in c.elements() {
        let y = spec.compose(t, x)?;
        if !c.contains(&y) {
            out.push(y);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(FiniteSubset::from_sorted(spec.clone(), out))
}
