//! Finite partial orders and raw binary relations.
//!
//! The ground set is an ordered list of opaque element names; every relation
//! over it is stored as a dense boolean matrix indexed by position in that
//! list. [`Relation`] carries no structural promises — it is the type for
//! intermediate objects (forced cores, auxiliary extensions) that may be
//! cyclic or partial. [`Poset`] wraps a relation that has been checked to be
//! reflexive, antisymmetric and transitive, and is the normative order `≳`
//! every other module works against.
//!
//! All values are immutable after construction and all operations are pure,
//! so instances can be shared freely across threads.

use std::fmt;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

/// Validation and lookup failures for relations and posets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("element list is empty")]
    EmptyElementList,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relation is not reflexive: missing `{0} ≥ {0}`")]
    NotReflexive(String),
    #[error("relation is not antisymmetric: `{0}` and `{1}` are mutually related")]
    NotAntisymmetric(String, String),
    #[error("relation is not transitive: `{0} ≥ {1} ≥ {2}` but not `{0} ≥ {2}`")]
    NotTransitive(String, String, String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// A binary relation on a fixed element list, with no axioms imposed.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    elements: Arc<[String]>,
    matrix: Vec<bool>,
}

impl Relation {
    /// The empty relation (no pairs, not even reflexive ones).
    pub fn empty(elements: Vec<String>) -> Result<Self, PosetError> {
        if elements.is_empty() {
            return Err(PosetError::EmptyElementList);
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(PosetError::DuplicateElement(e.clone()));
            }
        }
        let n = elements.len();
        Ok(Relation { elements: elements.into(), matrix: vec![false; n * n] })
    }

    /// Builds a relation from `(above, below)` pairs given by element name.
    pub fn from_pairs<S: AsRef<str>>(
        elements: Vec<String>,
        pairs: &[(S, S)],
    ) -> Result<Self, PosetError> {
        let mut rel = Relation::empty(elements)?;
        let n = rel.len();
        for (a, b) in pairs {
            let i = rel.index_of(a.as_ref())?;
            let j = rel.index_of(b.as_ref())?;
            rel.matrix[i * n + j] = true;
        }
        Ok(rel)
    }

    /// Builds a relation over existing elements from an index predicate.
    pub fn from_fn(elements: Arc<[String]>, f: impl Fn(usize, usize) -> bool) -> Self {
        let n = elements.len();
        let mut matrix = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                matrix[i * n + j] = f(i, j);
            }
        }
        Relation { elements, matrix }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // element lists are nonempty by construction
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub(crate) fn elements_arc(&self) -> Arc<[String]> {
        Arc::clone(&self.elements)
    }

    pub fn index_of(&self, name: &str) -> Result<usize, PosetError> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| PosetError::UnknownElement(name.to_owned()))
    }

    /// Whether `i ≥ j` holds.
    pub fn ge(&self, i: usize, j: usize) -> bool {
        self.matrix[i * self.len() + j]
    }

    /// Whether `i > j` holds (`i ≥ j` but not `j ≥ i`).
    pub fn gt(&self, i: usize, j: usize) -> bool {
        self.ge(i, j) && !self.ge(j, i)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.ge(i, j) || self.ge(j, i)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let n = self.len();
        self.matrix[i * n + j] = value;
    }

    /// All `(i, j)` index pairs with `i ≥ j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (0..n).map(move |j| (i, j))).filter(move |&(i, j)| self.ge(i, j))
    }

    /// Smallest transitive relation containing this one, by repeated boolean
    /// squaring (`M ← M ∨ M·M` until fixpoint).
    pub fn transitive_closure(&self) -> Relation {
        let n = self.len();
        let mut m = self.matrix.clone();
        loop {
            let mut changed = false;
            let mut next = m.clone();
            for i in 0..n {
                for k in 0..n {
                    if m[i * n + k] {
                        for j in 0..n {
                            if m[k * n + j] && !next[i * n + j] {
                                next[i * n + j] = true;
                                changed = true;
                            }
                        }
                    }
                }
            }
            m = next;
            if !changed {
                break;
            }
        }
        Relation { elements: Arc::clone(&self.elements), matrix: m }
    }

    /// The transposed relation.
    pub fn transpose(&self) -> Relation {
        Relation::from_fn(Arc::clone(&self.elements), |i, j| self.ge(j, i))
    }

    /// Checks the three partial-order axioms, reporting the first violation
    /// in a fixed scan order (reflexivity, antisymmetry, transitivity).
    pub fn check_poset_axioms(&self) -> Result<(), PosetError> {
        let n = self.len();
        for i in 0..n {
            if !self.ge(i, i) {
                return Err(PosetError::NotReflexive(self.elements[i].clone()));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.ge(i, j) && self.ge(j, i) {
                    return Err(PosetError::NotAntisymmetric(
                        self.elements[i].clone(),
                        self.elements[j].clone(),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.ge(i, j) {
                    for k in 0..n {
                        if self.ge(j, k) && !self.ge(i, k) {
                            return Err(PosetError::NotTransitive(
                                self.elements[i].clone(),
                                self.elements[j].clone(),
                                self.elements[k].clone(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .pairs()
            .filter(|&(i, j)| i != j)
            .map(|(i, j)| format!("{}≥{}", self.elements[i], self.elements[j]))
            .collect();
        write!(f, "Relation({})", pairs.join(", "))
    }
}

/// A validated finite partial order: reflexive, antisymmetric, transitive.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    rel: Relation,
}

/// Checks all three axioms and promotes the relation to a [`Poset`].
pub fn validate_poset(rel: Relation) -> Result<Poset, PosetError> {
    rel.check_poset_axioms()?;
    Ok(Poset { rel })
}

impl Poset {
    /// Builds a poset from strict `(above, below)` pairs; the reflexive pairs
    /// are added automatically, and the input must already be transitively
    /// closed (use [`Poset::from_covers`] otherwise).
    pub fn from_order_pairs<S: AsRef<str>>(
        elements: Vec<String>,
        pairs: &[(S, S)],
    ) -> Result<Self, PosetError> {
        let mut rel = Relation::from_pairs(elements, pairs)?;
        for i in 0..rel.len() {
            rel.set(i, i, true);
        }
        validate_poset(rel)
    }

    /// Builds a poset from a cover (Hasse) edge list: the relation is the
    /// reflexive-transitive closure of the covers.
    pub fn from_covers<S: AsRef<str>>(
        elements: Vec<String>,
        covers: &[(S, S)],
    ) -> Result<Self, PosetError> {
        let mut rel = Relation::from_pairs(elements, covers)?.transitive_closure();
        for i in 0..rel.len() {
            rel.set(i, i, true);
        }
        validate_poset(rel)
    }

    /// A poset with no relations beyond reflexivity.
    pub fn antichain(elements: Vec<String>) -> Result<Self, PosetError> {
        Poset::from_order_pairs::<&str>(elements, &[])
    }

    /// The chain `elements[0] > elements[1] > …`.
    pub fn chain(elements: Vec<String>) -> Result<Self, PosetError> {
        let mut rel = Relation::empty(elements)?;
        for i in 0..rel.len() {
            for j in i..rel.len() {
                rel.set(i, j, true);
            }
        }
        validate_poset(rel)
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn len(&self) -> usize {
        self.rel.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[String] {
        self.rel.elements()
    }

    pub fn element(&self, i: usize) -> &str {
        self.rel.element(i)
    }

    pub(crate) fn elements_arc(&self) -> Arc<[String]> {
        self.rel.elements_arc()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, PosetError> {
        self.rel.index_of(name)
    }

    /// Whether `i ≳ j`.
    pub fn ge(&self, i: usize, j: usize) -> bool {
        self.rel.ge(i, j)
    }

    /// Whether `i > j` (strict part of `≳`).
    pub fn gt(&self, i: usize, j: usize) -> bool {
        self.rel.gt(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.rel.comparable(i, j)
    }

    /// All ordered index pairs `(i, j)` with `i ≳ j` and `i ≠ j`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rel.pairs().filter(|&(i, j)| i != j)
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .strict_pairs()
            .map(|(i, j)| format!("{}>{}", self.element(i), self.element(j)))
            .collect();
        write!(f, "Poset[{}]({})", self.elements().join(","), pairs.join(", "))
    }
}

/// Transitive reduction (cover relation / Hasse diagram) of a poset.
///
/// Computed on the strict part: `i` covers `j` iff `i > j` and no `k` has
/// `i > k > j`. For finite posets this is the unique minimal relation whose
/// reflexive-transitive closure recovers the original order.
pub fn transitive_reduction(p: &Poset) -> Relation {
    let n = p.len();
    Relation::from_fn(p.elements_arc(), |i, j| {
        p.gt(i, j) && !(0..n).any(|k| p.gt(i, k) && p.gt(k, j))
    })
}

/// The inverse order: `i ≥ j` in the dual iff `j ≳ i` in `p`.
pub fn dual(p: &Poset) -> Poset {
    let rel = p.rel.transpose();
    debug_assert!(rel.check_poset_axioms().is_ok());
    Poset { rel }
}

/// Whether every pair of elements is `≳`-comparable.
pub fn is_complete(p: &Poset) -> bool {
    let n = p.len();
    (0..n).all(|i| (i + 1..n).all(|j| p.comparable(i, j)))
}

/// Renders the transitive reduction as Graphviz DOT, edges drawn downward
/// from the greater element to the one it covers.
pub fn poset_to_dot(p: &Poset) -> String {
    let covers = transitive_reduction(p);
    let mut out = String::from("digraph poset {\n  rankdir=TB;\n  node [shape=plaintext];\n");
    for e in p.elements() {
        out.push_str(&format!("  \"{e}\";\n"));
    }
    for (i, j) in covers.pairs() {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", p.element(i), p.element(j)));
    }
    out.push_str("}\n");
    out
}

#[derive(Deserialize)]
struct PosetInput {
    elements: Vec<String>,
    #[serde(default)]
    covers: Option<Vec<(String, String)>>,
    #[serde(default)]
    relation: Option<Vec<(String, String)>>,
}

/// Parses the JSON poset schema: `{"elements": [...], "covers": [[a,b],...]}`
/// (covers are closed reflexively and transitively on load) or
/// `{"elements": [...], "relation": [[a,b],...]}` (full matrix as pairs,
/// validated as given apart from reflexive loops, which are added).
pub fn poset_from_json(input: &str) -> Result<Poset, PosetError> {
    let parsed: PosetInput =
        serde_json::from_str(input).map_err(|e| PosetError::Malformed(e.to_string()))?;
    match (parsed.covers, parsed.relation) {
        (Some(covers), None) => Poset::from_covers(parsed.elements, &covers),
        (None, Some(pairs)) => Poset::from_order_pairs(parsed.elements, &pairs),
        (None, None) => Poset::antichain(parsed.elements),
        (Some(_), Some(_)) => {
            Err(PosetError::Malformed("give either `covers` or `relation`, not both".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn chain_is_valid() {
        let p = fixtures::chain3();
        assert!(p.gt(0, 1) && p.gt(1, 2) && p.gt(0, 2));
        assert!(is_complete(&p));
    }

    #[test]
    fn antichain_is_valid_but_incomplete() {
        let p = fixtures::anti2();
        assert!(!p.comparable(0, 1));
        assert!(!is_complete(&p));
    }

    #[test]
    fn antisymmetry_violation_is_reported() {
        let rel = Relation::from_pairs(
            vec!["x".into(), "y".into()],
            &[("x", "y"), ("y", "x"), ("x", "x"), ("y", "y")],
        )
        .unwrap();
        assert_eq!(
            validate_poset(rel).unwrap_err(),
            PosetError::NotAntisymmetric("x".into(), "y".into())
        );
    }

    #[test]
    fn closure_adds_two_step_edges() {
        let rel =
            Relation::from_pairs(vec!["x".into(), "y".into(), "z".into()], &[("x", "y"), ("y", "z")])
                .unwrap();
        let closed = rel.transitive_closure();
        assert!(closed.ge(0, 2));
        assert_eq!(closed.transitive_closure(), closed, "closure is idempotent");
    }

    #[test]
    fn reduction_of_chain_keeps_only_covers() {
        let p = fixtures::chain3();
        let red = transitive_reduction(&p);
        assert!(red.ge(0, 1) && red.ge(1, 2));
        assert!(!red.ge(0, 2), "x→z is implied and must be removed");
        assert!(!red.ge(0, 0), "no reflexive loops in the cover set");
    }

    #[test]
    fn reduction_of_diamond_removes_top_to_bottom() {
        let p = fixtures::diamond4();
        let red = transitive_reduction(&p);
        let (x, y, z, w) =
            (p.index_of("x").unwrap(), p.index_of("y").unwrap(), p.index_of("z").unwrap(), p.index_of("w").unwrap());
        assert!(red.ge(x, y) && red.ge(x, z) && red.ge(y, w) && red.ge(z, w));
        assert!(!red.ge(x, w));
    }

    #[test]
    fn perm3_reduction_is_the_hexagon() {
        let p = fixtures::perm3();
        let red = transitive_reduction(&p);
        let edge_count = red.pairs().count();
        assert_eq!(edge_count, 6, "hexagon of covers");
        // closing the hexagon recovers the full order
        let mut closed = red.transitive_closure();
        for i in 0..closed.len() {
            closed.set(i, i, true);
        }
        assert_eq!(&closed, p.relation());
    }

    #[test]
    fn dual_is_involution() {
        for p in [fixtures::hook(), fixtures::diamond4(), fixtures::perm3()] {
            assert_eq!(dual(&dual(&p)), p);
            assert_eq!(is_complete(&p), is_complete(&dual(&p)));
        }
    }

    #[test]
    fn json_covers_and_relation_forms_agree() {
        let from_covers = poset_from_json(
            r#"{"elements": ["x","y","z"], "covers": [["x","y"],["y","z"]]}"#,
        )
        .unwrap();
        let from_relation = poset_from_json(
            r#"{"elements": ["x","y","z"], "relation": [["x","y"],["y","z"],["x","z"]]}"#,
        )
        .unwrap();
        assert_eq!(from_covers, from_relation);
        assert_eq!(from_covers, fixtures::chain3());
    }

    #[test]
    fn json_rejects_unknown_elements() {
        let err = poset_from_json(r#"{"elements": ["x"], "covers": [["x","q"]]}"#).unwrap_err();
        assert_eq!(err, PosetError::UnknownElement("q".into()));
    }
}
