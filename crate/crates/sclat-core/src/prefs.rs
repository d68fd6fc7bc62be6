//! Weak orders (complete transitive preferences) and single-crossing dominance.
//!
//! A preference is stored as a rank function over the poset's element list:
//! rank 0 is the most preferred tier, tied elements share a rank, and ranks
//! are consecutive. That makes pairwise comparison O(1) and equality
//! canonical, which matters because the oracle sweeps enumerate and compare
//! hundreds of thousands of these.
//!
//! `sc_dominates` is the one-step dominance test everything else builds on:
//! `hi` single-crossing dominates `lo` when, on every ordered pair `x ≳ y`,
//! a (strict) preference for the higher element under `lo` is preserved
//! under `hi`. Preferences over incomparable pairs are unconstrained.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

use crate::poset::Poset;

/// Failures when building or parsing preferences.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrefError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element `{0}` appears more than once")]
    DuplicateElement(String),
    #[error("element `{0}` is missing from the ranking")]
    MissingElement(String),
    #[error("ranking syntax error: {0}")]
    SyntaxError(String),
    #[error("enumeration over {0} elements exceeds the n ≤ 7 cap")]
    TooLarge(usize),
    #[error("profile is empty")]
    EmptyProfile,
    #[error("preference covers {got} elements, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

/// A complete transitive preference, as a rank function (0 = most preferred).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeakOrder {
    ranks: Vec<u8>,
}

impl WeakOrder {
    /// Builds directly from ranks, which must be consecutive from 0.
    pub fn from_ranks(ranks: Vec<u8>) -> Result<Self, PrefError> {
        if ranks.is_empty() {
            return Err(PrefError::SyntaxError("no elements ranked".into()));
        }
        let max = *ranks.iter().max().expect("nonempty");
        for r in 0..=max {
            if !ranks.contains(&r) {
                return Err(PrefError::SyntaxError(format!("rank {r} unused")));
            }
        }
        Ok(WeakOrder { ranks })
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> u8 {
        self.ranks[i]
    }

    /// Number of indifference tiers.
    pub fn num_tiers(&self) -> usize {
        *self.ranks.iter().max().expect("nonempty") as usize + 1
    }

    /// `i ⪰ j`: `i` is weakly preferred to `j`.
    pub fn weak(&self, i: usize, j: usize) -> bool {
        self.ranks[i] <= self.ranks[j]
    }

    /// `i ≻ j`: `i` is strictly preferred to `j`.
    pub fn strict(&self, i: usize, j: usize) -> bool {
        self.ranks[i] < self.ranks[j]
    }

    pub fn indifferent(&self, i: usize, j: usize) -> bool {
        self.ranks[i] == self.ranks[j]
    }

    /// Indices of the most preferred tier.
    pub fn top_tier(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.ranks[i] == 0).collect()
    }

    /// Renders as `"w > x > y ~ z"`; elements inside a tier appear in
    /// element-list order, so the output is canonical.
    pub fn format(&self, elements: &[String]) -> String {
        assert_eq!(elements.len(), self.ranks.len());
        let mut out = String::new();
        for tier in 0..self.num_tiers() {
            if tier > 0 {
                out.push_str(" > ");
            }
            let mut first = true;
            for (i, e) in elements.iter().enumerate() {
                if self.ranks[i] == tier as u8 {
                    if !first {
                        out.push_str(" ~ ");
                    }
                    let _ = write!(out, "{e}");
                    first = false;
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for WeakOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WeakOrder{:?}", self.ranks)
    }
}

/// Result of [`validate_weak_order`]: the normalized order plus a flag that
/// is set when input ranks were legal but not consecutive and had to be
/// compacted (e.g. `{x:0, y:5}` → `{x:0, y:1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedOrder {
    pub order: WeakOrder,
    pub compacted: bool,
}

/// Checks a rank mapping against an element list and normalizes it.
///
/// Every element must be ranked exactly once; gaps in the rank sequence are
/// compacted rather than rejected, with `compacted` reporting that this
/// happened.
pub fn validate_weak_order(
    ranks: &BTreeMap<String, u32>,
    elements: &[String],
) -> Result<ValidatedOrder, PrefError> {
    for name in ranks.keys() {
        if !elements.contains(name) {
            return Err(PrefError::UnknownElement(name.clone()));
        }
    }
    let mut raw = Vec::with_capacity(elements.len());
    for e in elements {
        match ranks.get(e) {
            Some(&r) => raw.push(r),
            None => return Err(PrefError::MissingElement(e.clone())),
        }
    }
    // Compact to consecutive ranks preserving the ordering of tiers.
    let mut tiers: Vec<u32> = raw.clone();
    tiers.sort_unstable();
    tiers.dedup();
    let compacted = tiers.iter().enumerate().any(|(i, &t)| t != i as u32);
    let ranks = raw
        .iter()
        .map(|r| tiers.iter().position(|t| t == r).expect("tier present") as u8)
        .collect();
    Ok(ValidatedOrder { order: WeakOrder::from_ranks(ranks).expect("compacted ranks"), compacted })
}

/// Parses `"w > x > y ~ z"` against an element list: `>` separates strictly
/// ranked tiers (best first), `~` separates ties inside a tier.
pub fn parse_ranking(text: &str, elements: &[String]) -> Result<WeakOrder, PrefError> {
    let mut ranks = vec![None; elements.len()];
    let tiers: Vec<&str> = text.split('>').collect();
    let mut tier_count = 0u8;
    for tier_text in tiers {
        if tier_text.trim().is_empty() {
            return Err(PrefError::SyntaxError(format!("empty tier in `{text}`")));
        }
        let mut any = false;
        for token in tier_text.split('~') {
            let name = token.trim();
            if name.is_empty() {
                return Err(PrefError::SyntaxError(format!("empty name in `{text}`")));
            }
            let idx = elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| PrefError::UnknownElement(name.to_owned()))?;
            if ranks[idx].is_some() {
                return Err(PrefError::DuplicateElement(name.to_owned()));
            }
            ranks[idx] = Some(tier_count);
            any = true;
        }
        if any {
            tier_count += 1;
        }
    }
    let ranks = ranks
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| PrefError::MissingElement(elements[i].clone())))
        .collect::<Result<Vec<u8>, _>>()?;
    WeakOrder::from_ranks(ranks)
}

/// All weak orders on `n` elements, each exactly once, in lexicographic
/// rank-vector order. Hard-capped at n ≤ 7 (47,293 orders).
pub fn enumerate_weak_orders(n: usize) -> Result<Vec<WeakOrder>, PrefError> {
    if n == 0 {
        return Err(PrefError::SyntaxError("no elements".into()));
    }
    if n > 7 {
        return Err(PrefError::TooLarge(n));
    }
    let mut out = Vec::new();
    let mut ranks = vec![0u8; n];
    enumerate_rec(&mut ranks, 0, n, &mut out);
    Ok(out)
}

fn enumerate_rec(ranks: &mut Vec<u8>, pos: usize, n: usize, out: &mut Vec<WeakOrder>) {
    if pos == n {
        // Keep only rank vectors that use a consecutive block 0..=max.
        let max = *ranks.iter().max().expect("nonempty");
        if (0..=max).all(|r| ranks.contains(&r)) {
            out.push(WeakOrder { ranks: ranks.clone() });
        }
        return;
    }
    for r in 0..n as u8 {
        ranks[pos] = r;
        enumerate_rec(ranks, pos + 1, n, out);
    }
    ranks[pos] = 0;
}

/// Single-crossing dominance: on every `≳`-comparable ordered pair, weak and
/// strict preferences for the higher element under `lo` survive under `hi`.
pub fn sc_dominates(hi: &WeakOrder, lo: &WeakOrder, p: &Poset) -> bool {
    debug_assert_eq!(hi.len(), p.len());
    debug_assert_eq!(lo.len(), p.len());
    for (i, j) in p.strict_pairs() {
        if lo.weak(i, j) && !hi.weak(i, j) {
            return false;
        }
        if lo.strict(i, j) && !hi.strict(i, j) {
            return false;
        }
    }
    true
}

/// A nonempty, ordered list of preferences over a shared element list.
///
/// Order matters only for display; every aggregation in this crate treats a
/// profile as the set of its members.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Profile {
    members: Vec<WeakOrder>,
}

impl Profile {
    pub fn new(members: Vec<WeakOrder>) -> Result<Self, PrefError> {
        let first = members.first().ok_or(PrefError::EmptyProfile)?;
        let expected = first.len();
        for m in &members {
            if m.len() != expected {
                return Err(PrefError::LengthMismatch { got: m.len(), expected });
            }
        }
        Ok(Profile { members })
    }

    /// Parses each ranking string against the element list.
    pub fn from_rankings<S: AsRef<str>>(
        rankings: &[S],
        elements: &[String],
    ) -> Result<Self, PrefError> {
        let members = rankings
            .iter()
            .map(|r| parse_ranking(r.as_ref(), elements))
            .collect::<Result<Vec<_>, _>>()?;
        Profile::new(members)
    }

    pub fn members(&self) -> &[WeakOrder] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeakOrder> {
        self.members.iter()
    }
}

#[derive(Deserialize)]
struct ProfileInput {
    profile: Vec<String>,
}

/// Parses the JSON profile schema `{"profile": ["w > x > y ~ z", ...]}`.
pub fn profile_from_json(input: &str, elements: &[String]) -> Result<Profile, PrefError> {
    let parsed: ProfileInput =
        serde_json::from_str(input).map_err(|e| PrefError::SyntaxError(e.to_string()))?;
    Profile::from_rankings(&parsed.profile, elements)
}
