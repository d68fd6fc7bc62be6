//! Maxmin preferences over finite act spaces.
//!
//! The environment is Savage-style choice under uncertainty: a finite set of
//! states, a finite grid of monetary prizes, and acts mapping states to
//! prizes. Constant acts play the role of money itself, and a preference is
//! recorded through its certainty equivalents: each act is assigned the
//! prize whose constant act it is indifferent to. Such a preference is
//! monotone (it ranks constants by their value) and solvable (every act has
//! a certainty equivalent) by construction.
//!
//! One preference is *more ambiguity-averse* than another when every
//! comparison won by a constant act under the latter is also won under the
//! former. This comparison is exactly single-crossing dominance with respect
//! to the *induced act order*: X ≳ Y iff X = Y, or X is constant and Y is
//! not, or both are constant and X pays more. That order is trivially crown-
//! and diamond-free, so joins always exist; in fact each set of
//! certainty-equivalent preferences has exactly one minimum upper bound,
//! and it is the *maxmin preference* that values every act at the smallest
//! certainty equivalent among the set's members. `verify_maxmin` checks this
//! equivalence — maxmin representation ⟺ minimum upper bound — in both
//! directions against exhaustive brute-force bound enumeration, along with
//! the comparative-statics consequence: enlarging a representation, or
//! raising it in the strong set order, yields a more ambiguity-averse
//! preference.
//!
//! Everything here transfers verbatim to risk: read "lottery" for act,
//! "degenerate lottery" for constant act, and "more risk-averse" for more
//! ambiguity-averse, and the maxmin preference becomes the cautious
//! preference that values a lottery at its smallest certainty equivalent.
//! The `cautious_lottery_version_by_relabeling` test keeps that dictionary
//! honest on a concrete fixture.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::lattice::{core_relation, is_minimum_upper_bound, join, meet, CoreRelation};
use crate::oracle::{brute_bounds, CheckResult, Counterexample, InstanceSweep, SweepOptions};
use crate::poset::{dual, validate_poset, Poset, Relation};
use crate::prefs::{enumerate_weak_orders, sc_dominates, Profile, WeakOrder};
use crate::structure::is_crown_and_diamond_free;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AmbiguityError {
    #[error("state list must be nonempty and without repeats: {0}")]
    BadStates(String),
    #[error("prize grid must be finite, distinct and strictly increasing: {0}")]
    BadPrizeGrid(String),
    #[error("act `{act}` assigns {got} payoffs but there are {expected} states")]
    WrongPayoffCount { act: String, got: usize, expected: usize },
    #[error("act `{act}` pays {prize}, which is not on the prize grid")]
    PrizeOffGrid { act: String, prize: f64 },
    #[error("act name `{0}` appears more than once")]
    DuplicateActName(String),
    #[error("acts `{0}` and `{1}` are the same function")]
    DuplicateActFunction(String, String),
    #[error("unknown act `{0}`")]
    UnknownAct(String),
    #[error("act `{0}` is assigned a certainty equivalent twice")]
    DuplicateAssignment(String),
    #[error("non-constant act `{0}` has no certainty equivalent assigned")]
    MissingCertaintyEquivalent(String),
    #[error("constant act `{act}` must be its own certainty equivalent {expected}, got {got}")]
    ConstantCeMismatch { act: String, got: f64, expected: f64 },
    #[error("certainty-equivalent vector covers {got} acts, expected {expected}")]
    WrongCeCount { got: usize, expected: usize },
    #[error("{what} {got} exceeds the cap of {max}")]
    TooLarge { what: &'static str, got: usize, max: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// A finite act space: states, a prize grid, and acts mapping states to
/// prizes. Every prize's constant act is present — ones missing from the
/// input are added automatically under the name `const_<prize>` — so each
/// certainty equivalent names an actual act.
#[derive(Debug, Clone)]
pub struct ActSpace {
    states: Vec<String>,
    prizes: Vec<f64>,
    names: Vec<String>,
    payoffs: Vec<Vec<f64>>,
    /// The prize an act is constant at, if it is constant.
    constant: Vec<Option<f64>>,
    /// Indices of the constant acts, highest prize first.
    constants_desc: Vec<usize>,
}

impl ActSpace {
    /// Builds a space from named acts. Payoffs must lie on the grid, acts
    /// must be distinct as functions, and missing constant acts are
    /// injected.
    pub fn new(
        states: Vec<String>,
        prizes: Vec<f64>,
        acts: Vec<(String, Vec<f64>)>,
    ) -> Result<Self, AmbiguityError> {
        if states.is_empty() {
            return Err(AmbiguityError::BadStates("no states".into()));
        }
        for (i, st) in states.iter().enumerate() {
            if states[..i].contains(st) {
                return Err(AmbiguityError::BadStates(format!("state `{st}` repeats")));
            }
        }
        if prizes.is_empty() {
            return Err(AmbiguityError::BadPrizeGrid("no prizes".into()));
        }
        if let Some(v) = prizes.iter().find(|v| !v.is_finite()) {
            return Err(AmbiguityError::BadPrizeGrid(format!("non-finite prize {v}")));
        }
        if let Some(w) = prizes.windows(2).find(|w| w[0] >= w[1]) {
            return Err(AmbiguityError::BadPrizeGrid(format!("{} precedes {}", w[0], w[1])));
        }

        let mut names = Vec::new();
        let mut payoffs: Vec<Vec<f64>> = Vec::new();
        for (name, pay) in acts {
            if names.contains(&name) {
                return Err(AmbiguityError::DuplicateActName(name));
            }
            if pay.len() != states.len() {
                return Err(AmbiguityError::WrongPayoffCount {
                    act: name,
                    got: pay.len(),
                    expected: states.len(),
                });
            }
            if let Some(&v) = pay.iter().find(|&&v| !prizes.contains(&v)) {
                return Err(AmbiguityError::PrizeOffGrid { act: name, prize: v });
            }
            if let Some(i) = payoffs.iter().position(|q| *q == pay) {
                return Err(AmbiguityError::DuplicateActFunction(names[i].clone(), name));
            }
            names.push(name);
            payoffs.push(pay);
        }
        for &prize in prizes.iter().rev() {
            if !payoffs.iter().any(|q| q.iter().all(|&v| v == prize)) {
                names.push(format!("const_{prize}"));
                payoffs.push(vec![prize; states.len()]);
            }
        }

        let constant: Vec<Option<f64>> = payoffs
            .iter()
            .map(|q| if q.iter().all(|&v| v == q[0]) { Some(q[0]) } else { None })
            .collect();
        let mut constants_desc: Vec<usize> =
            (0..names.len()).filter(|&i| constant[i].is_some()).collect();
        constants_desc.sort_by(|&a, &b| constant[b].unwrap().total_cmp(&constant[a].unwrap()));
        Ok(ActSpace { states, prizes, names, payoffs, constant, constants_desc })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn prizes(&self) -> &[f64] {
        &self.prizes
    }

    /// Total number of acts, constants included.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn act_names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn payoffs(&self, i: usize) -> &[f64] {
        &self.payoffs[i]
    }

    /// The prize act `i` is constant at, or `None` for a non-constant act.
    pub fn constant_prize(&self, i: usize) -> Option<f64> {
        self.constant[i]
    }

    /// Indices of the constant acts, highest prize first.
    pub fn constant_indices(&self) -> &[usize] {
        &self.constants_desc
    }

    pub fn non_constant_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.constant[i].is_none()).collect()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, AmbiguityError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| AmbiguityError::UnknownAct(name.into()))
    }

    /// Index of the constant act at `prize`.
    pub fn constant_index(&self, prize: f64) -> Option<usize> {
        self.constants_desc.iter().copied().find(|&i| self.constant[i] == Some(prize))
    }

    pub fn prize_position(&self, prize: f64) -> Option<usize> {
        self.prizes.iter().position(|&p| p == prize)
    }
}

/// The act order that generates the more-ambiguity-averse comparison:
/// X ≳ Y iff X = Y, or X is constant and Y is not, or both are constant and
/// X pays more. Constants form a chain above an antichain of non-constant
/// acts, so the order is crown- and diamond-free and joins always exist.
pub fn induced_act_order(s: &ActSpace) -> Poset {
    let names: Arc<[String]> = s.act_names().to_vec().into();
    let rel = Relation::from_fn(names, |i, j| {
        i == j
            || match (s.constant_prize(i), s.constant_prize(j)) {
                (Some(ci), Some(cj)) => ci > cj,
                (Some(_), None) => true,
                _ => false,
            }
    });
    validate_poset(rel).expect("constants over an antichain is a poset")
}

/// A monotone, solvable preference over the acts of one space, recorded by
/// certainty equivalents: `ce(X)` is the grid prize whose constant act is
/// indifferent to `X`, and X ⪰ Y iff ce(X) ≥ ce(Y). Constant acts are their
/// own certainty equivalents, which is exactly monotonicity.
#[derive(Debug, Clone, PartialEq)]
pub struct CEPreference {
    ce: Vec<f64>,
}

impl CEPreference {
    /// Builds from per-act certainty equivalents for the non-constant acts
    /// (constants need not be listed; if they are, they must equal their
    /// prize).
    pub fn from_assignments<S: AsRef<str>>(
        s: &ActSpace,
        assignments: &[(S, f64)],
    ) -> Result<Self, AmbiguityError> {
        let mut ce: Vec<Option<f64>> = (0..s.len()).map(|i| s.constant_prize(i)).collect();
        let mut assigned = vec![false; s.len()];
        for (name, value) in assignments {
            let i = s.index_of(name.as_ref())?;
            if assigned[i] {
                return Err(AmbiguityError::DuplicateAssignment(name.as_ref().into()));
            }
            assigned[i] = true;
            if s.prize_position(*value).is_none() {
                return Err(AmbiguityError::PrizeOffGrid {
                    act: name.as_ref().into(),
                    prize: *value,
                });
            }
            if let Some(c) = s.constant_prize(i) {
                if c != *value {
                    return Err(AmbiguityError::ConstantCeMismatch {
                        act: name.as_ref().into(),
                        got: *value,
                        expected: c,
                    });
                }
            }
            ce[i] = Some(*value);
        }
        if let Some(i) = ce.iter().position(Option::is_none) {
            return Err(AmbiguityError::MissingCertaintyEquivalent(s.name(i).into()));
        }
        Ok(CEPreference { ce: ce.into_iter().map(|v| v.expect("checked")).collect() })
    }

    /// Builds from a full certainty-equivalent vector indexed like the
    /// space's acts.
    pub fn from_ce_values(s: &ActSpace, ce: Vec<f64>) -> Result<Self, AmbiguityError> {
        if ce.len() != s.len() {
            return Err(AmbiguityError::WrongCeCount { got: ce.len(), expected: s.len() });
        }
        for (i, &v) in ce.iter().enumerate() {
            if s.prize_position(v).is_none() {
                return Err(AmbiguityError::PrizeOffGrid { act: s.name(i).into(), prize: v });
            }
            if let Some(c) = s.constant_prize(i) {
                if c != v {
                    return Err(AmbiguityError::ConstantCeMismatch {
                        act: s.name(i).into(),
                        got: v,
                        expected: c,
                    });
                }
            }
        }
        Ok(CEPreference { ce })
    }

    pub fn ce(&self, i: usize) -> f64 {
        self.ce[i]
    }

    pub fn certainty_equivalents(&self) -> &[f64] {
        &self.ce
    }

    /// The preference as a ranking of the acts: X ⪰ Y iff ce(X) ≥ ce(Y).
    pub fn ranking(&self) -> WeakOrder {
        order_from_ce(&self.ce)
    }
}

fn order_from_ce(ce: &[f64]) -> WeakOrder {
    let mut distinct: Vec<f64> = ce.to_vec();
    distinct.sort_by(|a, b| b.total_cmp(a));
    distinct.dedup();
    let ranks = ce
        .iter()
        .map(|v| distinct.iter().position(|d| d == v).expect("own value present") as u8)
        .collect();
    WeakOrder::from_ranks(ranks).expect("dense by construction")
}

/// Is `hi` more ambiguity-averse than `lo`? Literally: for every act X and
/// constant act C, C ⪰ X under `lo` implies C ⪰ X under `hi`, and likewise
/// strictly. In certainty-equivalent terms C ⪰ X iff C ≥ ce(X), so the
/// comparison reduces to prize inequalities; it coincides with
/// single-crossing dominance on [`induced_act_order`].
///
/// # Panics
/// If either preference was built for a different act space.
pub fn more_ambiguity_averse(hi: &CEPreference, lo: &CEPreference, s: &ActSpace) -> bool {
    assert_eq!(hi.ce.len(), s.len(), "preference built for a different act space");
    assert_eq!(lo.ce.len(), s.len(), "preference built for a different act space");
    s.constant_indices().iter().all(|&ci| {
        let c = s.constant_prize(ci).expect("constant index");
        (0..s.len()).all(|x| {
            (!(c >= lo.ce(x)) || c >= hi.ce(x)) && (!(c > lo.ce(x)) || c > hi.ce(x))
        })
    })
}

/// The maxmin preference of a set: every act is valued at the smallest
/// certainty equivalent among the members, so the result is exactly the
/// preference the set is a maxmin representation of.
///
/// # Panics
/// If `prefs` is empty or built for a different act space.
pub fn maxmin_preference(prefs: &[CEPreference], s: &ActSpace) -> CEPreference {
    assert!(!prefs.is_empty(), "maxmin over an empty preference set");
    for p in prefs {
        assert_eq!(p.ce.len(), s.len(), "preference built for a different act space");
    }
    let ce = (0..s.len())
        .map(|x| prefs.iter().map(|p| p.ce(x)).fold(f64::INFINITY, f64::min))
        .collect();
    CEPreference { ce }
}

/// Is `prefs` a maxmin representation of `target`? True iff the smallest
/// member certainty equivalent orders acts exactly as `target` does
/// (ordinal representation over all act pairs).
///
/// # Panics
/// If `prefs` is empty or any preference was built for a different space.
pub fn is_maxmin_representation(
    prefs: &[CEPreference],
    target: &CEPreference,
    s: &ActSpace,
) -> bool {
    let floor = maxmin_preference(prefs, s);
    assert_eq!(target.ce.len(), s.len(), "preference built for a different act space");
    (0..s.len()).all(|x| {
        (0..s.len()).all(|y| (floor.ce(x) >= floor.ce(y)) == (target.ce(x) >= target.ce(y)))
    })
}

#[derive(Deserialize)]
struct ActSpaceInput {
    states: Vec<String>,
    prizes: Vec<f64>,
    #[serde(default)]
    acts: BTreeMap<String, BTreeMap<String, f64>>,
}

/// Parses the JSON act-space schema:
/// `{"states": [...], "prizes": [...], "acts": {"X1": {"w1": 0, "w2": 1}}}`.
/// Acts are taken in name order; each must assign a prize to every declared
/// state and to nothing else. Missing constant acts are injected as usual.
pub fn act_space_from_json(input: &str) -> Result<ActSpace, AmbiguityError> {
    let parsed: ActSpaceInput =
        serde_json::from_str(input).map_err(|e| AmbiguityError::Malformed(e.to_string()))?;
    let mut acts = Vec::new();
    for (name, by_state) in parsed.acts {
        if let Some(st) = by_state.keys().find(|st| !parsed.states.contains(st)) {
            return Err(AmbiguityError::Malformed(format!(
                "act `{name}` pays in unknown state `{st}`"
            )));
        }
        let pay = parsed
            .states
            .iter()
            .map(|st| {
                by_state.get(st).copied().ok_or_else(|| {
                    AmbiguityError::Malformed(format!("act `{name}` pays nothing in state `{st}`"))
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        acts.push((name, pay));
    }
    ActSpace::new(parsed.states, parsed.prizes, acts)
}

#[derive(Deserialize)]
struct CeInput {
    ce: BTreeMap<String, f64>,
}

/// Parses the JSON certainty-equivalent schema `{"ce": {"X1": 0, ...}}`
/// against an act space.
pub fn ce_preference_from_json(input: &str, s: &ActSpace) -> Result<CEPreference, AmbiguityError> {
    let parsed: CeInput =
        serde_json::from_str(input).map_err(|e| AmbiguityError::Malformed(e.to_string()))?;
    let assignments: Vec<(String, f64)> = parsed.ce.into_iter().collect();
    CEPreference::from_assignments(s, &assignments)
}

/// All certainty-equivalent preferences of a space: one per assignment of
/// grid prizes to the non-constant acts, in odometer order (first
/// non-constant act cycling slowest, lower prizes first).
pub fn enumerate_ce_preferences(s: &ActSpace) -> Result<Vec<CEPreference>, AmbiguityError> {
    const MAX: usize = 100_000;
    let non_constant = s.non_constant_indices();
    let count = s
        .prizes
        .len()
        .checked_pow(non_constant.len() as u32)
        .filter(|&c| c <= MAX)
        .ok_or(AmbiguityError::TooLarge {
            what: "certainty-equivalent map count",
            got: usize::MAX,
            max: MAX,
        })?;
    let mut out = Vec::with_capacity(count);
    let mut digits = vec![0usize; non_constant.len()];
    loop {
        let mut ce: Vec<f64> = (0..s.len()).map(|i| s.constant_prize(i).unwrap_or(0.0)).collect();
        for (pos, &act) in non_constant.iter().enumerate() {
            ce[act] = s.prizes[digits[pos]];
        }
        out.push(CEPreference { ce });
        let mut pos = non_constant.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < s.prizes.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// Verification sweep: maxmin representation ⟺ minimum upper bound.
// ---------------------------------------------------------------------------

/// Exhaustive weak-order scan data for one act poset: every weak order's
/// behaviour on the comparable pairs, packed one bit per oriented pair, so
/// minimum-upper-bound sets can be read off by comparing against the forced
/// core. Dominance-definition scans (no chain machinery) are used as the
/// cross-route on a stride.
struct OrderScan {
    orders: Vec<WeakOrder>,
    oriented: Vec<(usize, usize)>,
    masks: Vec<u64>,
}

impl OrderScan {
    fn build(p: &Poset) -> Self {
        let orders = enumerate_weak_orders(p.len()).expect("act count within enumeration cap");
        let oriented: Vec<(usize, usize)> = (0..p.len())
            .flat_map(|i| (0..p.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && p.comparable(i, j))
            .collect();
        assert!(oriented.len() <= 64, "mask overflow");
        let masks = orders
            .iter()
            .map(|w| {
                self::mask_bits(&oriented, |i, j| w.weak(i, j))
            })
            .collect();
        OrderScan { orders, oriented, masks }
    }

    /// Indices of the orders that agree with the forced core on every
    /// comparable pair — exactly the minimum upper bounds.
    fn mubs_via_core(&self, core: &CoreRelation) -> Vec<usize> {
        let want = mask_bits(&self.oriented, |i, j| core.ge(i, j));
        (0..self.masks.len()).filter(|&i| self.masks[i] == want).collect()
    }

    /// Minimum upper bounds straight from the dominance definition: upper
    /// bounds are the orders dominating every member, and minimum ones are
    /// dominated by every upper bound.
    fn mubs_via_dominance(&self, profile: &Profile, p: &Poset) -> Vec<usize> {
        let upper: Vec<usize> = (0..self.orders.len())
            .filter(|&u| profile.iter().all(|m| sc_dominates(&self.orders[u], m, p)))
            .collect();
        upper
            .iter()
            .copied()
            .filter(|&u| upper.iter().all(|&o| sc_dominates(&self.orders[o], &self.orders[u], p)))
            .collect()
    }
}

fn mask_bits(oriented: &[(usize, usize)], f: impl Fn(usize, usize) -> bool) -> u64 {
    oriented
        .iter()
        .enumerate()
        .fold(0u64, |m, (b, &(i, j))| m | ((f(i, j) as u64) << b))
}

/// One canonical act space per size signature. Spaces sharing a prize grid
/// and a non-constant act count are isomorphic act for act — which payoff
/// functions the non-constant acts carry never enters the induced order or
/// any certainty-equivalent computation — so sweeping the canonical space
/// of each signature covers them all.
fn canonical_space(num_prizes: usize, num_nonconstant: usize) -> ActSpace {
    let states = vec!["w1".to_string(), "w2".to_string()];
    let prizes: Vec<f64> = (0..num_prizes).map(|i| i as f64).collect();
    let mut acts = Vec::new();
    'outer: for hi in 0..num_prizes {
        for lo in 0..num_prizes {
            if hi == lo {
                continue;
            }
            if acts.len() == num_nonconstant {
                break 'outer;
            }
            acts.push((format!("X{}", acts.len() + 1), vec![hi as f64, lo as f64]));
        }
    }
    assert_eq!(acts.len(), num_nonconstant, "not enough distinct non-constant acts");
    ActSpace::new(states, prizes, acts).expect("canonical space is valid")
}

#[derive(Debug, Clone, Default)]
struct Tally {
    passes: u64,
    failures: u64,
    first: Option<Counterexample>,
}

impl Tally {
    fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> Counterexample) {
        if ok {
            self.passes += 1;
        } else {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(counterexample());
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.passes += other.passes;
        self.failures += other.failures;
        if self.first.is_none() {
            self.first = other.first;
        }
    }
}

const CHECK_NAMES: [&str; 8] = [
    "induced_order_is_crown_and_diamond_free",
    "ambiguity_comparison_matches_dominance",
    "singleton_maxmin_is_identity",
    "maxmin_is_the_unique_minimum_upper_bound",
    "maxmin_rejects_non_representations",
    "join_and_meet_match_certainty_envelopes",
    "larger_representations_are_more_ambiguity_averse",
    "strong_set_order_lifts_to_ambiguity",
];

const CROWN_DIAMOND_FREE: usize = 0;
const COMPARISON_MATCHES: usize = 1;
const SINGLETON_IDENTITY: usize = 2;
const UNIQUE_MUB: usize = 3;
const REJECTS_NON_REPS: usize = 4;
const ENVELOPES: usize = 5;
const LARGER_SETS: usize = 6;
const SET_ORDER_LIFT: usize = 7;

/// How often the mask-based minimum-upper-bound scan is cross-checked by a
/// plain dominance-definition scan on seven-act spaces (the six-act and
/// smaller spaces get the full brute-force treatment on every profile).
const DOMINANCE_SPOT_STRIDE: usize = 97;

struct SpaceContext {
    space: ActSpace,
    poset: Poset,
    dual_poset: Poset,
    prefs: Vec<CEPreference>,
    rankings: Vec<WeakOrder>,
    scan: Option<OrderScan>,
}

fn space_counterexample(ctx: &SpaceContext, members: &[usize], check: &str, detail: String) -> Counterexample {
    Counterexample {
        check: check.into(),
        elements: ctx.poset.elements().to_vec(),
        order_pairs: ctx
            .poset
            .strict_pairs()
            .map(|(i, j)| (ctx.poset.element(i).to_string(), ctx.poset.element(j).to_string()))
            .collect(),
        profile: members
            .iter()
            .map(|&m| ctx.rankings[m].format(ctx.poset.elements()))
            .collect(),
        detail,
    }
}

/// Verifies the maxmin characterisation and its comparative statics on
/// two-state act spaces over the prize grids {0,1} and {0,1,2}, with up to
/// `max_nonconstant` ≤ 4 non-constant acts and all certainty-equivalent
/// preference sets of size ≤ 2:
///
/// - the induced act order is crown- and diamond-free;
/// - more-ambiguity-averse coincides with single-crossing dominance on it;
/// - every preference is monotone, solvable, and the maxmin of its own
///   singleton;
/// - the maxmin preference of a set is its one and only minimum upper
///   bound, and the only target the set is a maxmin representation of
///   (brute-force bound enumeration on up to six acts; on seven-act spaces
///   an exhaustive forced-core scan over all 47 293 weak orders, spot-
///   checked against plain dominance scans);
/// - joins and meets of preference pairs are the pointwise min and max of
///   their certainty equivalents;
/// - growing a representation, or raising it in the strong set order,
///   makes the represented preference more ambiguity-averse.
///
/// Everything is exhaustive; `opts.seed` is recorded but never drawn from.
pub fn verify_maxmin(
    max_nonconstant: usize,
    opts: &SweepOptions,
) -> Result<InstanceSweep, AmbiguityError> {
    const MAX: usize = 4;
    if max_nonconstant > MAX {
        return Err(AmbiguityError::TooLarge {
            what: "non-constant act count",
            got: max_nonconstant,
            max: MAX,
        });
    }

    let mut tallies: Vec<Tally> = vec![Tally::default(); CHECK_NAMES.len()];
    let mut spaces = 0u64;
    let mut instances = 0u64;

    for num_prizes in [2usize, 3] {
        let available = num_prizes * num_prizes - num_prizes;
        for k in 0..=max_nonconstant.min(available) {
            let ctx = build_space_context(num_prizes, k);
            spaces += 1;
            run_space_checks(&ctx, &mut tallies);
            instances += run_profile_checks(&ctx, &mut tallies);
            run_set_order_checks(&ctx, &mut tallies);
        }
    }

    let checks = CHECK_NAMES
        .iter()
        .zip(tallies)
        .map(|(name, t)| CheckResult {
            check: (*name).into(),
            passes: t.passes,
            failures: t.failures,
            first_counterexample: t.first,
        })
        .collect();
    Ok(InstanceSweep {
        theorem: "maxmin".into(),
        n: 3 + max_nonconstant,
        k: Some(2),
        seed: opts.seed,
        exhaustive: true,
        posets: spaces,
        instances,
        checks,
    })
}

fn build_space_context(num_prizes: usize, k: usize) -> SpaceContext {
    let space = canonical_space(num_prizes, k);
    let poset = induced_act_order(&space);
    let dual_poset = dual(&poset);
    let prefs = enumerate_ce_preferences(&space).expect("within enumeration cap");
    let rankings: Vec<WeakOrder> = prefs.iter().map(CEPreference::ranking).collect();
    // Brute-force bound enumeration caps at six elements; the lone
    // seven-act space gets the packed weak-order scan instead.
    let scan = if space.len() > 6 { Some(OrderScan::build(&poset)) } else { None };
    SpaceContext { space, poset, dual_poset, prefs, rankings, scan }
}

fn run_space_checks(ctx: &SpaceContext, tallies: &mut [Tally]) {
    tallies[CROWN_DIAMOND_FREE].record(is_crown_and_diamond_free(&ctx.poset), || {
        space_counterexample(
            ctx,
            &[],
            CHECK_NAMES[CROWN_DIAMOND_FREE],
            "induced act order contains a crown or a diamond".into(),
        )
    });

    // Def-by-def comparison vs dominance over every ordered preference pair.
    for hi in 0..ctx.prefs.len() {
        for lo in 0..ctx.prefs.len() {
            let by_definition = more_ambiguity_averse(&ctx.prefs[hi], &ctx.prefs[lo], &ctx.space);
            let by_dominance = sc_dominates(&ctx.rankings[hi], &ctx.rankings[lo], &ctx.poset);
            tallies[COMPARISON_MATCHES].record(by_definition == by_dominance, || {
                space_counterexample(
                    ctx,
                    &[hi, lo],
                    CHECK_NAMES[COMPARISON_MATCHES],
                    format!(
                        "definition says {by_definition}, dominance on the act order says {by_dominance}"
                    ),
                )
            });
        }
    }

    // Monotone + solvable shape, and the singleton direction of the maxmin
    // axiomatisation: each preference is the maxmin of itself.
    for (i, pref) in ctx.prefs.iter().enumerate() {
        let singleton = [pref.clone()];
        let ok = maxmin_preference(&singleton, &ctx.space) == *pref
            && is_maxmin_representation(&singleton, pref, &ctx.space)
            && solvable_shape(pref, &ctx.rankings[i], &ctx.space);
        tallies[SINGLETON_IDENTITY].record(ok, || {
            space_counterexample(
                ctx,
                &[i],
                CHECK_NAMES[SINGLETON_IDENTITY],
                "a certainty-equivalent preference must tie every act with its \
                 certainty equivalent and be the maxmin of its own singleton"
                    .into(),
            )
        });
    }
}

/// Monotonicity and solvability, read off the ranking: constants are
/// ranked strictly by prize, and every act is indifferent to the constant
/// at its certainty equivalent.
fn solvable_shape(pref: &CEPreference, ranking: &WeakOrder, s: &ActSpace) -> bool {
    let constants_strict = s
        .constant_indices()
        .windows(2)
        .all(|w| ranking.strict(w[0], w[1]));
    constants_strict
        && (0..s.len()).all(|x| {
            let c = s.constant_index(pref.ce(x)).expect("certainty equivalents lie on the grid");
            ranking.indifferent(x, c)
        })
}

/// All unordered profiles of size ≤ 2 over the space's preferences, as
/// member index lists.
fn profiles_of_size_up_to_two(count: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..count).map(|i| vec![i]).collect();
    for a in 0..count {
        for b in a + 1..count {
            out.push(vec![a, b]);
        }
    }
    out
}

fn run_profile_checks(ctx: &SpaceContext, tallies: &mut [Tally]) -> u64 {
    let profiles = profiles_of_size_up_to_two(ctx.prefs.len());
    let per_profile: Vec<Vec<(usize, Tally)>> = profiles
        .par_iter()
        .enumerate()
        .map(|(idx, members)| check_one_profile(ctx, idx, members))
        .collect();
    for batch in per_profile {
        for (check, tally) in batch {
            tallies[check].merge(tally);
        }
    }
    profiles.len() as u64
}

fn check_one_profile(ctx: &SpaceContext, idx: usize, members: &[usize]) -> Vec<(usize, Tally)> {
    let mut out: Vec<(usize, Tally)> = Vec::new();
    let member_prefs: Vec<CEPreference> =
        members.iter().map(|&m| ctx.prefs[m].clone()).collect();
    let profile = Profile::new(members.iter().map(|&m| ctx.rankings[m].clone()).collect())
        .expect("nonempty profile");
    let floor = maxmin_preference(&member_prefs, &ctx.space);
    let floor_order = floor.ranking();
    let ceiling_order = order_from_ce(
        &(0..ctx.space.len())
            .map(|x| member_prefs.iter().map(|p| p.ce(x)).fold(f64::NEG_INFINITY, f64::max))
            .collect::<Vec<f64>>(),
    );

    // The maxmin preference is a minimum upper bound, and the only one; its
    // mirror image is the only maximum lower bound. Independently
    // enumerated, then cross-checked against the chain-based test.
    let mut unique_mub = Tally::default();
    let bounds_agree = match &ctx.scan {
        None => {
            let brute = brute_bounds(&profile, &ctx.poset).expect("six acts at most");
            brute.minimum_upper == [floor_order.clone()]
                && brute.maximum_lower == [ceiling_order.clone()]
        }
        Some(scan) => {
            let mubs = scan.mubs_via_core(&core_relation(&profile, &ctx.poset));
            let mlbs = scan.mubs_via_core(&core_relation(&profile, &ctx.dual_poset));
            let spot = idx % DOMINANCE_SPOT_STRIDE != 0 || {
                let dual_profile = profile.clone();
                mubs == scan.mubs_via_dominance(&profile, &ctx.poset)
                    && mlbs == scan.mubs_via_dominance(&dual_profile, &ctx.dual_poset)
            };
            spot
                && mubs.len() == 1
                && scan.orders[mubs[0]] == floor_order
                && mlbs.len() == 1
                && scan.orders[mlbs[0]] == ceiling_order
        }
    };
    unique_mub.record(
        bounds_agree && is_minimum_upper_bound(&floor_order, &profile, &ctx.poset),
        || {
            space_counterexample(
                ctx,
                members,
                CHECK_NAMES[UNIQUE_MUB],
                format!(
                    "expected the unique minimum upper bound {} and maximum lower bound {}",
                    floor_order.format(ctx.poset.elements()),
                    ceiling_order.format(ctx.poset.elements()),
                ),
            )
        },
    );
    out.push((UNIQUE_MUB, unique_mub));

    // A member is a target the set represents exactly when it already
    // orders acts like the smallest certainty equivalents do.
    let mut rejects = Tally::default();
    for &m in members {
        let is_rep = is_maxmin_representation(&member_prefs, &ctx.prefs[m], &ctx.space);
        let agrees = ctx.rankings[m] == floor_order;
        rejects.record(is_rep == agrees, || {
            space_counterexample(
                ctx,
                members,
                CHECK_NAMES[REJECTS_NON_REPS],
                format!(
                    "member {} counted as a representation target: {is_rep}, ordinal agreement: {agrees}",
                    ctx.rankings[m].format(ctx.poset.elements()),
                ),
            )
        });
    }
    out.push((REJECTS_NON_REPS, rejects));

    // Join and meet against the certainty-equivalent envelopes.
    let mut envelopes = Tally::default();
    let join_ok = join(&profile, &ctx.poset).map(|j| j == floor_order).unwrap_or(false);
    let meet_ok = meet(&profile, &ctx.poset).map(|m| m == ceiling_order).unwrap_or(false);
    envelopes.record(join_ok && meet_ok, || {
        space_counterexample(
            ctx,
            members,
            CHECK_NAMES[ENVELOPES],
            "join/meet differ from the pointwise min/max certainty equivalents".into(),
        )
    });
    out.push((ENVELOPES, envelopes));

    // Containment comparative statics: the maxmin of a pair is more
    // ambiguity-averse than the maxmin of either singleton.
    if members.len() == 2 {
        let mut larger = Tally::default();
        let ok = members.iter().all(|&m| {
            more_ambiguity_averse(&floor, &ctx.prefs[m], &ctx.space)
        });
        larger.record(ok, || {
            space_counterexample(
                ctx,
                members,
                CHECK_NAMES[LARGER_SETS],
                "maxmin of the pair is not more ambiguity-averse than a member's singleton maxmin"
                    .into(),
            )
        });
        out.push((LARGER_SETS, larger));
    }
    out
}

/// Strong-set-order comparative statics, exhaustively over all ordered
/// pairs of preference sets of size ≤ 2. Certainty equivalents are packed
/// as grid digits, so joins and meets are pointwise mins and maxes and set
/// membership is an odometer-index lookup; the run over all pair profiles
/// has already pinned those envelopes to the lattice join and meet.
fn run_set_order_checks(ctx: &SpaceContext, tallies: &mut [Tally]) {
    let non_constant = ctx.space.non_constant_indices();
    let radix = ctx.space.prizes().len();
    let digits: Vec<Vec<usize>> = ctx
        .prefs
        .iter()
        .map(|p| {
            non_constant
                .iter()
                .map(|&x| ctx.space.prize_position(p.ce(x)).expect("on grid"))
                .collect()
        })
        .collect();
    let index_of = |d: &[usize]| -> usize { d.iter().fold(0, |acc, &v| acc * radix + v) };
    let join_of = |a: usize, b: usize| -> usize {
        index_of(
            &digits[a]
                .iter()
                .zip(&digits[b])
                .map(|(&x, &y)| x.min(y))
                .collect::<Vec<usize>>(),
        )
    };
    let meet_of = |a: usize, b: usize| -> usize {
        index_of(
            &digits[a]
                .iter()
                .zip(&digits[b])
                .map(|(&x, &y)| x.max(y))
                .collect::<Vec<usize>>(),
        )
    };

    let sets = profiles_of_size_up_to_two(ctx.prefs.len());
    let contains = |set: &[usize], x: usize| set.contains(&x);
    let results: Vec<Tally> = sets
        .par_iter()
        .map(|high| {
            let mut tally = Tally::default();
            for low in &sets {
                let dominates = high.iter().all(|&a| {
                    low.iter()
                        .all(|&b| contains(high, join_of(a, b)) && contains(low, meet_of(a, b)))
                });
                if !dominates {
                    continue;
                }
                let high_prefs: Vec<CEPreference> =
                    high.iter().map(|&m| ctx.prefs[m].clone()).collect();
                let low_prefs: Vec<CEPreference> =
                    low.iter().map(|&m| ctx.prefs[m].clone()).collect();
                let ok = more_ambiguity_averse(
                    &maxmin_preference(&high_prefs, &ctx.space),
                    &maxmin_preference(&low_prefs, &ctx.space),
                    &ctx.space,
                );
                tally.record(ok, || {
                    let mut members: Vec<usize> = high.clone();
                    members.extend_from_slice(low);
                    space_counterexample(
                        ctx,
                        &members,
                        CHECK_NAMES[SET_ORDER_LIFT],
                        format!(
                            "set {{{}}} dominates {{{}}} in the strong set order but its maxmin is not more ambiguity-averse",
                            high.iter()
                                .map(|&m| ctx.rankings[m].format(ctx.poset.elements()))
                                .collect::<Vec<_>>()
                                .join("; "),
                            low.iter()
                                .map(|&m| ctx.rankings[m].format(ctx.poset.elements()))
                                .collect::<Vec<_>>()
                                .join("; "),
                        ),
                    )
                });
            }
            tally
        })
        .collect();
    for tally in results {
        tallies[SET_ORDER_LIFT].merge(tally);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::is_complete;
    use crate::structure::{find_crown, find_diamond};

    fn two_state_space() -> ActSpace {
        ActSpace::new(
            vec!["w1".into(), "w2".into()],
            vec![0.0, 1.0],
            vec![("X".into(), vec![0.0, 1.0]), ("Y".into(), vec![1.0, 0.0])],
        )
        .unwrap()
    }

    #[test]
    fn act_space_injects_constants_and_checks_payoffs() {
        let s = two_state_space();
        assert_eq!(s.len(), 4);
        assert_eq!(s.act_names(), &["X", "Y", "const_1", "const_0"]);
        assert_eq!(s.constant_prize(2), Some(1.0));
        assert_eq!(s.constant_indices(), &[2, 3]);
        assert_eq!(s.non_constant_indices(), vec![0, 1]);

        let dup_name = ActSpace::new(
            vec!["w1".into()],
            vec![0.0, 1.0],
            vec![("X".into(), vec![0.0]), ("X".into(), vec![1.0])],
        );
        assert_eq!(dup_name.unwrap_err(), AmbiguityError::DuplicateActName("X".into()));

        let dup_function = ActSpace::new(
            vec!["w1".into(), "w2".into()],
            vec![0.0, 1.0],
            vec![("X".into(), vec![0.0, 1.0]), ("Y".into(), vec![0.0, 1.0])],
        );
        assert_eq!(
            dup_function.unwrap_err(),
            AmbiguityError::DuplicateActFunction("X".into(), "Y".into())
        );

        let off_grid = ActSpace::new(
            vec!["w1".into(), "w2".into()],
            vec![0.0, 1.0],
            vec![("X".into(), vec![0.0, 0.5])],
        );
        assert_eq!(
            off_grid.unwrap_err(),
            AmbiguityError::PrizeOffGrid { act: "X".into(), prize: 0.5 }
        );

        let wrong_arity =
            ActSpace::new(vec!["w1".into(), "w2".into()], vec![0.0], vec![("X".into(), vec![0.0])]);
        assert_eq!(
            wrong_arity.unwrap_err(),
            AmbiguityError::WrongPayoffCount { act: "X".into(), got: 1, expected: 2 }
        );

        // A user-supplied constant act is recognised and not duplicated.
        let named = ActSpace::new(
            vec!["w1".into(), "w2".into()],
            vec![0.0, 1.0],
            vec![("zero".into(), vec![0.0, 0.0])],
        )
        .unwrap();
        assert_eq!(named.act_names(), &["zero", "const_1"]);
        assert_eq!(named.constant_prize(0), Some(0.0));
    }

    #[test]
    fn induced_order_follows_the_three_clauses() {
        let s = two_state_space();
        let p = induced_act_order(&s);
        let (x, y) = (0, 1);
        let (c1, c0) = (2, 3);
        assert!(p.gt(c1, c0));
        for c in [c1, c0] {
            assert!(p.gt(c, x) && p.gt(c, y));
        }
        assert!(!p.comparable(x, y));
        assert!(is_crown_and_diamond_free(&p));
        assert!(find_crown(&p).is_none() && find_diamond(&p).is_none());

        // All-constant space: the order is a complete chain.
        let constants_only =
            ActSpace::new(vec!["w1".into()], vec![0.0, 1.0, 2.0], vec![]).unwrap();
        let chain = induced_act_order(&constants_only);
        assert!(is_complete(&chain));
        assert_eq!(chain.elements(), &["const_2", "const_1", "const_0"]);
    }

    #[test]
    fn certainty_equivalents_validate_against_grid_and_constants() {
        let s = two_state_space();
        let pref = CEPreference::from_assignments(&s, &[("X", 0.0), ("Y", 1.0)]).unwrap();
        assert_eq!(pref.certainty_equivalents(), &[0.0, 1.0, 1.0, 0.0]);

        // Ranking: Y ~ const_1 on top, then X ~ const_0; monotone and
        // solvable by construction.
        let r = pref.ranking();
        assert!(r.indifferent(1, 2) && r.indifferent(0, 3) && r.strict(1, 0));

        assert_eq!(
            CEPreference::from_assignments(&s, &[("X", 0.0)]).unwrap_err(),
            AmbiguityError::MissingCertaintyEquivalent("Y".into())
        );
        assert_eq!(
            CEPreference::from_assignments(&s, &[("X", 0.5), ("Y", 1.0)]).unwrap_err(),
            AmbiguityError::PrizeOffGrid { act: "X".into(), prize: 0.5 }
        );
        assert_eq!(
            CEPreference::from_assignments(&s, &[("X", 0.0), ("Y", 0.0), ("const_1", 0.0)])
                .unwrap_err(),
            AmbiguityError::ConstantCeMismatch { act: "const_1".into(), got: 0.0, expected: 1.0 }
        );
        assert_eq!(
            CEPreference::from_assignments(&s, &[("Z", 0.0)]).unwrap_err(),
            AmbiguityError::UnknownAct("Z".into())
        );
        assert_eq!(
            CEPreference::from_assignments(&s, &[("X", 0.0), ("X", 1.0), ("Y", 0.0)]).unwrap_err(),
            AmbiguityError::DuplicateAssignment("X".into())
        );
        assert_eq!(
            CEPreference::from_ce_values(&s, vec![0.0, 1.0]).unwrap_err(),
            AmbiguityError::WrongCeCount { got: 2, expected: 4 }
        );
    }

    #[test]
    fn ambiguity_comparison_follows_the_definition() {
        let s = two_state_space();
        let bold = CEPreference::from_assignments(&s, &[("X", 1.0), ("Y", 1.0)]).unwrap();
        let timid = CEPreference::from_assignments(&s, &[("X", 0.0), ("Y", 0.0)]).unwrap();
        let mixed = CEPreference::from_assignments(&s, &[("X", 0.0), ("Y", 1.0)]).unwrap();

        // Reflexive, and maximal caution dominates everything.
        for p in [&bold, &timid, &mixed] {
            assert!(more_ambiguity_averse(p, p, &s));
            assert!(more_ambiguity_averse(&timid, p, &s));
        }
        assert!(!more_ambiguity_averse(&bold, &timid, &s));
        assert!(more_ambiguity_averse(&mixed, &bold, &s));
        assert!(!more_ambiguity_averse(&mixed, &timid, &s));

        // The comparison is exactly dominance on the induced act order.
        let p = induced_act_order(&s);
        for hi in [&bold, &timid, &mixed] {
            for lo in [&bold, &timid, &mixed] {
                assert_eq!(
                    more_ambiguity_averse(hi, lo, &s),
                    sc_dominates(&hi.ranking(), &lo.ranking(), &p),
                );
            }
        }
    }

    #[test]
    fn maxmin_is_the_pointwise_floor() {
        let s = two_state_space();
        // Certainty equivalents of two expected-value maximisers with
        // degenerate beliefs on w1 and w2 respectively: each act is worth
        // its payoff in the believed state.
        let sure_w1 = CEPreference::from_assignments(&s, &[("X", 0.0), ("Y", 1.0)]).unwrap();
        let sure_w2 = CEPreference::from_assignments(&s, &[("X", 1.0), ("Y", 0.0)]).unwrap();
        let cautious = maxmin_preference(&[sure_w1.clone(), sure_w2.clone()], &s);
        assert_eq!(cautious.ce(0), 0.0);
        assert_eq!(cautious.ce(1), 0.0);

        // Singletons are fixed points, and dominated members are absorbed.
        assert_eq!(maxmin_preference(&[sure_w1.clone()], &s), sure_w1);
        let timid = CEPreference::from_assignments(&s, &[("X", 0.0), ("Y", 0.0)]).unwrap();
        assert_eq!(
            maxmin_preference(&[cautious.clone(), timid], &s),
            maxmin_preference(&[cautious], &s),
        );
    }

    #[test]
    fn representation_check_is_ordinal_agreement() {
        let s = two_state_space();
        let sure_w1 = CEPreference::from_assignments(&s, &[("X", 0.0), ("Y", 1.0)]).unwrap();
        let sure_w2 = CEPreference::from_assignments(&s, &[("X", 1.0), ("Y", 0.0)]).unwrap();
        let set = [sure_w1.clone(), sure_w2.clone()];
        let cautious = maxmin_preference(&set, &s);
        assert!(is_maxmin_representation(&set, &cautious, &s));

        // The floor collapses X and Y to the bottom prize, so a target
        // separating them is not represented — nor are the members.
        assert!(!is_maxmin_representation(&set, &sure_w1, &s));
        assert!(!is_maxmin_representation(&set, &sure_w2, &s));
    }

    #[test]
    fn maxmin_is_the_unique_minimum_upper_bound_on_the_worked_space() {
        let s = two_state_space();
        let p = induced_act_order(&s);
        let sure_w1 = CEPreference::from_assignments(&s, &[("X", 0.0), ("Y", 1.0)]).unwrap();
        let sure_w2 = CEPreference::from_assignments(&s, &[("X", 1.0), ("Y", 0.0)]).unwrap();
        let floor_order = maxmin_preference(&[sure_w1.clone(), sure_w2.clone()], &s).ranking();

        let profile = Profile::new(vec![sure_w1.ranking(), sure_w2.ranking()]).unwrap();
        let brute = brute_bounds(&profile, &p).unwrap();
        assert_eq!(brute.minimum_upper, vec![floor_order.clone()]);
        assert!(is_minimum_upper_bound(&floor_order, &profile, &p));
        assert_eq!(join(&profile, &p).unwrap(), floor_order);

        // The meet mirrors the construction with pointwise maxima.
        let ceiling_order =
            CEPreference::from_assignments(&s, &[("X", 1.0), ("Y", 1.0)]).unwrap().ranking();
        assert_eq!(brute.maximum_lower, vec![ceiling_order.clone()]);
        assert_eq!(meet(&profile, &p).unwrap(), ceiling_order);
    }

    #[test]
    fn json_schemas_parse_and_reject() {
        let s = act_space_from_json(
            r#"{"states": ["w1", "w2"], "prizes": [0, 1],
                "acts": {"X1": {"w1": 0, "w2": 1}, "X2": {"w1": 1, "w2": 0}}}"#,
        )
        .unwrap();
        assert_eq!(s.act_names(), &["X1", "X2", "const_1", "const_0"]);

        let pref = ce_preference_from_json(r#"{"ce": {"X1": 0, "X2": 1}}"#, &s).unwrap();
        assert_eq!(pref.certainty_equivalents(), &[0.0, 1.0, 1.0, 0.0]);

        let missing = act_space_from_json(
            r#"{"states": ["w1", "w2"], "prizes": [0, 1], "acts": {"X1": {"w1": 0}}}"#,
        );
        assert!(matches!(missing.unwrap_err(), AmbiguityError::Malformed(m)
            if m.contains("pays nothing in state `w2`")));

        let unknown_state = act_space_from_json(
            r#"{"states": ["w1"], "prizes": [0, 1], "acts": {"X1": {"w9": 0}}}"#,
        );
        assert!(matches!(unknown_state.unwrap_err(), AmbiguityError::Malformed(m)
            if m.contains("unknown state `w9`")));

        let bad_grid = act_space_from_json(r#"{"states": ["w1"], "prizes": [1, 0], "acts": {}}"#);
        assert!(matches!(bad_grid.unwrap_err(), AmbiguityError::BadPrizeGrid(_)));
    }

    #[test]
    fn enumeration_is_exhaustive_and_in_odometer_order() {
        let s = two_state_space();
        let prefs = enumerate_ce_preferences(&s).unwrap();
        assert_eq!(prefs.len(), 4);
        assert_eq!(prefs[0].certainty_equivalents()[..2], [0.0, 0.0]);
        assert_eq!(prefs[1].certainty_equivalents()[..2], [0.0, 1.0]);
        assert_eq!(prefs[2].certainty_equivalents()[..2], [1.0, 0.0]);
        assert_eq!(prefs[3].certainty_equivalents()[..2], [1.0, 1.0]);
        let mut seen = prefs.clone();
        seen.dedup();
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn cautious_lottery_version_by_relabeling() {
        // The risk reading: two equally likely draws, lotteries as acts,
        // degenerate lotteries as constants. A risk-neutral evaluation of
        // the 50:50 lottery over 0 and 2 certainty-equivalates it at 1; a
        // risk-averse one at 0. "More risk-averse than" is the same
        // comparison, and the cautious preference is the maxmin.
        let lotteries = ActSpace::new(
            vec!["heads".into(), "tails".into()],
            vec![0.0, 1.0, 2.0],
            vec![("fifty_fifty".into(), vec![2.0, 0.0])],
        )
        .unwrap();
        let neutral =
            CEPreference::from_assignments(&lotteries, &[("fifty_fifty", 1.0)]).unwrap();
        let averse = CEPreference::from_assignments(&lotteries, &[("fifty_fifty", 0.0)]).unwrap();
        assert!(more_ambiguity_averse(&averse, &neutral, &lotteries));
        assert!(!more_ambiguity_averse(&neutral, &averse, &lotteries));

        let cautious = maxmin_preference(&[neutral.clone(), averse.clone()], &lotteries);
        assert_eq!(cautious, averse);
        assert!(is_maxmin_representation(&[neutral, averse.clone()], &averse, &lotteries));
    }

    #[test]
    fn maxmin_sweep_passes_on_small_spaces() {
        let sweep = verify_maxmin(2, &SweepOptions::default()).unwrap();
        assert!(sweep.passed(), "{:?}", sweep.checks);
        assert!(sweep.exhaustive);
        assert_eq!(sweep.posets, 6);
        // Profiles of size ≤ 2 per space: 1 + 3 + 10 over the two-prize
        // grid and 1 + 6 + 45 over the three-prize grid.
        assert_eq!(sweep.instances, 66);
        for check in &sweep.checks {
            assert!(check.passes > 0, "check {} never ran", check.check);
        }
    }

    #[test]
    fn maxmin_sweep_rejects_oversized_requests() {
        assert_eq!(
            verify_maxmin(5, &SweepOptions::default()).unwrap_err(),
            AmbiguityError::TooLarge { what: "non-constant act count", got: 5, max: 4 }
        );
    }

    #[test]
    fn maxmin_sweep_is_reproducible() {
        let a = verify_maxmin(1, &SweepOptions::default()).unwrap();
        let b = verify_maxmin(1, &SweepOptions::default()).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
