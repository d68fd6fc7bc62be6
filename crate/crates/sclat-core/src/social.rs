//! Acceptable preference aggregation under a partial comparability order.
//!
//! A social welfare function turns a profile of individual preferences into
//! one social preference over the same alternatives. Some alternatives are
//! objectively comparable — the background order `≳` ranks them — while the
//! rest are matters of taste, and two axioms discipline the outcome:
//!
//! * **Justified objections.** If `x ≳ y` and even one individual weakly
//!   (strictly) prefers `x` to `y`, the social preference must rank `x`
//!   weakly (strictly) above `y`: an objection aligned with the background
//!   order may never be overruled. This holds exactly when the social
//!   preference single-crossing dominates every member — when it is an
//!   upper bound of the profile — so both routes are computed.
//! * **Conditional unanimity.** If every individual weakly (strictly)
//!   prefers `x` to `y`, the social preference must follow — except when a
//!   strict (weak) chain of justified objections runs from `y` down to `x`,
//!   in which case the first axiom already binds society the other way and
//!   unanimity yields.
//!
//! A social preference satisfying both axioms is *acceptable*. The first
//! axiom pins the candidate to the forced core on every comparable pair, so
//! only minimum upper bounds of the profile can be acceptable; per-profile
//! existence is therefore a scan over them. Whether *every* profile can be
//! aggregated acceptably is a property of the background order alone: it is
//! possible exactly when the order is a fork or a shattered fork,
//! equivalently when none of six four-element patterns (4-crown, diamond,
//! ball-and-chain, hook, dumbbells, saw) embeds in it. On fork and
//! shattered-fork orders [`construct_acceptable`] builds an acceptable
//! preference directly, and [`verify_swf`] sweeps the whole theory over
//! every labeled poset of a given size.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::chains::{build_chain_digraph, has_p_chain, has_strict_p_chain, ChainDigraph};
use crate::lattice::{
    core_relation, is_minimum_upper_bound, is_upper_bound, suzumura_extend, CoreRelation,
};
use crate::oracle::{
    enumerate_posets, CheckResult, Counterexample, InstanceSweep, OracleError, SweepOptions,
};
use crate::poset::{Poset, Relation};
use crate::prefs::{enumerate_weak_orders, Profile, WeakOrder};
use crate::structure::{classify_fork, find_forbidden_four_poset, ForkClass, FourPosetWitness};

/// Largest alternative count accepted by the candidate scans, which
/// enumerate every weak order.
pub const SEARCH_MAX: usize = 6;

/// Failures of aggregation queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SocialError {
    /// Candidate scans enumerate every weak order, which caps the size.
    #[error("{what} of {got} exceeds the search cap of {max}")]
    TooLarge { what: &'static str, got: usize, max: usize },
    /// Construction needs a background order on which every profile is
    /// aggregable — a fork or a shattered fork. On any other shape some
    /// profile admits no acceptable preference at all.
    #[error("the alternative order is neither a fork nor a shattered fork")]
    NotAForkPoset,
    /// The existence theorem guarantees the construction succeeds, so an
    /// exhausted search is a bug in this library, not an input error.
    #[error("no acceptable preference found where one is guaranteed: {0}")]
    InternalSearchExhausted(String),
}

/// The two aggregation axioms, named for violation witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    JustifiedObjections,
    ConditionalUnanimity,
}

/// A pinpointed axiom failure: the candidate fails to rank `favoured` over
/// `disfavoured` as the axiom demands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationWitness {
    /// The offending candidate, in ranking grammar.
    pub social: String,
    pub axiom: Axiom,
    pub favoured: String,
    pub disfavoured: String,
}

/// Does the candidate respect justified objections? Whenever `x ≳ y` and
/// some member weakly (strictly) prefers `x` to `y`, the candidate must
/// rank `x` weakly (strictly) above `y`. Equivalent to the candidate being
/// an upper bound of the profile; the definition scan is cross-checked
/// against the dominance route in debug builds.
pub fn respects_justified_objections(social: &WeakOrder, pi: &Profile, p: &Poset) -> bool {
    let by_definition = first_objection_violation(social, pi, p).is_none();
    debug_assert_eq!(
        by_definition,
        is_upper_bound(social, pi, p),
        "definition scan and upper-bound route disagree"
    );
    by_definition
}

/// First comparable pair whose aligned member preference the candidate
/// drops, scanning descending pairs in element order.
fn first_objection_violation(
    social: &WeakOrder,
    pi: &Profile,
    p: &Poset,
) -> Option<(usize, usize)> {
    p.strict_pairs().find(|&(x, y)| {
        pi.iter().any(|m| {
            (m.weak(x, y) && !social.weak(x, y)) || (m.strict(x, y) && !social.strict(x, y))
        })
    })
}

/// Does the candidate conditionally respect unanimity? For every ordered
/// pair `(x, y)`: weak unanimity for `x` over `y` binds unless a strict
/// chain runs `y → x`, and strict unanimity binds unless any chain runs
/// `y → x`.
pub fn conditionally_respects_unanimity(social: &WeakOrder, pi: &Profile, p: &Poset) -> bool {
    let g = build_chain_digraph(pi, p);
    first_unanimity_violation(social, pi, &g).is_none()
}

/// First ordered pair whose unanimity demand the candidate misses, scanning
/// pairs in lexicographic element order.
fn first_unanimity_violation(
    social: &WeakOrder,
    pi: &Profile,
    g: &ChainDigraph,
) -> Option<(usize, usize)> {
    let p = g.poset();
    let n = p.len();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            // Chains only run downward, so a chain from `y` to `x` needs
            // `y ≳ x`; on every other pair the demands are unconditional.
            let (back, strict_back) = if p.ge(y, x) {
                (
                    has_p_chain(g, y, x).expect("comparable"),
                    has_strict_p_chain(g, y, x).expect("comparable"),
                )
            } else {
                (false, false)
            };
            if !strict_back && !social.weak(x, y) && pi.iter().all(|m| m.weak(x, y)) {
                return Some((x, y));
            }
            if !back && !social.strict(x, y) && pi.iter().all(|m| m.strict(x, y)) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Both axioms together.
pub fn is_acceptable(social: &WeakOrder, pi: &Profile, p: &Poset) -> bool {
    respects_justified_objections(social, pi, p) && conditionally_respects_unanimity(social, pi, p)
}

/// The candidate's first axiom failure, if any: justified objections are
/// scanned before unanimity, each in its pair order.
pub fn first_violation(social: &WeakOrder, pi: &Profile, p: &Poset) -> Option<ViolationWitness> {
    let witness = |axiom, (x, y): (usize, usize)| ViolationWitness {
        social: social.format(p.elements()),
        axiom,
        favoured: p.element(x).to_owned(),
        disfavoured: p.element(y).to_owned(),
    };
    if let Some(pair) = first_objection_violation(social, pi, p) {
        return Some(witness(Axiom::JustifiedObjections, pair));
    }
    let g = build_chain_digraph(pi, p);
    first_unanimity_violation(social, pi, &g).map(|pair| witness(Axiom::ConditionalUnanimity, pair))
}

/// Searches for an acceptable social preference for one profile. Only
/// minimum upper bounds can be acceptable, so the candidates are exactly
/// the weak orders agreeing with the forced core on every comparable pair;
/// the first one (in rank-vector enumeration order) passing both axioms is
/// returned.
pub fn acceptable_exists_for_profile(
    pi: &Profile,
    p: &Poset,
) -> Result<Option<WeakOrder>, SocialError> {
    let n = p.len();
    if n > SEARCH_MAX {
        return Err(SocialError::TooLarge { what: "alternative count", got: n, max: SEARCH_MAX });
    }
    let orders = enumerate_weak_orders(n).expect("within the enumeration cap");
    Ok(orders
        .into_iter()
        .filter(|w| is_minimum_upper_bound(w, pi, p))
        .find(|w| is_acceptable(w, pi, p)))
}

/// Structural verdict on whether every profile over an order can be
/// aggregated acceptably.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwfExistence {
    pub exists: bool,
    pub fork_class: ForkClass,
    /// First forbidden four-element pattern, for the complementary
    /// criterion: aggregation is possible exactly when none embeds.
    pub forbidden_subposet: Option<FourPosetWitness>,
}

/// Decides whether an aggregation rule acceptable on every profile exists:
/// true exactly when the order is a fork or a shattered fork. The
/// equivalent forbidden-pattern criterion is computed alongside, and the
/// two verdicts are cross-checked in debug builds.
pub fn exists_acceptable_swf(p: &Poset) -> SwfExistence {
    let fork_class = classify_fork(p);
    let exists = fork_class != ForkClass::Neither;
    let forbidden_subposet = find_forbidden_four_poset(p).map(|(kind, idx)| FourPosetWitness {
        kind,
        witness: idx.map(|i| p.element(i).to_owned()),
    });
    debug_assert_eq!(
        exists,
        forbidden_subposet.is_none(),
        "fork classification and forbidden-pattern scan disagree"
    );
    SwfExistence { exists, fork_class, forbidden_subposet }
}

/// Builds an acceptable social preference for a profile over a fork or
/// shattered-fork order.
///
/// On a shattered fork the construction is direct: seed a relation with the
/// forced core on comparable pairs and the unanimity relation on unranked
/// pairs, then transitively close and extend to a complete preference. The
/// closure step is sound because every forced chain on such an order has
/// length at most two, so it can never overturn a seeded strict pair.
///
/// On a fork, the head alternatives split into blocks by how the core
/// places them against the spine; every minimum upper bound orders distinct
/// blocks the same way, while within a block any preference extends to a
/// minimum upper bound. The per-block completions are enumerated — last
/// block fastest — and the first assembly passing both axioms is returned.
pub fn construct_acceptable(pi: &Profile, p: &Poset) -> Result<WeakOrder, SocialError> {
    match classify_fork(p) {
        ForkClass::Neither => Err(SocialError::NotAForkPoset),
        ForkClass::ShatteredUpFork | ForkClass::ShatteredDownFork => {
            construct_on_shattered_fork(pi, p)
        }
        ForkClass::UpFork | ForkClass::DownFork => construct_on_fork(pi, p),
    }
}

fn construct_on_shattered_fork(pi: &Profile, p: &Poset) -> Result<WeakOrder, SocialError> {
    let core = core_relation(pi, p);
    let seed = Relation::from_fn(p.elements_arc(), |i, j| {
        if i == j {
            true
        } else if p.comparable(i, j) {
            core.ge(i, j)
        } else {
            pi.iter().all(|m| m.weak(i, j))
        }
    });
    // Close before extending: a one-sided unanimity edge may lawfully turn
    // into an indifference once the closure routes around it, and only the
    // closed relation's strict pairs are promises the extension must keep.
    let social = suzumura_extend(&seed.transitive_closure())
        .map_err(|e| SocialError::InternalSearchExhausted(e.to_string()))?;
    debug_assert!(is_minimum_upper_bound(&social, pi, p), "construction left the bound set");
    debug_assert!(is_acceptable(&social, pi, p), "construction violated an axiom");
    Ok(social)
}

fn construct_on_fork(pi: &Profile, p: &Poset) -> Result<WeakOrder, SocialError> {
    let n = p.len();
    let core = core_relation(pi, p);

    // The head alternatives are exactly those with an incomparable partner;
    // everything else lies on the spine, where the core pins every bound.
    let head: Vec<usize> =
        (0..n).filter(|&i| (0..n).any(|j| j != i && !p.comparable(i, j))).collect();
    let spine: Vec<usize> = (0..n).filter(|i| !head.contains(i)).collect();

    // Group head alternatives by how the core places them against the
    // spine. Transitivity forces every bound to order distinct blocks the
    // same way, so only the preference within each block is free.
    let signature =
        |x: usize| -> Vec<(bool, bool)> { spine.iter().map(|&z| (core.ge(x, z), core.ge(z, x))).collect() };
    let mut blocks: Vec<(Vec<(bool, bool)>, Vec<usize>)> = Vec::new();
    for &x in &head {
        let sig = signature(x);
        match blocks.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, members)) => members.push(x),
            None => blocks.push((sig, vec![x])),
        }
    }

    let menus: Vec<Vec<WeakOrder>> = blocks
        .iter()
        .map(|(_, members)| {
            enumerate_weak_orders(members.len()).map_err(|_| SocialError::TooLarge {
                what: "fork-head block",
                got: members.len(),
                max: 7,
            })
        })
        .collect::<Result<_, _>>()?;

    // Within-block slot lookup for the seed relation.
    let mut slot: Vec<Option<(usize, usize)>> = vec![None; n];
    for (b, (_, members)) in blocks.iter().enumerate() {
        for (pos, &x) in members.iter().enumerate() {
            slot[x] = Some((b, pos));
        }
    }

    let mut picks = vec![0usize; blocks.len()];
    let mut scanned = 0u64;
    loop {
        scanned += 1;
        let seed = Relation::from_fn(p.elements_arc(), |i, j| {
            if i == j {
                return true;
            }
            if p.comparable(i, j) {
                return core.ge(i, j);
            }
            match (slot[i], slot[j]) {
                (Some((bi, pi_)), Some((bj, pj))) if bi == bj => {
                    menus[bi][picks[bi]].weak(pi_, pj)
                }
                // Cross-block pairs are forced through the spine by the
                // transitive closure inside the extension.
                _ => false,
            }
        });
        if let Ok(social) = suzumura_extend(&seed.transitive_closure()) {
            // Acceptability subsumes minimumhood (only joins are
            // acceptable), so one filter decides the candidate.
            if is_acceptable(&social, pi, p) {
                debug_assert!(
                    is_minimum_upper_bound(&social, pi, p),
                    "accepted assembly left the bound set"
                );
                return Ok(social);
            }
        }
        // Advance the odometer, last block fastest.
        let mut i = blocks.len();
        loop {
            if i == 0 {
                return Err(SocialError::InternalSearchExhausted(format!(
                    "scanned {scanned} completion(s) of {} head block(s)",
                    blocks.len()
                )));
            }
            i -= 1;
            picks[i] += 1;
            if picks[i] < menus[i].len() {
                break;
            }
            picks[i] = 0;
        }
    }
}

/// Acceptability analysis of one or more profiles over a shared order.
#[derive(Debug, Clone, Serialize)]
pub struct AcceptabilityReport {
    pub constraint_class: ForkClass,
    pub profiles: Vec<ProfileAcceptability>,
}

/// Outcome for one profile: every acceptable preference the candidate scan
/// found, plus the first axiom violation among rejected candidates.
#[derive(Debug, Clone, Serialize)]
pub struct ProfileAcceptability {
    /// Position of the profile in the request.
    pub profile: usize,
    /// Members in ranking grammar.
    pub members: Vec<String>,
    /// Minimum upper bounds scanned; zero means no candidate exists at all.
    pub candidates: u64,
    /// Acceptable preferences in ranking grammar, enumeration order.
    pub acceptable: Vec<String>,
    pub first_violation: Option<ViolationWitness>,
}

/// Scans every weak order for each profile: the minimum upper bounds are
/// the candidates, and each is either collected as acceptable or
/// contributes a violation witness. Capped at [`SEARCH_MAX`] alternatives.
pub fn acceptability_report(
    p: &Poset,
    profiles: &[Profile],
) -> Result<AcceptabilityReport, SocialError> {
    let n = p.len();
    if n > SEARCH_MAX {
        return Err(SocialError::TooLarge { what: "alternative count", got: n, max: SEARCH_MAX });
    }
    let orders = enumerate_weak_orders(n).expect("within the enumeration cap");
    let rows = profiles
        .iter()
        .enumerate()
        .map(|(index, pi)| {
            let mut candidates = 0;
            let mut acceptable = Vec::new();
            let mut violation = None;
            for w in &orders {
                if !is_minimum_upper_bound(w, pi, p) {
                    continue;
                }
                candidates += 1;
                match first_violation(w, pi, p) {
                    None => acceptable.push(w.format(p.elements())),
                    Some(v) if violation.is_none() => violation = Some(v),
                    Some(_) => {}
                }
            }
            ProfileAcceptability {
                profile: index,
                members: pi.iter().map(|m| m.format(p.elements())).collect(),
                candidates,
                acceptable,
                first_violation: violation,
            }
        })
        .collect();
    Ok(AcceptabilityReport { constraint_class: classify_fork(p), profiles: rows })
}

const SWF_CHECK_NAMES: [&str; 6] = [
    "fork_class_matches_forbidden_patterns",
    "fork_posets_aggregate_every_profile",
    "blocked_posets_have_a_blocked_profile",
    "acceptable_preferences_are_minimum_upper_bounds",
    "construction_output_is_acceptable",
    "acceptability_api_spot_agreement",
];
const CLASS_MATCH: usize = 0;
const FORK_AGGREGATES: usize = 1;
const BLOCKED_PROFILE: usize = 2;
const ONLY_JOINS: usize = 3;
const CONSTRUCTION: usize = 4;
const API_SPOT: usize = 5;

/// Every 97th profile per poset re-runs the candidate-level public API
/// against the sweep's mask scan.
const ACCEPTABILITY_SPOT_STRIDE: usize = 97;

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

fn sweep_counterexample(
    p: &Poset,
    members: &[&WeakOrder],
    check: &str,
    detail: String,
) -> Counterexample {
    Counterexample {
        check: check.into(),
        elements: p.elements().to_vec(),
        order_pairs: p
            .strict_pairs()
            .map(|(i, j)| (p.element(i).to_owned(), p.element(j).to_owned()))
            .collect(),
        profile: members.iter().map(|m| m.format(p.elements())).collect(),
        detail,
    }
}

/// Per-poset candidate table: every weak order with its axiom-relevant
/// pair masks, so per-profile acceptability reduces to bit tests.
struct PosetScan {
    orders: Vec<WeakOrder>,
    /// Ordered comparable pairs, both orientations — the bound-test domain.
    comp_pairs: Vec<(usize, usize)>,
    /// Descending comparable pairs — the objection domain.
    down_pairs: Vec<(usize, usize)>,
    /// All ordered distinct pairs — the unanimity domain.
    all_pairs: Vec<(usize, usize)>,
    comp_weak: Vec<u64>,
    down_weak: Vec<u64>,
    down_strict: Vec<u64>,
    all_weak: Vec<u64>,
    all_strict: Vec<u64>,
}

fn pair_mask(pairs: &[(usize, usize)], f: impl Fn(usize, usize) -> bool) -> u64 {
    pairs
        .iter()
        .enumerate()
        .fold(0u64, |acc, (bit, &(i, j))| acc | (u64::from(f(i, j)) << bit))
}

fn poset_scan(p: &Poset) -> PosetScan {
    let n = p.len();
    let orders = enumerate_weak_orders(n).expect("sweep sizes stay within the enumeration cap");
    let down_pairs: Vec<(usize, usize)> = p.strict_pairs().collect();
    let comp_pairs: Vec<(usize, usize)> =
        down_pairs.iter().flat_map(|&(i, j)| [(i, j), (j, i)]).collect();
    let all_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    assert!(comp_pairs.len() <= 64 && all_pairs.len() <= 64, "pair masks fit in u64");
    let mut scan = PosetScan {
        orders,
        comp_pairs,
        down_pairs,
        all_pairs,
        comp_weak: Vec::new(),
        down_weak: Vec::new(),
        down_strict: Vec::new(),
        all_weak: Vec::new(),
        all_strict: Vec::new(),
    };
    for w in &scan.orders {
        scan.comp_weak.push(pair_mask(&scan.comp_pairs, |i, j| w.weak(i, j)));
        scan.down_weak.push(pair_mask(&scan.down_pairs, |i, j| w.weak(i, j)));
        scan.down_strict.push(pair_mask(&scan.down_pairs, |i, j| w.strict(i, j)));
        scan.all_weak.push(pair_mask(&scan.all_pairs, |i, j| w.weak(i, j)));
        scan.all_strict.push(pair_mask(&scan.all_pairs, |i, j| w.strict(i, j)));
    }
    scan
}

/// Per-profile demand masks over the scan's pair lists.
struct ProfileMasks {
    core_comp: u64,
    need_weak: u64,
    need_strict: u64,
    cu_weak: u64,
    cu_strict: u64,
}

fn profile_masks(scan: &PosetScan, p: &Poset, pi: &Profile, core: &CoreRelation) -> ProfileMasks {
    let g = core.digraph();
    let mut cu_weak = 0u64;
    let mut cu_strict = 0u64;
    for (bit, &(x, y)) in scan.all_pairs.iter().enumerate() {
        let (back, strict_back) = if p.ge(y, x) {
            (
                has_p_chain(g, y, x).expect("comparable"),
                has_strict_p_chain(g, y, x).expect("comparable"),
            )
        } else {
            (false, false)
        };
        if !strict_back && pi.iter().all(|m| m.weak(x, y)) {
            cu_weak |= 1 << bit;
        }
        if !back && pi.iter().all(|m| m.strict(x, y)) {
            cu_strict |= 1 << bit;
        }
    }
    ProfileMasks {
        core_comp: pair_mask(&scan.comp_pairs, |i, j| core.ge(i, j)),
        need_weak: pair_mask(&scan.down_pairs, |i, j| pi.iter().any(|m| m.weak(i, j))),
        need_strict: pair_mask(&scan.down_pairs, |i, j| pi.iter().any(|m| m.strict(i, j))),
        cu_weak,
        cu_strict,
    }
}

enum ProfilePlan {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

fn pair_tuples(num_orders: usize, plan: &ProfilePlan, poset_index: usize) -> Vec<(usize, usize)> {
    match plan {
        ProfilePlan::Exhaustive => (0..num_orders * num_orders)
            .map(|code| (code % num_orders, code / num_orders))
            .collect(),
        ProfilePlan::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed ^ (poset_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            );
            (0..*count)
                .map(|_| (rng.gen_range(0..num_orders), rng.gen_range(0..num_orders)))
                .collect()
        }
    }
}

fn sweep_one_poset(poset_index: usize, p: &Poset, plan: &ProfilePlan) -> (Vec<Tally>, u64) {
    let mut tallies = vec![Tally::default(); SWF_CHECK_NAMES.len()];
    let scan = poset_scan(p);
    let fork_class = classify_fork(p);
    let forbidden = find_forbidden_four_poset(p);
    tallies[CLASS_MATCH].record((fork_class != ForkClass::Neither) == forbidden.is_none(), || {
        sweep_counterexample(
            p,
            &[],
            SWF_CHECK_NAMES[CLASS_MATCH],
            format!("classified {fork_class:?} but the pattern scan returned {forbidden:?}"),
        )
    });
    let aggregable = fork_class != ForkClass::Neither;

    let tuples = pair_tuples(scan.orders.len(), plan, poset_index);
    let mut blocked_seen = false;
    for (t, &(a, b)) in tuples.iter().enumerate() {
        let profile = Profile::new(vec![scan.orders[a].clone(), scan.orders[b].clone()])
            .expect("two shared-length members");
        let members = [&scan.orders[a], &scan.orders[b]];
        let core = core_relation(&profile, p);
        let masks = profile_masks(&scan, p, &profile, &core);

        let jo = |o: usize| {
            (masks.need_weak & !scan.down_weak[o]) == 0
                && (masks.need_strict & !scan.down_strict[o]) == 0
        };
        let cu = |o: usize| {
            (masks.cu_weak & !scan.all_weak[o]) == 0
                && (masks.cu_strict & !scan.all_strict[o]) == 0
        };
        let mub = |o: usize| scan.comp_weak[o] == masks.core_comp;

        let mut exists = false;
        let mut stray: Option<usize> = None;
        for o in 0..scan.orders.len() {
            if jo(o) && cu(o) {
                exists = true;
                if stray.is_none() && !mub(o) {
                    stray = Some(o);
                }
            }
        }
        tallies[ONLY_JOINS].record(stray.is_none(), || {
            let w = scan.orders[stray.expect("recorded on failure")].format(p.elements());
            sweep_counterexample(
                p,
                &members,
                SWF_CHECK_NAMES[ONLY_JOINS],
                format!("`{w}` passes both axioms but is not a minimum upper bound"),
            )
        });

        if aggregable {
            tallies[FORK_AGGREGATES].record(exists, || {
                sweep_counterexample(
                    p,
                    &members,
                    SWF_CHECK_NAMES[FORK_AGGREGATES],
                    format!(
                        "classified {fork_class:?} but none of {} orders is acceptable",
                        scan.orders.len()
                    ),
                )
            });
            let built = construct_acceptable(&profile, p);
            let ok = match &built {
                Ok(social) => {
                    is_acceptable(social, &profile, p)
                        && is_minimum_upper_bound(social, &profile, p)
                }
                Err(_) => false,
            };
            tallies[CONSTRUCTION].record(ok, || {
                let detail = match built {
                    Ok(social) => format!(
                        "construction returned `{}`, which fails re-validation",
                        social.format(p.elements())
                    ),
                    Err(e) => format!("construction failed: {e}"),
                };
                sweep_counterexample(p, &members, SWF_CHECK_NAMES[CONSTRUCTION], detail)
            });
        } else if !exists {
            blocked_seen = true;
        }

        if t % ACCEPTABILITY_SPOT_STRIDE == 0 {
            let api = acceptable_exists_for_profile(&profile, p)
                .expect("sweep sizes fit the search cap");
            let candidate_level = scan.orders.iter().enumerate().all(|(o, w)| {
                jo(o) == respects_justified_objections(w, &profile, p)
                    && cu(o) == conditionally_respects_unanimity(w, &profile, p)
                    && mub(o) == is_minimum_upper_bound(w, &profile, p)
            });
            let returned_valid = api
                .as_ref()
                .map_or(true, |w| is_acceptable(w, &profile, p) && is_minimum_upper_bound(w, &profile, p));
            tallies[API_SPOT].record(
                api.is_some() == exists && candidate_level && returned_valid,
                || {
                    sweep_counterexample(
                        p,
                        &members,
                        SWF_CHECK_NAMES[API_SPOT],
                        "candidate-level api disagrees with the mask scan".into(),
                    )
                },
            );
        }
    }

    if !aggregable && matches!(plan, ProfilePlan::Exhaustive) {
        tallies[BLOCKED_PROFILE].record(blocked_seen, || {
            sweep_counterexample(
                p,
                &[],
                SWF_CHECK_NAMES[BLOCKED_PROFILE],
                "classified neither, yet every profile admitted an acceptable preference".into(),
            )
        });
    }
    (tallies, tuples.len() as u64)
}

/// Sweeps the aggregation theory over every labeled poset on `n` elements
/// with every (or a seeded sample of) two-member profiles:
///
/// * the fork classification must agree with the forbidden-pattern scan;
/// * on fork and shattered-fork posets every profile must admit an
///   acceptable preference, and the direct construction must deliver one;
/// * on all other posets some profile must be blocked (checked only when
///   the profile range is exhaustive, since a sample proves no absence);
/// * every order passing both axioms must be a minimum upper bound;
/// * a 1-in-97 spot sample re-runs the public candidate-level API against
///   the sweep's mask scan.
///
/// Profiles are exhaustive up to `n = 4` (and beyond with `deep`),
/// otherwise sampled per `opts`.
pub fn verify_swf(n: usize, opts: &SweepOptions) -> Result<InstanceSweep, SocialError> {
    let posets = enumerate_posets(n).map_err(|e| match e {
        OracleError::TooLarge { what, got, max } => SocialError::TooLarge { what, got, max },
    })?;
    let num_orders = enumerate_weak_orders(n).expect("poset cap is below the order cap").len();
    let exhaustive = opts.deep || num_orders * num_orders <= 10_000;
    let plan = if exhaustive {
        ProfilePlan::Exhaustive
    } else {
        ProfilePlan::Sampled { count: opts.sampled_profiles, seed: opts.seed }
    };

    let results: Vec<(Vec<Tally>, u64)> = posets
        .par_iter()
        .enumerate()
        .map(|(idx, p)| sweep_one_poset(idx, p, &plan))
        .collect();
    let mut acc = vec![Tally::default(); SWF_CHECK_NAMES.len()];
    let mut instances = 0;
    for (tallies, count) in results {
        for (a, t) in acc.iter_mut().zip(tallies) {
            a.merge(t);
        }
        instances += count;
    }
    let checks = SWF_CHECK_NAMES
        .iter()
        .zip(acc)
        .map(|(name, t)| CheckResult {
            check: (*name).into(),
            passes: t.passes,
            failures: t.failures,
            first_counterexample: t.first,
        })
        .collect();
    Ok(InstanceSweep {
        theorem: "swf".into(),
        n,
        k: Some(2),
        seed: opts.seed,
        exhaustive,
        posets: posets.len() as u64,
        instances,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{
        anti2, anti2_profile, chain3, chain3_profile, crown4, crown4_profile, hook, hook_profile,
        statusquo,
    };
    use crate::poset::Poset;
    use crate::prefs::parse_ranking;
    use crate::structure::FourPosetKind;

    fn order(text: &str, p: &Poset) -> WeakOrder {
        parse_ranking(text, p.elements()).expect("ranking parses")
    }

    fn profile(rankings: &[&str], p: &Poset) -> Profile {
        Profile::from_rankings(rankings, p.elements()).expect("profile parses")
    }

    #[test]
    fn justified_objections_follow_the_definition() {
        let p = chain3();
        let pi = chain3_profile();
        assert!(respects_justified_objections(&order("x > y > z", &p), &pi, &p));
        assert!(!respects_justified_objections(&order("z > x > y", &p), &pi, &p));
        // The violation sits at (y, z): the second member's strict preference
        // for y is aligned with y ≳ z, yet the candidate ranks z on top.
        let witness = first_violation(&order("z > x > y", &p), &pi, &p).expect("violated");
        assert_eq!(witness.axiom, Axiom::JustifiedObjections);
        assert_eq!((witness.favoured.as_str(), witness.disfavoured.as_str()), ("y", "z"));

        // Without comparable pairs there is nothing to object to.
        let a = anti2();
        for text in ["x > y", "y > x", "x ~ y"] {
            assert!(respects_justified_objections(&order(text, &a), &anti2_profile(), &a));
        }
    }

    #[test]
    fn conditional_unanimity_follows_the_definition() {
        let h = hook();
        let pi = hook_profile();
        // Both members strictly prefer z to w, the pair is unranked, and no
        // chain runs w → z, so the demand stands and this candidate — the
        // unique minimum upper bound — misses it.
        let social = order("w > x > y > z", &h);
        assert!(respects_justified_objections(&social, &pi, &h));
        assert!(!conditionally_respects_unanimity(&social, &pi, &h));
        let witness = first_violation(&social, &pi, &h).expect("violated");
        assert_eq!(witness.axiom, Axiom::ConditionalUnanimity);
        assert_eq!((witness.favoured.as_str(), witness.disfavoured.as_str()), ("z", "w"));

        // Both members rank z strictly over x, but the strict chain
        // x → y → z of justified objections voids both demands.
        let p = chain3();
        assert!(conditionally_respects_unanimity(&order("x > y > z", &p), &chain3_profile(), &p));

        // Unanimous indifference everywhere is honoured by total indifference.
        let indifferent = profile(&["x ~ y ~ z", "x ~ y ~ z"], &p);
        assert!(is_acceptable(&order("x ~ y ~ z", &p), &indifferent, &p));
    }

    #[test]
    fn acceptability_is_the_conjunction_of_the_axioms() {
        let p = chain3();
        assert!(is_acceptable(&order("x > y > z", &p), &chain3_profile(), &p));
        let h = hook();
        for w in enumerate_weak_orders(4).unwrap() {
            assert!(!is_acceptable(&w, &hook_profile(), &h), "{w:?} on the hook");
        }
        let c = crown4();
        for w in enumerate_weak_orders(4).unwrap() {
            assert!(!is_acceptable(&w, &crown4_profile(), &c), "{w:?} on the crown");
        }
    }

    #[test]
    fn acceptable_search_scans_the_minimum_upper_bounds() {
        let p = chain3();
        let found = acceptable_exists_for_profile(&chain3_profile(), &p).unwrap();
        assert_eq!(found, Some(order("x > y > z", &p)));

        assert_eq!(acceptable_exists_for_profile(&hook_profile(), &hook()).unwrap(), None);

        let sq = statusquo();
        let pi = profile(
            &["y1 > x0 > z1 ~ y2 > z2 > y3", "z2 > y3 ~ y2 > x0 > y1 > z1"],
            &sq,
        );
        let found = acceptable_exists_for_profile(&pi, &sq).unwrap().expect("present");
        assert!(is_acceptable(&found, &pi, &sq));

        let big = Poset::chain((0..7).map(|i| format!("e{i}")).collect()).unwrap();
        let two = Profile::new(vec![
            WeakOrder::from_ranks(vec![0; 7]).unwrap(),
            WeakOrder::from_ranks(vec![0; 7]).unwrap(),
        ])
        .unwrap();
        assert_eq!(
            acceptable_exists_for_profile(&two, &big),
            Err(SocialError::TooLarge { what: "alternative count", got: 7, max: 6 })
        );
    }

    #[test]
    fn existence_decision_matches_both_criteria() {
        let sq = exists_acceptable_swf(&statusquo());
        assert!(sq.exists);
        assert_eq!(sq.fork_class, ForkClass::ShatteredDownFork);
        assert_eq!(sq.forbidden_subposet, None);

        let h = exists_acceptable_swf(&hook());
        assert!(!h.exists);
        assert_eq!(h.fork_class, ForkClass::Neither);
        assert_eq!(h.forbidden_subposet.expect("pattern found").kind, FourPosetKind::Hook);

        assert!(exists_acceptable_swf(&chain3()).exists);
        assert_eq!(exists_acceptable_swf(&chain3()).fork_class, ForkClass::UpFork);
        assert_eq!(exists_acceptable_swf(&anti2()).fork_class, ForkClass::ShatteredUpFork);

        let c = exists_acceptable_swf(&crown4());
        assert!(!c.exists);
        assert_eq!(c.forbidden_subposet.expect("pattern found").kind, FourPosetKind::Crown4);
    }

    #[test]
    fn construction_handles_every_fork_shape() {
        // Chain: no head freedom, the unique bound is the answer.
        let p = chain3();
        let built = construct_acceptable(&chain3_profile(), &p).unwrap();
        assert_eq!(built, order("x > y > z", &p));

        // Up-fork with a clash inside the head: the all-indifferent block
        // completion fails unanimity, so the odometer must advance.
        let up = Poset::from_covers(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[("a", "c"), ("b", "c"), ("c", "d")],
        )
        .unwrap();
        let pi = profile(&["a > b > c > d", "a > b > d > c"], &up);
        let built = construct_acceptable(&pi, &up).unwrap();
        assert!(is_acceptable(&built, &pi, &up));
        assert!(built.strict(0, 1), "unanimous a over b must survive");

        // Down-fork.
        let down = Poset::from_covers(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[("a", "b"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        let pi = profile(&["c > d > a > b", "d > c > b > a"], &down);
        let built = construct_acceptable(&pi, &down).unwrap();
        assert!(is_acceptable(&built, &pi, &down));

        // Shattered fork, via the seeded-extension path.
        let sq = statusquo();
        let pi = profile(
            &["y1 > x0 > z1 ~ y2 > z2 > y3", "z2 > y3 ~ y2 > x0 > y1 > z1"],
            &sq,
        );
        let built = construct_acceptable(&pi, &sq).unwrap();
        assert!(is_acceptable(&built, &pi, &sq));
        assert!(is_minimum_upper_bound(&built, &pi, &sq));

        // Anything else is refused.
        assert_eq!(
            construct_acceptable(&hook_profile(), &hook()),
            Err(SocialError::NotAForkPoset)
        );
    }

    #[test]
    fn blocking_profiles_exist_on_every_forbidden_pattern() {
        // For each four-element pattern that rules aggregation out, the
        // matching two-member clash admits no acceptable preference.
        let ball = Poset::from_covers(
            vec!["x".into(), "y".into(), "z".into(), "w".into()],
            &[("x", "y"), ("y", "z")],
        )
        .unwrap();
        assert_eq!(classify_fork(&ball), ForkClass::Neither);
        let pi = profile(&["z > w > x > y", "y > z > w > x"], &ball);
        assert_eq!(acceptable_exists_for_profile(&pi, &ball).unwrap(), None);

        // Dumbbells: the unanimous cross pairs w ≻ x and y ≻ z close a
        // cycle with the two bars x > y and z > w that the core forces, so
        // no candidate survives. (The rotation phase matters: shifting both
        // rankings by one puts the unanimity on the bars themselves, where
        // the core already grants it, and aggregation goes through.)
        let dumbbells = Poset::from_covers(
            vec!["x".into(), "y".into(), "z".into(), "w".into()],
            &[("x", "y"), ("z", "w")],
        )
        .unwrap();
        assert_eq!(classify_fork(&dumbbells), ForkClass::Neither);
        let pi = profile(&["w > x > y > z", "y > z > w > x"], &dumbbells);
        assert_eq!(acceptable_exists_for_profile(&pi, &dumbbells).unwrap(), None);
        let shifted = profile(&["x > y > z > w", "z > w > x > y"], &dumbbells);
        assert!(acceptable_exists_for_profile(&shifted, &dumbbells).unwrap().is_some());

        let saw = Poset::from_covers(
            vec!["x".into(), "y".into(), "z".into(), "w".into()],
            &[("x", "y"), ("z", "y"), ("z", "w")],
        )
        .unwrap();
        assert_eq!(classify_fork(&saw), ForkClass::Neither);
        let pi = profile(&["w > x > y > z", "y > z > w > x"], &saw);
        assert_eq!(acceptable_exists_for_profile(&pi, &saw).unwrap(), None);

        assert_eq!(
            acceptable_exists_for_profile(&hook_profile(), &hook()).unwrap(),
            None
        );
    }

    #[test]
    fn report_rows_revalidate() {
        let p = chain3();
        let report = acceptability_report(&p, &[chain3_profile()]).unwrap();
        assert_eq!(report.constraint_class, ForkClass::UpFork);
        let row = &report.profiles[0];
        assert_eq!(row.candidates, 1);
        assert_eq!(row.acceptable, vec!["x > y > z".to_string()]);
        assert!(row.first_violation.is_none());
        for text in &row.acceptable {
            let w = order(text, &p);
            assert!(is_acceptable(&w, &chain3_profile(), &p));
        }

        let a = anti2();
        let report = acceptability_report(&a, &[anti2_profile()]).unwrap();
        assert_eq!(report.profiles[0].candidates, 3);
        assert_eq!(report.profiles[0].acceptable.len(), 3);

        let h = hook();
        let report = acceptability_report(&h, &[hook_profile()]).unwrap();
        let row = &report.profiles[0];
        assert_eq!(row.candidates, 1);
        assert!(row.acceptable.is_empty());
        let v = row.first_violation.as_ref().expect("witnessed");
        assert_eq!(v.axiom, Axiom::ConditionalUnanimity);
        assert_eq!(v.social, "w > x > y > z");
        assert_eq!((v.favoured.as_str(), v.disfavoured.as_str()), ("z", "w"));

        let c = crown4();
        let report = acceptability_report(&c, &[crown4_profile()]).unwrap();
        let row = &report.profiles[0];
        assert_eq!(row.candidates, 0);
        assert!(row.acceptable.is_empty() && row.first_violation.is_none());
    }

    #[test]
    fn sweep_passes_on_small_sizes() {
        let sweep = verify_swf(3, &SweepOptions::default()).unwrap();
        assert!(sweep.passed(), "{:#?}", sweep.checks);
        assert!(sweep.exhaustive);
        assert_eq!(sweep.posets, 19);
        assert_eq!(sweep.instances, 19 * 169);
        let by_name = |name: &str| {
            sweep.checks.iter().find(|c| c.check == name).expect("check present")
        };
        assert_eq!(by_name("fork_class_matches_forbidden_patterns").passes, 19);
        // Up to three alternatives every shape is a fork or shattered fork,
        // so no poset is blocked and every profile aggregates.
        assert_eq!(by_name("blocked_posets_have_a_blocked_profile").passes, 0);
        assert_eq!(by_name("fork_posets_aggregate_every_profile").passes, 19 * 169);
        assert_eq!(by_name("construction_output_is_acceptable").passes, 19 * 169);
        assert!(by_name("acceptability_api_spot_agreement").passes > 0);
    }

    #[test]
    fn sweep_is_reproducible() {
        let a = verify_swf(2, &SweepOptions::default()).unwrap();
        let b = verify_swf(2, &SweepOptions::default()).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    /// A random fork or shattered fork on up to six alternatives.
    fn random_aggregable_poset(rng: &mut ChaCha8Rng) -> Poset {
        let n = rng.gen_range(1..=6usize);
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let antlers = rng.gen_range(0..n);
        let flip = rng.gen_bool(0.5);
        let mut covers: Vec<(String, String)> = Vec::new();
        if rng.gen_bool(0.5) {
            // Fork: antlers above the hinge, a chain below it.
            for a in 0..antlers {
                covers.push((names[a].clone(), names[antlers].clone()));
            }
            for c in antlers..n - 1 {
                covers.push((names[c].clone(), names[c + 1].clone()));
            }
        } else if antlers > 0 {
            // Shattered fork: a lone head, everything else isolated.
            for a in 0..antlers {
                covers.push((names[a].clone(), names[antlers].clone()));
            }
        }
        if flip {
            covers = covers.into_iter().map(|(a, b)| (b, a)).collect();
        }
        let p = Poset::from_covers(names, &covers).expect("constructed shapes are posets");
        assert_ne!(classify_fork(&p), ForkClass::Neither, "generator stays aggregable");
        p
    }

    #[test]
    fn construction_survives_random_aggregable_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5_0C1A);
        let menus: Vec<Vec<WeakOrder>> =
            (0..=6).map(|n| if n == 0 { Vec::new() } else { enumerate_weak_orders(n).unwrap() }).collect();
        for case in 0..10_000 {
            let p = random_aggregable_poset(&mut rng);
            let menu = &menus[p.len()];
            let pick = |rng: &mut ChaCha8Rng| menu[rng.gen_range(0..menu.len())].clone();
            let pi = Profile::new(vec![pick(&mut rng), pick(&mut rng)]).unwrap();
            let built = construct_acceptable(&pi, &p)
                .unwrap_or_else(|e| panic!("case {case} on {p:?}: {e}"));
            assert!(is_acceptable(&built, &pi, &p), "case {case} on {p:?}");
            assert!(is_minimum_upper_bound(&built, &pi, &p), "case {case} on {p:?}");
            if case % 97 == 0 {
                assert!(
                    acceptable_exists_for_profile(&pi, &p).unwrap().is_some(),
                    "case {case}: search disagrees with construction"
                );
            }
        }
    }
}
