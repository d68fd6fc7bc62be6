//! Monotone comparative statics on finite real chains.
//!
//! An agent picks an alternative from a finite set of reals ordered by ≥.
//! When the agent's preference rises in the sense of single-crossing
//! dominance, the set of optimal alternatives rises in the strong set
//! order. This module provides the chain and alternative-set types, argmax
//! and consensus operations, the two set orders, their lifts to sets of
//! preferences (via joins and meets, which exist and are unique because a
//! chain is complete), a monotone social choice function that respects
//! unanimity, and exhaustive sweeps validating each of these claims.
//!
//! Set-order conventions: the strong set order (`A` dominates `B` iff every
//! cross pair has its max in `A` and its min in `B`) holds vacuously when
//! either set is empty; the alternative set order (every cross pair is
//! bracketed by some element of `A` above the max and some element of `B`
//! below the min) is defined for nonempty sets only.
//!
//! The social choice function follows the increasing-selection recipe:
//! φ(P) := max C(P) on the sets with nonempty consensus — the max of a
//! strong-set-order-increasing correspondence is an increasing selection,
//! since max C(P′) ∨ max C(P) ∈ C(P′) forces max C(P′) ≥ max C(P) — and
//! ψ(P) := inf φ over the nonempty-consensus sets weakly dominating P
//! (taking the dominance reflexively, so that ψ = φ where φ is defined),
//! with sup 𝒳 when no such set exists. On finite chains every weak order
//! attains its argmax, so the nonemptiness hypothesis of the robust
//! comparative-statics result holds automatically.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::lattice::{join, meet};
use crate::oracle::{CheckResult, Counterexample, InstanceSweep};
use crate::poset::{Poset, Relation};
use crate::prefs::{enumerate_weak_orders, parse_ranking, sc_dominates, Profile, WeakOrder};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompStatError {
    #[error("chain values must be finite, distinct and strictly increasing: {0}")]
    BadChain(String),
    #[error("preference ranks {got} alternatives but the chain has {expected}")]
    WrongArity { got: usize, expected: usize },
    #[error("alternative sets must be nonempty for the alternative set order")]
    EmptyInput,
    #[error("preference sets must be nonempty")]
    EmptyPreferenceSet,
    #[error("index {index} is outside a chain of {len} alternatives")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("value {0} is not an alternative of the chain")]
    UnknownValue(f64),
    #[error("the full-universe social choice construction supports at most {max} alternatives, got {got}")]
    UniverseTooLarge { got: usize, max: usize },
}

/// A finite set of real alternatives ordered by ≥: the ground set of the
/// comparative-statics results. Stored strictly increasing, so index order
/// is value order, and exposed as a complete poset for the bound machinery.
#[derive(Debug, Clone)]
pub struct RealChain {
    values: Vec<f64>,
    poset: Poset,
}

impl RealChain {
    pub fn new(values: Vec<f64>) -> Result<Self, CompStatError> {
        if values.is_empty() {
            return Err(CompStatError::BadChain("no alternatives".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(CompStatError::BadChain(format!("non-finite value {v}")));
        }
        if let Some(w) = values.windows(2).find(|w| w[0] >= w[1]) {
            return Err(CompStatError::BadChain(format!("{} precedes {}", w[0], w[1])));
        }
        let names: std::sync::Arc<[String]> =
            values.iter().map(|v| v.to_string()).collect::<Vec<_>>().into();
        let rel = Relation::from_fn(names, |i, j| i >= j);
        let poset = crate::poset::validate_poset(rel).expect("a chain is a poset");
        Ok(RealChain { values, poset })
    }

    /// The chain 1, 2, …, n.
    pub fn first_n(n: usize) -> Result<Self, CompStatError> {
        RealChain::new((1..=n).map(|i| i as f64).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, index: usize) -> f64 {
        self.values[index]
    }

    pub fn index_of(&self, value: f64) -> Option<usize> {
        self.values.iter().position(|&v| v == value)
    }

    /// The chain as a (complete) poset; element `i` is the i-th smallest
    /// alternative, named by its numeral.
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Parses a ranking such as `"2 > 3 > 1"` over the chain's numerals.
    pub fn parse_ranking(&self, text: &str) -> Result<WeakOrder, crate::prefs::PrefError> {
        parse_ranking(text, self.poset.elements())
    }

    fn check_arity(&self, pref: &WeakOrder) -> Result<(), CompStatError> {
        if pref.len() == self.len() {
            Ok(())
        } else {
            Err(CompStatError::WrongArity { got: pref.len(), expected: self.len() })
        }
    }
}

/// A subset of a chain's alternatives, held as indices into the chain (so
/// comparisons are plain index comparisons).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AltSet {
    indices: BTreeSet<usize>,
}

impl AltSet {
    pub fn from_indices(
        chain: &RealChain,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self, CompStatError> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&bad) = indices.iter().find(|&&i| i >= chain.len()) {
            return Err(CompStatError::IndexOutOfRange { index: bad, len: chain.len() });
        }
        Ok(AltSet { indices })
    }

    pub fn from_values(chain: &RealChain, values: &[f64]) -> Result<Self, CompStatError> {
        let indices = values
            .iter()
            .map(|&v| chain.index_of(v).ok_or(CompStatError::UnknownValue(v)))
            .collect::<Result<BTreeSet<usize>, _>>()?;
        Ok(AltSet { indices })
    }

    fn from_set(indices: BTreeSet<usize>) -> Self {
        AltSet { indices }
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.contains(&index)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn min_index(&self) -> Option<usize> {
        self.indices.first().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.indices.last().copied()
    }

    pub fn values(&self, chain: &RealChain) -> Vec<f64> {
        self.indices().map(|i| chain.value(i)).collect()
    }

    pub fn format(&self, chain: &RealChain) -> String {
        let inner: Vec<String> =
            self.indices().map(|i| chain.value(i).to_string()).collect();
        format!("{{{}}}", inner.join(", "))
    }
}

/// The set of optimal alternatives of one preference: its top tier. Finite
/// chains make this nonempty for every weak order.
pub fn argmax_set(pref: &WeakOrder, chain: &RealChain) -> Result<AltSet, CompStatError> {
    chain.check_arity(pref)?;
    Ok(AltSet::from_set(pref.top_tier().into_iter().collect()))
}

/// The consensus: alternatives optimal for *every* member. May be empty.
pub fn consensus(profile: &Profile, chain: &RealChain) -> Result<AltSet, CompStatError> {
    let mut members = profile.iter();
    let mut acc = argmax_set(members.next().expect("profiles are nonempty"), chain)?;
    for m in members {
        let next = argmax_set(m, chain)?;
        acc = AltSet::from_set(acc.indices.intersection(&next.indices).copied().collect());
    }
    Ok(acc)
}

/// The possibly-optimal alternatives: optimal for *some* member.
pub fn possibly_optimal(profile: &Profile, chain: &RealChain) -> Result<AltSet, CompStatError> {
    let mut acc = BTreeSet::new();
    for m in profile.iter() {
        acc.extend(argmax_set(m, chain)?.indices);
    }
    Ok(AltSet::from_set(acc))
}

/// Strong set order: `a` dominates `b` iff for every cross pair the max
/// lies in `a` and the min in `b`. Vacuously true when either set is empty.
pub fn sso_dominates(a: &AltSet, b: &AltSet) -> bool {
    a.indices().all(|x| {
        b.indices().all(|y| a.contains(x.max(y)) && b.contains(x.min(y)))
    })
}

/// Alternative set order: `a` dominates `b` iff every cross pair is
/// bracketed — some element of `a` is at least the max and some element of
/// `b` is at most the min. Defined for nonempty sets.
pub fn aso_dominates(a: &AltSet, b: &AltSet) -> Result<bool, CompStatError> {
    if a.is_empty() || b.is_empty() {
        return Err(CompStatError::EmptyInput);
    }
    Ok(a.indices().all(|x| {
        b.indices().all(|y| {
            a.indices().any(|x2| x2 >= x.max(y)) && b.indices().any(|y2| y2 <= x.min(y))
        })
    }))
}

fn pair_join(h: &WeakOrder, l: &WeakOrder, chain: &RealChain) -> WeakOrder {
    let profile = Profile::new(vec![h.clone(), l.clone()]).expect("two members");
    join(&profile, chain.poset()).expect("joins exist over a complete order")
}

fn pair_meet(h: &WeakOrder, l: &WeakOrder, chain: &RealChain) -> WeakOrder {
    let profile = Profile::new(vec![h.clone(), l.clone()]).expect("two members");
    meet(&profile, chain.poset()).expect("meets exist over a complete order")
}

/// The strong set order lifted to sets of preferences over the chain: every
/// cross pair's join must lie in `ph` and its meet in `pl`. Joins and meets
/// exist and are unique because the chain is complete. Vacuously true when
/// either set is empty.
pub fn sso_on_preferences(
    ph: &[WeakOrder],
    pl: &[WeakOrder],
    chain: &RealChain,
) -> Result<bool, CompStatError> {
    for o in ph.iter().chain(pl) {
        chain.check_arity(o)?;
    }
    for h in ph {
        for l in pl {
            if !ph.contains(&pair_join(h, l, chain)) || !pl.contains(&pair_meet(h, l, chain)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The alternative set order lifted to sets of preferences: every cross
/// pair is bracketed by some member of `ph` dominating the join and some
/// member of `pl` dominated by the meet. Requires nonempty sets.
pub fn aso_on_preferences(
    ph: &[WeakOrder],
    pl: &[WeakOrder],
    chain: &RealChain,
) -> Result<bool, CompStatError> {
    if ph.is_empty() || pl.is_empty() {
        return Err(CompStatError::EmptyPreferenceSet);
    }
    for o in ph.iter().chain(pl) {
        chain.check_arity(o)?;
    }
    let p = chain.poset();
    for h in ph {
        for l in pl {
            let j = pair_join(h, l, chain);
            let m = pair_meet(h, l, chain);
            let covered = ph.iter().any(|h2| sc_dominates(h2, &j, p))
                && pl.iter().any(|l2| sc_dominates(&m, l2, p));
            if !covered {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Shared scaffolding for the social choice function: a universe of
/// preference sets as index sets over a common order list, with join and
/// meet index tables. `None` in a table means the join or meet of that pair
/// is not among the listed orders (possible for explicit universes), which
/// makes any membership test fail.
struct PsiContext {
    sets: Vec<BTreeSet<usize>>,
    join_idx: Vec<Vec<Option<usize>>>,
    meet_idx: Vec<Vec<Option<usize>>>,
    consensus_cache: Vec<Option<AltSet>>,
}

impl PsiContext {
    fn build(
        orders: &[WeakOrder],
        sets: Vec<BTreeSet<usize>>,
        chain: &RealChain,
    ) -> Result<Self, CompStatError> {
        let position = |o: &WeakOrder| orders.iter().position(|x| x == o);
        let join_idx: Vec<Vec<Option<usize>>> = orders
            .iter()
            .map(|h| orders.iter().map(|l| position(&pair_join(h, l, chain))).collect())
            .collect();
        let meet_idx: Vec<Vec<Option<usize>>> = orders
            .iter()
            .map(|h| orders.iter().map(|l| position(&pair_meet(h, l, chain))).collect())
            .collect();
        let consensus_cache = sets
            .iter()
            .map(|s| {
                let members: Vec<WeakOrder> =
                    s.iter().map(|&i| orders[i].clone()).collect();
                let profile = Profile::new(members).expect("universe sets are nonempty");
                consensus(&profile, chain).map(Some)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PsiContext { sets, join_idx, meet_idx, consensus_cache })
    }

    /// Strong-set-order dominance of set `a` over set `b`, by index tables.
    fn sso_sets(&self, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> bool {
        a.iter().all(|&h| {
            b.iter().all(|&l| {
                self.join_idx[h][l].is_some_and(|j| a.contains(&j))
                    && self.meet_idx[h][l].is_some_and(|m| b.contains(&m))
            })
        })
    }

    /// ψ(P): the infimum of max-of-consensus over the nonempty-consensus
    /// universe sets that (reflexively) dominate `p`; sup 𝒳 if none do.
    fn psi(&self, p: &BTreeSet<usize>, chain: &RealChain) -> f64 {
        let candidates = self
            .sets
            .iter()
            .zip(&self.consensus_cache)
            .filter(|(_, c)| c.as_ref().is_some_and(|c| !c.is_empty()))
            .filter(|(s, _)| *s == p || self.sso_sets(s, p))
            .filter_map(|(_, c)| c.as_ref().and_then(|c| c.max_index()));
        match candidates.min_by(|a, b| chain.value(*a).total_cmp(&chain.value(*b))) {
            Some(i) => chain.value(i),
            None => chain.value(chain.len() - 1),
        }
    }
}

const PSI_FULL_UNIVERSE_MAX: usize = 3;

fn dedup_indices(
    orders: &mut Vec<WeakOrder>,
    set: &[WeakOrder],
    chain: &RealChain,
) -> Result<BTreeSet<usize>, CompStatError> {
    set.iter()
        .map(|o| {
            chain.check_arity(o)?;
            Ok(match orders.iter().position(|x| x == o) {
                Some(i) => i,
                None => {
                    orders.push(o.clone());
                    orders.len() - 1
                }
            })
        })
        .collect()
}

/// The monotone, unanimity-respecting social choice function over the full
/// universe of preference sets: every nonempty set of weak orders over the
/// chain. Capped at three alternatives (13 weak orders, 8191 sets); larger
/// chains need [`monotone_scf_psi_over`] with an explicit universe.
pub fn monotone_scf_psi(p: &[WeakOrder], chain: &RealChain) -> Result<f64, CompStatError> {
    if chain.len() > PSI_FULL_UNIVERSE_MAX {
        return Err(CompStatError::UniverseTooLarge {
            got: chain.len(),
            max: PSI_FULL_UNIVERSE_MAX,
        });
    }
    if p.is_empty() {
        return Err(CompStatError::EmptyPreferenceSet);
    }
    let orders = enumerate_weak_orders(chain.len()).expect("three alternatives at most");
    let mut order_list = orders.clone();
    let p_set = dedup_indices(&mut order_list, p, chain)?;
    debug_assert_eq!(order_list.len(), orders.len(), "every weak order is enumerated");
    let sets: Vec<BTreeSet<usize>> = (1u32..(1 << orders.len()))
        .map(|mask| (0..orders.len()).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    let ctx = PsiContext::build(&orders, sets, chain)?;
    Ok(ctx.psi(&p_set, chain))
}

/// The same social choice function over an explicit finite universe of
/// preference sets (each nonempty). The preference set `p` is compared
/// against universe members by (reflexive) strong-set-order dominance.
pub fn monotone_scf_psi_over(
    p: &[WeakOrder],
    chain: &RealChain,
    universe: &[Vec<WeakOrder>],
) -> Result<f64, CompStatError> {
    if p.is_empty() || universe.iter().any(|s| s.is_empty()) {
        return Err(CompStatError::EmptyPreferenceSet);
    }
    let mut orders = Vec::new();
    let p_set = dedup_indices(&mut orders, p, chain)?;
    let sets = universe
        .iter()
        .map(|s| dedup_indices(&mut orders, s, chain))
        .collect::<Result<Vec<_>, _>>()?;
    let ctx = PsiContext::build(&orders, sets, chain)?;
    Ok(ctx.psi(&p_set, chain))
}

// ---------------------------------------------------------------------------
// Exhaustive sweeps.

#[derive(Debug, Default)]
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

    fn into_result(self, check: &str) -> CheckResult {
        CheckResult {
            check: check.to_owned(),
            passes: self.passes,
            failures: self.failures,
            first_counterexample: self.first,
        }
    }
}

fn chain_counterexample(
    check: &str,
    chain: &RealChain,
    rankings: Vec<String>,
    detail: String,
) -> Counterexample {
    let p = chain.poset();
    Counterexample {
        check: check.to_owned(),
        elements: p.elements().to_vec(),
        order_pairs: p
            .strict_pairs()
            .map(|(i, j)| (p.element(i).to_owned(), p.element(j).to_owned()))
            .collect(),
        profile: rankings,
        detail,
    }
}

/// Sweeps the canonical comparative-statics result on the `n`-element
/// chain: whenever one weak order single-crossing-dominates another, its
/// argmax set dominates the other's in the strong set order. All ordered
/// pairs of weak orders are scanned; the 5-element chain gives 541² pairs.
pub fn verify_mcs_theorem(n: usize) -> Result<InstanceSweep, CompStatError> {
    const MAX: usize = 5;
    if n == 0 || n > MAX {
        return Err(CompStatError::UniverseTooLarge { got: n, max: MAX });
    }
    let chain = RealChain::first_n(n)?;
    let orders = enumerate_weak_orders(n).expect("chain sizes are capped");
    let argmax: Vec<AltSet> =
        orders.iter().map(|o| argmax_set(o, &chain).expect("arity matches")).collect();
    let p = chain.poset();

    let tallies: Vec<Tally> = orders
        .par_iter()
        .enumerate()
        .map(|(hi, h)| {
            let mut t = Tally::default();
            for (lo, l) in orders.iter().enumerate() {
                if !sc_dominates(h, l, p) {
                    continue;
                }
                t.record(sso_dominates(&argmax[hi], &argmax[lo]), || {
                    chain_counterexample(
                        "mcs_argmax_sso",
                        &chain,
                        vec![h.format(p.elements()), l.format(p.elements())],
                        format!(
                            "{} dominates {} but argmax {} fails to dominate {}",
                            h.format(p.elements()),
                            l.format(p.elements()),
                            argmax[hi].format(&chain),
                            argmax[lo].format(&chain),
                        ),
                    )
                });
            }
            t
        })
        .collect();
    let mut total = Tally::default();
    for t in tallies {
        total.merge(t);
    }

    Ok(InstanceSweep {
        theorem: "mcs".to_owned(),
        n,
        k: None,
        seed: 0,
        exhaustive: true,
        posets: 1,
        instances: (orders.len() * orders.len()) as u64,
        checks: vec![total.into_result("mcs_argmax_sso")],
    })
}

/// Bit-mask tables for sweeping all pairs of subsets of the weak orders
/// over a chain of at most three alternatives (13 orders, 8191 subsets).
/// Join, meet and dominance come from the lattice machinery once per order
/// pair; everything else is the definitions re-expressed over masks.
struct SubsetTables {
    orders: Vec<WeakOrder>,
    num_sets: u32,
    /// `join_image[l][a]`: orders arising as join(h, l) for h in mask `a`.
    join_image: Vec<Vec<u16>>,
    /// `meet_image[l][a]`: orders arising as meet(h, l) for h in mask `a`.
    meet_image: Vec<Vec<u16>>,
    /// `aso_join_ok[a]` bit l: every h in `a` has some member of `a`
    /// dominating join(h, l).
    aso_join_ok: Vec<u16>,
    /// `aso_bad_meet[b]`: orders m such that no member of `b` is dominated
    /// by m.
    aso_bad_meet: Vec<u16>,
    /// Consensus and possibly-optimal alternative masks per subset.
    consensus_alt: Vec<u8>,
    union_alt: Vec<u8>,
    /// Set-order dominance between alternative masks.
    sso_alt: Vec<Vec<bool>>,
    aso_alt: Vec<Vec<bool>>,
}

impl SubsetTables {
    fn build(chain: &RealChain) -> Self {
        let n = chain.len();
        let orders = enumerate_weak_orders(n).expect("at most three alternatives");
        let count = orders.len();
        assert!(count <= 16, "subset sweeps use 16-bit masks");
        let num_sets = (1u32 << count) - 1;
        let p = chain.poset();

        let join_idx: Vec<Vec<usize>> = orders
            .iter()
            .map(|h| {
                orders
                    .iter()
                    .map(|l| {
                        let j = pair_join(h, l, chain);
                        orders.iter().position(|o| *o == j).expect("joins are weak orders")
                    })
                    .collect()
            })
            .collect();
        let meet_idx: Vec<Vec<usize>> = orders
            .iter()
            .map(|h| {
                orders
                    .iter()
                    .map(|l| {
                        let m = pair_meet(h, l, chain);
                        orders.iter().position(|o| *o == m).expect("meets are weak orders")
                    })
                    .collect()
            })
            .collect();
        let dom_above: Vec<u16> = (0..count)
            .map(|x| {
                (0..count)
                    .filter(|&h| sc_dominates(&orders[h], &orders[x], p))
                    .fold(0u16, |acc, h| acc | (1 << h))
            })
            .collect();
        let dom_below: Vec<u16> = (0..count)
            .map(|x| {
                (0..count)
                    .filter(|&l| sc_dominates(&orders[x], &orders[l], p))
                    .fold(0u16, |acc, l| acc | (1 << l))
            })
            .collect();

        let image = |idx: &[Vec<usize>]| -> Vec<Vec<u16>> {
            (0..count)
                .map(|l| {
                    let mut img = vec![0u16; num_sets as usize + 1];
                    for a in 1..=num_sets {
                        let low = a.trailing_zeros() as usize;
                        img[a as usize] =
                            img[(a & (a - 1)) as usize] | (1 << idx[low][l]);
                    }
                    img
                })
                .collect()
        };
        let join_image = image(&join_idx);
        let meet_image = image(&meet_idx);

        let aso_join_ok: Vec<u16> = (0..=num_sets)
            .map(|a| {
                (0..count)
                    .filter(|&l| {
                        (0..count)
                            .filter(|&h| a >> h & 1 == 1)
                            .all(|h| dom_above[join_idx[h][l]] & a as u16 != 0)
                    })
                    .fold(0u16, |acc, l| acc | (1 << l))
            })
            .collect();
        let aso_bad_meet: Vec<u16> = (0..=num_sets)
            .map(|b| {
                (0..count)
                    .filter(|&m| dom_below[m] & b as u16 == 0)
                    .fold(0u16, |acc, m| acc | (1 << m))
            })
            .collect();

        let argmax_alt: Vec<u8> = orders
            .iter()
            .map(|o| o.top_tier().into_iter().fold(0u8, |acc, i| acc | (1 << i)))
            .collect();
        let mut consensus_alt = vec![0u8; num_sets as usize + 1];
        let mut union_alt = vec![0u8; num_sets as usize + 1];
        consensus_alt[0] = (1 << n) - 1;
        for a in 1..=num_sets {
            let low = a.trailing_zeros() as usize;
            let rest = (a & (a - 1)) as usize;
            consensus_alt[a as usize] = consensus_alt[rest] & argmax_alt[low];
            union_alt[a as usize] = union_alt[rest] | argmax_alt[low];
        }

        let alt_sets: Vec<AltSet> = (0..1u8 << n)
            .map(|mask| {
                AltSet::from_set((0..n).filter(|i| mask >> i & 1 == 1).collect())
            })
            .collect();
        let sso_alt: Vec<Vec<bool>> = alt_sets
            .iter()
            .map(|a| alt_sets.iter().map(|b| sso_dominates(a, b)).collect())
            .collect();
        let aso_alt: Vec<Vec<bool>> = alt_sets
            .iter()
            .map(|a| {
                alt_sets
                    .iter()
                    .map(|b| {
                        !a.is_empty()
                            && !b.is_empty()
                            && aso_dominates(a, b).expect("nonempty by guard")
                    })
                    .collect()
            })
            .collect();

        SubsetTables {
            orders,
            num_sets,
            join_image,
            meet_image,
            aso_join_ok,
            aso_bad_meet,
            consensus_alt,
            union_alt,
            sso_alt,
            aso_alt,
        }
    }

    fn count(&self) -> usize {
        self.orders.len()
    }

    /// Strong set order of preference-set mask `a` over mask `b`.
    fn sso_sets(&self, a: u32, b: u32) -> bool {
        (0..self.count()).filter(|&l| b >> l & 1 == 1).all(|l| {
            self.join_image[l][a as usize] & !(a as u16) == 0
                && self.meet_image[l][a as usize] & !(b as u16) == 0
        })
    }

    /// Alternative set order of preference-set mask `a` over mask `b`.
    fn aso_sets(&self, a: u32, b: u32) -> bool {
        (0..self.count()).filter(|&l| b >> l & 1 == 1).all(|l| {
            self.aso_join_ok[a as usize] >> l & 1 == 1
                && self.meet_image[l][a as usize] & self.aso_bad_meet[b as usize] == 0
        })
    }

    fn members(&self, mask: u32, chain: &RealChain) -> Vec<String> {
        (0..self.count())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.orders[i].format(chain.poset().elements()))
            .collect()
    }

    fn member_orders(&self, mask: u32) -> Vec<WeakOrder> {
        (0..self.count())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.orders[i].clone())
            .collect()
    }
}

fn alt_mask_format(mask: u8, chain: &RealChain) -> String {
    let inner: Vec<String> = (0..chain.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| chain.value(i).to_string())
        .collect();
    format!("{{{}}}", inner.join(", "))
}

fn subset_sweep<FHyp, FGoal>(
    theorem: &str,
    main_check: &str,
    spot_check: &str,
    chain: &RealChain,
    tables: &SubsetTables,
    hypothesis: FHyp,
    goal: FGoal,
    spot: impl Fn(&[WeakOrder], &[WeakOrder]) -> bool + Sync,
) -> InstanceSweep
where
    FHyp: Fn(u32, u32) -> bool + Sync,
    FGoal: Fn(u32, u32) -> bool + Sync,
{
    const SPOT_STRIDE: u64 = 500_009;
    let num_sets = tables.num_sets;
    let tallies: Vec<(Tally, Tally)> = (1..=num_sets)
        .into_par_iter()
        .map(|a| {
            let mut main = Tally::default();
            let mut spot_tally = Tally::default();
            for b in 1..=num_sets {
                let holds = hypothesis(a, b);
                if holds {
                    main.record(goal(a, b), || {
                        chain_counterexample(
                            main_check,
                            chain,
                            tables.members(a, chain),
                            format!(
                                "dominating set {:?} over {:?}: conclusion fails",
                                tables.members(a, chain),
                                tables.members(b, chain),
                            ),
                        )
                    });
                }
                let pair_index = (a as u64 - 1) * num_sets as u64 + (b as u64 - 1);
                if pair_index % SPOT_STRIDE == 0 {
                    let direct =
                        spot(&tables.member_orders(a), &tables.member_orders(b));
                    spot_tally.record(direct == holds, || {
                        chain_counterexample(
                            spot_check,
                            chain,
                            tables.members(a, chain),
                            format!(
                                "mask dominance {holds} but definitional scan {direct} vs {:?}",
                                tables.members(b, chain),
                            ),
                        )
                    });
                }
            }
            (main, spot_tally)
        })
        .collect();

    let mut main = Tally::default();
    let mut spot_total = Tally::default();
    for (m, s) in tallies {
        main.merge(m);
        spot_total.merge(s);
    }
    InstanceSweep {
        theorem: theorem.to_owned(),
        n: chain.len(),
        k: None,
        seed: 0,
        exhaustive: true,
        posets: 1,
        instances: num_sets as u64 * num_sets as u64,
        checks: vec![main.into_result(main_check), spot_total.into_result(spot_check)],
    }
}

/// Sweeps the consensus comparative-statics result on the `n`-element chain
/// (n ≤ 3): over every ordered pair of nonempty sets of weak orders, if the
/// first dominates the second in the preference strong set order, the
/// consensus of the first dominates the consensus of the second in the
/// alternative strong set order. A deterministic subsample re-checks the
/// mask-based dominance test against the definitional scan.
pub fn verify_consensus_monotonicity(n: usize) -> Result<InstanceSweep, CompStatError> {
    if n == 0 || n > PSI_FULL_UNIVERSE_MAX {
        return Err(CompStatError::UniverseTooLarge { got: n, max: PSI_FULL_UNIVERSE_MAX });
    }
    let chain = RealChain::first_n(n)?;
    let tables = SubsetTables::build(&chain);
    Ok(subset_sweep(
        "mcs_consensus",
        "consensus_sso_monotone",
        "sso_definition_spot_agreement",
        &chain,
        &tables,
        |a, b| tables.sso_sets(a, b),
        |a, b| {
            tables.sso_alt[tables.consensus_alt[a as usize] as usize]
                [tables.consensus_alt[b as usize] as usize]
        },
        |ph, pl| sso_on_preferences(ph, pl, &chain).expect("arities match"),
    ))
}

/// Sweeps the misspecification-robust comparative-statics result on the
/// `n`-element chain (n ≤ 3): over every ordered pair of nonempty sets of
/// weak orders, if the first dominates the second in the preference
/// alternative set order, the possibly-optimal set of the first dominates
/// that of the second in the alternative set order. Argmaxes are nonempty
/// automatically on finite chains. A deterministic subsample re-checks the
/// mask-based dominance test against the definitional scan.
pub fn verify_robust_monotonicity(n: usize) -> Result<InstanceSweep, CompStatError> {
    if n == 0 || n > PSI_FULL_UNIVERSE_MAX {
        return Err(CompStatError::UniverseTooLarge { got: n, max: PSI_FULL_UNIVERSE_MAX });
    }
    let chain = RealChain::first_n(n)?;
    let tables = SubsetTables::build(&chain);
    Ok(subset_sweep(
        "mcs_robust",
        "robust_aso_monotone",
        "aso_definition_spot_agreement",
        &chain,
        &tables,
        |a, b| tables.aso_sets(a, b),
        |a, b| {
            tables.aso_alt[tables.union_alt[a as usize] as usize]
                [tables.union_alt[b as usize] as usize]
        },
        |ph, pl| aso_on_preferences(ph, pl, &chain).expect("nonempty and arities match"),
    ))
}

/// Sweeps the social choice function over the full universe on the
/// `n`-element chain (n ≤ 3): ψ lands in the consensus whenever the
/// consensus is nonempty (unanimity), rises along preference-set dominance
/// (monotonicity), equals sup 𝒳 exactly on sets with an empty upward set,
/// and a deterministic subsample agrees with the public entry point.
pub fn verify_monotone_scf(n: usize) -> Result<InstanceSweep, CompStatError> {
    if n == 0 || n > PSI_FULL_UNIVERSE_MAX {
        return Err(CompStatError::UniverseTooLarge { got: n, max: PSI_FULL_UNIVERSE_MAX });
    }
    let chain = RealChain::first_n(n)?;
    let tables = SubsetTables::build(&chain);
    let num_sets = tables.num_sets;
    let top = chain.value(chain.len() - 1);

    // φ on nonempty-consensus sets: the largest consensus alternative.
    let phi: Vec<Option<f64>> = (0..=num_sets)
        .map(|mask| {
            let c = tables.consensus_alt[mask as usize];
            (mask != 0 && c != 0).then(|| chain.value(7 - c.leading_zeros() as usize))
        })
        .collect();

    // ψ for every nonempty set, from reflexive upward dominance within the
    // nonempty-consensus universe.
    let psi: Vec<(f64, bool)> = (0..=num_sets)
        .into_par_iter()
        .map(|p_mask| {
            if p_mask == 0 {
                return (f64::NAN, true);
            }
            let mut best: Option<f64> = None;
            for q in 1..=num_sets {
                if phi[q as usize].is_none() {
                    continue;
                }
                if q == p_mask || tables.sso_sets(q, p_mask) {
                    let v = phi[q as usize].expect("checked");
                    best = Some(best.map_or(v, |b: f64| b.min(v)));
                }
            }
            match best {
                Some(v) => (v, false),
                None => (top, true),
            }
        })
        .collect();

    let mut unanimity = Tally::default();
    let mut hits_top = Tally::default();
    for p_mask in 1..=num_sets {
        let (value, upward_empty) = psi[p_mask as usize];
        let c = tables.consensus_alt[p_mask as usize];
        if c != 0 {
            let in_consensus = chain
                .index_of(value)
                .is_some_and(|i| c >> i & 1 == 1);
            unanimity.record(in_consensus, || {
                chain_counterexample(
                    "psi_respects_unanimity",
                    &chain,
                    tables.members(p_mask, &chain),
                    format!(
                        "psi = {value} outside consensus {}",
                        alt_mask_format(c, &chain)
                    ),
                )
            });
        }
        if upward_empty {
            hits_top.record(value == top, || {
                chain_counterexample(
                    "psi_empty_upward_set_hits_top",
                    &chain,
                    tables.members(p_mask, &chain),
                    format!("psi = {value} but the upward set is empty; expected {top}"),
                )
            });
        }
    }

    let monotone_tallies: Vec<Tally> = (1..=num_sets)
        .into_par_iter()
        .map(|a| {
            let mut t = Tally::default();
            for b in 1..=num_sets {
                if tables.sso_sets(a, b) {
                    t.record(psi[a as usize].0 >= psi[b as usize].0, || {
                        chain_counterexample(
                            "psi_monotone",
                            &chain,
                            tables.members(a, &chain),
                            format!(
                                "psi({:?}) = {} < psi({:?}) = {}",
                                tables.members(a, &chain),
                                psi[a as usize].0,
                                tables.members(b, &chain),
                                psi[b as usize].0,
                            ),
                        )
                    });
                }
            }
            t
        })
        .collect();
    let mut monotone = Tally::default();
    for t in monotone_tallies {
        monotone.merge(t);
    }

    let mut spot = Tally::default();
    let stride = (num_sets as usize / 48).max(1);
    for p_mask in (1..=num_sets).step_by(stride) {
        let direct = monotone_scf_psi(&tables.member_orders(p_mask), &chain)
            .expect("nonempty set on a small chain");
        spot.record(direct == psi[p_mask as usize].0, || {
            chain_counterexample(
                "psi_matches_public_entry_point",
                &chain,
                tables.members(p_mask, &chain),
                format!("sweep psi {} vs public psi {direct}", psi[p_mask as usize].0),
            )
        });
    }

    Ok(InstanceSweep {
        theorem: "mcs_scf".to_owned(),
        n,
        k: None,
        seed: 0,
        exhaustive: true,
        posets: 1,
        instances: num_sets as u64 * num_sets as u64,
        checks: vec![
            unanimity.into_result("psi_respects_unanimity"),
            monotone.into_result("psi_monotone"),
            hits_top.into_result("psi_empty_upward_set_hits_top"),
            spot.into_result("psi_matches_public_entry_point"),
        ],
    })
}
