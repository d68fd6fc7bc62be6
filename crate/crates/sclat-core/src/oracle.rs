//! Brute-force ground truth and exhaustive theorem sweeps.
//!
//! Everything here recomputes results straight from the definitions —
//! bound sets by scanning every weak order against the dominance
//! definition, posets by enumerating every reflexive antisymmetric
//! transitive matrix — and compares the library's chain- and core-based
//! answers against that ground truth on every small instance. The
//! brute-force paths deliberately share no code with the chain or bound
//! machinery beyond the basic order types.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{
    core_relation, is_minimum_upper_bound, is_suzumura_consistent, is_upper_bound_via_chains,
    join_with, meet, CoreRelation,
};
use crate::poset::{is_complete, transitive_reduction, validate_poset, Poset, Relation};
use crate::prefs::{enumerate_weak_orders, sc_dominates, Profile, WeakOrder};
use crate::structure::{
    classify_fork, find_chalice, find_crown, find_crown_min_length, find_diamond,
    find_forbidden_four_poset, find_proper_4crown, find_weak_cycle, is_crown_and_diamond_free,
    Chalice, ForkClass, FourPosetKind,
};

/// Brute-force scale limits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} of {got} exceeds the brute-force cap of {max}")]
    TooLarge { what: &'static str, got: usize, max: usize },
}

fn letter_names(n: usize) -> Vec<String> {
    assert!(n <= 26, "letter naming supports at most 26 elements");
    (0..n).map(|i| char::from(b'a' + i as u8).to_string()).collect()
}

/// Enumerates every labeled poset on `n` elements (named `a`, `b`, …),
/// by assigning each unordered pair one of {incomparable, above, below}
/// and keeping the transitive assignments. Counts: 1, 3, 19, 219, 4231
/// for n = 1…5.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>, OracleError> {
    const MAX: usize = 5;
    if n == 0 || n > MAX {
        return Err(OracleError::TooLarge { what: "poset element count", got: n, max: MAX });
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let elements: std::sync::Arc<[String]> = letter_names(n).into();
    let mut out = Vec::new();
    let total = 3usize.pow(pairs.len() as u32);
    let mut strict = vec![false; n * n];
    for code in 0..total {
        strict.iter_mut().for_each(|b| *b = false);
        let mut rest = code;
        for &(i, j) in &pairs {
            match rest % 3 {
                1 => strict[i * n + j] = true,
                2 => strict[j * n + i] = true,
                _ => {}
            }
            rest /= 3;
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| {
                !strict[i * n + j]
                    || (0..n).all(|k| !strict[j * n + k] || strict[i * n + k])
            })
        });
        if !transitive {
            continue;
        }
        let rel = Relation::from_fn(elements.clone(), |i, j| i == j || strict[i * n + j]);
        out.push(validate_poset(rel).expect("transitive antisymmetric reflexive by construction"));
    }
    Ok(out)
}

/// A uniformly seeded random labeled poset: a random topological order with
/// each consistent edge kept with probability ½, then transitively closed.
pub fn random_poset(n: usize, rng: &mut impl Rng) -> Poset {
    let mut perm: Vec<usize> = (0..n).collect();
    // Fisher–Yates; `SliceRandom::shuffle` would equal this, but the manual
    // loop keeps the sampled bit stream independent of rand's internals.
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let mut strict = vec![false; n * n];
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.5) {
                strict[perm[a] * n + perm[b]] = true;
            }
        }
    }
    let elements: std::sync::Arc<[String]> = letter_names(n).into();
    let rel = Relation::from_fn(elements, |i, j| i == j || strict[i * n + j])
        .transitive_closure();
    validate_poset(rel).expect("closure of a DAG is a poset")
}

/// The four bound sets of a profile, computed purely from the dominance
/// definition by scanning every weak order. No chain or core machinery.
#[derive(Debug, Clone)]
pub struct BruteBounds {
    pub upper: Vec<WeakOrder>,
    pub minimum_upper: Vec<WeakOrder>,
    pub lower: Vec<WeakOrder>,
    pub maximum_lower: Vec<WeakOrder>,
}

pub fn brute_bounds(profile: &Profile, p: &Poset) -> Result<BruteBounds, OracleError> {
    const MAX: usize = 6;
    if p.len() > MAX {
        return Err(OracleError::TooLarge { what: "element count", got: p.len(), max: MAX });
    }
    let orders = enumerate_weak_orders(p.len()).expect("within weak-order cap");
    let upper: Vec<WeakOrder> = orders
        .iter()
        .filter(|u| profile.iter().all(|m| sc_dominates(u, m, p)))
        .cloned()
        .collect();
    let minimum_upper = upper
        .iter()
        .filter(|u| upper.iter().all(|other| sc_dominates(other, u, p)))
        .cloned()
        .collect();
    let lower: Vec<WeakOrder> = orders
        .iter()
        .filter(|l| profile.iter().all(|m| sc_dominates(m, l, p)))
        .cloned()
        .collect();
    let maximum_lower = lower
        .iter()
        .filter(|l| lower.iter().all(|other| sc_dominates(l, other, p)))
        .cloned()
        .collect();
    Ok(BruteBounds { upper, minimum_upper, lower, maximum_lower })
}

/// Bit-mask encoding of every weak order's behaviour on one poset's
/// comparable pairs, so the sweeps can evaluate dominance in two bit
/// operations. Pure re-encoding of the dominance definition.
struct PosetTables {
    /// Ordered pairs `(i, j)`, `i ≠ j`, comparable either way.
    oriented_pairs: Vec<(usize, usize)>,
    dom_w: Vec<u32>,
    dom_s: Vec<u32>,
    agree_w: Vec<u32>,
}

impl PosetTables {
    fn build(p: &Poset, orders: &[WeakOrder]) -> Self {
        let strict_pairs: Vec<(usize, usize)> = p.strict_pairs().collect();
        let oriented_pairs: Vec<(usize, usize)> = (0..p.len())
            .flat_map(|i| (0..p.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && p.comparable(i, j))
            .collect();
        assert!(oriented_pairs.len() <= 32, "mask paths support up to 32 oriented pairs");
        let mask = |pairs: &[(usize, usize)], hit: &dyn Fn(usize, usize) -> bool| {
            pairs
                .iter()
                .enumerate()
                .fold(0u32, |acc, (bit, &(i, j))| acc | (u32::from(hit(i, j)) << bit))
        };
        let dom_w: Vec<u32> =
            orders.iter().map(|o| mask(&strict_pairs, &|i, j| o.weak(i, j))).collect();
        let dom_s: Vec<u32> =
            orders.iter().map(|o| mask(&strict_pairs, &|i, j| o.strict(i, j))).collect();
        let agree_w: Vec<u32> =
            orders.iter().map(|o| mask(&oriented_pairs, &|i, j| o.weak(i, j))).collect();
        let tables = PosetTables { oriented_pairs, dom_w, dom_s, agree_w };
        debug_assert!(orders.len() < 2 || {
            let a = orders.len() / 2;
            tables.dominates(a, 0) == sc_dominates(&orders[a], &orders[0], p)
                && tables.dominates(0, a) == sc_dominates(&orders[0], &orders[a], p)
        });
        tables
    }

    /// `orders[hi]` dominates `orders[lo]`.
    fn dominates(&self, hi: usize, lo: usize) -> bool {
        (self.dom_w[lo] & !self.dom_w[hi]) == 0 && (self.dom_s[lo] & !self.dom_s[hi]) == 0
    }

    /// The forced core's rankings over the oriented pairs; a candidate is a
    /// minimum upper bound exactly when its `agree_w` equals this.
    fn core_mask(&self, core: &CoreRelation) -> u32 {
        self.oriented_pairs
            .iter()
            .enumerate()
            .fold(0u32, |acc, (bit, &(i, j))| acc | (u32::from(core.ge(i, j)) << bit))
    }
}

/// One failing instance, serialized completely enough to re-run the check.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub elements: Vec<String>,
    /// The poset as its strict order pairs (already transitively closed).
    pub order_pairs: Vec<(String, String)>,
    /// Profile members in ranking grammar; empty for poset-level checks.
    pub profile: Vec<String>,
    pub detail: String,
}

/// Result of one named check across a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub passes: u64,
    pub failures: u64,
    pub first_counterexample: Option<Counterexample>,
}

/// A reproducible verification run: instance ranges, seed, and per-check
/// outcomes.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceSweep {
    pub theorem: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub seed: u64,
    pub exhaustive: bool,
    pub posets: u64,
    pub instances: u64,
    pub checks: Vec<CheckResult>,
}

impl InstanceSweep {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }
}

/// Sweep tuning: seed for all sampled choices, `deep` to force exhaustive
/// profile ranges where the default samples, and sample sizes.
#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub seed: u64,
    pub deep: bool,
    /// Profiles drawn per poset when the profile range is sampled.
    pub sampled_profiles: usize,
    /// Posets drawn when the poset range is sampled (element counts > 5).
    pub sampled_posets: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { seed: 0x51A7, deep: false, sampled_profiles: 60, sampled_posets: 500 }
    }
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
                let ce = counterexample();
                debug_assert!(
                    revalidate(&ce),
                    "counterexample for `{}` does not re-validate: {}",
                    ce.check,
                    ce.detail
                );
                self.first = Some(ce);
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

fn order_pairs_by_name(p: &Poset) -> Vec<(String, String)> {
    p.strict_pairs().map(|(i, j)| (p.element(i).to_owned(), p.element(j).to_owned())).collect()
}

fn counterexample(
    check: &str,
    p: &Poset,
    members: &[&WeakOrder],
    detail: String,
) -> Counterexample {
    Counterexample {
        check: check.to_owned(),
        elements: p.elements().to_vec(),
        order_pairs: order_pairs_by_name(p),
        profile: members.iter().map(|m| m.format(p.elements())).collect(),
        detail,
    }
}

/// Member-index tuples for the profile range of a sweep.
enum ProfilePlan {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

fn member_tuples(num_orders: usize, k: usize, plan: &ProfilePlan, poset_index: usize) -> Vec<Vec<usize>> {
    match plan {
        ProfilePlan::Exhaustive => {
            let total = num_orders.pow(k as u32);
            (0..total)
                .map(|mut code| {
                    (0..k)
                        .map(|_| {
                            let m = code % num_orders;
                            code /= num_orders;
                            m
                        })
                        .collect()
                })
                .collect()
        }
        ProfilePlan::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed ^ (poset_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            );
            (0..*count)
                .map(|_| (0..k).map(|_| rng.gen_range(0..num_orders)).collect())
                .collect()
        }
    }
}

fn profile_from_tuple(orders: &[WeakOrder], tuple: &[usize]) -> Profile {
    Profile::new(tuple.iter().map(|&t| orders[t].clone()).collect()).expect("nonempty tuple")
}

/// Runs `per_poset` over every poset in parallel and folds the tallies in
/// enumeration order, so pass counts and first counterexamples are
/// deterministic regardless of scheduling.
fn run_over_posets<F>(posets: &[Poset], num_checks: usize, per_poset: F) -> (Vec<Tally>, u64)
where
    F: Fn(usize, &Poset) -> (Vec<Tally>, u64) + Sync,
{
    let results: Vec<(Vec<Tally>, u64)> = posets
        .par_iter()
        .enumerate()
        .map(|(idx, p)| per_poset(idx, p))
        .collect();
    let mut acc = vec![Tally::default(); num_checks];
    let mut instances = 0;
    for (tallies, count) in results {
        for (a, t) in acc.iter_mut().zip(tallies) {
            a.merge(t);
        }
        instances += count;
    }
    (acc, instances)
}

fn check_results(names: &[&str], tallies: Vec<Tally>) -> Vec<CheckResult> {
    names
        .iter()
        .zip(tallies)
        .map(|(name, t)| CheckResult {
            check: (*name).to_owned(),
            passes: t.passes,
            failures: t.failures,
            first_counterexample: t.first,
        })
        .collect()
}

const CHARACTERISATION_CHECKS: [&str; 5] = [
    "mub_sets_agree",
    "ub_characterisation",
    "join_iff_mub_nonempty",
    "join_output_is_mub",
    "mub_api_spot_agreement",
];

/// Sweeps the bound characterisation: on every instance, the brute-force
/// minimum-upper-bound set must equal the set derived from the forced core,
/// the brute upper-bound set must equal the chain-condition set, and the
/// canonical join must exist exactly when the set is nonempty and land in
/// it. A deterministic 1-in-997 spot sample additionally re-checks the
/// candidate-level API against both.
pub fn verify_characterisation(
    n: usize,
    k: usize,
    opts: &SweepOptions,
) -> Result<InstanceSweep, OracleError> {
    if k == 0 || k > 3 {
        return Err(OracleError::TooLarge { what: "profile size", got: k, max: 3 });
    }
    let posets = enumerate_posets(n)?;
    let orders = enumerate_weak_orders(n).expect("n capped by poset enumeration");
    let exhaustive = n <= 4 || opts.deep;
    let plan = if exhaustive {
        ProfilePlan::Exhaustive
    } else {
        ProfilePlan::Sampled { count: opts.sampled_profiles, seed: opts.seed }
    };

    let (tallies, instances) = run_over_posets(&posets, CHARACTERISATION_CHECKS.len(), |idx, p| {
        let tables = PosetTables::build(p, &orders);
        let mut t = vec![Tally::default(); CHARACTERISATION_CHECKS.len()];
        let tuples = member_tuples(orders.len(), k, &plan, idx);
        let mut count = 0u64;
        for (tuple_idx, tuple) in tuples.iter().enumerate() {
            count += 1;
            let profile = profile_from_tuple(&orders, tuple);
            let members: Vec<&WeakOrder> = tuple.iter().map(|&m| &orders[m]).collect();

            let ub: Vec<usize> = (0..orders.len())
                .filter(|&u| tuple.iter().all(|&m| tables.dominates(u, m)))
                .collect();
            let mub: Vec<usize> =
                ub.iter().copied().filter(|&u| ub.iter().all(|&o| tables.dominates(o, u))).collect();

            let core = core_relation(&profile, p);
            let core_mask = tables.core_mask(&core);
            let lib_mub: Vec<usize> =
                (0..orders.len()).filter(|&c| tables.agree_w[c] == core_mask).collect();
            t[0].record(mub == lib_mub, || {
                counterexample(
                    CHARACTERISATION_CHECKS[0],
                    p,
                    &members,
                    format!("brute minimum upper bounds {mub:?} vs core-derived {lib_mub:?}"),
                )
            });

            let lib_ub: Vec<usize> = (0..orders.len())
                .filter(|&c| is_upper_bound_via_chains(&orders[c], core.digraph()))
                .collect();
            t[1].record(ub == lib_ub, || {
                counterexample(
                    CHARACTERISATION_CHECKS[1],
                    p,
                    &members,
                    format!("brute upper bounds {ub:?} vs chain-condition set {lib_ub:?}"),
                )
            });

            let joined = join_with(&core);
            t[2].record(joined.is_ok() == !mub.is_empty(), || {
                counterexample(
                    CHARACTERISATION_CHECKS[2],
                    p,
                    &members,
                    format!(
                        "join result {:?} vs {} brute minimum upper bounds",
                        joined.as_ref().map(|j| j.format(p.elements())),
                        mub.len()
                    ),
                )
            });
            if let Ok(j) = &joined {
                let pos = orders.iter().position(|o| o == j);
                t[3].record(pos.is_some_and(|ji| mub.contains(&ji)), || {
                    counterexample(
                        CHARACTERISATION_CHECKS[3],
                        p,
                        &members,
                        format!("join output {} not a brute MUB", j.format(p.elements())),
                    )
                });
            }

            if (idx * 131 + tuple_idx) % 997 == 0 {
                let api: Vec<usize> = (0..orders.len())
                    .filter(|&c| is_minimum_upper_bound(&orders[c], &profile, p))
                    .collect();
                t[4].record(api == mub, || {
                    counterexample(
                        CHARACTERISATION_CHECKS[4],
                        p,
                        &members,
                        format!("candidate API set {api:?} vs brute {mub:?}"),
                    )
                });
            }
        }
        (t, count)
    });

    Ok(InstanceSweep {
        theorem: "characterisation".to_owned(),
        n,
        k: Some(k),
        seed: opts.seed,
        exhaustive,
        posets: posets.len() as u64,
        instances,
        checks: check_results(&CHARACTERISATION_CHECKS, tallies),
    })
}

const EXISTENCE_CHECKS: [&str; 8] = [
    "pair_join_existence_iff_crown_diamond_free",
    "triple_joins_exist_when_crown_diamond_free",
    "uniqueness_iff_complete",
    "meet_agrees_with_brute_lower_bounds",
    "opposed_upper_bounds_for_incomparable_pairs",
    "core_weakly_transitive_when_diamond_free",
    "core_consistent_when_crown_diamond_free",
    "join_extends_core",
];

fn core_weakly_transitive(core: &CoreRelation) -> bool {
    let rel = core.relation();
    let n = rel.len();
    for a in 0..n {
        for b in 0..n {
            if !rel.ge(a, b) {
                continue;
            }
            for c in 0..n {
                if rel.ge(b, c) && (rel.ge(a, c) || rel.ge(c, a)) && !rel.ge(a, c) {
                    return false;
                }
            }
        }
    }
    true
}

fn extends_core(cand: &WeakOrder, core: &CoreRelation) -> bool {
    let rel = core.relation();
    let n = rel.len();
    for i in 0..n {
        for j in 0..n {
            if rel.ge(i, j) {
                if !cand.weak(i, j) {
                    return false;
                }
                if !rel.ge(j, i) && !cand.strict(i, j) {
                    return false;
                }
            }
        }
    }
    true
}

/// Sweeps the existence and uniqueness results and the surrounding lemmas:
/// pairwise join existence ⟺ crown- and diamond-freeness (with all ≤3-member
/// profiles joining on the free posets), exactly-one-minimum-upper-bound
/// ⟺ completeness, meets against brute lower-bound sets, the two opposed
/// upper bounds for every incomparable pair, the forced core's weak
/// transitivity (diamond-free) and consistency (crown- and diamond-free),
/// and that joins extend their core. Under a sampled profile range the two
/// equivalences are checked in their sound one-sided form only.
pub fn verify_existence_uniqueness(
    n: usize,
    opts: &SweepOptions,
) -> Result<InstanceSweep, OracleError> {
    let posets = enumerate_posets(n)?;
    let orders = enumerate_weak_orders(n).expect("n capped by poset enumeration");
    let exhaustive = n <= 4 || opts.deep;
    let pair_plan = if exhaustive {
        ProfilePlan::Exhaustive
    } else {
        ProfilePlan::Sampled { count: opts.sampled_profiles, seed: opts.seed }
    };
    let triples_exhaustive = n <= 3 || opts.deep;
    let triple_plan = if triples_exhaustive {
        ProfilePlan::Exhaustive
    } else {
        ProfilePlan::Sampled { count: opts.sampled_profiles, seed: opts.seed ^ 0x7319 }
    };

    let (tallies, instances) = run_over_posets(&posets, EXISTENCE_CHECKS.len(), |idx, p| {
        let tables = PosetTables::build(p, &orders);
        let mut t = vec![Tally::default(); EXISTENCE_CHECKS.len()];
        let cd_free = is_crown_and_diamond_free(p);
        let d_free = find_diamond(p).is_none();
        let complete = is_complete(p);
        let incomparable: Vec<(usize, usize)> = (0..p.len())
            .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| !p.comparable(i, j))
            .collect();

        let mut count = 0u64;
        let mut all_pairs_join = true;
        let mut all_unique = true;
        let single_plan = if exhaustive {
            ProfilePlan::Exhaustive
        } else {
            ProfilePlan::Sampled { count: opts.sampled_profiles, seed: opts.seed ^ 0x5160 }
        };
        let mut tuples = member_tuples(orders.len(), 1, &single_plan, idx);
        tuples.extend(member_tuples(orders.len(), 2, &pair_plan, idx));
        for tuple in &tuples {
            count += 1;
            let profile = profile_from_tuple(&orders, tuple);
            let members: Vec<&WeakOrder> = tuple.iter().map(|&m| &orders[m]).collect();
            let core = core_relation(&profile, p);
            let core_mask = tables.core_mask(&core);
            let mub_count =
                (0..orders.len()).filter(|&c| tables.agree_w[c] == core_mask).count();
            if mub_count != 1 {
                all_unique = false;
            }
            let joined = join_with(&core);
            if tuple.len() == 2 && joined.is_err() {
                all_pairs_join = false;
            }

            let meet_res = meet(&profile, p);
            let lower: Vec<usize> = (0..orders.len())
                .filter(|&l| tuple.iter().all(|&m| tables.dominates(m, l)))
                .collect();
            let mlb: Vec<usize> = lower
                .iter()
                .copied()
                .filter(|&l| lower.iter().all(|&o| tables.dominates(l, o)))
                .collect();
            let meet_ok = match &meet_res {
                Ok(m) => orders.iter().position(|o| o == m).is_some_and(|i| mlb.contains(&i)),
                Err(_) => mlb.is_empty(),
            };
            t[3].record(meet_ok, || {
                counterexample(
                    EXISTENCE_CHECKS[3],
                    p,
                    &members,
                    format!(
                        "meet {:?} vs brute maximum lower bounds {mlb:?}",
                        meet_res.as_ref().map(|m| m.format(p.elements()))
                    ),
                )
            });

            let ub: Vec<usize> = (0..orders.len())
                .filter(|&u| tuple.iter().all(|&m| tables.dominates(u, m)))
                .collect();
            let opposed = incomparable.iter().all(|&(x, y)| {
                ub.iter().any(|&u| orders[u].strict(x, y))
                    && ub.iter().any(|&u| orders[u].strict(y, x))
            });
            t[4].record(opposed, || {
                counterexample(
                    EXISTENCE_CHECKS[4],
                    p,
                    &members,
                    "some incomparable pair lacks opposed upper bounds".to_owned(),
                )
            });

            if d_free {
                t[5].record(core_weakly_transitive(&core), || {
                    counterexample(
                        EXISTENCE_CHECKS[5],
                        p,
                        &members,
                        "forced core violates weak transitivity on a diamond-free order"
                            .to_owned(),
                    )
                });
            }
            if cd_free {
                t[6].record(is_suzumura_consistent(core.relation()).is_ok(), || {
                    counterexample(
                        EXISTENCE_CHECKS[6],
                        p,
                        &members,
                        "forced core inconsistent on a crown- and diamond-free order".to_owned(),
                    )
                });
            }
            if let Ok(j) = &joined {
                t[7].record(extends_core(j, &core), || {
                    counterexample(
                        EXISTENCE_CHECKS[7],
                        p,
                        &members,
                        format!("join {} does not extend its core", j.format(p.elements())),
                    )
                });
            }
        }

        if exhaustive {
            t[0].record(all_pairs_join == cd_free, || {
                counterexample(
                    EXISTENCE_CHECKS[0],
                    p,
                    &[],
                    format!("all pairs join = {all_pairs_join}, crown/diamond-free = {cd_free}"),
                )
            });
            t[2].record(all_unique == complete, || {
                counterexample(
                    EXISTENCE_CHECKS[2],
                    p,
                    &[],
                    format!("all profiles unique = {all_unique}, complete = {complete}"),
                )
            });
        } else {
            if cd_free {
                t[0].record(all_pairs_join, || {
                    counterexample(
                        EXISTENCE_CHECKS[0],
                        p,
                        &[],
                        "sampled pair without a join on a crown- and diamond-free order"
                            .to_owned(),
                    )
                });
            }
            if complete {
                t[2].record(all_unique, || {
                    counterexample(
                        EXISTENCE_CHECKS[2],
                        p,
                        &[],
                        "sampled profile with a non-unique bound on a complete order".to_owned(),
                    )
                });
            }
        }

        if cd_free {
            for tuple in member_tuples(orders.len(), 3, &triple_plan, idx) {
                count += 1;
                let profile = profile_from_tuple(&orders, &tuple);
                let members: Vec<&WeakOrder> = tuple.iter().map(|&m| &orders[m]).collect();
                let joined = join_with(&core_relation(&profile, p));
                t[1].record(joined.is_ok(), || {
                    counterexample(
                        EXISTENCE_CHECKS[1],
                        p,
                        &members,
                        "three-member profile without a join on a crown- and diamond-free order"
                            .to_owned(),
                    )
                });
            }
        }
        (t, count)
    });

    Ok(InstanceSweep {
        theorem: "existence_uniqueness".to_owned(),
        n,
        k: None,
        seed: opts.seed,
        exhaustive,
        posets: posets.len() as u64,
        instances,
        checks: check_results(&EXISTENCE_CHECKS, tallies),
    })
}

const CYCLES_CHECKS: [&str; 4] = [
    "crown_diamond_iff_cycle_chalice",
    "ball_pultr_sichler_proper_crowns",
    "fork_iff_no_forbidden_four_poset",
    "witnesses_revalidate",
];

/// Sweeps the structural reformulations: crown- and diamond-freeness ⟺ a
/// weak-cycle- and chalice-free reduction; the Ball–Pultr–Sichler variant
/// with proper 4-crowns; fork classification ⟺ absence of the six
/// forbidden four-element subposets (element counts ≤ 5); and that every
/// detector witness re-validates against its definition. Exhaustive up to
/// five elements, seeded random posets beyond.
pub fn verify_cycles_chalices(n: usize, opts: &SweepOptions) -> Result<InstanceSweep, OracleError> {
    const MAX: usize = 7;
    if n == 0 || n > MAX {
        return Err(OracleError::TooLarge { what: "poset element count", got: n, max: MAX });
    }
    let exhaustive = n <= 5;
    let posets = if exhaustive {
        enumerate_posets(n)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(n as u64));
        (0..opts.sampled_posets).map(|_| random_poset(n, &mut rng)).collect()
    };

    let (tallies, instances) = run_over_posets(&posets, CYCLES_CHECKS.len(), |_idx, p| {
        let mut t = vec![Tally::default(); CYCLES_CHECKS.len()];
        let red = transitive_reduction(p);
        let weak_cycle = find_weak_cycle(&red);
        let chalice = find_chalice(p);
        let cd_free = is_crown_and_diamond_free(p);

        t[0].record(cd_free == (weak_cycle.is_none() && chalice.is_none()), || {
            counterexample(
                CYCLES_CHECKS[0],
                p,
                &[],
                format!(
                    "crown/diamond-free = {cd_free}, weak cycle = {weak_cycle:?}, chalice = {}",
                    chalice.is_some()
                ),
            )
        });

        let bps_free = find_diamond(p).is_none()
            && find_crown_min_length(p, 6).is_none()
            && find_proper_4crown(p).is_none();
        t[1].record(bps_free == weak_cycle.is_none(), || {
            counterexample(
                CYCLES_CHECKS[1],
                p,
                &[],
                format!(
                    "diamond/long-crown/proper-4-crown-free = {bps_free}, weak cycle = {weak_cycle:?}"
                ),
            )
        });

        if p.len() <= 5 {
            let fork = classify_fork(p) != ForkClass::Neither;
            let clean = find_forbidden_four_poset(p).is_none();
            t[2].record(fork == clean, || {
                counterexample(
                    CYCLES_CHECKS[2],
                    p,
                    &[],
                    format!("fork = {fork}, forbidden four-poset absent = {clean}"),
                )
            });
        }

        let witnesses_ok = find_crown(p).iter().all(|c| validate_crown_witness(p, c))
            && find_diamond(p).iter().all(|d| validate_diamond_witness(p, d))
            && chalice.iter().all(|c| validate_chalice_witness(p, &red, c))
            && weak_cycle.iter().all(|w| validate_weak_cycle_witness(&red, w))
            && find_forbidden_four_poset(p)
                .iter()
                .all(|&(kind, q)| validate_four_poset_witness(p, kind, &q))
            && find_proper_4crown(p)
                .iter()
                .all(|c| validate_crown_witness(p, c) && !crown_is_improper(p, c));
        t[3].record(witnesses_ok, || {
            counterexample(CYCLES_CHECKS[3], p, &[], "a detector witness failed re-validation".to_owned())
        });

        (t, 1)
    });

    Ok(InstanceSweep {
        theorem: "cycles_chalices".to_owned(),
        n,
        k: None,
        seed: opts.seed,
        exhaustive,
        posets: posets.len() as u64,
        instances,
        checks: check_results(&CYCLES_CHECKS, tallies),
    })
}

/// Independent witness validators, restating each definition.
fn validate_crown_witness(p: &Poset, seq: &[usize]) -> bool {
    let k = seq.len();
    if k < 4 || k % 2 != 0 {
        return false;
    }
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return false;
    }
    for i in 0..k {
        let j = (i + 1) % k;
        let edge_ok = if i % 2 == 0 { p.gt(seq[i], seq[j]) } else { p.gt(seq[j], seq[i]) };
        if !edge_ok {
            return false;
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let adjacent = j == i + 1 || (i == 0 && j == k - 1);
            if !adjacent && p.comparable(seq[i], seq[j]) {
                return false;
            }
        }
    }
    true
}

fn crown_is_improper(p: &Poset, c: &[usize]) -> bool {
    c.len() == 4
        && (0..p.len())
            .any(|e| p.ge(c[0], e) && p.ge(c[2], e) && p.ge(e, c[1]) && p.ge(e, c[3]))
}

fn validate_diamond_witness(p: &Poset, d: &[usize; 4]) -> bool {
    let [a, b, c, bottom] = *d;
    p.ge(a, b) && p.ge(a, c) && p.ge(b, bottom) && p.ge(c, bottom) && !p.comparable(b, c)
}

fn validate_chalice_witness(p: &Poset, red: &Relation, ch: &Chalice) -> bool {
    let mut all = vec![ch.tops.0, ch.tops.1];
    all.extend(&ch.stem);
    all.extend([ch.bottoms.0, ch.bottoms.1]);
    let mut sorted = all.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != all.len() || ch.stem.is_empty() {
        return false;
    }
    let head = ch.stem[0];
    let tail = *ch.stem.last().expect("stem nonempty");
    !p.comparable(ch.tops.0, ch.tops.1)
        && !p.comparable(ch.bottoms.0, ch.bottoms.1)
        && red.ge(ch.tops.0, head)
        && red.ge(ch.tops.1, head)
        && ch.stem.windows(2).all(|w| red.ge(w[0], w[1]))
        && red.ge(tail, ch.bottoms.0)
        && red.ge(tail, ch.bottoms.1)
}

fn validate_weak_cycle_witness(red: &Relation, seq: &[usize]) -> bool {
    let k = seq.len();
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    k >= 3
        && sorted.len() == k
        && (0..k).all(|i| {
            let j = (i + 1) % k;
            red.ge(seq[i], seq[j]) || red.ge(seq[j], seq[i])
        })
}

fn validate_four_poset_witness(p: &Poset, kind: FourPosetKind, q: &[usize; 4]) -> bool {
    let [a, b, c, d] = *q;
    let inc = |x: usize, y: usize| !p.comparable(x, y);
    match kind {
        FourPosetKind::BallAndChain => {
            p.gt(a, b) && p.gt(b, c) && p.gt(a, c) && inc(a, d) && inc(b, d) && inc(c, d)
        }
        FourPosetKind::Hook => {
            let descending = p.gt(a, b) && p.gt(b, c) && p.gt(a, c) && p.gt(d, c);
            let ascending = p.gt(b, a) && p.gt(c, b) && p.gt(c, a) && p.gt(c, d);
            (descending || ascending) && inc(a, d) && inc(b, d)
        }
        FourPosetKind::Dumbbells => {
            p.gt(a, b) && p.gt(c, d) && inc(a, c) && inc(a, d) && inc(b, c) && inc(b, d)
        }
        FourPosetKind::Saw => {
            p.gt(a, b) && p.gt(c, b) && p.gt(c, d) && inc(a, c) && inc(a, d) && inc(b, d)
        }
        FourPosetKind::Crown4 => {
            p.gt(a, b) && p.gt(c, b) && p.gt(c, d) && p.gt(a, d) && inc(a, c) && inc(b, d)
        }
        FourPosetKind::Diamond => {
            p.gt(a, b) && p.gt(b, d) && p.gt(a, c) && p.gt(c, d) && inc(b, c)
        }
    }
}

/// Re-runs a counterexample's check from its serialized form; returns true
/// when the failure reproduces.
pub fn revalidate(ce: &Counterexample) -> bool {
    let pairs: Vec<(&str, &str)> =
        ce.order_pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let p = match Poset::from_order_pairs(ce.elements.clone(), &pairs) {
        Ok(p) => p,
        Err(_) => return false,
    };
    let orders = match enumerate_weak_orders(p.len()) {
        Ok(o) => o,
        Err(_) => return false,
    };
    let profile = if ce.profile.is_empty() {
        None
    } else {
        match Profile::from_rankings(&ce.profile, p.elements()) {
            Ok(pr) => Some(pr),
            Err(_) => return false,
        }
    };
    let bounds = profile.as_ref().map(|pr| brute_bounds(pr, &p).expect("within cap"));
    let core = profile.as_ref().map(|pr| core_relation(pr, &p));

    match ce.check.as_str() {
        "mub_sets_agree" | "mub_api_spot_agreement" => {
            let (pr, b) = (profile.as_ref().unwrap(), bounds.as_ref().unwrap());
            let api: Vec<WeakOrder> = orders
                .iter()
                .filter(|c| is_minimum_upper_bound(c, pr, &p))
                .cloned()
                .collect();
            api != b.minimum_upper
        }
        "ub_characterisation" => {
            let (c, b) = (core.as_ref().unwrap(), bounds.as_ref().unwrap());
            let lib: Vec<WeakOrder> = orders
                .iter()
                .filter(|cand| is_upper_bound_via_chains(cand, c.digraph()))
                .cloned()
                .collect();
            lib != b.upper
        }
        "join_iff_mub_nonempty" => {
            let (c, b) = (core.as_ref().unwrap(), bounds.as_ref().unwrap());
            join_with(c).is_ok() != !b.minimum_upper.is_empty()
        }
        "join_output_is_mub" => {
            let (c, b) = (core.as_ref().unwrap(), bounds.as_ref().unwrap());
            match join_with(c) {
                Ok(j) => !b.minimum_upper.contains(&j),
                Err(_) => false,
            }
        }
        "pair_join_existence_iff_crown_diamond_free" => {
            let cd_free = is_crown_and_diamond_free(&p);
            let all_pairs = orders.iter().all(|a| {
                orders.iter().all(|b| {
                    let pr = Profile::new(vec![a.clone(), b.clone()]).expect("nonempty");
                    join_with(&core_relation(&pr, &p)).is_ok()
                })
            });
            all_pairs != cd_free
        }
        "triple_joins_exist_when_crown_diamond_free" => {
            is_crown_and_diamond_free(&p)
                && join_with(core.as_ref().unwrap()).is_err()
        }
        "uniqueness_iff_complete" => {
            let complete = is_complete(&p);
            let all_unique = orders.iter().all(|a| {
                orders.iter().all(|b| {
                    let pr = Profile::new(vec![a.clone(), b.clone()]).expect("nonempty");
                    brute_bounds(&pr, &p).expect("within cap").minimum_upper.len() == 1
                })
            });
            all_unique != complete
        }
        "meet_agrees_with_brute_lower_bounds" => {
            let (pr, b) = (profile.as_ref().unwrap(), bounds.as_ref().unwrap());
            match meet(pr, &p) {
                Ok(m) => !b.maximum_lower.contains(&m),
                Err(_) => !b.maximum_lower.is_empty(),
            }
        }
        "opposed_upper_bounds_for_incomparable_pairs" => {
            let b = bounds.as_ref().unwrap();
            !(0..p.len())
                .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| !p.comparable(i, j))
                .all(|(x, y)| {
                    b.upper.iter().any(|u| u.strict(x, y))
                        && b.upper.iter().any(|u| u.strict(y, x))
                })
        }
        "core_weakly_transitive_when_diamond_free" => {
            find_diamond(&p).is_none() && !core_weakly_transitive(core.as_ref().unwrap())
        }
        "core_consistent_when_crown_diamond_free" => {
            is_crown_and_diamond_free(&p)
                && is_suzumura_consistent(core.as_ref().unwrap().relation()).is_err()
        }
        "join_extends_core" => {
            let c = core.as_ref().unwrap();
            match join_with(c) {
                Ok(j) => !extends_core(&j, c),
                Err(_) => false,
            }
        }
        "crown_diamond_iff_cycle_chalice" => {
            let red = transitive_reduction(&p);
            is_crown_and_diamond_free(&p)
                != (find_weak_cycle(&red).is_none() && find_chalice(&p).is_none())
        }
        "ball_pultr_sichler_proper_crowns" => {
            let red = transitive_reduction(&p);
            let bps_free = find_diamond(&p).is_none()
                && find_crown_min_length(&p, 6).is_none()
                && find_proper_4crown(&p).is_none();
            bps_free != find_weak_cycle(&red).is_none()
        }
        "fork_iff_no_forbidden_four_poset" => {
            (classify_fork(&p) != ForkClass::Neither) != find_forbidden_four_poset(&p).is_none()
        }
        "witnesses_revalidate" => {
            let red = transitive_reduction(&p);
            !(find_crown(&p).iter().all(|c| validate_crown_witness(&p, c))
                && find_diamond(&p).iter().all(|d| validate_diamond_witness(&p, d))
                && find_chalice(&p).iter().all(|c| validate_chalice_witness(&p, &red, c))
                && find_weak_cycle(&red).iter().all(|w| validate_weak_cycle_witness(&red, w))
                && find_forbidden_four_poset(&p)
                    .iter()
                    .all(|&(kind, q)| validate_four_poset_witness(&p, kind, &q)))
        }
        _ => false,
    }
}
