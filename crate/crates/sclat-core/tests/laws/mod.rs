//! Randomized algebraic laws shared by the property-suite and acceptance
//! targets. Each runner owns a fixed seed and draws every case
//! independently, so any failure reproduces by case number; assertions
//! name the offending poset and preferences.

use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use sclat_core::lattice::{join, meet, suzumura_extend, LatticeError};
use sclat_core::oracle::{revalidate, Counterexample};
use sclat_core::poset::{dual, transitive_reduction, Poset, Relation};
use sclat_core::prefs::{enumerate_weak_orders, sc_dominates, Profile, WeakOrder};

const NAMES: [&str; 7] = ["a", "b", "c", "d", "e", "f", "g"];

fn element_names(n: usize) -> Vec<String> {
    NAMES[..n].iter().map(|s| s.to_string()).collect()
}

/// Random labeled poset: edges are drawn only forward along a shuffled
/// backbone, which keeps the cover set acyclic; `from_covers` closes it
/// reflexively and transitively.
fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> Poset {
    let mut backbone: Vec<usize> = (0..n).collect();
    backbone.shuffle(rng);
    let density = rng.gen_range(0.0..0.8);
    let mut covers: Vec<(String, String)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                covers.push((NAMES[backbone[i]].to_owned(), NAMES[backbone[j]].to_owned()));
            }
        }
    }
    Poset::from_covers(element_names(n), &covers).expect("forward edges stay acyclic")
}

/// Weak orders enumerated once per element count; cases sample the pool.
struct OrderPool {
    by_len: Vec<Vec<WeakOrder>>,
}

impl OrderPool {
    fn up_to(max: usize) -> Self {
        let by_len = (0..=max)
            .map(|n| {
                if n == 0 {
                    Vec::new()
                } else {
                    enumerate_weak_orders(n).expect("pool sizes stay under the cap")
                }
            })
            .collect();
        OrderPool { by_len }
    }

    fn pick<'a>(&'a self, rng: &mut ChaCha8Rng, n: usize) -> &'a WeakOrder {
        self.by_len[n].choose(rng).expect("nonempty pool")
    }
}

/// Samples a preference related to `mid` in the requested direction, falling
/// back to `mid` itself (every preference dominates itself).
fn pick_related(
    rng: &mut ChaCha8Rng,
    pool: &OrderPool,
    n: usize,
    p: &Poset,
    mid: &WeakOrder,
    above: bool,
) -> WeakOrder {
    for _ in 0..16 {
        let cand = pool.pick(rng, n);
        let related =
            if above { sc_dominates(cand, mid, p) } else { sc_dominates(mid, cand, p) };
        if related {
            return cand.clone();
        }
    }
    mid.clone()
}

/// Single-crossing dominance is reflexive and transitive on every poset.
/// Returns how many transitivity premises were non-degenerate (the sampled
/// chain had at least one genuinely distinct link), so callers can assert
/// the law was exercised and not vacuous.
pub fn dominance_is_a_preorder(cases: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11_01);
    let pool = OrderPool::up_to(5);
    let mut nontrivial = 0;
    for case in 0..cases {
        let n = rng.gen_range(2..=5);
        let p = random_poset(&mut rng, n);
        let mid = pool.pick(&mut rng, n).clone();
        assert!(
            sc_dominates(&mid, &mid, &p),
            "case {case}: `{}` does not dominate itself",
            mid.format(p.elements())
        );
        let hi = pick_related(&mut rng, &pool, n, &p, &mid, true);
        let lo = pick_related(&mut rng, &pool, n, &p, &mid, false);
        if hi != mid || lo != mid {
            nontrivial += 1;
        }
        assert!(
            sc_dominates(&hi, &lo, &p),
            "case {case}: `{}` dominates `{}` dominates `{}`, yet the ends are unrelated",
            hi.format(p.elements()),
            mid.format(p.elements()),
            lo.format(p.elements())
        );
    }
    nontrivial
}

/// The same ranking read upside down: top rank becomes bottom rank.
fn reverse(w: &WeakOrder) -> WeakOrder {
    let top = w.ranks().iter().copied().max().expect("rankings are nonempty");
    WeakOrder::from_ranks(w.ranks().iter().map(|r| top - r).collect())
        .expect("reversal keeps ranks consecutive")
}

/// Dualizing the poset is an involution; it transposes the cover relation,
/// swaps meets with joins (identical witness cycles on failure), and turns
/// dominance between rankings into dominance between their reversals.
pub fn duality_swaps_bounds(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11_02);
    let pool = OrderPool::up_to(6);
    for case in 0..cases {
        let n = rng.gen_range(2..=6);
        let p = random_poset(&mut rng, n);
        let q = dual(&p);
        assert_eq!(dual(&q), p, "case {case}: double dual changed the poset");

        let red = transitive_reduction(&p);
        let red_dual = transitive_reduction(&q);
        for i in 0..n {
            for j in 0..n {
                assert_eq!(
                    red_dual.ge(i, j),
                    red.ge(j, i),
                    "case {case}: cover edge ({i}, {j}) does not transpose"
                );
            }
        }

        let members: Vec<WeakOrder> =
            (0..rng.gen_range(1..=2)).map(|_| pool.pick(&mut rng, n).clone()).collect();
        let pi = Profile::new(members).expect("profiles are nonempty");
        match (meet(&pi, &p), join(&pi, &q)) {
            (Ok(m), Ok(j)) => assert_eq!(
                m,
                j,
                "case {case}: meet `{}` differs from the dual join `{}`",
                m.format(p.elements()),
                j.format(p.elements())
            ),
            (Err(LatticeError::NoMeet(a)), Err(LatticeError::NoJoin(b))) => {
                assert_eq!(a, b, "case {case}: failure witnesses differ across the dual");
            }
            (m, j) => panic!("case {case}: meet/join verdicts split: {m:?} vs {j:?}"),
        }

        let hi = pool.pick(&mut rng, n);
        let lo = pool.pick(&mut rng, n);
        let (hi, lo) = (hi.clone(), lo.clone());
        assert_eq!(
            sc_dominates(&hi, &lo, &p),
            sc_dominates(&reverse(&hi), &reverse(&lo), &q),
            "case {case}: dominance of `{}` over `{}` does not dualize",
            hi.format(p.elements()),
            lo.format(p.elements())
        );
    }
}

/// The transitive reduction is irreflexive, closing it recovers exactly the
/// strict order, closure is idempotent, and no cover edge is redundant.
pub fn reduction_closure_round_trip(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11_03);
    for case in 0..cases {
        let n = rng.gen_range(2..=6);
        let p = random_poset(&mut rng, n);
        let red = transitive_reduction(&p);
        let closed = red.transitive_closure();
        assert_eq!(closed.transitive_closure(), closed, "case {case}: closure not idempotent");
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    assert!(!red.ge(i, i), "case {case}: reduction kept a reflexive pair");
                    assert!(!closed.ge(i, i), "case {case}: closure invented a reflexive pair");
                } else {
                    assert_eq!(
                        closed.ge(i, j),
                        p.gt(i, j),
                        "case {case}: round trip changed the pair ({i}, {j})"
                    );
                }
            }
        }
        let arc: Arc<[String]> = p.elements().to_vec().into();
        for (i, j) in red.pairs().collect::<Vec<_>>() {
            let thinner = Relation::from_fn(arc.clone(), |a, b| red.ge(a, b) && (a, b) != (i, j));
            assert!(
                !thinner.transitive_closure().ge(i, j),
                "case {case}: cover edge ({i}, {j}) is implied by the others"
            );
        }
    }
}

/// Completing a relation to a weak order keeps every seeded weak pair
/// weakly ranked and every seeded one-sided pair strictly ranked; it
/// succeeds exactly when no chain loops back against a one-sided pair, and
/// a rejection's witness cycle replays in the input. Returns how often each
/// branch fired.
pub fn extension_preserves_the_seed(cases: usize) -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11_04);
    let (mut extended, mut rejected) = (0u64, 0u64);
    for case in 0..cases {
        let n = rng.gen_range(2..=5);
        let density = rng.gen_range(0.1..0.9);
        let arc: Arc<[String]> = element_names(n).into();
        let mut cells = vec![false; n * n];
        for cell in cells.iter_mut() {
            *cell = rng.gen_bool(density);
        }
        let rel = Relation::from_fn(arc.clone(), |i, j| i == j || cells[i * n + j]);
        let closed = rel.transitive_closure();
        let one_sided = |i: usize, j: usize| rel.ge(i, j) && !rel.ge(j, i);
        let consistent =
            (0..n).all(|i| (0..n).all(|j| !(closed.ge(i, j) && one_sided(j, i))));
        match suzumura_extend(&rel) {
            Ok(w) => {
                extended += 1;
                assert!(consistent, "case {case}: a looping relation was extended");
                for i in 0..n {
                    for j in 0..n {
                        if rel.ge(i, j) {
                            assert!(w.weak(i, j), "case {case}: weak pair ({i}, {j}) dropped");
                        }
                        if one_sided(i, j) {
                            assert!(
                                w.strict(i, j),
                                "case {case}: one-sided pair ({i}, {j}) lost strictness"
                            );
                        }
                    }
                }
            }
            Err(LatticeError::NotConsistent(witness)) => {
                rejected += 1;
                assert!(!consistent, "case {case}: a consistent relation was rejected");
                assert!(witness.len() >= 2, "case {case}: degenerate witness");
                let ids: Vec<usize> = witness
                    .iter()
                    .map(|name| rel.index_of(name).expect("witness names its own elements"))
                    .collect();
                for k in 0..ids.len() - 1 {
                    assert!(
                        rel.ge(ids[k], ids[k + 1]),
                        "case {case}: witness step {k} is not in the relation"
                    );
                }
                let (first, last) = (ids[0], *ids.last().expect("nonempty"));
                assert!(
                    one_sided(last, first),
                    "case {case}: witness cycle does not close against a one-sided pair"
                );
            }
            Err(other) => panic!("case {case}: unexpected extension failure: {other}"),
        }
    }
    (extended, rejected)
}

const REVALIDATE_CHECKS: [&str; 17] = [
    "mub_sets_agree",
    "mub_api_spot_agreement",
    "ub_characterisation",
    "join_iff_mub_nonempty",
    "join_output_is_mub",
    "pair_join_existence_iff_crown_diamond_free",
    "triple_joins_exist_when_crown_diamond_free",
    "uniqueness_iff_complete",
    "meet_agrees_with_brute_lower_bounds",
    "opposed_upper_bounds_for_incomparable_pairs",
    "core_weakly_transitive_when_diamond_free",
    "core_consistent_when_crown_diamond_free",
    "join_extends_core",
    "crown_diamond_iff_cycle_chalice",
    "ball_pultr_sichler_proper_crowns",
    "fork_iff_no_forbidden_four_poset",
    "witnesses_revalidate",
];

/// Serializing a sound instance under any check name and replaying it never
/// reproduces a failure, and damaged records (unknown check, unparsable
/// ranking, cyclic order pairs) come back negative instead of panicking.
pub fn witnesses_never_revalidate_spuriously(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11_05);
    let pool = OrderPool::up_to(4);
    for case in 0..cases {
        let check = *REVALIDATE_CHECKS.choose(&mut rng).expect("nonempty list");
        // The two checks that re-enumerate every profile pair stay at three
        // elements to keep the sweep inside the case budget.
        let heavy = matches!(
            check,
            "pair_join_existence_iff_crown_diamond_free" | "uniqueness_iff_complete"
        );
        let n = if heavy { rng.gen_range(2..=3) } else { rng.gen_range(2..=4) };
        let p = random_poset(&mut rng, n);
        let members: Vec<String> = (0..rng.gen_range(1..=2))
            .map(|_| pool.pick(&mut rng, n).format(p.elements()))
            .collect();
        let record = Counterexample {
            check: check.to_owned(),
            elements: p.elements().to_vec(),
            order_pairs: p
                .strict_pairs()
                .map(|(i, j)| (p.element(i).to_owned(), p.element(j).to_owned()))
                .collect(),
            profile: members,
            detail: String::new(),
        };
        assert!(
            !revalidate(&record),
            "case {case}: check `{check}` claims a failure on a sound instance over {:?}",
            p.elements()
        );
        let damaged = match case % 3 {
            0 => Counterexample { check: "no_such_check".to_owned(), ..record.clone() },
            1 => Counterexample { profile: vec!["q > a".to_owned()], ..record.clone() },
            _ => Counterexample {
                order_pairs: vec![
                    ("a".to_owned(), "b".to_owned()),
                    ("b".to_owned(), "a".to_owned()),
                ],
                ..record.clone()
            },
        };
        assert!(!revalidate(&damaged), "case {case}: a damaged record revalidated");
    }
}
