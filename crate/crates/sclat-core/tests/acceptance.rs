//! Acceptance gate: one test per shipped guarantee, numbered in the order
//! the guarantees are stated. Each body re-establishes its guarantee from
//! scratch — worked examples byte-for-byte, sweeps by exhaustive re-run —
//! so the harness output reads as the final checklist.

mod laws;

use std::time::{Duration, Instant};

use sclat_core::ambiguity::verify_maxmin;
use sclat_core::compstat::{
    verify_consensus_monotonicity, verify_mcs_theorem, verify_monotone_scf,
    verify_robust_monotonicity,
};
use sclat_core::fixtures;
use sclat_core::lattice::{is_minimum_upper_bound, join, LatticeError};
use sclat_core::oracle::{
    verify_characterisation, verify_cycles_chalices, verify_existence_uniqueness, InstanceSweep,
    SweepOptions,
};
use sclat_core::poset::Poset;
use sclat_core::prefs::{enumerate_weak_orders, Profile};
use sclat_core::social::{acceptable_exists_for_profile, exists_acceptable_swf, verify_swf};
use sclat_core::structure::{ForkClass, FourPosetKind};

fn deep() -> SweepOptions {
    SweepOptions { deep: true, ..SweepOptions::default() }
}

fn assert_clean(sweep: &InstanceSweep) {
    for check in &sweep.checks {
        assert_eq!(
            check.failures, 0,
            "{} failed {} of {} instances; first: {:?}",
            check.check,
            check.failures,
            check.failures + check.passes,
            check.first_counterexample
        );
    }
}

#[test]
fn criterion_1_worked_examples_reproduce_exactly() {
    let start = Instant::now();

    let hook = fixtures::hook();
    let bound = join(&fixtures::hook_profile(), &hook).expect("the hook profile has a join");
    assert_eq!(bound.format(hook.elements()), "w > x > y > z");

    match join(&fixtures::crown4_profile(), &fixtures::crown4()) {
        Err(LatticeError::NoJoin(cycle)) => assert_eq!(cycle, ["x", "y", "z", "w"]),
        other => panic!("crown profile must have no join, got {other:?}"),
    }
    match join(&fixtures::diamond4_profile(), &fixtures::diamond4()) {
        Err(LatticeError::NoJoin(cycle)) => assert_eq!(cycle, ["x", "w", "z"]),
        other => panic!("diamond profile must have no join, got {other:?}"),
    }

    let anti2 = fixtures::anti2();
    let clash = fixtures::anti2_profile();
    let bounds: Vec<String> = enumerate_weak_orders(2)
        .expect("two elements enumerate")
        .into_iter()
        .filter(|w| is_minimum_upper_bound(w, &clash, &anti2))
        .map(|w| w.format(anti2.elements()))
        .collect();
    assert_eq!(bounds.len(), 3, "a bare clash admits every ranking as a minimal bound");

    let chain3 = fixtures::chain3();
    let accepted = acceptable_exists_for_profile(&fixtures::chain3_profile(), &chain3)
        .expect("within the search cap")
        .expect("the chain profile aggregates");
    assert_eq!(accepted.format(chain3.elements()), "x > y > z");

    let statusquo = exists_acceptable_swf(&fixtures::statusquo());
    assert!(statusquo.exists);
    assert_eq!(statusquo.fork_class, ForkClass::ShatteredDownFork);
    let hooked = exists_acceptable_swf(&hook);
    assert!(!hooked.exists);
    assert_eq!(hooked.fork_class, ForkClass::Neither);

    assert!(
        start.elapsed() < Duration::from_secs(1),
        "worked examples took {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_2_bound_detection_matches_brute_force_on_four_elements() {
    let sweep = verify_characterisation(4, 2, &deep()).expect("within range");
    assert!(sweep.exhaustive, "the four-element range must be swept exhaustively");
    assert_eq!(sweep.posets, 219);
    assert_eq!(sweep.instances, 219 * 75 * 75);
    assert_clean(&sweep);
}

#[test]
fn criterion_3_existence_and_uniqueness_match_structure_on_four_elements() {
    let sweep = verify_existence_uniqueness(4, &deep()).expect("within range");
    assert!(sweep.exhaustive);
    assert_eq!(sweep.posets, 219);
    assert_clean(&sweep);
}

#[test]
fn criterion_4_cycle_and_chalice_criterion_holds_through_seven_elements() {
    for n in 1..=5 {
        let sweep = verify_cycles_chalices(n, &SweepOptions::default()).expect("within range");
        assert!(sweep.exhaustive, "sizes up to five enumerate every labeled poset");
        assert_clean(&sweep);
    }
    for n in [6, 7] {
        let sweep = verify_cycles_chalices(n, &SweepOptions::default()).expect("within range");
        assert!(!sweep.exhaustive, "sizes six and seven run on seeded samples");
        assert_eq!(sweep.posets, 500);
        assert_clean(&sweep);
    }
}

#[test]
fn criterion_5_optima_move_with_dominance_on_chains() {
    let pairs = verify_mcs_theorem(5).expect("within range");
    assert_eq!(pairs.instances, 541 * 541);
    assert_clean(&pairs);

    let consensus = verify_consensus_monotonicity(3).expect("within range");
    assert_eq!(consensus.instances, 8191 * 8191);
    assert_clean(&consensus);

    let robust = verify_robust_monotonicity(3).expect("within range");
    assert_eq!(robust.instances, 8191 * 8191);
    assert_clean(&robust);
}

#[test]
fn criterion_6_choice_rule_is_monotone_and_respects_unanimity() {
    let sweep = verify_monotone_scf(3).expect("within range");
    assert!(sweep.exhaustive);
    let names: Vec<&str> = sweep.checks.iter().map(|c| c.check.as_str()).collect();
    assert!(names.contains(&"psi_monotone"));
    assert!(names.contains(&"psi_respects_unanimity"));
    assert_clean(&sweep);
}

#[test]
fn criterion_7_maxmin_representation_is_the_least_averse_bound() {
    let sweep = verify_maxmin(4, &SweepOptions::default()).expect("within range");
    assert!(sweep.instances > 0);
    assert_clean(&sweep);
}

#[test]
fn criterion_8_aggregation_existence_matches_the_classification() {
    for n in 1..=4 {
        let sweep = verify_swf(n, &SweepOptions::default()).expect("within range");
        assert!(sweep.exhaustive, "two-member profiles over {n} elements enumerate");
        assert_clean(&sweep);
    }

    // Each of the six shapes that block aggregation comes with a concrete
    // two-member clash that no candidate survives.
    let names = |raw: &[&str]| -> Vec<String> { raw.iter().map(|s| s.to_string()).collect() };
    let blocked: Vec<(FourPosetKind, Poset, [&str; 2])> = vec![
        (
            FourPosetKind::Crown4,
            fixtures::crown4(),
            ["w > x > y > z", "y > z > w > x"],
        ),
        (
            FourPosetKind::Diamond,
            fixtures::diamond4(),
            ["y > w > z > x", "w > z > x > y"],
        ),
        (
            FourPosetKind::BallAndChain,
            Poset::from_covers(names(&["x", "y", "z", "w"]), &[("x", "y"), ("y", "z")])
                .expect("valid poset"),
            ["z > w > x > y", "y > z > w > x"],
        ),
        (FourPosetKind::Hook, fixtures::hook(), ["z > w > x > y", "y > z > w > x"]),
        (
            FourPosetKind::Dumbbells,
            Poset::from_covers(names(&["x", "y", "z", "w"]), &[("x", "y"), ("z", "w")])
                .expect("valid poset"),
            ["w > x > y > z", "y > z > w > x"],
        ),
        (
            FourPosetKind::Saw,
            Poset::from_covers(
                names(&["x", "y", "z", "w"]),
                &[("x", "y"), ("z", "y"), ("z", "w")],
            )
            .expect("valid poset"),
            ["w > x > y > z", "y > z > w > x"],
        ),
    ];
    for (kind, p, rankings) in blocked {
        let verdict = exists_acceptable_swf(&p);
        assert!(!verdict.exists, "{kind:?} should block aggregation");
        assert_eq!(verdict.forbidden_subposet.expect("witness present").kind, kind);
        let pi = Profile::from_rankings(&rankings, p.elements()).expect("rankings parse");
        assert_eq!(
            acceptable_exists_for_profile(&pi, &p).expect("within the search cap"),
            None,
            "{kind:?} clash must admit no acceptable preference"
        );
    }
}

#[test]
fn criterion_9_randomized_laws_hold_at_ten_thousand_cases_each() {
    const CASES: usize = 10_000;
    let nontrivial = laws::dominance_is_a_preorder(CASES);
    assert!(nontrivial as usize >= CASES / 20);
    laws::duality_swaps_bounds(CASES);
    laws::reduction_closure_round_trip(CASES);
    let (extended, rejected) = laws::extension_preserves_the_seed(CASES);
    assert!(extended as usize >= CASES / 20 && rejected as usize >= CASES / 20);
    laws::witnesses_never_revalidate_spuriously(CASES);
}
