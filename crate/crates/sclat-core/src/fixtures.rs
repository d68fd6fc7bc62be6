//! Canonical worked examples used across tests, docs, and the CLI.
//!
//! Each fixture is a small named poset, most with a two-member profile that
//! exercises an interesting aggregation outcome: a unique least upper bound,
//! a forced preference cycle, or a failure of existence. Keeping them here —
//! with fixed element order — makes expected outputs byte-stable everywhere.

use crate::poset::Poset;
use crate::prefs::Profile;

fn strings(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Three-element chain `x > y > z`.
pub fn chain3() -> Poset {
    Poset::from_covers(strings(&["x", "y", "z"]), &[("x", "y"), ("y", "z")])
        .expect("chain3 is a valid poset")
}

/// Two incomparable elements.
pub fn anti2() -> Poset {
    Poset::antichain(strings(&["x", "y"])).expect("anti2 is a valid poset")
}

/// Hook: a chain `x > y > z` with an extra foot `w` below `x` only.
pub fn hook() -> Poset {
    Poset::from_covers(strings(&["x", "y", "z", "w"]), &[("x", "y"), ("y", "z"), ("x", "w")])
        .expect("hook is a valid poset")
}

/// Four-element crown: `x` and `z` each above both `y` and `w`, with the
/// tops mutually incomparable and the bottoms mutually incomparable.
pub fn crown4() -> Poset {
    Poset::from_covers(
        strings(&["x", "y", "z", "w"]),
        &[("x", "y"), ("x", "w"), ("z", "y"), ("z", "w")],
    )
    .expect("crown4 is a valid poset")
}

/// Four-element diamond: `x` on top, `w` on the bottom, incomparable middle
/// elements `y` and `z`.
pub fn diamond4() -> Poset {
    Poset::from_covers(
        strings(&["x", "y", "z", "w"]),
        &[("x", "y"), ("x", "z"), ("y", "w"), ("z", "w")],
    )
    .expect("diamond4 is a valid poset")
}

/// The six permutations of three objects ordered by pairwise-agreement
/// adjacency: a hexagon of covers from `321` down to `123`.
pub fn perm3() -> Poset {
    Poset::from_covers(
        strings(&["321", "231", "312", "213", "132", "123"]),
        &[
            ("321", "231"),
            ("231", "213"),
            ("213", "123"),
            ("312", "132"),
            ("132", "123"),
            ("321", "312"),
        ],
    )
    .expect("perm3 is a valid poset")
}

/// Status-quo comparisons only: one reference point `x0` above three
/// alternatives, plus two isolated elements never compared to anything.
pub fn statusquo() -> Poset {
    Poset::from_covers(
        strings(&["x0", "y1", "y2", "y3", "z1", "z2"]),
        &[("x0", "y1"), ("x0", "y2"), ("x0", "y3")],
    )
    .expect("statusquo is a valid poset")
}

/// Two-member profile on [`chain3`] whose least upper bound is unique.
pub fn chain3_profile() -> Profile {
    Profile::from_rankings(&["z > x > y", "y > z > x"], chain3().elements())
        .expect("chain3 profile parses")
}

/// Two-member profile on [`anti2`] with clashing strict preferences.
pub fn anti2_profile() -> Profile {
    Profile::from_rankings(&["x > y", "y > x"], anti2().elements())
        .expect("anti2 profile parses")
}

/// Two-member profile on [`hook`] with a unique least upper bound that
/// nevertheless fails conditional unanimity, so no acceptable aggregation
/// exists.
pub fn hook_profile() -> Profile {
    Profile::from_rankings(&["z > w > x > y", "y > z > w > x"], hook().elements())
        .expect("hook profile parses")
}

/// Two-member profile on [`crown4`] forcing a strict preference cycle, so no
/// upper bound exists at all.
pub fn crown4_profile() -> Profile {
    Profile::from_rankings(&["w > x > y > z", "y > z > w > x"], crown4().elements())
        .expect("crown4 profile parses")
}

/// Two-member profile on [`diamond4`] forcing a strict preference cycle.
pub fn diamond4_profile() -> Profile {
    Profile::from_rankings(&["y > w > z > x", "w > z > x > y"], diamond4().elements())
        .expect("diamond4 profile parses")
}
