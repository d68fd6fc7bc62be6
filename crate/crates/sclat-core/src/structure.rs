//! Detection of the order substructures that govern existence of bounds.
//!
//! Whether every set of preferences has a least upper bound under
//! single-crossing dominance turns out to depend only on the shape of the
//! alternative order: it must contain no crown and no diamond. This module
//! finds those substructures, plus the finer patterns used elsewhere —
//! weak cycles and chalices of the transitive reduction (a graphical
//! characterisation of crown- and diamond-freeness), the six forbidden
//! four-element subposets behind the social-choice impossibility result,
//! and the fork / shattered-fork classification that is equivalent to their
//! absence.
//!
//! All detectors are deterministic: searches proceed in element-index order
//! and return the first witness found, so repeated runs (and CLI output)
//! are byte-stable. Witness lists in [`StructureReport`] hold at most that
//! first witness; exhaustive enumeration exists only for the test suite.

use serde::Serialize;

use crate::poset::{transitive_reduction, Poset, Relation};

/// A crown witness: a cyclic sequence alternating top, bottom, top, … where
/// consecutive elements are strictly ordered and all others incomparable.
pub type Crown = Vec<usize>;

/// A chalice witness `(a, b, e₁…e_K, c, d)`: two incomparable elements
/// covering the top of a cover-edge chain whose bottom covers two
/// incomparable elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chalice {
    pub tops: (usize, usize),
    pub stem: Vec<usize>,
    pub bottoms: (usize, usize),
}

/// The six four-element subposets whose presence rules out acceptable
/// preference aggregation. Listed in detection order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FourPosetKind {
    BallAndChain,
    Hook,
    Dumbbells,
    Saw,
    Crown4,
    Diamond,
}

/// Fork classification of a poset. A fork is an antichain head joined to a
/// chain through a single hinge element; a shattered fork is a lone head
/// plus isolated elements. Variants are listed in tie-break order: a poset
/// matching several shapes (e.g. a singleton) reports the earliest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ForkClass {
    UpFork,
    DownFork,
    ShatteredUpFork,
    ShatteredDownFork,
    Neither,
}

/// First-witness summary of every substructure detector, with element names
/// resolved for display. Lists hold zero or one entries.
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub crowns: Vec<Vec<String>>,
    pub diamonds: Vec<[String; 4]>,
    pub chalices: Vec<Vec<String>>,
    pub weak_cycles: Vec<Vec<String>>,
    pub four_posets: Vec<FourPosetWitness>,
    pub fork_class: ForkClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourPosetWitness {
    pub kind: FourPosetKind,
    pub witness: [String; 4],
}

/// Finds a crown: a cyclic sequence `(a₁, …, a_K)`, `K ≥ 4` even, with
/// `a_{k−1} > a_k < a_{k+1}` for even `k` (cyclically) and all non-adjacent
/// pairs incomparable. Searches increasing `K`, then lexicographically.
pub fn find_crown(p: &Poset) -> Option<Crown> {
    find_crown_min_length(p, 4)
}

/// As [`find_crown`] but only returns crowns of length at least `min_k`
/// (rounded up to even). Used to separate 4-crowns from longer ones.
pub(crate) fn find_crown_min_length(p: &Poset, min_k: usize) -> Option<Crown> {
    let n = p.len();
    let mut k = min_k.max(4);
    k += k % 2;
    while k <= n {
        let mut seq = Vec::with_capacity(k);
        let mut used = vec![false; n];
        if extend_crown(p, k, &mut seq, &mut used) {
            return Some(seq);
        }
        k += 2;
    }
    None
}

/// All 4-crowns, as position sequences. Test/oracle support.
pub(crate) fn all_4crowns(p: &Poset) -> Vec<Crown> {
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(4);
    let mut used = vec![false; p.len()];
    collect_crowns(p, 4, &mut seq, &mut used, &mut out);
    out
}

/// A 4-crown `(a,b,c,d)` is improper when some `e` sits between its tops
/// and bottoms: `a, c ≥ e ≥ b, d`.
pub(crate) fn crown4_is_improper(p: &Poset, crown: &[usize]) -> bool {
    let (a, b, c, d) = (crown[0], crown[1], crown[2], crown[3]);
    (0..p.len()).any(|e| p.ge(a, e) && p.ge(c, e) && p.ge(e, b) && p.ge(e, d))
}

pub(crate) fn find_proper_4crown(p: &Poset) -> Option<Crown> {
    all_4crowns(p).into_iter().find(|c| !crown4_is_improper(p, c))
}

fn crown_candidate_ok(p: &Poset, k: usize, seq: &[usize], cand: usize) -> bool {
    let pos = seq.len();
    // Odd positions are bottoms: strictly below both cyclic neighbours.
    if pos > 0 {
        let prev = seq[pos - 1];
        let ok = if pos % 2 == 1 { p.gt(prev, cand) } else { p.gt(cand, prev) };
        if !ok {
            return false;
        }
    }
    if pos == k - 1 && !p.gt(seq[0], cand) {
        return false; // cyclic edge: the last element is a bottom under a₁
    }
    let far_end = if pos == k - 1 { 1 } else { 0 };
    for &q in &seq[far_end..pos.saturating_sub(1)] {
        if p.comparable(q, cand) {
            return false;
        }
    }
    true
}

fn extend_crown(p: &Poset, k: usize, seq: &mut Vec<usize>, used: &mut [bool]) -> bool {
    if seq.len() == k {
        return true;
    }
    for cand in 0..p.len() {
        if used[cand] || !crown_candidate_ok(p, k, seq, cand) {
            continue;
        }
        seq.push(cand);
        used[cand] = true;
        if extend_crown(p, k, seq, used) {
            return true;
        }
        seq.pop();
        used[cand] = false;
    }
    false
}

fn collect_crowns(p: &Poset, k: usize, seq: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Crown>) {
    if seq.len() == k {
        out.push(seq.clone());
        return;
    }
    for cand in 0..p.len() {
        if used[cand] || !crown_candidate_ok(p, k, seq, cand) {
            continue;
        }
        seq.push(cand);
        used[cand] = true;
        collect_crowns(p, k, seq, used, out);
        seq.pop();
        used[cand] = false;
    }
}

/// Finds a diamond `(a,b,c,d)`: `a ≥ b ≥ d`, `a ≥ c ≥ d` with `b, c`
/// incomparable. The four elements are automatically distinct.
pub fn find_diamond(p: &Poset) -> Option<[usize; 4]> {
    let n = p.len();
    for a in 0..n {
        for b in 0..n {
            if !p.ge(a, b) {
                continue;
            }
            for c in 0..n {
                if p.comparable(b, c) || !p.ge(a, c) {
                    continue;
                }
                for d in 0..n {
                    if p.ge(b, d) && p.ge(c, d) {
                        debug_assert!(a != b && a != c && a != d && b != d && c != d);
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Every set of preferences has a least upper bound exactly when this holds.
pub fn is_crown_and_diamond_free(p: &Poset) -> bool {
    find_crown(p).is_none() && find_diamond(p).is_none()
}

/// Finds a chalice in the transitive reduction of `p`: a cover chain
/// `e₁ → … → e_K` whose top is covered by two elements and whose bottom
/// covers two elements. Both end pairs are incomparable automatically
/// (two covers of the same element can never be comparable), but the
/// definitional clauses are re-checked.
pub fn find_chalice(p: &Poset) -> Option<Chalice> {
    let red = transitive_reduction(p);
    let n = p.len();
    let parents: Vec<Vec<usize>> =
        (0..n).map(|v| (0..n).filter(|&u| red.ge(u, v)).collect()).collect();
    let children: Vec<Vec<usize>> =
        (0..n).map(|v| (0..n).filter(|&u| red.ge(v, u)).collect()).collect();

    fn search(
        chain: &mut Vec<usize>,
        parents: &[Vec<usize>],
        children: &[Vec<usize>],
        red: &Relation,
    ) -> Option<Chalice> {
        let top = chain[0];
        let bottom = *chain.last().expect("chain nonempty");
        for (ai, &a) in parents[top].iter().enumerate() {
            for &b in &parents[top][ai + 1..] {
                debug_assert!(!red.ge(a, b) && !red.ge(b, a));
                for (ci, &c) in children[bottom].iter().enumerate() {
                    for &d in &children[bottom][ci + 1..] {
                        debug_assert!(!red.ge(c, d) && !red.ge(d, c));
                        let witness = Chalice {
                            tops: (a, b),
                            stem: chain.clone(),
                            bottoms: (c, d),
                        };
                        debug_assert!(chalice_is_valid(&witness, red));
                        return Some(witness);
                    }
                }
            }
        }
        for &next in &children[bottom] {
            if chain.contains(&next) {
                continue;
            }
            chain.push(next);
            if let Some(w) = search(chain, parents, children, red) {
                return Some(w);
            }
            chain.pop();
        }
        None
    }

    for e1 in 0..n {
        let mut chain = vec![e1];
        if let Some(w) = search(&mut chain, &parents, &children, &red) {
            return Some(w);
        }
    }
    None
}

fn chalice_is_valid(w: &Chalice, red: &Relation) -> bool {
    let (a, b) = w.tops;
    let (c, d) = w.bottoms;
    let mut all = vec![a, b];
    all.extend_from_slice(&w.stem);
    all.extend_from_slice(&[c, d]);
    let mut dedup = all.clone();
    dedup.sort_unstable();
    dedup.dedup();
    dedup.len() == all.len()
        && red.ge(a, w.stem[0])
        && red.ge(b, w.stem[0])
        && w.stem.windows(2).all(|s| red.ge(s[0], s[1]))
        && red.ge(*w.stem.last().expect("nonempty"), c)
        && red.ge(*w.stem.last().expect("nonempty"), d)
        && !red.ge(a, b)
        && !red.ge(b, a)
        && !red.ge(c, d)
        && !red.ge(d, c)
}

/// Finds a weak cycle: at least three distinct elements, cyclically
/// adjacent-comparable in `rel`. Depth-first search over the undirected
/// comparability graph; the first back edge found closes the cycle.
pub fn find_weak_cycle(rel: &Relation) -> Option<Vec<usize>> {
    let n = rel.len();
    let adjacent = |u: usize, v: usize| u != v && (rel.ge(u, v) || rel.ge(v, u));

    fn dfs(
        u: usize,
        parent: Option<usize>,
        adjacent: &impl Fn(usize, usize) -> bool,
        state: &mut [u8],
        path: &mut Vec<usize>,
        n: usize,
    ) -> Option<Vec<usize>> {
        state[u] = 1;
        path.push(u);
        for v in 0..n {
            if !adjacent(u, v) || Some(v) == parent {
                continue;
            }
            if state[v] == 1 {
                let pos = path.iter().position(|&x| x == v).expect("ancestor on path");
                return Some(path[pos..].to_vec());
            }
            if state[v] == 0 {
                if let Some(cycle) = dfs(v, Some(u), adjacent, state, path, n) {
                    return Some(cycle);
                }
            }
        }
        state[u] = 2;
        path.pop();
        None
    }

    let mut state = vec![0u8; n];
    for root in 0..n {
        if state[root] == 0 {
            let mut path = Vec::new();
            if let Some(cycle) = dfs(root, None, &adjacent, &mut state, &mut path, n) {
                debug_assert!(cycle.len() >= 3);
                return Some(cycle);
            }
        }
    }
    None
}

/// Classifies the poset's fork shape, trying the variants in declaration
/// order and returning the first match.
pub fn classify_fork(p: &Poset) -> ForkClass {
    let n = p.len();
    let above = |a: usize| (0..n).filter(|&x| p.gt(x, a)).collect::<Vec<_>>();
    let below = |a: usize| (0..n).filter(|&x| p.gt(a, x)).collect::<Vec<_>>();
    let is_antichain =
        |s: &[usize]| s.iter().all(|&x| s.iter().all(|&y| x == y || !p.comparable(x, y)));
    let is_chain = |s: &[usize]| s.iter().all(|&x| s.iter().all(|&y| p.comparable(x, y)));

    // A fork hinges on one element comparable to everything else, with an
    // antichain on one side of it and a chain on the other.
    let fork = |head_up: bool| {
        (0..n).any(|a| {
            let u = above(a);
            let d = below(a);
            if u.len() + d.len() + 1 != n {
                return false;
            }
            if head_up {
                is_antichain(&u) && is_chain(&d)
            } else {
                is_chain(&u) && is_antichain(&d)
            }
        })
    };
    if fork(true) {
        return ForkClass::UpFork;
    }
    if fork(false) {
        return ForkClass::DownFork;
    }

    // A shattered fork is a lone fork head: the non-isolated elements form
    // an antichain strictly above (below) a single hinge, everything else
    // being incomparable to everything.
    let non_isolated: Vec<usize> =
        (0..n).filter(|&x| (0..n).any(|y| y != x && p.comparable(x, y))).collect();
    let head = |head_up: bool| {
        non_isolated.is_empty()
            || non_isolated.iter().any(|&a| {
                non_isolated
                    .iter()
                    .all(|&x| x == a || if head_up { p.gt(x, a) } else { p.gt(a, x) })
                    && is_antichain(
                        &non_isolated.iter().copied().filter(|&x| x != a).collect::<Vec<_>>(),
                    )
            })
    };
    if head(true) {
        return ForkClass::ShatteredUpFork;
    }
    if head(false) {
        return ForkClass::ShatteredDownFork;
    }
    ForkClass::Neither
}

/// Scans all four-element subposets for the six forbidden patterns,
/// checking incomparability within the chosen four elements. Subsets are
/// visited in lexicographic order; within a subset, kinds in declaration
/// order and element assignments lexicographically.
pub fn find_forbidden_four_poset(p: &Poset) -> Option<(FourPosetKind, [usize; 4])> {
    use FourPosetKind::*;
    let n = p.len();
    if n < 4 {
        return None;
    }
    let inc = |x: usize, y: usize| !p.comparable(x, y);
    let matches = |kind: FourPosetKind, q: [usize; 4]| -> bool {
        let [a, b, c, d] = q;
        match kind {
            BallAndChain => {
                p.gt(a, b)
                    && p.gt(b, c)
                    && p.gt(a, c)
                    && inc(a, d)
                    && inc(b, d)
                    && inc(c, d)
            }
            Hook => {
                let descending = p.gt(a, b) && p.gt(b, c) && p.gt(a, c) && p.gt(d, c);
                let ascending = p.gt(b, a) && p.gt(c, b) && p.gt(c, a) && p.gt(c, d);
                (descending || ascending) && inc(a, d) && inc(b, d)
            }
            Dumbbells => {
                p.gt(a, b)
                    && p.gt(c, d)
                    && inc(a, c)
                    && inc(a, d)
                    && inc(b, c)
                    && inc(b, d)
            }
            Saw => {
                p.gt(a, b)
                    && p.gt(c, b)
                    && p.gt(c, d)
                    && inc(a, c)
                    && inc(a, d)
                    && inc(b, d)
            }
            Crown4 => {
                p.gt(a, b) && p.gt(c, b) && p.gt(c, d) && p.gt(a, d) && inc(a, c) && inc(b, d)
            }
            Diamond => p.gt(a, b) && p.gt(b, d) && p.gt(a, c) && p.gt(c, d) && inc(b, c),
        }
    };

    let mut subset = [0usize; 4];
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    subset = [i, j, k, l];
                    for kind in [BallAndChain, Hook, Dumbbells, Saw, Crown4, Diamond] {
                        if let Some(assignment) = permutations4(&subset)
                            .into_iter()
                            .find(|&q| matches(kind, q))
                        {
                            return Some((kind, assignment));
                        }
                    }
                }
            }
        }
    }
    let _ = subset;
    None
}

fn permutations4(items: &[usize; 4]) -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    let mut idx = [0, 1, 2, 3];
    // Heap's algorithm would do, but lexicographic order over the sorted
    // input is the documented tie-break, so generate that directly.
    loop {
        out.push([items[idx[0]], items[idx[1]], items[idx[2]], items[idx[3]]]);
        // next_permutation on idx
        let mut i = 2;
        loop {
            if idx[i] < idx[i + 1] {
                break;
            }
            if i == 0 {
                return out;
            }
            i -= 1;
        }
        let mut j = 3;
        while idx[j] <= idx[i] {
            j -= 1;
        }
        idx.swap(i, j);
        idx[i + 1..].reverse();
    }
}

/// Runs every detector and reports the first witness of each, with element
/// names resolved.
pub fn structure_report(p: &Poset) -> StructureReport {
    let name = |i: &usize| p.element(*i).to_owned();
    let names = |v: &[usize]| v.iter().map(|i| name(i)).collect::<Vec<_>>();
    let red = transitive_reduction(p);
    StructureReport {
        crowns: find_crown(p).map(|c| names(&c)).into_iter().collect(),
        diamonds: find_diamond(p)
            .map(|d| [name(&d[0]), name(&d[1]), name(&d[2]), name(&d[3])])
            .into_iter()
            .collect(),
        chalices: find_chalice(p)
            .map(|c| {
                let mut flat = vec![c.tops.0, c.tops.1];
                flat.extend_from_slice(&c.stem);
                flat.extend_from_slice(&[c.bottoms.0, c.bottoms.1]);
                names(&flat)
            })
            .into_iter()
            .collect(),
        weak_cycles: find_weak_cycle(&red).map(|c| names(&c)).into_iter().collect(),
        four_posets: find_forbidden_four_poset(p)
            .map(|(kind, w)| FourPosetWitness {
                kind,
                witness: [name(&w[0]), name(&w[1]), name(&w[2]), name(&w[3])],
            })
            .into_iter()
            .collect(),
        fork_class: classify_fork(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poset::Poset;

    fn named(p: &Poset, seq: &[usize]) -> Vec<String> {
        seq.iter().map(|&i| p.element(i).to_owned()).collect()
    }

    #[test]
    fn crown_detector_matches_worked_examples() {
        let crown = fixtures::crown4();
        assert_eq!(named(&crown, &find_crown(&crown).unwrap()), ["x", "y", "z", "w"]);
        assert!(find_crown(&fixtures::chain3()).is_none());
        assert!(find_crown(&fixtures::diamond4()).is_none());
        assert!(find_crown(&fixtures::hook()).is_none());
    }

    #[test]
    fn crown_witness_revalidates() {
        let p = fixtures::perm3();
        if let Some(c) = find_crown(&p) {
            let k = c.len();
            assert!(k >= 4 && k % 2 == 0);
            for pos in 0..k {
                let next = c[(pos + 1) % k];
                if pos % 2 == 0 {
                    assert!(p.gt(c[pos], next));
                } else {
                    assert!(p.gt(next, c[pos]));
                }
            }
        }
    }

    #[test]
    fn six_crown_is_found_at_length_six() {
        let p = Poset::from_covers(
            (1..=6).map(|i| format!("a{i}")).collect(),
            &[("a1", "a2"), ("a3", "a2"), ("a3", "a4"), ("a5", "a4"), ("a5", "a6"), ("a1", "a6")],
        )
        .unwrap();
        let crown = find_crown(&p).unwrap();
        assert_eq!(crown.len(), 6);
        assert!(find_crown_min_length(&p, 6).is_some());
        assert!(find_crown_min_length(&fixtures::crown4(), 6).is_none());
    }

    #[test]
    fn diamond_detector_matches_worked_examples() {
        let d = fixtures::diamond4();
        assert_eq!(named(&d, &find_diamond(&d).unwrap()), ["x", "y", "z", "w"]);
        assert!(find_diamond(&fixtures::crown4()).is_none());
        assert!(find_diamond(&fixtures::hook()).is_none());
        let perm = fixtures::perm3();
        assert_eq!(named(&perm, &find_diamond(&perm).unwrap()), ["321", "231", "312", "123"]);
    }

    #[test]
    fn crown_and_diamond_freeness() {
        assert!(is_crown_and_diamond_free(&fixtures::hook()));
        assert!(is_crown_and_diamond_free(&fixtures::chain3()));
        assert!(is_crown_and_diamond_free(&fixtures::statusquo()));
        assert!(!is_crown_and_diamond_free(&fixtures::crown4()));
        assert!(!is_crown_and_diamond_free(&fixtures::diamond4()));
        assert!(!is_crown_and_diamond_free(&fixtures::perm3()));
    }

    #[test]
    fn chalice_in_five_element_goblet() {
        let p = Poset::from_covers(
            ["a", "b", "e", "c", "d"].iter().map(|s| s.to_string()).collect(),
            &[("a", "e"), ("b", "e"), ("e", "c"), ("e", "d")],
        )
        .unwrap();
        let w = find_chalice(&p).unwrap();
        assert_eq!(
            (
                p.element(w.tops.0),
                p.element(w.tops.1),
                named(&p, &w.stem),
                p.element(w.bottoms.0),
                p.element(w.bottoms.1)
            ),
            ("a", "b", vec!["e".to_string()], "c", "d")
        );
        assert!(find_chalice(&fixtures::chain3()).is_none());
        assert!(find_chalice(&fixtures::perm3()).is_none());
        assert!(find_chalice(&fixtures::crown4()).is_none());
    }

    #[test]
    fn weak_cycle_in_reductions() {
        use crate::poset::transitive_reduction;
        let perm = fixtures::perm3();
        let cycle = find_weak_cycle(&transitive_reduction(&perm)).unwrap();
        assert_eq!(named(&perm, &cycle), ["321", "231", "213", "123", "132", "312"]);
        assert!(find_weak_cycle(&transitive_reduction(&fixtures::chain3())).is_none());
        assert!(find_weak_cycle(&transitive_reduction(&fixtures::hook())).is_none());
        let d = fixtures::diamond4();
        assert_eq!(named(&d, &find_weak_cycle(&transitive_reduction(&d)).unwrap()), [
            "x", "y", "w", "z"
        ]);
    }

    #[test]
    fn fork_classification_matches_worked_examples() {
        assert_eq!(classify_fork(&fixtures::statusquo()), ForkClass::ShatteredDownFork);
        assert_eq!(classify_fork(&fixtures::hook()), ForkClass::Neither);
        assert_eq!(classify_fork(&fixtures::chain3()), ForkClass::UpFork);
        assert_eq!(classify_fork(&fixtures::crown4()), ForkClass::Neither);
        let singleton = Poset::antichain(vec!["x".into()]).unwrap();
        assert_eq!(classify_fork(&singleton), ForkClass::UpFork);
        let all_isolated = Poset::antichain(vec!["x".into(), "y".into(), "z".into()]).unwrap();
        assert_eq!(classify_fork(&all_isolated), ForkClass::ShatteredUpFork);
        // Three incomparable alternatives above a common worst one.
        let up = Poset::from_covers(
            vec!["a".into(), "b".into(), "c".into(), "o".into()],
            &[("a", "o"), ("b", "o"), ("c", "o")],
        )
        .unwrap();
        assert_eq!(classify_fork(&up), ForkClass::UpFork);
    }

    #[test]
    fn four_poset_scan_matches_worked_examples() {
        let hook = fixtures::hook();
        let (kind, w) = find_forbidden_four_poset(&hook).unwrap();
        assert_eq!(kind, FourPosetKind::Hook);
        assert_eq!(named(&hook, &w), ["z", "y", "x", "w"]);

        let dumbbells = Poset::from_covers(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[("a", "b"), ("c", "d")],
        )
        .unwrap();
        assert_eq!(find_forbidden_four_poset(&dumbbells).unwrap().0, FourPosetKind::Dumbbells);

        assert!(find_forbidden_four_poset(&fixtures::statusquo()).is_none());
        assert!(find_forbidden_four_poset(&fixtures::chain3()).is_none());
        assert_eq!(find_forbidden_four_poset(&fixtures::crown4()).unwrap().0, FourPosetKind::Crown4);
        assert_eq!(
            find_forbidden_four_poset(&fixtures::diamond4()).unwrap().0,
            FourPosetKind::Diamond
        );
    }

    #[test]
    fn six_crown_contains_a_saw() {
        let p = Poset::from_covers(
            (1..=6).map(|i| format!("a{i}")).collect(),
            &[("a1", "a2"), ("a3", "a2"), ("a3", "a4"), ("a5", "a4"), ("a5", "a6"), ("a1", "a6")],
        )
        .unwrap();
        let hit = find_forbidden_four_poset(&p);
        assert!(hit.is_some(), "a 6-crown is not fork-shaped");
        // A saw sits inside every 6-crown; confirm one specific embedding.
        let idx = |s: &str| p.index_of(s).unwrap();
        let (a, b, c, d) = (idx("a1"), idx("a2"), idx("a3"), idx("a4"));
        assert!(p.gt(a, b) && p.gt(c, b) && p.gt(c, d));
        assert!(!p.comparable(a, c) && !p.comparable(a, d) && !p.comparable(b, d));
    }

    #[test]
    fn ball_and_chain_detected() {
        let p = Poset::from_covers(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[("a", "b"), ("b", "c")],
        )
        .unwrap();
        let (kind, w) = find_forbidden_four_poset(&p).unwrap();
        assert_eq!(kind, FourPosetKind::BallAndChain);
        assert_eq!(named(&p, &w), ["a", "b", "c", "d"]);
    }

    #[test]
    fn report_serializes_with_names() {
        let report = structure_report(&fixtures::diamond4());
        assert_eq!(report.fork_class, ForkClass::Neither);
        assert_eq!(report.diamonds.len(), 1);
        assert!(report.crowns.is_empty());
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"fork_class\":\"neither\""));
        assert!(json.contains("\"diamond\""));
    }

    #[test]
    fn proper_and_improper_crowns_distinguished() {
        // Tops a, c over bottoms b, d with a middle e between them: improper.
        let p = Poset::from_covers(
            vec!["a".into(), "b".into(), "c".into(), "d".into(), "e".into()],
            &[("a", "e"), ("c", "e"), ("e", "b"), ("e", "d")],
        )
        .unwrap();
        let crowns = all_4crowns(&p);
        assert!(!crowns.is_empty());
        assert!(crowns.iter().all(|c| crown4_is_improper(&p, c)));
        assert!(find_proper_4crown(&p).is_none());
        assert!(find_proper_4crown(&fixtures::crown4()).is_some());
    }
}
