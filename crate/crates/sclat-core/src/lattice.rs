//! Least upper bounds and greatest lower bounds of preference sets.
//!
//! An upper bound of a profile P is a preference that single-crossing
//! dominates every member; a join is a *minimum* upper bound, itself
//! dominated by every other upper bound. Joins are computed through the
//! forced core `⪰°`: on each comparable pair `x ≳ y`, a chain from `x` to
//! `y` forces `x ⪰° y`, and the absence of a strict chain forces
//! `y ⪰° x` — and the minimum upper bounds are exactly the complete
//! transitive extensions of that core. Existence therefore reduces to
//! Suzumura consistency of `⪰°` (no sequence of forced comparisons loops
//! back against a strict one), and the canonical join is a deterministic
//! such extension. Meets are joins over the dual order.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::chains::{
    build_chain_digraph, has_p_chain, has_strict_p_chain, witness_chain, ChainDigraph,
};
use crate::poset::{dual, Poset, Relation};
use crate::prefs::{sc_dominates, Profile, WeakOrder};
use crate::structure::{find_crown, find_diamond};

/// Failures of bound construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    /// The relation loops back against one of its own strict comparisons;
    /// the witness lists the offending sequence (its last element is
    /// strictly above its first in the input).
    #[error("relation is not Suzumura-consistent; witness cycle: {}", .0.join(" ≥ "))]
    NotConsistent(Vec<String>),
    /// The forced comparisons of the profile contain a cycle through a
    /// strict one, so no upper bound can be minimum.
    #[error("no least upper bound exists; forced-comparison cycle: {}", .0.join(" → "))]
    NoJoin(Vec<String>),
    /// Dual failure for greatest lower bounds.
    #[error("no greatest lower bound exists; forced-comparison cycle: {}", .0.join(" → "))]
    NoMeet(Vec<String>),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// The forced core `⪰°` of a profile: the ranking every minimum upper bound
/// must induce on comparable pairs, together with the chain digraph that
/// produced it (kept for witness extraction).
#[derive(Debug, Clone)]
pub struct CoreRelation {
    rel: Relation,
    digraph: ChainDigraph,
}

impl CoreRelation {
    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn digraph(&self) -> &ChainDigraph {
        &self.digraph
    }

    pub fn len(&self) -> usize {
        self.rel.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `i ⪰° j`.
    pub fn ge(&self, i: usize, j: usize) -> bool {
        self.rel.ge(i, j)
    }

    /// The (chain, strict chain) query results behind the ranking of a
    /// comparable pair `hi ≳ lo`.
    pub fn chain_results(&self, hi: usize, lo: usize) -> (bool, bool) {
        (
            has_p_chain(&self.digraph, hi, lo).expect("comparable pair"),
            has_strict_p_chain(&self.digraph, hi, lo).expect("comparable pair"),
        )
    }
}

/// Computes the forced core: for each comparable `x ≳ y`, `x ⪰° y` iff a
/// chain runs `x → y`, and `y ⪰° x` iff no strict chain does. Incomparable
/// pairs stay unranked.
pub fn core_relation(profile: &Profile, p: &Poset) -> CoreRelation {
    let g = build_chain_digraph(profile, p);
    let rel = Relation::from_fn(p.elements_arc(), |i, j| {
        if p.ge(i, j) {
            has_p_chain(&g, i, j).expect("comparable")
        } else if p.ge(j, i) {
            !has_strict_p_chain(&g, j, i).expect("comparable")
        } else {
            false
        }
    });
    CoreRelation { rel, digraph: g }
}

/// Is `cand` an upper bound of the profile, i.e. does it single-crossing
/// dominate every member? Also derivable from chains alone: `cand` must
/// rank `x` weakly above `y` whenever a chain runs `x → y` and strictly
/// above whenever a strict chain does. Both routes are computed and
/// cross-checked in debug builds.
pub fn is_upper_bound(cand: &WeakOrder, profile: &Profile, p: &Poset) -> bool {
    let direct = profile.iter().all(|m| sc_dominates(cand, m, p));
    debug_assert_eq!(
        direct,
        is_upper_bound_via_chains(cand, &build_chain_digraph(profile, p)),
        "dominance route and chain route disagree"
    );
    direct
}

/// Chain-route upper-bound test against a prebuilt digraph. Equivalent to
/// [`is_upper_bound`]; exposed so sweeps over many candidates can reuse
/// the digraph.
pub fn is_upper_bound_via_chains(cand: &WeakOrder, g: &ChainDigraph) -> bool {
    let p = g.poset();
    for (x, y) in p.strict_pairs() {
        if has_p_chain(g, x, y).expect("comparable") && !cand.weak(x, y) {
            return false;
        }
        if has_strict_p_chain(g, x, y).expect("comparable") && !cand.strict(x, y) {
            return false;
        }
    }
    true
}

/// Is `cand` a minimum upper bound? By the characterisation this holds
/// exactly when `cand` agrees with the forced core on every comparable
/// pair, in both weak directions.
pub fn is_minimum_upper_bound(cand: &WeakOrder, profile: &Profile, p: &Poset) -> bool {
    let core = core_relation(profile, p);
    for i in 0..p.len() {
        for j in 0..p.len() {
            if p.comparable(i, j) && cand.weak(i, j) != core.ge(i, j) {
                return false;
            }
        }
    }
    true
}

/// Checks Suzumura consistency: no sequence `a₁ ≥ … ≥ a_K` in `rel` may
/// have `a_K` strictly above `a₁`. Returns the shortest offending sequence
/// (breadth-first, index tie-break) if one exists.
pub fn is_suzumura_consistent(rel: &Relation) -> Result<(), Vec<usize>> {
    let closure = rel.transitive_closure();
    let n = rel.len();
    for a in 0..n {
        for b in 0..n {
            if closure.ge(a, b) && rel.ge(b, a) && !rel.ge(a, b) {
                return Err(shortest_path(rel, a, b));
            }
        }
    }
    Ok(())
}

/// Shortest path `from → to` along `rel` edges (BFS, neighbours in index
/// order). Caller guarantees reachability.
fn shortest_path(rel: &Relation, from: usize, to: usize) -> Vec<usize> {
    let n = rel.len();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    visited[from] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(cur) = queue.pop_front() {
        if cur == to && cur != from {
            break;
        }
        for next in 0..n {
            if next != cur && rel.ge(cur, next) && !visited[next] {
                visited[next] = true;
                parent[next] = Some(cur);
                queue.push_back(next);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while let Some(prev) = parent[cur] {
        path.push(prev);
        cur = prev;
    }
    path.reverse();
    debug_assert_eq!(path.first(), Some(&from));
    path
}

/// Extends a Suzumura-consistent relation to a complete transitive
/// preference, canonically: transitively close, condense mutually
/// reachable classes, then order the class DAG top-down by Kahn's
/// algorithm, breaking ties toward the class containing the smallest
/// element index. Weak input pairs stay weak, strict input pairs stay
/// strict; classes left unordered by the input become strictly ranked by
/// the tie-break.
pub fn suzumura_extend(rel: &Relation) -> Result<WeakOrder, LatticeError> {
    if let Err(witness) = is_suzumura_consistent(rel) {
        let names = witness.iter().map(|&i| rel.element(i).to_owned()).collect();
        return Err(LatticeError::NotConsistent(names));
    }
    let n = rel.len();
    let closure = rel.transitive_closure();
    let mutual =
        |i: usize, j: usize| i == j || (closure.ge(i, j) && closure.ge(j, i));

    // Condense into classes, each represented by its smallest member.
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (i..n).filter(|&j| mutual(i, j)).collect();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }

    // Kahn's algorithm over the class DAG (edge A → B iff A is above B).
    let m = classes.len();
    let above = |a: usize, b: usize| a != b && closure.ge(classes[a][0], classes[b][0]);
    let mut indegree = vec![0usize; m];
    for a in 0..m {
        for b in 0..m {
            if above(a, b) {
                indegree[b] += 1;
            }
        }
    }
    let mut emitted = vec![false; m];
    let mut ranks = vec![0u8; n];
    for rank in 0..m {
        let next = (0..m)
            .filter(|&c| !emitted[c] && indegree[c] == 0)
            .min_by_key(|&c| classes[c][0])
            .expect("DAG always has a source");
        emitted[next] = true;
        for &member in &classes[next] {
            ranks[member] = rank as u8;
        }
        for b in 0..m {
            if above(next, b) {
                indegree[b] -= 1;
            }
        }
    }
    Ok(WeakOrder::from_ranks(ranks).expect("consecutive by construction"))
}

/// The canonical minimum upper bound of a profile, when one exists. It is
/// the deterministic extension of the forced core; any other minimum upper
/// bound differs only on incomparable pairs.
pub fn join(profile: &Profile, p: &Poset) -> Result<WeakOrder, LatticeError> {
    join_with(&core_relation(profile, p))
}

/// [`join`] against an already-computed core, for callers that sweep many
/// checks over one profile.
pub fn join_with(core: &CoreRelation) -> Result<WeakOrder, LatticeError> {
    suzumura_extend(core.relation()).map_err(|e| match e {
        LatticeError::NotConsistent(w) => LatticeError::NoJoin(w),
        other => other,
    })
}

/// The canonical maximum lower bound: the join over the dual order.
pub fn meet(profile: &Profile, p: &Poset) -> Result<WeakOrder, LatticeError> {
    join(profile, &dual(p)).map_err(|e| match e {
        LatticeError::NoJoin(w) => LatticeError::NoMeet(w),
        other => other,
    })
}

/// Builds an upper bound that avoids ranking `x` weakly (strictly, per
/// `strict`) above `y`, for a comparable pair `x ≳ y`. Possible exactly
/// when no (strict) chain runs `x → y`. For the weak goal, chains' forced
/// pairs plus the reversal `(y, x)` are extended; for the strict goal with
/// a weak chain present, every pair lying on some chain from `x` to `y` is
/// additionally forced indifferent.
pub fn upper_bound_avoiding(
    profile: &Profile,
    p: &Poset,
    x: usize,
    y: usize,
    strict: bool,
) -> Result<WeakOrder, LatticeError> {
    if !p.ge(x, y) {
        return Err(LatticeError::PreconditionFailed(format!(
            "`{}` is not weakly above `{}`",
            p.element(x),
            p.element(y)
        )));
    }
    let g = build_chain_digraph(profile, p);
    let disqualified = if strict {
        has_strict_p_chain(&g, x, y).expect("comparable")
    } else {
        has_p_chain(&g, x, y).expect("comparable")
    };
    if disqualified {
        return Err(LatticeError::PreconditionFailed(format!(
            "a {}chain from `{}` to `{}` forces the comparison",
            if strict { "strict " } else { "" },
            p.element(x),
            p.element(y)
        )));
    }
    let chain = |a: usize, b: usize| p.ge(a, b) && has_p_chain(&g, a, b).expect("comparable");
    let forced = |a: usize, b: usize| p.gt(a, b) && chain(a, b);
    let weak_chain_present = x != y && chain(x, y);
    let rel = if strict && weak_chain_present {
        // Pairs on a chain x → … → y get forced both ways, turning the
        // unavoidable x ⪰ y into an indifference.
        Relation::from_fn(p.elements_arc(), |a, b| {
            forced(a, b) || (p.gt(b, a) && chain(x, b) && chain(b, a) && chain(a, y))
        })
    } else if strict {
        // No chain from x to y at all: the weak construction suffices.
        Relation::from_fn(p.elements_arc(), |a, b| forced(a, b) || (a == y && b == x))
    } else {
        Relation::from_fn(p.elements_arc(), |a, b| forced(a, b) || (a == y && b == x))
    };
    let out = suzumura_extend(&rel).expect("construction is Suzumura-consistent");
    debug_assert!(is_upper_bound(&out, profile, p));
    debug_assert!(if strict { !out.strict(x, y) } else { !out.weak(x, y) });
    Ok(out)
}

/// How much lattice structure the space of preferences over `p` has:
/// unique bounds everywhere, bounds everywhere (several on some sets), or
/// sets with no bound at all.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LatticeStatus {
    /// Complete alternative order: every preference set has exactly one
    /// minimum upper bound and one maximum lower bound.
    CompleteLattice,
    /// Crown- and diamond-free but incomplete: bounds always exist but the
    /// witness pair makes some of them non-unique.
    PreLattice { incomparable: (String, String) },
    /// Some preference sets have no minimum upper bound; the witness is
    /// the offending crown or diamond.
    None {
        crown: Option<Vec<String>>,
        diamond: Option<[String; 4]>,
    },
}

/// Classifies `p` per the existence and uniqueness results.
pub fn lattice_status(p: &Poset) -> LatticeStatus {
    let name = |i: usize| p.element(i).to_owned();
    let crown = find_crown(p);
    let diamond = find_diamond(p);
    if crown.is_some() || diamond.is_some() {
        return LatticeStatus::None {
            crown: crown.map(|c| c.iter().map(|&i| name(i)).collect()),
            diamond: diamond.map(|d| [name(d[0]), name(d[1]), name(d[2]), name(d[3])]),
        };
    }
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if !p.comparable(i, j) {
                return LatticeStatus::PreLattice { incomparable: (name(i), name(j)) };
            }
        }
    }
    LatticeStatus::CompleteLattice
}

/// Renders the forced core as an aligned text table: one row per strictly
/// comparable pair, with the chain queries, the forced ranking, and a
/// shortest chain witness.
pub fn explain_core(core: &CoreRelation) -> String {
    let p = core.digraph().poset().clone();
    let mut rows: Vec<[String; 5]> = vec![[
        "pair".into(),
        "chain".into(),
        "strict".into(),
        "forced".into(),
        "witness".into(),
    ]];
    for (x, y) in p.strict_pairs() {
        let (weak, strict) = core.chain_results(x, y);
        let (nx, ny) = (p.element(x), p.element(y));
        let forced = match (weak, strict) {
            (true, true) => format!("{nx} ≻° {ny}"),
            (true, false) => format!("{nx} ~° {ny}"),
            (false, false) => format!("{ny} ≻° {nx}"),
            (false, true) => unreachable!("strict chains are chains"),
        };
        let witness = witness_chain(core.digraph(), x, y, strict)
            .expect("comparable")
            .map(|seq| {
                seq.iter().map(|&i| p.element(i).to_owned()).collect::<Vec<_>>().join(" → ")
            })
            .unwrap_or_else(|| "—".into());
        rows.push([
            format!("{nx} ≳ {ny}"),
            if weak { "yes" } else { "no" }.into(),
            if strict { "yes" } else { "no" }.into(),
            forced,
            witness,
        ]);
    }
    let widths: Vec<usize> = (0..5)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().expect("nonempty"))
        .collect();
    let mut out = String::new();
    for row in rows {
        for (cell, width) in row.iter().zip(&widths) {
            let _ = write!(out, "{cell:<width$}  ");
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    }
    out
}
