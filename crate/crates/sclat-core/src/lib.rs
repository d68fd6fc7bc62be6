//! Joins and meets of preference sets under single-crossing dominance.
//!
//! Alternatives carry a finite partial order ([`poset`]); preferences over
//! them are weak orders ([`prefs`]); sets of preferences are compared by
//! single-crossing dominance. This crate computes least upper bounds and
//! greatest lower bounds of such sets when they exist ([`lattice`]),
//! characterizes them through preference chains ([`chains`]), and decides
//! existence and uniqueness through forbidden substructures of the
//! underlying order ([`structure`]).
//!
//! On top of that sit three applications: monotone comparative statics and
//! selection rules ([`compstat`]), comparative ambiguity aversion for
//! maxmin preferences ([`ambiguity`]), and social welfare functions that
//! respect unanimity without overriding justified objections ([`social`]).
//! Exhaustive small-instance verification lives in [`oracle`], and the
//! worked examples shared by tests and the CLI live in [`fixtures`].

pub mod ambiguity;
pub mod chains;
pub mod fixtures;
pub mod compstat;
pub mod lattice;
pub mod oracle;
pub mod poset;
pub mod prefs;
pub mod social;
pub mod structure;
