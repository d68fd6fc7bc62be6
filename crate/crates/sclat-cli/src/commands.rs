//! Command implementations: file loading, library dispatch, and rendering.
//!
//! Every handler returns an [`Outcome`] — the full output body plus a pass
//! flag — so the binary entry point owns the only `print!` and the only
//! exit-code decision. Bodies are built deterministically: pretty JSON with
//! sorted keys, or fixed-layout text. Unusable input surfaces as
//! [`CliError`] (exit 2); failed assertions and failed sweeps clear the
//! pass flag (exit 1).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use sclat_core::ambiguity::{
    act_space_from_json, ce_preference_from_json, enumerate_ce_preferences,
    is_maxmin_representation, maxmin_preference, more_ambiguity_averse, verify_maxmin, ActSpace,
    CEPreference,
};
use sclat_core::compstat::{
    argmax_set, consensus, possibly_optimal, verify_consensus_monotonicity, verify_mcs_theorem,
    verify_monotone_scf, verify_robust_monotonicity, RealChain,
};
use sclat_core::lattice::{
    core_relation, explain_core, join, lattice_status, meet, LatticeError, LatticeStatus,
};
use sclat_core::oracle::{
    verify_characterisation, verify_cycles_chalices, verify_existence_uniqueness, InstanceSweep,
    SweepOptions,
};
use sclat_core::poset::{dual, poset_from_json, poset_to_dot, transitive_reduction, Poset};
use sclat_core::prefs::{profile_from_json, Profile};
use sclat_core::social::{acceptability_report, exists_acceptable_swf, verify_swf};
use sclat_core::structure::{structure_report, StructureReport};

use crate::{
    AnalyzeArgs, AnalyzeFormat, ArgmaxArgs, BoundArgs, BoundExpect, ConsensusArgs, ExportDotArgs,
    MaxminArgs, McsSweepArgs, SwfCheckArgs, SwfClassifyArgs, SwfExpect, TextJson, Theorem,
    VerifyArgs,
};

/// A finished command: the bytes to emit and whether to exit 0.
pub struct Outcome {
    pub body: String,
    pub ok: bool,
}

impl Outcome {
    fn pass(body: String) -> Self {
        Outcome { body, ok: true }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write `{path}`: {source}")]
    WriteFile { path: String, source: std::io::Error },
    #[error("in `{path}`: {message}")]
    Invalid { path: String, message: String },
    #[error("{0}")]
    Input(String),
}

fn bad_input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn invalid(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Invalid { path: path.display().to_string(), message: e.to_string() }
}

/// Sizes the global worker pool from `--jobs`, falling back to the
/// `SCLAT_JOBS` environment variable; unset means one worker per core.
pub fn configure_jobs(flag: Option<usize>) -> Result<(), CliError> {
    let jobs = match flag {
        Some(j) => Some(j),
        None => match std::env::var("SCLAT_JOBS").ok() {
            Some(raw) => Some(raw.trim().parse::<usize>().map_err(|_| {
                CliError::Input(format!("SCLAT_JOBS must be a positive integer, got `{raw}`"))
            })?),
            None => None,
        },
    };
    let Some(jobs) = jobs else { return Ok(()) };
    if jobs == 0 {
        return Err(CliError::Input("worker count must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| CliError::Input(format!("cannot size the worker pool: {e}")))
}

/// Writes the body to the requested file, or to stdout when none was given.
pub fn write_output(path: Option<&Path>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, body)
            .map_err(|e| CliError::WriteFile { path: p.display().to_string(), source: e }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Read { path: path.display().to_string(), source: e })
}

fn load_poset(path: &Path) -> Result<Poset, CliError> {
    poset_from_json(&read_file(path)?).map_err(|e| invalid(path, e))
}

fn load_profile(path: &Path, elements: &[String]) -> Result<Profile, CliError> {
    profile_from_json(&read_file(path)?, elements).map_err(|e| invalid(path, e))
}

fn load_act_space(path: &Path) -> Result<ActSpace, CliError> {
    act_space_from_json(&read_file(path)?).map_err(|e| invalid(path, e))
}

fn load_ce_preference(path: &Path, s: &ActSpace) -> Result<CEPreference, CliError> {
    ce_preference_from_json(&read_file(path)?, s).map_err(|e| invalid(path, e))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut body = serde_json::to_string_pretty(value).expect("value serializes");
    body.push('\n');
    body
}

/// The serde name of a unit enum variant (e.g. `ForkClass::UpFork` →
/// `"up_fork"`), so text output and JSON output always agree.
fn serde_tag<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value).expect("value serializes") {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

pub fn analyze(args: &AnalyzeArgs) -> Result<Outcome, CliError> {
    let p = load_poset(&args.poset)?;
    let report = structure_report(&p);
    let status = lattice_status(&p);
    let body = match args.format {
        AnalyzeFormat::Json => to_json(&json!({
            "elements": p.elements(),
            "report": report,
            "lattice_status": status,
        })),
        AnalyzeFormat::Text => analyze_text(&p, &report, &status),
        AnalyzeFormat::Dot => annotated_dot(&p, &report),
    };
    Ok(Outcome::pass(body))
}

fn analyze_text(p: &Poset, report: &StructureReport, status: &LatticeStatus) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "elements: {}", p.elements().join(", "));
    let _ = writeln!(out, "fork_class: {}", serde_tag(&report.fork_class));
    let lattice = match status {
        LatticeStatus::CompleteLattice => "complete_lattice".to_owned(),
        LatticeStatus::PreLattice { incomparable: (a, b) } => {
            format!("pre_lattice (incomparable: {a}, {b})")
        }
        LatticeStatus::None { .. } => "none".to_owned(),
    };
    let _ = writeln!(out, "lattice: {lattice}");
    for crown in &report.crowns {
        let _ = writeln!(out, "crown: {}", crown.join(", "));
    }
    for diamond in &report.diamonds {
        let _ = writeln!(out, "diamond: {}", diamond.join(", "));
    }
    for chalice in &report.chalices {
        let _ = writeln!(out, "chalice: {}", chalice.join(", "));
    }
    for cycle in &report.weak_cycles {
        let _ = writeln!(out, "weak_cycle: {}", cycle.join(", "));
    }
    for fp in &report.four_posets {
        let _ = writeln!(out, "four_poset: {} ({})", serde_tag(&fp.kind), fp.witness.join(", "));
    }
    out
}

/// DOT rendering with every element that appears in a substructure witness
/// (and every cover edge between two such elements) drawn in red.
fn annotated_dot(p: &Poset, report: &StructureReport) -> String {
    let mut flagged: BTreeSet<&str> = BTreeSet::new();
    for crown in &report.crowns {
        flagged.extend(crown.iter().map(String::as_str));
    }
    for diamond in &report.diamonds {
        flagged.extend(diamond.iter().map(String::as_str));
    }
    for chalice in &report.chalices {
        flagged.extend(chalice.iter().map(String::as_str));
    }
    for cycle in &report.weak_cycles {
        flagged.extend(cycle.iter().map(String::as_str));
    }
    for fp in &report.four_posets {
        flagged.extend(fp.witness.iter().map(String::as_str));
    }
    let covers = transitive_reduction(p);
    let mut out = String::from("digraph poset {\n  rankdir=TB;\n  node [shape=plaintext];\n");
    for e in p.elements() {
        if flagged.contains(e.as_str()) {
            let _ = writeln!(out, "  \"{e}\" [fontcolor=red];");
        } else {
            let _ = writeln!(out, "  \"{e}\";");
        }
    }
    for (i, j) in covers.pairs() {
        let (a, b) = (p.element(i), p.element(j));
        if flagged.contains(a) && flagged.contains(b) {
            let _ = writeln!(out, "  \"{a}\" -> \"{b}\" [color=red];");
        } else {
            let _ = writeln!(out, "  \"{a}\" -> \"{b}\";");
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Join,
    Meet,
}

pub fn bound(args: &BoundArgs, kind: BoundKind) -> Result<Outcome, CliError> {
    let p = load_poset(&args.poset)?;
    let pi = load_profile(&args.profile, p.elements())?;
    let result = match kind {
        BoundKind::Join => join(&pi, &p),
        BoundKind::Meet => meet(&pi, &p),
    };
    // The meet is the join over the reversed order, so its core table is
    // computed there too.
    let explain = args.explain.then(|| match kind {
        BoundKind::Join => explain_core(&core_relation(&pi, &p)),
        BoundKind::Meet => explain_core(&core_relation(&pi, &dual(&p))),
    });
    let ok = match args.expect {
        None => true,
        Some(BoundExpect::Join) if kind == BoundKind::Join => result.is_ok(),
        Some(BoundExpect::NoJoin) if kind == BoundKind::Join => result.is_err(),
        Some(BoundExpect::Meet) if kind == BoundKind::Meet => result.is_ok(),
        Some(BoundExpect::NoMeet) if kind == BoundKind::Meet => result.is_err(),
        Some(_) => {
            let cmd = if kind == BoundKind::Join { "join" } else { "meet" };
            return Err(CliError::Input(format!(
                "that `--expect` value does not apply to `{cmd}`"
            )));
        }
    };
    let body = match args.format {
        TextJson::Text => {
            let mut out = explain.clone().unwrap_or_default();
            match &result {
                Ok(w) => {
                    let _ = writeln!(out, "{}", w.format(p.elements()));
                }
                Err(e) => {
                    let _ = writeln!(out, "{e}");
                }
            }
            out
        }
        TextJson::Json => {
            let mut obj = serde_json::Map::new();
            match &result {
                Ok(w) => {
                    let status = if kind == BoundKind::Join { "join" } else { "meet" };
                    obj.insert("status".into(), status.into());
                    obj.insert("ranking".into(), w.format(p.elements()).into());
                }
                Err(LatticeError::NoJoin(cycle)) | Err(LatticeError::NoMeet(cycle)) => {
                    let status = if kind == BoundKind::Join { "no_join" } else { "no_meet" };
                    obj.insert("status".into(), status.into());
                    obj.insert("cycle".into(), cycle.clone().into());
                }
                Err(e) => {
                    obj.insert("status".into(), "error".into());
                    obj.insert("message".into(), e.to_string().into());
                }
            }
            if let Some(table) = &explain {
                obj.insert("explain".into(), table.clone().into());
            }
            to_json(&Value::Object(obj))
        }
    };
    Ok(Outcome { body, ok })
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut opts = SweepOptions::default();
    if let Some(seed) = args.seed {
        opts.seed = seed;
    }
    opts.deep = args.deep;
    let sweep = match args.theorem {
        Theorem::Characterisation => {
            verify_characterisation(args.n, args.k, &opts).map_err(bad_input)?
        }
        Theorem::Existence | Theorem::Uniqueness => {
            verify_existence_uniqueness(args.n, &opts).map_err(bad_input)?
        }
        Theorem::CyclesChalices => verify_cycles_chalices(args.n, &opts).map_err(bad_input)?,
        Theorem::Swf => verify_swf(args.n, &opts).map_err(bad_input)?,
        Theorem::Mcs => verify_mcs_theorem(args.n).map_err(bad_input)?,
        Theorem::Maxmin => verify_maxmin(args.n, &opts).map_err(bad_input)?,
    };
    let ok = sweep.passed();
    let body = match args.format {
        TextJson::Json => to_json(&sweep),
        TextJson::Text => sweep_text(&sweep),
    };
    Ok(Outcome { body, ok })
}

fn sweep_text(sweep: &InstanceSweep) -> String {
    let mut out = String::new();
    let _ = write!(out, "theorem: {}  n: {}", sweep.theorem, sweep.n);
    if let Some(k) = sweep.k {
        let _ = write!(out, "  k: {k}");
    }
    out.push('\n');
    let _ = writeln!(out, "seed: {}  exhaustive: {}", sweep.seed, sweep.exhaustive);
    let _ = writeln!(out, "posets: {}  instances: {}", sweep.posets, sweep.instances);
    for check in &sweep.checks {
        let _ = writeln!(out, "  {}: {} passed, {} failed", check.check, check.passes, check.failures);
        if let Some(ce) = &check.first_counterexample {
            let inline = serde_json::to_string(ce).expect("counterexample serializes");
            let _ = writeln!(out, "    first counterexample: {inline}");
        }
    }
    let _ = writeln!(out, "verdict: {}", if sweep.passed() { "pass" } else { "FAIL" });
    out
}

pub fn mcs_argmax(args: &ArgmaxArgs) -> Result<Outcome, CliError> {
    let chain = RealChain::new(args.chain.clone()).map_err(bad_input)?;
    let pref = chain.parse_ranking(&args.ranking).map_err(bad_input)?;
    let best = argmax_set(&pref, &chain).map_err(bad_input)?;
    let body = match args.format {
        TextJson::Text => format!("{}\n", best.format(&chain)),
        TextJson::Json => to_json(&json!({
            "chain": chain.values(),
            "ranking": pref.format(chain.poset().elements()),
            "argmax": best.values(&chain),
        })),
    };
    Ok(Outcome::pass(body))
}

pub fn mcs_consensus(args: &ConsensusArgs) -> Result<Outcome, CliError> {
    let chain = RealChain::new(args.chain.clone()).map_err(bad_input)?;
    let pi = load_profile(&args.profile, chain.poset().elements())?;
    let agreed = consensus(&pi, &chain).map_err(bad_input)?;
    let possible = possibly_optimal(&pi, &chain).map_err(bad_input)?;
    let body = match args.format {
        TextJson::Text => format!(
            "consensus: {}\npossibly_optimal: {}\n",
            agreed.format(&chain),
            possible.format(&chain)
        ),
        TextJson::Json => to_json(&json!({
            "chain": chain.values(),
            "consensus": agreed.values(&chain),
            "possibly_optimal": possible.values(&chain),
        })),
    };
    Ok(Outcome::pass(body))
}

pub fn mcs_sweep(args: &McsSweepArgs) -> Result<Outcome, CliError> {
    let sweeps = vec![
        verify_consensus_monotonicity(args.n).map_err(bad_input)?,
        verify_robust_monotonicity(args.n).map_err(bad_input)?,
        verify_monotone_scf(args.n).map_err(bad_input)?,
    ];
    let ok = sweeps.iter().all(InstanceSweep::passed);
    let body = match args.format {
        TextJson::Json => to_json(&json!({ "sweeps": sweeps })),
        TextJson::Text => {
            let mut out = String::new();
            for (i, sweep) in sweeps.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&sweep_text(sweep));
            }
            out
        }
    };
    Ok(Outcome { body, ok })
}

pub fn maxmin(args: &MaxminArgs) -> Result<Outcome, CliError> {
    let s = load_act_space(&args.acts)?;
    let prefs = args
        .prefs
        .iter()
        .map(|path| load_ce_preference(path, &s))
        .collect::<Result<Vec<_>, _>>()?;
    let floor = maxmin_preference(&prefs, &s);
    let target = args.target.as_ref().map(|path| load_ce_preference(path, &s)).transpose()?;
    let subject = target.as_ref().unwrap_or(&floor);
    let represents = is_maxmin_representation(&prefs, subject, &s);
    // Independent route: the subject represents the maxmin aggregate iff it
    // is the least ambiguity-averse upper bound of the members. Scanned over
    // the canonical certainty-equivalent grid; `None` when the act space is
    // too large to enumerate.
    let unique_bound = match enumerate_ce_preferences(&s) {
        Ok(all) => {
            let subject_bounds = prefs.iter().all(|m| more_ambiguity_averse(subject, m, &s));
            Some(
                subject_bounds
                    && all
                        .iter()
                        .filter(|u| prefs.iter().all(|m| more_ambiguity_averse(u, m, &s)))
                        .all(|u| more_ambiguity_averse(u, subject, &s)),
            )
        }
        Err(_) => None,
    };
    let routes_agree = unique_bound.map_or(true, |unique| unique == represents);
    let body = match args.format {
        TextJson::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("floor".into(), ce_preference_json(&floor, &s));
            if let Some(t) = &target {
                obj.insert("target".into(), ce_preference_json(t, &s));
            }
            obj.insert("is_maxmin_representation".into(), represents.into());
            obj.insert(
                "unique_minimum_upper_bound".into(),
                unique_bound.map_or(Value::Null, Value::from),
            );
            obj.insert("routes_agree".into(), routes_agree.into());
            to_json(&Value::Object(obj))
        }
        TextJson::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "floor: {}", floor.ranking().format(s.act_names()));
            if let Some(t) = &target {
                let _ = writeln!(out, "target: {}", t.ranking().format(s.act_names()));
            }
            let _ = writeln!(out, "is_maxmin_representation: {represents}");
            let unique = match unique_bound {
                Some(b) => b.to_string(),
                None => "skipped (act space too large to enumerate)".into(),
            };
            let _ = writeln!(out, "unique_minimum_upper_bound: {unique}");
            let _ = writeln!(out, "routes_agree: {routes_agree}");
            out
        }
    };
    Ok(Outcome { body, ok: routes_agree })
}

fn ce_preference_json(pref: &CEPreference, s: &ActSpace) -> Value {
    let ce: BTreeMap<&str, f64> = s
        .act_names()
        .iter()
        .map(String::as_str)
        .zip(pref.certainty_equivalents().iter().copied())
        .collect();
    json!({ "ce": ce, "ranking": pref.ranking().format(s.act_names()) })
}

pub fn swf_check(args: &SwfCheckArgs) -> Result<Outcome, CliError> {
    let p = load_poset(&args.poset)?;
    let pi = load_profile(&args.profile, p.elements())?;
    let report = acceptability_report(&p, &[pi]).map_err(bad_input)?;
    let row = &report.profiles[0];
    let ok = match args.expect {
        None => true,
        Some(SwfExpect::Acceptable) => !row.acceptable.is_empty(),
        Some(SwfExpect::None) => row.acceptable.is_empty(),
    };
    let body = match args.format {
        TextJson::Json => to_json(&report),
        TextJson::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "class: {}", serde_tag(&report.constraint_class));
            let _ = writeln!(out, "candidates: {}", row.candidates);
            if row.acceptable.is_empty() {
                let _ = writeln!(out, "acceptable: none");
            }
            for ranking in &row.acceptable {
                let _ = writeln!(out, "acceptable: {ranking}");
            }
            if row.acceptable.is_empty() {
                if let Some(v) = &row.first_violation {
                    let _ = writeln!(
                        out,
                        "violation: `{}` fails {} on ({}, {})",
                        v.social,
                        serde_tag(&v.axiom),
                        v.favoured,
                        v.disfavoured
                    );
                }
            }
            out
        }
    };
    Ok(Outcome { body, ok })
}

pub fn swf_classify(args: &SwfClassifyArgs) -> Result<Outcome, CliError> {
    let p = load_poset(&args.poset)?;
    let verdict = exists_acceptable_swf(&p);
    let body = match args.format {
        TextJson::Json => to_json(&verdict),
        TextJson::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "exists: {}", verdict.exists);
            let _ = writeln!(out, "fork_class: {}", serde_tag(&verdict.fork_class));
            if let Some(fp) = &verdict.forbidden_subposet {
                let _ =
                    writeln!(out, "forbidden: {} ({})", serde_tag(&fp.kind), fp.witness.join(", "));
            }
            out
        }
    };
    Ok(Outcome::pass(body))
}

pub fn export_dot(args: &ExportDotArgs) -> Result<Outcome, CliError> {
    let p = load_poset(&args.poset)?;
    Ok(Outcome::pass(poset_to_dot(&p)))
}
