//! Command implementations behind the `sic` binary.
//!
//! Each command returns a [`RunReport`]; usage and input errors come back as
//! [`CommandError`] with the matching exit code.

use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactvec::rational_to_f64;
use crate::frames::{enumerate_frames, ks_colorable, shared_vector_index, ColorabilityResult};
use crate::inequality::{
    build_inequality, integer, quantum_value, random_state, QuantumState, Sign,
};
use crate::kssets::{parse_set, serialize_set, BuiltinSet, VectorSet};
use crate::report::{Outcome, RunReport};
use crate::reproduce::{self, ReproduceConfig};
use crate::symmetrizer::{
    classify as classify_scenario, generate_basis, paper_basis, PaperBasis, Scenario,
    ScenarioClass, Statistics,
};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Usage(_) => 2,
            CommandError::Failed(_) => 1,
        }
    }
}

pub fn classify(n: usize, d: usize, statistics: Statistics) -> Result<RunReport, CommandError> {
    let scenario =
        Scenario::new(n, d, statistics).map_err(|e| CommandError::Usage(e.to_string()))?;
    let dim = scenario
        .physical_dim()
        .map_err(|e| CommandError::Usage(e.to_string()))?;
    let class = classify_scenario(&scenario);
    let mut r = RunReport::new("classify");
    r.detail("n", n);
    r.detail("d", d);
    r.detail("statistics", statistics);
    r.detail("dim", dim);
    r.detail("class", class);
    let space = match statistics {
        Statistics::Bosonic => "S",
        Statistics::Fermionic => "A",
    };
    r.line(format!("{n} {statistics} qudits with d={d}"));
    r.line(format!("dim({space}) = {dim}"));
    r.line(format!(
        "class: {class}{}",
        match class {
            ScenarioClass::NoPhysicalStates => " (no physical states)",
            ScenarioClass::DimensionOne => " (single state, no contextuality)",
            ScenarioClass::SicPossible(_) => " (state-independent contextuality possible)",
        }
    ));
    Ok(r)
}

pub fn basis(
    n: usize,
    d: usize,
    statistics: Statistics,
    paper: bool,
) -> Result<RunReport, CommandError> {
    let scenario =
        Scenario::new(n, d, statistics).map_err(|e| CommandError::Usage(e.to_string()))?;
    let basis = if paper {
        match (n, d, statistics) {
            (2, 3, Statistics::Bosonic) => paper_basis(PaperBasis::BosonTwoQutrits),
            (2, 3, Statistics::Fermionic) => paper_basis(PaperBasis::FermionTwoQutrits),
            _ => {
                return Err(CommandError::Usage(
                    "--paper is only defined for two qutrits (n=2, d=3)".into(),
                ))
            }
        }
    } else {
        generate_basis(&scenario).map_err(|e| CommandError::Failed(e.to_string()))?
    };
    let orthogonal = basis.is_pairwise_orthogonal();
    let symmetric = basis.all_symmetric();
    let mut r = RunReport::new("basis");
    r.detail("n", n);
    r.detail("d", d);
    r.detail("statistics", statistics);
    r.detail("source", if paper { "paper" } else { "generated" });
    r.detail("count", basis.len());
    r.line(format!("{} basis, {} vectors", scenario, basis.len()));
    for (i, v) in basis.vectors().iter().enumerate() {
        r.detail(format!("vector.{i}"), v.render());
        r.detail(format!("normsq.{i}"), v.normsq());
        r.line(format!(
            "  [{i}] (1/√{}) ({})    amplitude {:.4}",
            v.normsq(),
            v.render(),
            1.0 / (v.normsq() as f64).sqrt()
        ));
    }
    let norms: Vec<String> = basis
        .vectors()
        .iter()
        .map(|v| v.normsq().to_string())
        .collect();
    r.detail("normsq", norms.join(","));
    r.detail("orthogonal", orthogonal);
    r.detail("symmetry", symmetric);
    r.line(format!("pairwise orthogonal: {orthogonal}"));
    r.line(format!("{statistics} symmetry: {symmetric}"));
    if !(orthogonal && symmetric) {
        r.outcome = Outcome::Fails;
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSource {
    Builtin(BuiltinSet),
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KsAction {
    Show,
    Frames,
    Color,
    Bound,
    Quantum,
}

impl std::str::FromStr for KsAction {
    type Err = CommandError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "show" => Ok(KsAction::Show),
            "frames" => Ok(KsAction::Frames),
            "color" | "colour" => Ok(KsAction::Color),
            "bound" => Ok(KsAction::Bound),
            "quantum" => Ok(KsAction::Quantum),
            other => Err(CommandError::Usage(format!(
                "unknown action {other:?} (expected show, frames, color, bound or quantum)"
            ))),
        }
    }
}

pub fn load_set_file(path: &Path) -> Result<(VectorSet, usize), CommandError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CommandError::Usage(format!("{}: {e}", path.display())))?;
    let parsed =
        parse_set(&text).map_err(|e| CommandError::Usage(format!("{}: {e}", path.display())))?;
    Ok((parsed.set, parsed.collapsed_duplicates))
}

fn require_triads(set: &VectorSet) -> Result<(), CommandError> {
    if set.dim() != 3 {
        return Err(CommandError::Usage(format!(
            "inequality construction specified only for triads; {} has dimension {}",
            set.name(),
            set.dim()
        )));
    }
    Ok(())
}

pub fn ksset(
    source: &SetSource,
    action: KsAction,
    state: Option<&[i64]>,
    seed: u64,
) -> Result<RunReport, CommandError> {
    let (set, duplicates) = match source {
        SetSource::Builtin(b) => (b.build(), 0),
        SetSource::File(path) => load_set_file(path)?,
    };
    let mut r = RunReport::new("ksset");
    r.detail("set", set.name());
    r.detail("dim", set.dim());
    r.detail("size", set.len());
    if duplicates > 0 {
        r.detail("warning.collapsed_duplicates", duplicates);
        r.line(format!("warning: {duplicates} duplicate rays collapsed"));
    }
    match action {
        KsAction::Show => {
            r.detail("action", "show");
            for (i, v) in set.members().iter().enumerate() {
                r.detail(format!("member.{}", i + 1), v);
            }
            r.body.extend(serialize_set(&set).lines().map(String::from));
        }
        KsAction::Frames => {
            r.detail("action", "frames");
            let frames = enumerate_frames(&set);
            r.detail("frames", frames.len());
            r.line(format!(
                "{}: {} vectors, {} frames",
                set.name(),
                set.len(),
                frames.len()
            ));
            for (i, f) in frames.iter().enumerate() {
                r.detail(format!("frame.{}", i + 1), f);
                r.line(format!("  {:>3}: {f}", i + 1));
            }
            r.line("shared vectors (frame numbers):");
            for (d, occ) in shared_vector_index(&frames) {
                let nums: Vec<String> = occ.iter().map(|(f, _)| (f + 1).to_string()).collect();
                r.detail(format!("shared.{d}"), nums.join(","));
                r.line(format!("  {d}: {}", nums.join(",")));
            }
        }
        KsAction::Color => {
            r.detail("action", "color");
            let frames = enumerate_frames(&set);
            let c = ks_colorable(&set, &frames).map_err(|e| CommandError::Failed(e.to_string()))?;
            for w in &c.warnings {
                r.detail("warning", w);
                r.line(format!("warning: {w}"));
            }
            r.detail("frames", frames.len());
            match c.result {
                ColorabilityResult::NotColorable { nodes_explored } => {
                    r.detail("colorable", false);
                    r.detail("nodes_explored", nodes_explored);
                    r.line(format!(
                        "{}: NotColorable over {} frames ({nodes_explored} search nodes)",
                        set.name(),
                        frames.len()
                    ));
                }
                ColorabilityResult::Colorable(w) => {
                    let ones: Vec<String> = w
                        .iter()
                        .filter(|(_, &b)| b)
                        .map(|(d, _)| d.to_string())
                        .collect();
                    r.detail("colorable", true);
                    r.detail("witness.ones", ones.join(" "));
                    r.line(format!(
                        "{}: Colorable; rays valued 1: {}",
                        set.name(),
                        ones.join(" ")
                    ));
                    r.outcome = Outcome::Fails;
                }
            }
        }
        KsAction::Bound => {
            r.detail("action", "bound");
            require_triads(&set)?;
            let ineq = build_inequality(&set).map_err(|e| CommandError::Failed(e.to_string()))?;
            let minus: Vec<String> = ineq
                .witness
                .values()
                .iter()
                .filter(|(_, &s)| s == Sign::Minus)
                .map(|(d, _)| d.to_string())
                .collect();
            r.detail("frames", ineq.frames.len());
            r.detail("noncontextual_bound", ineq.noncontextual_bound);
            r.detail("algebraic_bound", ineq.algebraic_bound);
            r.detail("quantum_value", ineq.quantum_value);
            r.detail("gap", ineq.gap());
            r.detail("witness.minus", minus.join(" "));
            r.line(format!(
                "beta({},{}) <= {}   (algebraic bound {}, quantum value {})",
                set.dim(),
                ineq.frames.len(),
                ineq.noncontextual_bound,
                ineq.algebraic_bound,
                ineq.quantum_value
            ));
            r.line(format!("witness, rays at -1: {}", minus.join(" ")));
            if !ineq.is_violated() {
                r.line("no state-independent violation");
                r.outcome = Outcome::Fails;
            }
        }
        KsAction::Quantum => {
            r.detail("action", "quantum");
            require_triads(&set)?;
            let psi = match state {
                Some(xs) => {
                    if xs.len() != 3 {
                        return Err(CommandError::Usage(format!(
                            "state needs 3 amplitudes, got {}",
                            xs.len()
                        )));
                    }
                    QuantumState::from_integers(xs)
                        .map_err(|e| CommandError::Usage(e.to_string()))?
                }
                None => {
                    r.detail("seed", seed);
                    random_state(&mut ChaCha8Rng::seed_from_u64(seed), 3)
                }
            };
            let frames = enumerate_frames(&set);
            let value =
                quantum_value(&frames, &psi).map_err(|e| CommandError::Failed(e.to_string()))?;
            r.detail("state", psi.amplitudes());
            r.detail("frames", frames.len());
            r.detail("beta_qm", &value);
            r.line(format!(
                "state {}: beta_QM = {value} (≈ {:.6}) over {} frames",
                psi.amplitudes(),
                rational_to_f64(&value),
                frames.len()
            ));
            if value != integer(frames.len() as i64) {
                r.outcome = Outcome::Fails;
            }
        }
    }
    Ok(r)
}

pub fn reproduce(seed: u64, a3_file: Option<&Path>) -> Result<RunReport, CommandError> {
    let a3 = match a3_file {
        Some(path) => load_set_file(path)?.0.with_name("A3"),
        None => crate::kssets::build_a3(),
    };
    let mut report = reproduce::reproduce(&ReproduceConfig { seed, a3 });
    if let Some(path) = a3_file {
        report.detail("a3_source", path.display());
    }
    Ok(report)
}
