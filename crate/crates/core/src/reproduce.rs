//! The end-to-end verification pipeline: eleven numbered checks covering
//! dimensions, bases, the three KS sets, their frames, colourability, the
//! triad inequality and its quantum value.
//!
//! The A3 set is injectable so a tampered copy can serve as a negative
//! control; everything else is rebuilt from the library.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactvec::{canonicalize, Direction, RationalMatrix};
use crate::frames::{
    enumerate_frames, enumerate_frames_naive, ks_colorable, shared_vector_index, validate_coloring,
    ColorabilityResult, Frame,
};
use crate::inequality::{
    algebraic_bound, classical_beta, frame_operator, integer, noncontextual_bound,
    noncontextual_bound_exhaustive, quantum_value, random_state, QuantumState,
};
use crate::kssets::{
    build_a3, build_s4, build_s6, s6_construction, VectorSet, A3_LISTED_FRAMES, A3_SIZE, S4_SIZE,
    S6_SIZE,
};
use crate::report::{Outcome, RunReport};
use crate::symmetrizer::{
    dim_antisymmetric, dim_symmetric, find_dim_two, generate_basis, lift, paper_basis, PaperBasis,
    Scenario, Statistics,
};

pub const DEFAULT_SEED: u64 = 7;

/// Sub-collections of frames up to this many distinct directions are
/// cross-checked by full enumeration.
pub const SWEEP_MAX_DIRECTIONS: usize = 20;

#[derive(Debug, Clone)]
pub struct ReproduceConfig {
    pub seed: u64,
    pub a3: VectorSet,
}

impl Default for ReproduceConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            a3: build_a3(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(id: u8, title: &'static str, failures: Vec<String>, ok_detail: String) -> CheckOutcome {
    CheckOutcome {
        id,
        title,
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            ok_detail
        } else {
            failures.join("; ")
        },
    }
}

fn check_dimensions() -> CheckOutcome {
    let mut failures = Vec::new();
    if dim_symmetric(2, 3) != Ok(6) {
        failures.push(format!("dim S(2,3) = {:?}", dim_symmetric(2, 3)));
    }
    if dim_antisymmetric(2, 3) != Ok(3) {
        failures.push(format!("dim A(2,3) = {:?}", dim_antisymmetric(2, 3)));
    }
    for d in 2..=8 {
        if dim_antisymmetric(d, d) != Ok(1) {
            failures.push(format!("dim A({d},{d}) = {:?}", dim_antisymmetric(d, d)));
        }
    }
    outcome(
        1,
        "subspace dimensions",
        failures,
        "dim S=6, dim A=3, dim A(d,d)=1 for d=2..8".into(),
    )
}

fn check_no_dim_two() -> CheckOutcome {
    let failures = find_dim_two(20, 20)
        .map(|s| vec![format!("two-dimensional subspace at {s}")])
        .unwrap_or_default();
    outcome(
        2,
        "no subspace of dimension 2",
        failures,
        "scanned 2<=n,d<=20".into(),
    )
}

fn check_bases() -> CheckOutcome {
    let mut failures = Vec::new();
    for (name, b) in [
        ("boson", paper_basis(PaperBasis::BosonTwoQutrits)),
        ("fermion", paper_basis(PaperBasis::FermionTwoQutrits)),
    ] {
        if !b.is_pairwise_orthogonal() {
            failures.push(format!("{name} basis not orthogonal"));
        }
        if !b.all_symmetric() {
            failures.push(format!("{name} basis fails the symmetry test"));
        }
    }
    let scenario = Scenario::new(2, 3, Statistics::Fermionic).expect("valid");
    match generate_basis(&scenario) {
        Ok(g) if g.matches_up_to_sign_and_order(&paper_basis(PaperBasis::FermionTwoQutrits)) => {}
        Ok(_) => failures.push("Slater basis differs from the printed fermion basis".into()),
        Err(e) => failures.push(format!("Slater basis: {e}")),
    }
    outcome(
        3,
        "explicit qutrit bases",
        failures,
        "6 symmetric + 3 antisymmetric vectors verified".into(),
    )
}

fn check_counts(a3: &VectorSet) -> CheckOutcome {
    let mut failures = Vec::new();
    let (s4, s6) = (build_s4(), build_s6());
    for (name, got, want) in [
        ("A3", a3.len(), A3_SIZE),
        ("S4", s4.len(), S4_SIZE),
        ("S6", s6.len(), S6_SIZE),
    ] {
        if got != want {
            failures.push(format!("|{name}| = {got}, expected {want}"));
        }
    }
    // independent overlap: compare padded component vectors directly
    let left: BTreeSet<Vec<i64>> = s4
        .members()
        .iter()
        .map(|a| [a.components(), &[0, 0]].concat())
        .collect();
    let right: BTreeSet<Vec<i64>> = s4
        .members()
        .iter()
        .map(|a| [&[0, 0], a.components()].concat())
        .collect();
    let overlap: Vec<&Vec<i64>> = left.intersection(&right).collect();
    let expected_overlap = [vec![0, 0, 1, 0, 0, 0], vec![0, 0, 1, 1, 0, 0]];
    if overlap.len() != 2 || !expected_overlap.iter().all(|v| overlap.contains(&v)) {
        failures.push(format!("S6 overlap {overlap:?}"));
    }
    let c = s6_construction();
    let added = c.parts[2].len();
    let closed = left.len() + right.len() - overlap.len() + added - c.removed.len();
    if closed != S6_SIZE || c.pre_removal.len() != left.len() + right.len() - overlap.len() + added
    {
        failures.push(format!("S6 bookkeeping closes at {closed}"));
    }
    if !c.removals_exact() {
        failures.push("an S6 removal is absent before removal".into());
    }
    outcome(
        4,
        "set sizes",
        failures,
        format!(
            "|A3|={} |S4|={} |S6|={} (S6: {}+{}-{}+{}-{})",
            a3.len(),
            s4.len(),
            s6.len(),
            left.len(),
            right.len(),
            overlap.len(),
            added,
            c.removed.len()
        ),
    )
}

fn listed_frames() -> Vec<Frame> {
    A3_LISTED_FRAMES
        .iter()
        .map(|f| {
            Frame::new(
                f.iter()
                    .map(|v| canonicalize(v).expect("nonzero"))
                    .collect(),
            )
            .expect("printed frames are orthogonal")
        })
        .collect()
}

fn check_frames(frames: &[Frame]) -> CheckOutcome {
    let listed: BTreeSet<Frame> = listed_frames().into_iter().collect();
    let found: BTreeSet<Frame> = frames.iter().cloned().collect();
    let surplus: Vec<String> = found.difference(&listed).map(|f| f.to_string()).collect();
    let missing: Vec<String> = listed.difference(&found).map(|f| f.to_string()).collect();
    let mut failures = Vec::new();
    if !surplus.is_empty() {
        failures.push(format!("surplus frames {}", surplus.join(" ")));
    }
    if !missing.is_empty() {
        failures.push(format!("missing frames {}", missing.join(" ")));
    }
    if frames.len() != 17 {
        failures.push(format!("{} frames", frames.len()));
    }
    outcome(
        5,
        "A3 frame enumeration",
        failures,
        "exactly the 17 listed triads".into(),
    )
}

fn check_shared_index(frames: &[Frame]) -> CheckOutcome {
    // number the enumerated frames by their position in the printed list
    let listed = listed_frames();
    let numbered: Vec<Frame> = listed
        .iter()
        .filter(|f| frames.contains(f))
        .cloned()
        .collect();
    let mut failures = Vec::new();
    if numbered.len() != listed.len() {
        failures.push("cannot number frames: enumeration differs from the printed list".into());
    }
    let index = shared_vector_index(&numbered);
    let frame_numbers = |raw: &[i64]| -> Vec<usize> {
        let d = canonicalize(raw).expect("nonzero");
        index
            .get(&d)
            .map(|occ| {
                occ.iter()
                    .map(|&(f, _)| {
                        listed
                            .iter()
                            .position(|a| *a == numbered[f])
                            .expect("numbered")
                            + 1
                    })
                    .collect()
            })
            .unwrap_or_default()
    };
    let a = frame_numbers(&[1, 0, 0]);
    let b = frame_numbers(&[0, 1, -1]);
    if a != [1, 2, 5, 6] {
        failures.push(format!("(1,0,0) in frames {a:?}"));
    }
    if b != [2, 11] {
        failures.push(format!("(0,1,-1) in frames {b:?}"));
    }
    outcome(
        6,
        "shared-vector identifications",
        failures,
        "(1,0,0) in {1,2,5,6}; (0,1,-1) in {2,11}".into(),
    )
}

fn check_colorability(a3: &VectorSet, a3_frames: &[Frame]) -> CheckOutcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let s4 = build_s4();
    let s6 = build_s6();
    let s6_frames = enumerate_frames(&s6);
    let s6_naive = enumerate_frames_naive(&s6);
    if s6_frames != s6_naive {
        failures.push(format!(
            "S6 clique search found {} hexads, subset scan {}",
            s6_frames.len(),
            s6_naive.len()
        ));
    }
    let s4_frames = enumerate_frames(&s4);
    if s4_frames.len() != 9 {
        failures.push(format!("S4 has {} tetrads", s4_frames.len()));
    }
    for (name, set, frames) in [
        ("S4", &s4, &s4_frames),
        ("A3", a3, &a3_frames.to_vec()),
        ("S6", &s6, &s6_frames),
    ] {
        match ks_colorable(set, frames).map(|c| c.result) {
            Ok(ColorabilityResult::NotColorable { nodes_explored }) => notes.push(format!(
                "{name}: {} frames, not colourable ({nodes_explored} nodes)",
                frames.len()
            )),
            Ok(ColorabilityResult::Colorable(_)) => failures.push(format!("{name} is colourable")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let toy = VectorSet::from_raw(
        "toy",
        3,
        [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1], [0, 1, -1]],
    )
    .expect("nonzero");
    let toy_frames = enumerate_frames(&toy);
    match ks_colorable(&toy, &toy_frames).map(|c| c.result) {
        Ok(ColorabilityResult::Colorable(w)) if validate_coloring(&toy, &toy_frames, &w) => {}
        other => failures.push(format!("toy set: {other:?}")),
    }
    notes.push(format!("S6 hexads agree ({})", s6_frames.len()));
    outcome(7, "KS non-colourability", failures, notes.join("; "))
}

/// Runs branch and bound against full enumeration on every sub-collection of
/// `frames` with at most `max_directions` distinct directions.
/// Returns `(collections checked, mismatch descriptions)`.
pub fn sweep_subcollections(
    frames: &[Frame],
    max_directions: usize,
) -> Result<(u64, Vec<String>), String> {
    if frames.len() > 24 {
        return Err(format!("{} frames is too many to sweep", frames.len()));
    }
    let dirs: Vec<Direction> = frames
        .iter()
        .flat_map(|f| f.members().iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if dirs.len() > 128 {
        return Err(format!("{} directions is too many to sweep", dirs.len()));
    }
    let masks: Vec<u128> = frames
        .iter()
        .map(|f| {
            f.members()
                .iter()
                .map(|d| 1u128 << dirs.binary_search(d).expect("collected"))
                .fold(0, |a, b| a | b)
        })
        .collect();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for subset in 1u32..1 << frames.len() {
        let covered = (0..frames.len())
            .filter(|&i| subset >> i & 1 == 1)
            .fold(0u128, |acc, i| acc | masks[i]);
        if covered.count_ones() as usize > max_directions {
            continue;
        }
        let picked: Vec<Frame> = (0..frames.len())
            .filter(|&i| subset >> i & 1 == 1)
            .map(|i| frames[i].clone())
            .collect();
        let fast = noncontextual_bound(&picked)
            .map_err(|e| e.to_string())?
            .value;
        let full = noncontextual_bound_exhaustive(&picked).map_err(|e| e.to_string())?;
        if fast != full {
            mismatches.push(format!(
                "frames {subset:#x}: branch and bound {fast}, enumeration {full}"
            ));
        }
        checked += 1;
    }
    Ok((checked, mismatches))
}

fn check_bounds(frames: &[Frame]) -> CheckOutcome {
    let mut failures = Vec::new();
    let mut detail = String::new();
    match noncontextual_bound(frames) {
        Ok(b) => {
            if b.value != 15 {
                failures.push(format!("noncontextual bound {} (expected 15)", b.value));
            }
            match classical_beta(&b.witness, frames) {
                Ok(v) if v == b.value => {}
                other => failures.push(format!("witness re-evaluates to {other:?}")),
            }
            detail = format!(
                "noncontextual {} algebraic {}",
                b.value,
                algebraic_bound(frames)
            );
        }
        Err(e) => failures.push(e.to_string()),
    }
    if algebraic_bound(frames) != 17 {
        failures.push(format!("algebraic bound {}", algebraic_bound(frames)));
    }
    match sweep_subcollections(frames, SWEEP_MAX_DIRECTIONS) {
        Ok((checked, mismatches)) => {
            failures.extend(mismatches.into_iter().take(5));
            detail.push_str(&format!(
                "; {checked} sub-collections agree with full enumeration"
            ));
        }
        Err(e) => failures.push(e),
    }
    if !failures.is_empty() {
        failures.push(detail.clone());
    }
    outcome(8, "noncontextual bound", failures, detail)
}

fn check_operators(frames: &[Frame]) -> CheckOutcome {
    let identity = RationalMatrix::identity(3);
    let failures: Vec<String> = frames
        .iter()
        .filter_map(|f| match frame_operator(f) {
            Ok(b) if b == identity => None,
            Ok(_) => Some(format!("B for {f} is not the identity")),
            Err(e) => Some(format!("{f}: {e}")),
        })
        .collect();
    outcome(
        9,
        "frame operators equal the identity",
        failures,
        format!("{} frames", frames.len()),
    )
}

fn check_state_independence(frames: &[Frame], seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut states: Vec<QuantumState> = (0..100).map(|_| random_state(&mut rng, 3)).collect();
    for e in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
        states.push(QuantumState::from_integers(&e).expect("nonzero"));
    }
    let target = integer(17);
    let failures: Vec<String> = states
        .iter()
        .filter_map(|psi| match quantum_value(frames, psi) {
            Ok(v) if v == target => None,
            Ok(v) => Some(format!("state {} gives {v}", psi.amplitudes())),
            Err(e) => Some(e.to_string()),
        })
        .take(5)
        .collect();
    outcome(
        10,
        "state-independent quantum value",
        failures,
        format!("beta_QM = 17 for 100 random states (seed {seed}) and 3 basis states"),
    )
}

fn check_lifting(a3: &VectorSet) -> CheckOutcome {
    let mut failures = Vec::new();
    let cases = [
        (
            a3.clone(),
            paper_basis(PaperBasis::FermionTwoQutrits),
            Statistics::Fermionic,
        ),
        (
            build_s6(),
            paper_basis(PaperBasis::BosonTwoQutrits),
            Statistics::Bosonic,
        ),
    ];
    for (set, basis, statistics) in &cases {
        for v in set.members() {
            match lift(v, basis) {
                Ok(l) if l.verify_symmetry(*statistics) => {}
                Ok(_) => failures.push(format!("{v} lifted is not {statistics}")),
                Err(e) => failures.push(format!("{v}: {e}")),
            }
        }
    }
    outcome(
        11,
        "lifted vectors are (anti)symmetric",
        failures,
        format!(
            "{} antisymmetric + {} symmetric vectors",
            cases[0].0.len(),
            cases[1].0.len()
        ),
    )
}

pub fn run_checks(config: &ReproduceConfig) -> Vec<CheckOutcome> {
    let a3 = &config.a3;
    let frames = if a3.dim() == 3 {
        enumerate_frames(a3)
    } else {
        Vec::new()
    };
    vec![
        check_dimensions(),
        check_no_dim_two(),
        check_bases(),
        check_counts(a3),
        check_frames(&frames),
        check_shared_index(&frames),
        check_colorability(a3, &frames),
        check_bounds(&frames),
        check_operators(&frames),
        check_state_independence(&frames, config.seed),
        check_lifting(a3),
    ]
}

/// Runs every check and folds the results into a report.
pub fn reproduce(config: &ReproduceConfig) -> RunReport {
    let start = Instant::now();
    let checks = run_checks(config);
    let mut report = RunReport::new("reproduce");
    report.detail("seed", config.seed);
    report.line(format!("seed: {}", config.seed));
    for c in &checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        report.line(format!(
            "[{verdict}] {:>2}. {:<36} {}",
            c.id, c.title, c.detail
        ));
        report.detail(format!("check.{}", c.id), verdict.to_lowercase());
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    report.detail("passed", passed);
    report.detail("total", checks.len());
    report.line(format!("{passed}/{} checks passed", checks.len()));
    report.outcome = if passed == checks.len() {
        Outcome::Holds
    } else {
        Outcome::Fails
    };
    report.elapsed = start.elapsed();
    report
}
