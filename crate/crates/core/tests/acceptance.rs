//! Acceptance run: twelve criteria at exact tolerance, one PASS/FAIL line each.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sic_core::exactvec::{canonicalize, Direction};
use sic_core::frames::{
    enumerate_frames, enumerate_frames_naive, ks_colorable, validate_coloring, ColorabilityResult,
    Frame,
};
use sic_core::inequality::{
    algebraic_bound, classical_beta, frame_operator, noncontextual_bound,
    noncontextual_bound_exhaustive, quantum_value, random_state, QuantumState,
};
use sic_core::kssets::{build_a3, build_s4, build_s6, VectorSet};
use sic_core::reproduce::DEFAULT_SEED;
use sic_core::symmetrizer::{
    dim_antisymmetric, dim_symmetric, generate_basis, lift, paper_basis, PaperBasis, Scenario,
    Statistics,
};

type Verdict = Result<String, String>;

/// The seventeen triads as printed, in printed order.
const PRINTED_TRIADS: [[[i64; 3]; 3]; 17] = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [0, 1, 1], [0, 1, -1]],
    [[1, 0, 1], [0, 1, 0], [-1, 0, 1]],
    [[1, 1, 0], [1, -1, 0], [0, 0, 1]],
    [[1, 0, 0], [0, 1, 2], [0, -2, 1]],
    [[1, 0, 0], [0, 1, -2], [0, 2, 1]],
    [[1, 0, 2], [0, 1, 0], [-2, 0, 1]],
    [[1, 0, -2], [0, 1, 0], [2, 0, 1]],
    [[1, 2, 0], [-2, 1, 0], [0, 0, 1]],
    [[1, 1, 1], [1, -1, 0], [1, 1, -2]],
    [[1, 1, 1], [0, 1, -1], [-2, 1, 1]],
    [[1, 1, -1], [0, 1, 1], [2, -1, 1]],
    [[1, -1, 1], [1, 1, 0], [-1, 1, 2]],
    [[-1, 1, 1], [1, 0, 1], [1, 2, -1]],
    [[-1, 1, 1], [1, 1, 0], [1, -1, 2]],
    [[1, 1, -1], [1, -1, 0], [1, 1, 2]],
    [[1, -1, 1], [-1, 0, 1], [1, 2, 1]],
];

/// Unordered triad as a sorted list of primitive, sign-normalised rays.
fn ray_triad(t: &[[i64; 3]; 3]) -> Vec<Vec<i64>> {
    let mut rays: Vec<Vec<i64>> = t.iter().map(|v| primitive(v)).collect();
    rays.sort();
    rays
}

fn primitive(v: &[i64]) -> Vec<i64> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    let sign = if v.iter().find(|&&x| x != 0).copied().unwrap_or(1) < 0 {
        -1
    } else {
        1
    };
    v.iter().map(|x| sign * x / g).collect()
}

fn frame_rays(f: &Frame) -> Vec<Vec<i64>> {
    let mut rays: Vec<Vec<i64>> = f
        .members()
        .iter()
        .map(|d| d.components().to_vec())
        .collect();
    rays.sort();
    rays
}

fn pascal(rows: usize) -> Vec<Vec<u128>> {
    let mut t = vec![vec![1u128]];
    for n in 1..=rows {
        let prev = &t[n - 1];
        let mut row = vec![1u128; n + 1];
        for k in 1..n {
            row[k] = prev[k - 1] + prev[k];
        }
        t.push(row);
    }
    t
}

/// Counts non-decreasing (bosonic) or strictly increasing (fermionic)
/// level sequences of length `n` over `d` levels.
fn count_sequences(n: usize, d: usize, strict: bool) -> u128 {
    fn go(left: usize, from: usize, d: usize, strict: bool) -> u128 {
        if left == 0 {
            return 1;
        }
        (from..d)
            .map(|l| go(left - 1, if strict { l + 1 } else { l }, d, strict))
            .sum()
    }
    go(n, 0, d, strict)
}

fn criterion_1() -> Verdict {
    let mut bad = Vec::new();
    if dim_symmetric(2, 3) != Ok(6) {
        bad.push(format!("dim S(2,3) = {:?}", dim_symmetric(2, 3)));
    }
    if dim_antisymmetric(2, 3) != Ok(3) {
        bad.push(format!("dim A(2,3) = {:?}", dim_antisymmetric(2, 3)));
    }
    if count_sequences(2, 3, false) != 6 || count_sequences(2, 3, true) != 3 {
        bad.push("sequence count oracle disagrees at (2,3)".into());
    }
    for d in 2..=8 {
        if dim_antisymmetric(d, d) != Ok(1) || count_sequences(d, d, true) != 1 {
            bad.push(format!("dim A({d},{d}) = {:?}", dim_antisymmetric(d, d)));
        }
    }
    for n in 2..=5 {
        for d in 2..=5 {
            if dim_symmetric(n, d) != Ok(count_sequences(n, d, false))
                || dim_antisymmetric(n, d) != Ok(count_sequences(n, d, true))
            {
                bad.push(format!(
                    "dimension formula disagrees with counting at ({n},{d})"
                ));
            }
        }
    }
    if bad.is_empty() {
        Ok("dim S(2,3)=6, dim A(2,3)=3, dim A(d,d)=1 for d=2..8".into())
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_2() -> Verdict {
    let c = pascal(40);
    let mut bad = Vec::new();
    for n in 2..=20 {
        for d in 2..=20 {
            let sym = c[d + n - 1][n];
            let anti = if n <= d { c[d][n] } else { 0 };
            if dim_symmetric(n, d) != Ok(sym) || dim_antisymmetric(n, d) != Ok(anti) {
                bad.push(format!("library disagrees with Pascal table at ({n},{d})"));
            }
            if sym == 2 || anti == 2 {
                bad.push(format!("dimension 2 at n={n} d={d}"));
            }
        }
    }
    if bad.is_empty() {
        Ok("361 scenarios, none of dimension 2".into())
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_3() -> Verdict {
    let boson = paper_basis(PaperBasis::BosonTwoQutrits);
    let fermion = paper_basis(PaperBasis::FermionTwoQutrits);
    let mut bad = Vec::new();
    for (name, b, st) in [
        ("boson", &boson, Statistics::Bosonic),
        ("fermion", &fermion, Statistics::Fermionic),
    ] {
        let vs = b.vectors();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if vs[i].inner(&vs[j]) != 0 {
                    bad.push(format!("{name} vectors {i},{j} not orthogonal"));
                }
            }
            // swap the two particles by hand
            for (idx, &c) in vs[i].coefficients() {
                let l = idx.levels();
                let swapped = vs[i].coefficient(&[l[1], l[0]]);
                let want = if st == Statistics::Bosonic { c } else { -c };
                if swapped != want {
                    bad.push(format!("{name} vector {i} fails the exchange test"));
                }
            }
        }
        if !b.all_symmetric() {
            bad.push(format!("{name} basis fails verify_symmetry"));
        }
    }
    let slater = generate_basis(&Scenario::new(2, 3, Statistics::Fermionic).unwrap())
        .map_err(|e| e.to_string())?;
    if !slater.matches_up_to_sign_and_order(&fermion) {
        bad.push("Slater basis differs from the printed fermion basis".into());
    }
    if bad.is_empty() {
        Ok(format!(
            "{} symmetric and {} antisymmetric vectors",
            boson.len(),
            fermion.len()
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_4() -> Verdict {
    let (a3, s4, s6) = (build_a3(), build_s4(), build_s6());
    let mut bad = Vec::new();
    for (name, got, want) in [
        ("A3", a3.len(), 31),
        ("S4", s4.len(), 18),
        ("S6", s6.len(), 31),
    ] {
        if got != want {
            bad.push(format!("|{name}| = {got}"));
        }
    }
    let left: BTreeSet<Vec<i64>> = s4
        .members()
        .iter()
        .map(|v| {
            let mut x = v.components().to_vec();
            x.extend([0, 0]);
            x
        })
        .collect();
    let right: BTreeSet<Vec<i64>> = s4
        .members()
        .iter()
        .map(|v| {
            let mut x = vec![0, 0];
            x.extend(v.components());
            x
        })
        .collect();
    let overlap: BTreeSet<Vec<i64>> = left.intersection(&right).cloned().collect();
    let expected: BTreeSet<Vec<i64>> = [vec![0, 0, 1, 0, 0, 0], vec![0, 0, 1, 1, 0, 0]].into();
    if overlap != expected {
        bad.push(format!("overlap {overlap:?}"));
    }
    let added: [[i64; 6]; 3] = [[0, 1, 0, 0, 0, 0], [1, 0, -1, 0, 0, 0], [1, 1, 1, 1, 0, 0]];
    let mut union: BTreeSet<Vec<i64>> = left.union(&right).cloned().collect();
    union.extend(added.iter().map(|a| primitive(a)));
    let removed: Vec<Vec<i64>> = union
        .iter()
        .filter(|v| !s6.contains_raw(v))
        .cloned()
        .collect();
    let total = left.len() + right.len() - overlap.len() + added.len() - removed.len();
    if total != 31 || removed.len() != 6 || union.len() != 37 {
        bad.push(format!(
            "bookkeeping {}+{}-{}+{}-{} = {total}",
            left.len(),
            right.len(),
            overlap.len(),
            added.len(),
            removed.len()
        ));
    }
    if bad.is_empty() {
        Ok(format!("|A3|=31 |S4|=18 |S6|=31, 18+18-2+3-6={total}"))
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_5(frames: &[Frame]) -> Verdict {
    let printed: BTreeSet<Vec<Vec<i64>>> = PRINTED_TRIADS.iter().map(ray_triad).collect();
    let found: BTreeSet<Vec<Vec<i64>>> = frames.iter().map(frame_rays).collect();
    let surplus = found.difference(&printed).count();
    let deficit = printed.difference(&found).count();
    if printed.len() == 17 && found.len() == 17 && frames.len() == 17 && surplus + deficit == 0 {
        Ok("17 enumerated triads equal the 17 printed triads".into())
    } else {
        Err(format!(
            "{} enumerated, surplus {surplus}, deficit {deficit}",
            frames.len()
        ))
    }
}

fn criterion_6(frames: &[Frame]) -> Verdict {
    // number enumerated frames by their printed position, then look the rays up
    let mut in_frames: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (j, t) in PRINTED_TRIADS.iter().enumerate() {
        let rays = ray_triad(t);
        if !frames.iter().any(|f| frame_rays(f) == rays) {
            return Err(format!("printed triad {} not enumerated", j + 1));
        }
        for r in rays {
            in_frames.entry(r).or_default().push(j + 1);
        }
    }
    let index = sic_core::frames::shared_vector_index(frames);
    let lib_count = |raw: &[i64]| {
        index
            .get(&canonicalize(raw).unwrap())
            .map_or(0, |occ| occ.len())
    };
    let a = in_frames.get(&vec![1, 0, 0]).cloned().unwrap_or_default();
    let b = in_frames.get(&vec![0, 1, -1]).cloned().unwrap_or_default();
    if a == [1, 2, 5, 6]
        && b == [2, 11]
        && lib_count(&[1, 0, 0]) == 4
        && lib_count(&[0, 1, -1]) == 2
    {
        Ok("(1,0,0) in {1,2,5,6}; (0,1,-1) in {2,11}".into())
    } else {
        Err(format!("(1,0,0) in {a:?}; (0,1,-1) in {b:?}"))
    }
}

fn criterion_7(a3: &VectorSet, a3_frames: &[Frame]) -> Verdict {
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    let s4 = build_s4();
    let s6 = build_s6();
    let s4_frames = enumerate_frames(&s4);
    let s6_frames = enumerate_frames(&s6);
    let s6_naive = enumerate_frames_naive(&s6);
    if s4_frames.len() != 9 {
        bad.push(format!("S4 has {} tetrads", s4_frames.len()));
    }
    if s6_frames != s6_naive {
        bad.push(format!(
            "S6 hexads: clique search {}, subset scan {}",
            s6_frames.len(),
            s6_naive.len()
        ));
    }
    for (name, set, frames) in [
        ("S4", &s4, &s4_frames),
        ("A3", a3, &a3_frames.to_vec()),
        ("S6", &s6, &s6_frames),
    ] {
        match ks_colorable(set, frames).map(|c| c.result) {
            Ok(ColorabilityResult::NotColorable { .. }) => {
                notes.push(format!("{name} ({} frames) not colourable", frames.len()))
            }
            other => bad.push(format!("{name}: {other:?}")),
        }
    }
    let toy = VectorSet::from_raw(
        "toy",
        3,
        [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1], [0, 1, -1]],
    )
    .unwrap();
    let toy_frames = enumerate_frames(&toy);
    match ks_colorable(&toy, &toy_frames).map(|c| c.result) {
        Ok(ColorabilityResult::Colorable(w)) => {
            // re-validate by hand as well as through the library
            let ones: Vec<&Direction> = w.iter().filter(|(_, &v)| v).map(|(d, _)| d).collect();
            let per_frame = toy_frames
                .iter()
                .all(|f| f.members().iter().filter(|m| ones.contains(m)).count() == 1);
            let exclusive = ones.iter().enumerate().all(|(i, u)| {
                ones[i + 1..].iter().all(|v| {
                    u.components()
                        .iter()
                        .zip(v.components())
                        .map(|(a, b)| a * b)
                        .sum::<i64>()
                        != 0
                })
            });
            if !(per_frame && exclusive && validate_coloring(&toy, &toy_frames, &w)) {
                bad.push("toy witness does not re-validate".into());
            }
        }
        other => bad.push(format!("toy set: {other:?}")),
    }
    notes.push(format!("S6 hexads agree ({})", s6_frames.len()));
    if bad.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_8(frames: &[Frame]) -> Verdict {
    let mut bad = Vec::new();
    let b = noncontextual_bound(frames).map_err(|e| e.to_string())?;
    if b.value != 15 {
        bad.push(format!("noncontextual bound {} (expected 15)", b.value));
    }
    if classical_beta(&b.witness, frames) != Ok(b.value) {
        bad.push("witness does not re-evaluate to the bound".into());
    }
    if algebraic_bound(frames) != 17 {
        bad.push(format!("algebraic bound {}", algebraic_bound(frames)));
    }
    // every sub-collection with at most 20 distinct directions
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    for subset in 1u32..1 << frames.len() {
        let picked: Vec<Frame> = (0..frames.len())
            .filter(|&i| subset >> i & 1 == 1)
            .map(|i| frames[i].clone())
            .collect();
        let dirs: BTreeSet<&Direction> = picked.iter().flat_map(|f| f.members()).collect();
        if dirs.len() > 20 {
            continue;
        }
        let fast = noncontextual_bound(&picked)
            .map_err(|e| e.to_string())?
            .value;
        let full = noncontextual_bound_exhaustive(&picked).map_err(|e| e.to_string())?;
        if fast != full {
            mismatches += 1;
        }
        checked += 1;
    }
    if mismatches > 0 {
        bad.push(format!("{mismatches} sub-collections disagree"));
    }
    let detail = format!(
        "noncontextual {} algebraic {}; {checked} sub-collections, {mismatches} disagreements",
        b.value,
        algebraic_bound(frames)
    );
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", bad.join("; ")))
    }
}

type Mat = [[BigRational; 3]; 3];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(BigRational::zero(), |s, k| s + &a[i][k] * &b[k][j]))
    })
}

fn mat_add(a: &Mat, b: &Mat) -> Mat {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] + &b[i][j]))
}

fn identity() -> Mat {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    })
}

fn reflection(v: &[i64; 3]) -> Mat {
    let n: i64 = v.iter().map(|x| x * x).sum();
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let delta = if i == j { 1 } else { 0 };
            BigRational::new(BigInt::from(delta * n - 2 * v[i] * v[j]), BigInt::from(n))
        })
    })
}

/// `-(I + A1A2 + A2A3 + A3A1 + A1A2A3)` with its own 3x3 arithmetic.
fn frame_term(t: &[[i64; 3]; 3]) -> Mat {
    let [a1, a2, a3] = [reflection(&t[0]), reflection(&t[1]), reflection(&t[2])];
    let sum = [
        identity(),
        mat_mul(&a1, &a2),
        mat_mul(&a2, &a3),
        mat_mul(&a3, &a1),
        mat_mul(&mat_mul(&a1, &a2), &a3),
    ]
    .iter()
    .fold(
        std::array::from_fn(|_| std::array::from_fn(|_| BigRational::zero())),
        |s: Mat, m| mat_add(&s, m),
    );
    std::array::from_fn(|i| std::array::from_fn(|j| -sum[i][j].clone()))
}

fn criterion_9(frames: &[Frame]) -> Verdict {
    let mut bad = Vec::new();
    for (j, t) in PRINTED_TRIADS.iter().enumerate() {
        if frame_term(t) != identity() {
            bad.push(format!("oracle: frame {} is not the identity", j + 1));
        }
    }
    for f in frames {
        match frame_operator(f) {
            Ok(m) if m == sic_core::exactvec::RationalMatrix::identity(3) => {}
            Ok(_) => bad.push(format!("{f} is not the identity")),
            Err(e) => bad.push(format!("{f}: {e}")),
        }
    }
    if bad.is_empty() && frames.len() == 17 {
        Ok("17 frame operators equal I exactly".into())
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_10(frames: &[Frame]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut states: Vec<QuantumState> = (0..100).map(|_| random_state(&mut rng, 3)).collect();
    for e in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
        states.push(QuantumState::from_integers(&e).unwrap());
    }
    let seventeen = BigRational::from_integer(BigInt::from(17));
    let total = PRINTED_TRIADS.iter().map(frame_term).fold(
        std::array::from_fn(|_| std::array::from_fn(|_| BigRational::zero())),
        |s: Mat, m| mat_add(&s, &m),
    );
    let mut bad = 0;
    for psi in &states {
        let a = psi.amplitudes().entries();
        let num = (0..3).fold(BigRational::zero(), |s, i| {
            (0..3).fold(s, |s, j| s + &a[i] * &total[i][j] * &a[j])
        });
        let den = (0..3).fold(BigRational::zero(), |s, i| s + &a[i] * &a[i]);
        let oracle = num / den;
        if quantum_value(frames, psi).as_ref() != Ok(&seventeen) || oracle != seventeen {
            bad += 1;
        }
    }
    if bad == 0 {
        Ok(format!(
            "beta_QM = 17 for {} states (seed {DEFAULT_SEED})",
            states.len()
        ))
    } else {
        Err(format!("{bad} states give a value other than 17"))
    }
}

fn criterion_11() -> Verdict {
    let mut bad = Vec::new();
    let cases = [
        (
            build_a3(),
            paper_basis(PaperBasis::FermionTwoQutrits),
            Statistics::Fermionic,
        ),
        (
            build_s6(),
            paper_basis(PaperBasis::BosonTwoQutrits),
            Statistics::Bosonic,
        ),
    ];
    for (set, basis, st) in &cases {
        for v in set.members() {
            match lift(v, basis) {
                Ok(l) if l.verify_symmetry(*st) => {}
                Ok(_) => bad.push(format!("{v} lifted is not {st}")),
                Err(e) => bad.push(format!("{v}: {e}")),
            }
        }
    }
    if bad.is_empty() {
        Ok("31 antisymmetric and 31 symmetric lifts".into())
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_12() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_sic");
    let fixture = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/a3_tampered.txt"
    );
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .output()
            .map_err(|e| e.to_string())
    };
    let good = run(&["reproduce"])?;
    let tampered = run(&["reproduce", "--a3-file", fixture])?;
    let (g, t) = (good.status.code(), tampered.status.code());
    let failing: Vec<String> = String::from_utf8_lossy(&good.stdout)
        .lines()
        .filter(|l| l.starts_with("[FAIL]"))
        .map(|l| l.split_whitespace().take(4).collect::<Vec<_>>().join(" "))
        .collect();
    let detail = format!("reproduce exit {g:?}, negative control exit {t:?}");
    if g == Some(0) && t == Some(1) {
        Ok(detail)
    } else {
        Err(format!("{detail}; failing checks: {}", failing.join(", ")))
    }
}

fn main() -> ExitCode {
    let a3 = build_a3();
    let frames = enumerate_frames(&a3);
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("dimensions", Box::new(criterion_1)),
        ("no dimension-2 subspace", Box::new(criterion_2)),
        ("paper bases", Box::new(criterion_3)),
        ("set counts", Box::new(criterion_4)),
        ("frame enumeration", Box::new(|| criterion_5(&frames))),
        ("shared-vector index", Box::new(|| criterion_6(&frames))),
        (
            "KS non-colourability",
            Box::new(|| criterion_7(&a3, &frames)),
        ),
        ("bounds", Box::new(|| criterion_8(&frames))),
        ("operator identity", Box::new(|| criterion_9(&frames))),
        ("state independence", Box::new(|| criterion_10(&frames))),
        ("lifting symmetry", Box::new(criterion_11)),
        ("end-to-end", Box::new(criterion_12)),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {title}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {detail} ({secs:.1}s)", i + 1)
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
