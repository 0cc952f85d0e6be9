//! Identical-particle state spaces: permutation action on n-qudit product
//! kets, symmetric/antisymmetric subspace bases and scenario classification.
//!
//! Levels are integers in `0..d`. For qutrits the rendering uses the symbols
//! `+`, `0`, `-` for levels 0, 1, 2.
//!
//! Fermionic scenarios with odd `d` are accepted: they describe an effective
//! antisymmetric space (for example spatial modes with a symmetric spin
//! state), not spinless fermions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactvec::Direction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("particle count and level count must be positive (n={n}, d={d})")]
    NonPositive { n: usize, d: usize },
    #[error("a scenario needs n >= 2 and d >= 2 (n={n}, d={d})")]
    InvalidScenario { n: usize, d: usize },
    #[error("empty subspace")]
    EmptySubspace,
    #[error("permutation acts on {perm} slots but the vector has {vector}")]
    ArityMismatch { perm: usize, vector: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("product index {index:?} out of range for n={n}, d={d}")]
    IndexOutOfRange {
        index: Vec<usize>,
        n: usize,
        d: usize,
    },
    #[error("vector has no nonzero coefficient")]
    ZeroVector,
    #[error("coordinate vector has length {got}, basis has {expected} members")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis invariant violated: {0}")]
    InvalidBasis(String),
    #[error("binomial coefficient overflow")]
    Overflow,
    #[error("unknown statistics {0:?} (expected boson or fermion)")]
    UnknownStatistics(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Statistics {
    Bosonic,
    Fermionic,
}

impl FromStr for Statistics {
    type Err = SymmetryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "boson" | "bosonic" | "bosons" => Ok(Statistics::Bosonic),
            "fermion" | "fermionic" | "fermions" => Ok(Statistics::Fermionic),
            _ => Err(SymmetryError::UnknownStatistics(s.to_string())),
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistics::Bosonic => "bosonic",
            Statistics::Fermionic => "fermionic",
        })
    }
}

/// `n` identical particles with `d` levels each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scenario {
    n: usize,
    d: usize,
    statistics: Statistics,
}

impl Scenario {
    pub fn new(n: usize, d: usize, statistics: Statistics) -> Result<Self, SymmetryError> {
        if n < 2 || d < 2 {
            return Err(SymmetryError::InvalidScenario { n, d });
        }
        Ok(Self { n, d, statistics })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    /// Dimension of the physical subspace for this scenario's statistics.
    pub fn physical_dim(&self) -> Result<u128, SymmetryError> {
        match self.statistics {
            Statistics::Bosonic => dim_symmetric(self.n, self.d),
            Statistics::Fermionic => dim_antisymmetric(self.n, self.d),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} d={} {}", self.n, self.d, self.statistics)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioClass {
    NoPhysicalStates,
    DimensionOne,
    SicPossible(u128),
}

impl fmt::Display for ScenarioClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioClass::NoPhysicalStates => f.write_str("NoPhysicalStates"),
            ScenarioClass::DimensionOne => f.write_str("DimensionOne"),
            ScenarioClass::SicPossible(k) => write!(f, "SICPossible({k})"),
        }
    }
}

fn binomial(n: u128, k: u128) -> Result<u128, SymmetryError> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul(n - i).ok_or(SymmetryError::Overflow)? / (i + 1);
    }
    Ok(acc)
}

fn check_positive(n: usize, d: usize) -> Result<(), SymmetryError> {
    if n == 0 || d == 0 {
        return Err(SymmetryError::NonPositive { n, d });
    }
    Ok(())
}

/// `binomial(d + n − 1, n)`: multisets of size n over d levels.
pub fn dim_symmetric(n: usize, d: usize) -> Result<u128, SymmetryError> {
    check_positive(n, d)?;
    binomial((d + n - 1) as u128, n as u128)
}

/// `binomial(d, n)`; zero when `n > d`.
pub fn dim_antisymmetric(n: usize, d: usize) -> Result<u128, SymmetryError> {
    check_positive(n, d)?;
    binomial(d as u128, n as u128)
}

pub fn classify(s: &Scenario) -> ScenarioClass {
    let dim = s
        .physical_dim()
        .expect("scenario dimensions fit in u128 for any realistic n, d");
    match dim {
        0 => ScenarioClass::NoPhysicalStates,
        1 => ScenarioClass::DimensionOne,
        k => ScenarioClass::SicPossible(k),
    }
}

/// True iff no scenario with `2 <= n <= n_max`, `2 <= d <= d_max` has a
/// symmetric or antisymmetric subspace of dimension exactly 2.
pub fn scan_no_dim_two(n_max: usize, d_max: usize) -> bool {
    find_dim_two(n_max, d_max).is_none()
}

/// First scenario (in `n`, then `d` order) with a two-dimensional physical subspace.
pub fn find_dim_two(n_max: usize, d_max: usize) -> Option<Scenario> {
    for n in 2..=n_max {
        for d in 2..=d_max {
            for statistics in [Statistics::Bosonic, Statistics::Fermionic] {
                let s = Scenario::new(n, d, statistics).ok()?;
                if s.physical_dim() == Ok(2) {
                    return Some(s);
                }
            }
        }
    }
    None
}

/// A product ket `|i₁ … iₙ⟩`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductIndex(Vec<usize>);

impl ProductIndex {
    pub fn new(levels: Vec<usize>) -> Self {
        Self(levels)
    }

    pub fn levels(&self) -> &[usize] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Ket label, using `+ 0 -` for qutrits and digits otherwise.
    pub fn render(&self, d: usize) -> String {
        let body: Vec<String> = self
            .0
            .iter()
            .map(|&l| {
                if d == 3 {
                    ["+", "0", "-"][l].to_string()
                } else {
                    l.to_string()
                }
            })
            .collect();
        let sep = if d > 10 { "," } else { "" };
        format!("|{}⟩", body.join(sep))
    }
}

/// Bijection on `n` particle slots: the particle in slot `k` moves to slot `image[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self, SymmetryError> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || seen[i] {
                return Err(SymmetryError::NotAPermutation(image));
            }
            seen[i] = true;
        }
        Ok(Self(image))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Swap of slots `i` and `j` (0-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, SymmetryError> {
        let mut image: Vec<usize> = (0..n).collect();
        if i >= n || j >= n {
            return Err(SymmetryError::NotAPermutation(image));
        }
        image.swap(i, j);
        Ok(Self(image))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    pub fn is_odd(&self) -> bool {
        let n = self.0.len();
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.0[i] > self.0[j])
            .count();
        inversions % 2 == 1
    }

    /// +1 or −1.
    pub fn sign(&self) -> i64 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }

    pub fn apply(&self, index: &ProductIndex) -> ProductIndex {
        let mut out = vec![0; index.0.len()];
        for (k, &level) in index.0.iter().enumerate() {
            out[self.0[k]] = level;
        }
        ProductIndex(out)
    }
}

/// Relocates every coefficient under `perm`.
pub fn permute_coefficients<T: Clone>(
    perm: &Permutation,
    coefficients: &BTreeMap<ProductIndex, T>,
) -> Result<BTreeMap<ProductIndex, T>, SymmetryError> {
    let mut out = BTreeMap::new();
    for (index, c) in coefficients {
        if index.arity() != perm.arity() {
            return Err(SymmetryError::ArityMismatch {
                perm: perm.arity(),
                vector: index.arity(),
            });
        }
        out.insert(perm.apply(index), c.clone());
    }
    Ok(out)
}

fn all_transpositions(n: usize) -> impl Iterator<Item = Permutation> {
    (0..n).flat_map(move |i| {
        (i + 1..n).map(move |j| Permutation::transposition(n, i, j).expect("in range"))
    })
}

/// Checks a sparse coefficient map against every transposition of `n` slots.
/// Zero entries must be absent from the map.
pub fn verify_symmetry_map<T>(
    n: usize,
    coefficients: &BTreeMap<ProductIndex, T>,
    statistics: Statistics,
) -> bool
where
    T: Clone + PartialEq + std::ops::Neg<Output = T>,
{
    if coefficients.keys().any(|k| k.arity() != n) {
        return false;
    }
    all_transpositions(n).all(|tau| {
        let Ok(moved) = permute_coefficients(&tau, coefficients) else {
            return false;
        };
        match statistics {
            Statistics::Bosonic => moved == *coefficients,
            Statistics::Fermionic => {
                moved.len() == coefficients.len()
                    && moved
                        .iter()
                        .all(|(k, v)| coefficients.get(k) == Some(&-v.clone()))
            }
        }
    })
}

/// Unnormalized integer vector in the n-qudit product space.
///
/// The normalized state is `Σ c_k |k⟩ / √normsq`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasisVector {
    n: usize,
    d: usize,
    coefficients: BTreeMap<ProductIndex, i64>,
    normsq: u64,
}

impl SubspaceBasisVector {
    pub fn new(
        n: usize,
        d: usize,
        coefficients: impl IntoIterator<Item = (Vec<usize>, i64)>,
    ) -> Result<Self, SymmetryError> {
        let mut map = BTreeMap::new();
        for (levels, c) in coefficients {
            if levels.len() != n || levels.iter().any(|&l| l >= d) {
                return Err(SymmetryError::IndexOutOfRange {
                    index: levels,
                    n,
                    d,
                });
            }
            if c != 0 {
                *map.entry(ProductIndex(levels)).or_insert(0) += c;
            }
        }
        map.retain(|_, c| *c != 0);
        if map.is_empty() {
            return Err(SymmetryError::ZeroVector);
        }
        let normsq = map.values().map(|c| (c * c) as u64).sum();
        Ok(Self {
            n,
            d,
            coefficients: map,
            normsq,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coefficients(&self) -> &BTreeMap<ProductIndex, i64> {
        &self.coefficients
    }

    pub fn coefficient(&self, levels: &[usize]) -> i64 {
        self.coefficients
            .get(&ProductIndex(levels.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    pub fn normsq(&self) -> u64 {
        self.normsq
    }

    pub fn negated(&self) -> Self {
        Self {
            coefficients: self
                .coefficients
                .iter()
                .map(|(k, c)| (k.clone(), -c))
                .collect(),
            ..self.clone()
        }
    }

    /// Unnormalized inner product.
    pub fn inner(&self, other: &SubspaceBasisVector) -> i64 {
        self.coefficients
            .iter()
            .filter_map(|(k, a)| other.coefficients.get(k).map(|b| a * b))
            .sum()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, (k, c)) in self.coefficients.iter().enumerate() {
            out.push_str(&signed_term(i == 0, *c, &k.render(self.d)));
        }
        out
    }
}

fn signed_term(first: bool, c: i64, ket: &str) -> String {
    let mag = c.abs();
    let body = if mag == 1 {
        ket.to_string()
    } else {
        format!("{mag}{ket}")
    };
    match (first, c < 0) {
        (true, false) => body,
        (true, true) => format!("−{body}"),
        (false, false) => format!(" + {body}"),
        (false, true) => format!(" − {body}"),
    }
}

pub fn permute(
    perm: &Permutation,
    v: &SubspaceBasisVector,
) -> Result<SubspaceBasisVector, SymmetryError> {
    if perm.arity() != v.n {
        return Err(SymmetryError::ArityMismatch {
            perm: perm.arity(),
            vector: v.n,
        });
    }
    Ok(SubspaceBasisVector {
        coefficients: permute_coefficients(perm, &v.coefficients)?,
        ..v.clone()
    })
}

/// Invariant (bosonic) or sign-flipped (fermionic) under every transposition.
pub fn verify_symmetry(v: &SubspaceBasisVector, statistics: Statistics) -> bool {
    verify_symmetry_map(v.n, &v.coefficients, statistics)
}

/// Orthogonal basis of the symmetric or antisymmetric subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    scenario: Scenario,
    vectors: Vec<SubspaceBasisVector>,
}

impl SubspaceBasis {
    /// Validates pairwise orthogonality, symmetry and the member count.
    pub fn new(
        scenario: Scenario,
        vectors: Vec<SubspaceBasisVector>,
    ) -> Result<Self, SymmetryError> {
        let expected = scenario.physical_dim()?;
        if vectors.len() as u128 != expected {
            return Err(SymmetryError::InvalidBasis(format!(
                "{} vectors for a {expected}-dimensional subspace",
                vectors.len()
            )));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.n != scenario.n || v.d != scenario.d {
                return Err(SymmetryError::InvalidBasis(format!(
                    "vector {i} lives in n={} d={}",
                    v.n, v.d
                )));
            }
            if !verify_symmetry(v, scenario.statistics) {
                return Err(SymmetryError::InvalidBasis(format!(
                    "vector {i} is not {}",
                    scenario.statistics
                )));
            }
            for (j, w) in vectors.iter().enumerate().skip(i + 1) {
                if v.inner(w) != 0 {
                    return Err(SymmetryError::InvalidBasis(format!(
                        "vectors {i} and {j} are not orthogonal"
                    )));
                }
            }
        }
        Ok(Self { scenario, vectors })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn vectors(&self) -> &[SubspaceBasisVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn is_pairwise_orthogonal(&self) -> bool {
        self.vectors
            .iter()
            .enumerate()
            .all(|(i, v)| self.vectors[i + 1..].iter().all(|w| v.inner(w) == 0))
    }

    pub fn all_symmetric(&self) -> bool {
        self.vectors
            .iter()
            .all(|v| verify_symmetry(v, self.scenario.statistics))
    }

    /// Same vectors up to order and a global sign on each vector.
    pub fn matches_up_to_sign_and_order(&self, other: &SubspaceBasis) -> bool {
        if self.scenario != other.scenario || self.len() != other.len() {
            return false;
        }
        let mut used = vec![false; other.len()];
        self.vectors.iter().all(|v| {
            let neg = v.negated();
            let hit = other
                .vectors
                .iter()
                .enumerate()
                .find(|(j, w)| !used[*j] && (*w == v || **w == neg));
            match hit {
                Some((j, _)) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    }
}

/// In-place lexicographic successor; false once the sequence is the last one.
fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Nondecreasing (`strict = false`) or increasing sequences of length `n`
/// over `0..d`, in lexicographic order.
fn sorted_sequences(n: usize, d: usize, strict: bool) -> Vec<Vec<usize>> {
    fn go(
        n: usize,
        d: usize,
        strict: bool,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for l in start..d {
            cur.push(l);
            go(n, d, strict, if strict { l + 1 } else { l }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, strict, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

fn inversion_parity(xs: &[usize]) -> i64 {
    let mut inv = 0usize;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Occupation-number basis (bosons) or Slater basis (fermions), ordered
/// lexicographically by the underlying multiset or subset.
pub fn generate_basis(s: &Scenario) -> Result<SubspaceBasis, SymmetryError> {
    if classify(s) == ScenarioClass::NoPhysicalStates {
        return Err(SymmetryError::EmptySubspace);
    }
    let strict = s.statistics == Statistics::Fermionic;
    let mut vectors = Vec::new();
    for base in sorted_sequences(s.n, s.d, strict) {
        let mut arrangement = base.clone();
        let mut terms = Vec::new();
        loop {
            let c = if strict {
                inversion_parity(&arrangement)
            } else {
                1
            };
            terms.push((arrangement.clone(), c));
            if !next_permutation(&mut arrangement) {
                break;
            }
        }
        vectors.push(SubspaceBasisVector::new(s.n, s.d, terms)?);
    }
    SubspaceBasis::new(*s, vectors)
}

/// The two explicit qutrit bases printed alongside the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaperBasis {
    /// Six symmetric states of two qutrits, `|0̂⟩ … |5̂⟩`.
    BosonTwoQutrits,
    /// Three antisymmetric states of two qutrits, `|0̃⟩ … |2̃⟩`.
    FermionTwoQutrits,
}

// levels: + -> 0, 0 -> 1, - -> 2
const PLUS: usize = 0;
const ZERO: usize = 1;
const MINUS: usize = 2;

pub fn paper_basis(name: PaperBasis) -> SubspaceBasis {
    let raw: Vec<Vec<([usize; 2], i64)>> = match name {
        PaperBasis::BosonTwoQutrits => vec![
            vec![([PLUS, PLUS], 1)],
            vec![([PLUS, ZERO], 1), ([ZERO, PLUS], 1)],
            vec![([PLUS, MINUS], 1), ([ZERO, ZERO], 2), ([MINUS, PLUS], 1)],
            vec![([ZERO, MINUS], 1), ([MINUS, ZERO], 1)],
            vec![([MINUS, MINUS], 1)],
            vec![([PLUS, MINUS], 1), ([ZERO, ZERO], -1), ([MINUS, PLUS], 1)],
        ],
        PaperBasis::FermionTwoQutrits => vec![
            vec![([PLUS, ZERO], 1), ([ZERO, PLUS], -1)],
            vec![([PLUS, MINUS], 1), ([MINUS, PLUS], -1)],
            vec![([ZERO, MINUS], 1), ([MINUS, ZERO], -1)],
        ],
    };
    let statistics = match name {
        PaperBasis::BosonTwoQutrits => Statistics::Bosonic,
        PaperBasis::FermionTwoQutrits => Statistics::Fermionic,
    };
    let scenario = Scenario::new(2, 3, statistics).expect("valid");
    let vectors = raw
        .into_iter()
        .map(|terms| {
            SubspaceBasisVector::new(2, 3, terms.into_iter().map(|(k, c)| (k.to_vec(), c)))
                .expect("printed basis vectors are nonzero")
        })
        .collect();
    SubspaceBasis::new(scenario, vectors).expect("printed bases are orthogonal and symmetric")
}

/// A subspace-coordinate vector rewritten in the product basis.
///
/// The state is `Σₖ (cₖ/√Nₖ)·bₖ` with `bₖ` the unnormalized basis vectors. The
/// product-space form groups terms by `Nₖ`: `Σ_N (1/√N) Σ_index q·|index⟩`
/// with rational `q`. Radicals are kept structural; compute inner products in
/// subspace coordinates instead of through this form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedVector {
    n: usize,
    d: usize,
    terms: Vec<(BigRational, u64)>,
    groups: BTreeMap<u64, BTreeMap<ProductIndex, BigRational>>,
}

impl LiftedVector {
    pub fn terms(&self) -> &[(BigRational, u64)] {
        &self.terms
    }

    pub fn groups(&self) -> &BTreeMap<u64, BTreeMap<ProductIndex, BigRational>> {
        &self.groups
    }

    /// Every radical group is (anti)symmetric on its own, which makes the sum so.
    pub fn verify_symmetry(&self, statistics: Statistics) -> bool {
        self.groups
            .values()
            .all(|g| verify_symmetry_map(self.n, g, statistics))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (gi, (normsq, coeffs)) in self.groups.iter().enumerate() {
            let all_negative = coeffs.values().all(Signed::is_negative);
            let mut body = String::new();
            for (i, (k, c)) in coeffs.iter().enumerate() {
                let c = if all_negative { -c.clone() } else { c.clone() };
                body.push_str(&rational_term(i == 0, &c, &k.render(self.d)));
            }
            let scaled = if *normsq == 1 {
                body
            } else if coeffs.len() == 1 && !body.contains(' ') {
                format!("(1/√{normsq}){body}")
            } else {
                format!("(1/√{normsq})({body})")
            };
            match (gi == 0, all_negative) {
                (true, false) => out.push_str(&scaled),
                (true, true) => out.push_str(&format!("−{scaled}")),
                (false, false) => out.push_str(&format!(" + {scaled}")),
                (false, true) => out.push_str(&format!(" − {scaled}")),
            }
        }
        out
    }
}

fn rational_term(first: bool, c: &BigRational, ket: &str) -> String {
    let mag = c.abs();
    let body = if mag.is_one() {
        ket.to_string()
    } else {
        format!("{mag}{ket}")
    };
    match (first, c.is_negative()) {
        (true, false) => body,
        (true, true) => format!("−{body}"),
        (false, false) => format!(" + {body}"),
        (false, true) => format!(" − {body}"),
    }
}

pub fn lift(v: &Direction, basis: &SubspaceBasis) -> Result<LiftedVector, SymmetryError> {
    if v.dim() != basis.len() {
        return Err(SymmetryError::DimensionMismatch {
            expected: basis.len(),
            got: v.dim(),
        });
    }
    let mut terms = Vec::new();
    let mut groups: BTreeMap<u64, BTreeMap<ProductIndex, BigRational>> = BTreeMap::new();
    for (&c, b) in v.components().iter().zip(basis.vectors()) {
        let c = BigRational::from_integer(BigInt::from(c));
        terms.push((c.clone(), b.normsq()));
        if c.is_zero() {
            continue;
        }
        let group = groups.entry(b.normsq()).or_default();
        for (k, &bk) in b.coefficients() {
            *group.entry(k.clone()).or_insert_with(BigRational::zero) +=
                &c * BigRational::from_integer(BigInt::from(bk));
        }
    }
    for g in groups.values_mut() {
        g.retain(|_, q| !q.is_zero());
    }
    groups.retain(|_, g| !g.is_empty());
    Ok(LiftedVector {
        n: basis.scenario().n(),
        d: basis.scenario().d(),
        terms,
        groups,
    })
}
