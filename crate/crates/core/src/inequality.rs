//! The triad noncontextuality inequality.
//!
//! For a triad `(v₁, v₂, v₃)` with `±1`-valued variables `Aᵢ`, the frame term is
//!
//! ```text
//! B = −(1 + A₁A₂ + A₂A₃ + A₃A₁ + A₁A₂A₃)
//! ```
//!
//! which equals +1 exactly when one of the three is −1. `β` is the sum of
//! `B` over the frames. Noncontextual models assign one value per ray, so
//! `β` is bounded by the best joint assignment; quantum mechanics with
//! `Aᵢ = 𝕀 − 2|vᵢ⟩⟨vᵢ|` turns every frame term into the identity operator.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactvec::{observable, Direction, LinAlgError, RationalMatrix, RationalVector};
use crate::frames::{enumerate_frames, Frame};
use crate::kssets::VectorSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InequalityError {
    #[error("inequality construction specified only for triads (got dimension {0})")]
    NotTriads(usize),
    #[error("no frames")]
    NoFrames,
    #[error("assignment has no value for {0}")]
    MissingValue(Direction),
    #[error("triad members must be three pairwise orthogonal 3-vectors")]
    InvalidTriad,
    #[error("zero state")]
    ZeroState,
    #[error("state has dimension {got}, frames have {expected}")]
    StateDimension { expected: usize, got: usize },
    #[error("exhaustive enumeration limited to {limit} directions, got {got}")]
    TooManyDirections { limit: usize, got: usize },
    #[error("mixture weights must be nonnegative and sum to 1")]
    InvalidMixture,
    #[error("frame operators do not sum to a multiple of the identity")]
    NotScalar,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-1",
            Sign::Plus => "+1",
        })
    }
}

/// One `±1` value per ray.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment {
    values: BTreeMap<Direction, Sign>,
}

impl Assignment {
    pub fn new(values: BTreeMap<Direction, Sign>) -> Self {
        Self { values }
    }

    pub fn uniform<'a>(directions: impl IntoIterator<Item = &'a Direction>, sign: Sign) -> Self {
        Self {
            values: directions.into_iter().map(|d| (d.clone(), sign)).collect(),
        }
    }

    pub fn get(&self, d: &Direction) -> Option<Sign> {
        self.values.get(d).copied()
    }

    pub fn set(&mut self, d: Direction, s: Sign) {
        self.values.insert(d, s);
    }

    pub fn values(&self) -> &BTreeMap<Direction, Sign> {
        &self.values
    }

    /// Rays assigned −1.
    pub fn minus_set(&self) -> Vec<&Direction> {
        self.values
            .iter()
            .filter(|(_, s)| **s == Sign::Minus)
            .map(|(d, _)| d)
            .collect()
    }
}

/// The frame term evaluated on numbers.
pub fn classical_frame_value(a1: Sign, a2: Sign, a3: Sign) -> i64 {
    let (a, b, c) = (a1.value(), a2.value(), a3.value());
    -(1 + a * b + b * c + c * a + a * b * c)
}

/// Frame value as a function of how many of its three members are −1.
const VALUE_BY_MINUS_COUNT: [i64; 4] = [-5, 1, -1, -3];

fn check_triads(frames: &[Frame]) -> Result<(), InequalityError> {
    if frames.is_empty() {
        return Err(InequalityError::NoFrames);
    }
    match frames.iter().find(|f| f.dim() != 3) {
        Some(f) => Err(InequalityError::NotTriads(f.dim())),
        None => Ok(()),
    }
}

/// `β` for a deterministic noncontextual assignment.
pub fn classical_beta(assignment: &Assignment, frames: &[Frame]) -> Result<i64, InequalityError> {
    check_triads(frames)?;
    let mut total = 0;
    for f in frames {
        let m = f.members();
        let value = |d: &Direction| {
            assignment
                .get(d)
                .ok_or_else(|| InequalityError::MissingValue(d.clone()))
        };
        total += classical_frame_value(value(&m[0])?, value(&m[1])?, value(&m[2])?);
    }
    Ok(total)
}

/// Number of frames: each term is at most +1 on its own.
pub fn algebraic_bound(frames: &[Frame]) -> usize {
    frames.len()
}

/// Triads as indices into the sorted list of distinct directions.
struct TriadSystem {
    directions: Vec<Direction>,
    frames: Vec<[usize; 3]>,
    frames_of: Vec<Vec<usize>>,
}

impl TriadSystem {
    fn new(frames: &[Frame]) -> Result<Self, InequalityError> {
        check_triads(frames)?;
        let mut directions: Vec<Direction> = frames
            .iter()
            .flat_map(|f| f.members().iter().cloned())
            .collect();
        directions.sort();
        directions.dedup();
        let pos = |d: &Direction| directions.binary_search(d).expect("collected above");
        let triads: Vec<[usize; 3]> = frames
            .iter()
            .map(|f| {
                let m = f.members();
                [pos(&m[0]), pos(&m[1]), pos(&m[2])]
            })
            .collect();
        let mut frames_of = vec![Vec::new(); directions.len()];
        for (fi, t) in triads.iter().enumerate() {
            for &v in t {
                frames_of[v].push(fi);
            }
        }
        Ok(Self {
            directions,
            frames: triads,
            frames_of,
        })
    }
}

/// Best value a frame can still reach given `assigned` decided members of
/// which `minus` are −1.
fn frame_optimum(assigned: u8, minus: u8) -> i64 {
    if assigned == 3 {
        return VALUE_BY_MINUS_COUNT[minus as usize];
    }
    match minus {
        0 | 1 => 1,
        m => VALUE_BY_MINUS_COUNT[m as usize],
    }
}

struct BranchAndBound<'a> {
    sys: &'a TriadSystem,
    order: Vec<usize>,
    values: Vec<Option<Sign>>,
    assigned: Vec<u8>,
    minus: Vec<u8>,
    /// Sum of frame optima under the current partial assignment.
    bound: i64,
    nodes: u64,
}

impl<'a> BranchAndBound<'a> {
    fn new(sys: &'a TriadSystem, order: Vec<usize>) -> Self {
        let nf = sys.frames.len();
        Self {
            sys,
            order,
            values: vec![None; sys.directions.len()],
            assigned: vec![0; nf],
            minus: vec![0; nf],
            bound: nf as i64,
            nodes: 0,
        }
    }

    fn push(&mut self, v: usize, s: Sign) {
        self.values[v] = Some(s);
        for &f in &self.sys.frames_of[v] {
            self.bound -= frame_optimum(self.assigned[f], self.minus[f]);
            self.assigned[f] += 1;
            if s == Sign::Minus {
                self.minus[f] += 1;
            }
            self.bound += frame_optimum(self.assigned[f], self.minus[f]);
        }
    }

    fn pop(&mut self, v: usize) {
        let s = self.values[v].take().expect("assigned");
        for &f in &self.sys.frames_of[v] {
            self.bound -= frame_optimum(self.assigned[f], self.minus[f]);
            self.assigned[f] -= 1;
            if s == Sign::Minus {
                self.minus[f] -= 1;
            }
            self.bound += frame_optimum(self.assigned[f], self.minus[f]);
        }
    }

    /// Maximum over all completions, pruning subtrees that cannot beat `best`.
    fn maximize(&mut self, depth: usize, best: &mut i64) {
        self.nodes += 1;
        if self.bound <= *best {
            return;
        }
        if depth == self.order.len() {
            // all frames decided: bound is the exact value
            *best = self.bound;
            return;
        }
        let v = self.order[depth];
        for s in [Sign::Minus, Sign::Plus] {
            self.push(v, s);
            self.maximize(depth + 1, best);
            self.pop(v);
        }
    }

    /// First assignment in `order` (−1 before +1) reaching `target`.
    fn first_reaching(&mut self, depth: usize, target: i64) -> bool {
        self.nodes += 1;
        if self.bound < target {
            return false;
        }
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for s in [Sign::Minus, Sign::Plus] {
            self.push(v, s);
            if self.first_reaching(depth + 1, target) {
                return true;
            }
            self.pop(v);
        }
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoncontextualBound {
    pub value: i64,
    /// Lexicographically least maximizer over directions in canonical order,
    /// with −1 ordered before +1.
    pub witness: Assignment,
    pub nodes_explored: u64,
}

/// Exact maximum of `β` over all noncontextual `±1` assignments.
///
/// Branch and bound over the distinct directions, most-shared first; the
/// bound adds each frame's best reachable value. A second pass in canonical
/// order extracts the lexicographically least maximizer.
pub fn noncontextual_bound(frames: &[Frame]) -> Result<NoncontextualBound, InequalityError> {
    let sys = TriadSystem::new(frames)?;
    let n = sys.directions.len();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(sys.frames_of[v].len()), v));
    let mut search = BranchAndBound::new(&sys, order);
    let mut best = i64::MIN;
    search.maximize(0, &mut best);
    let mut nodes = search.nodes;

    let mut canonical = BranchAndBound::new(&sys, (0..n).collect());
    let found = canonical.first_reaching(0, best);
    debug_assert!(found, "the maximum is attained");
    nodes += canonical.nodes;
    let witness = Assignment::new(
        sys.directions
            .iter()
            .zip(&canonical.values)
            .map(|(d, s)| (d.clone(), s.expect("complete assignment")))
            .collect(),
    );
    Ok(NoncontextualBound {
        value: best,
        witness,
        nodes_explored: nodes,
    })
}

/// Largest direction count accepted by [`noncontextual_bound_exhaustive`].
pub const EXHAUSTIVE_LIMIT: usize = 24;

/// Maximum of `β` by visiting all `2^k` assignments of the `k` distinct
/// directions in Gray-code order. Independent of [`noncontextual_bound`].
pub fn noncontextual_bound_exhaustive(frames: &[Frame]) -> Result<i64, InequalityError> {
    let sys = TriadSystem::new(frames)?;
    let k = sys.directions.len();
    if k > EXHAUSTIVE_LIMIT {
        return Err(InequalityError::TooManyDirections {
            limit: EXHAUSTIVE_LIMIT,
            got: k,
        });
    }
    let mut minus = vec![0usize; sys.frames.len()];
    let mut is_minus = vec![false; k];
    // all +1
    let mut total: i64 = VALUE_BY_MINUS_COUNT[0] * sys.frames.len() as i64;
    let mut best = total;
    for step in 1u64..1 << k {
        let v = step.trailing_zeros() as usize;
        let now_minus = !is_minus[v];
        is_minus[v] = now_minus;
        for &f in &sys.frames_of[v] {
            total -= VALUE_BY_MINUS_COUNT[minus[f]];
            if now_minus {
                minus[f] += 1;
            } else {
                minus[f] -= 1;
            }
            total += VALUE_BY_MINUS_COUNT[minus[f]];
        }
        best = best.max(total);
    }
    Ok(best)
}

/// `−(𝕀 + A₁A₂ + A₂A₃ + A₃A₁ + A₁A₂A₃)` with `Aᵢ = 𝕀 − 2|vᵢ⟩⟨vᵢ|`, for three
/// pairwise orthogonal 3-vectors given in any order.
pub fn triad_operator(members: &[Direction]) -> Result<RationalMatrix, InequalityError> {
    if members.len() != 3 || members.iter().any(|d| d.dim() != 3) {
        return Err(InequalityError::InvalidTriad);
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if crate::exactvec::inner(&members[i], &members[j])? != 0 {
                return Err(InequalityError::InvalidTriad);
            }
        }
    }
    let [a1, a2, a3] = [0, 1, 2].map(|i| observable(&members[i]));
    let a12 = a1.mul(&a2)?;
    let sum = RationalMatrix::identity(3)
        .add(&a12)?
        .add(&a2.mul(&a3)?)?
        .add(&a3.mul(&a1)?)?
        .add(&a12.mul(&a3)?)?;
    Ok(sum.neg())
}

pub fn frame_operator(f: &Frame) -> Result<RationalMatrix, InequalityError> {
    triad_operator(f.members())
}

/// A pure state in subspace coordinates (unnormalized, nonzero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumState {
    amplitudes: RationalVector,
}

impl QuantumState {
    pub fn new(amplitudes: RationalVector) -> Result<Self, InequalityError> {
        if amplitudes.is_empty() || amplitudes.is_zero() {
            return Err(InequalityError::ZeroState);
        }
        Ok(Self { amplitudes })
    }

    pub fn from_integers(xs: &[i64]) -> Result<Self, InequalityError> {
        Self::new(RationalVector::from_integers(xs))
    }

    pub fn amplitudes(&self) -> &RationalVector {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn scaled(&self, k: &BigRational) -> Result<Self, InequalityError> {
        Self::new(self.amplitudes.scale(k))
    }
}

/// `Σⱼ ⟨ψ|Bʲ|ψ⟩ / ⟨ψ|ψ⟩`, exact.
pub fn quantum_value(frames: &[Frame], psi: &QuantumState) -> Result<BigRational, InequalityError> {
    check_triads(frames)?;
    if psi.dim() != 3 {
        return Err(InequalityError::StateDimension {
            expected: 3,
            got: psi.dim(),
        });
    }
    let norm = psi.amplitudes.dot(&psi.amplitudes)?;
    let mut total = BigRational::zero();
    for f in frames {
        total += frame_operator(f)?.quadratic_form(&psi.amplitudes)?;
    }
    Ok(total / norm)
}

/// `β` on a mixture `Σ wᵢ |ψᵢ⟩⟨ψᵢ|`; weights must be nonnegative and sum to 1.
pub fn mixed_quantum_value(
    frames: &[Frame],
    mixture: &[(BigRational, QuantumState)],
) -> Result<BigRational, InequalityError> {
    let weights_ok = !mixture.is_empty()
        && mixture.iter().all(|(w, _)| !w.is_negative())
        && mixture
            .iter()
            .fold(BigRational::zero(), |acc, (w, _)| acc + w)
            == BigRational::one();
    if !weights_ok {
        return Err(InequalityError::InvalidMixture);
    }
    let mut total = BigRational::zero();
    for (w, psi) in mixture {
        total += w * quantum_value(frames, psi)?;
    }
    Ok(total)
}

/// Frames, bounds and the state-independent quantum value of a 3-dimensional set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaInequality {
    pub frames: Vec<Frame>,
    pub noncontextual_bound: i64,
    pub witness: Assignment,
    pub algebraic_bound: i64,
    pub quantum_value: i64,
}

impl BetaInequality {
    pub fn gap(&self) -> i64 {
        self.quantum_value - self.noncontextual_bound
    }

    /// Every quantum state exceeds the noncontextual bound.
    pub fn is_violated(&self) -> bool {
        self.gap() > 0
    }
}

/// Builds `β ≤ bound` from all triads of a 3-dimensional set.
///
/// The quantum value is read off the exact operator `Σⱼ Bʲ`, which must be a
/// multiple of the identity; that is what makes it state independent.
pub fn build_inequality(s: &VectorSet) -> Result<BetaInequality, InequalityError> {
    if s.dim() != 3 {
        return Err(InequalityError::NotTriads(s.dim()));
    }
    let frames = enumerate_frames(s);
    let bound = noncontextual_bound(&frames)?;
    let mut sum = RationalMatrix::zeros(3);
    for f in &frames {
        sum = sum.add(&frame_operator(f)?)?;
    }
    let scalar = sum.as_scalar().ok_or(InequalityError::NotScalar)?;
    let quantum_value =
        crate::exactvec::rational_to_i64(&scalar).ok_or(InequalityError::NotScalar)?;
    Ok(BetaInequality {
        noncontextual_bound: bound.value,
        witness: bound.witness,
        algebraic_bound: algebraic_bound(&frames) as i64,
        quantum_value,
        frames,
    })
}

/// Integer state with entries drawn uniformly from `[-9, 9]`, never zero.
pub fn random_state<R: rand::Rng>(rng: &mut R, dim: usize) -> QuantumState {
    loop {
        let xs: Vec<i64> = (0..dim).map(|_| rng.random_range(-9..=9)).collect();
        if let Ok(psi) = QuantumState::from_integers(&xs) {
            return psi;
        }
    }
}

pub(crate) fn integer(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}
