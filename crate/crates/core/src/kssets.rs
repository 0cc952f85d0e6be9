//! The three Kochen-Specker vector sets, ray-level set algebra and the
//! plain-text vector-set format.
//!
//! The built-in sets are generated from their printed construction rules
//! (pattern expansion, padding, union, removal) rather than stored as final
//! member lists, and the printed member counts are asserted on every build.
//!
//! File format: UTF-8 lines, `#` starts a comment, the first non-comment line
//! is `dim <m>`, every other non-comment line holds `m` whitespace-separated
//! integers. A leading `# name: <name>` comment names the set.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::exactvec::{canonicalize, Direction, LinAlgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("all-zero pattern")]
    ZeroPattern,
    #[error("set dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("direction {direction} has dimension {got}, set has {expected}")]
    MemberDimension {
        direction: Direction,
        expected: usize,
        got: usize,
    },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// A finite set of rays in a fixed ambient dimension, sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSet {
    name: String,
    dim: usize,
    members: Vec<Direction>,
}

impl VectorSet {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        members: impl IntoIterator<Item = Direction>,
    ) -> Result<Self, SetError> {
        let mut sorted = BTreeSet::new();
        for d in members {
            if d.dim() != dim {
                return Err(SetError::MemberDimension {
                    expected: dim,
                    got: d.dim(),
                    direction: d,
                });
            }
            sorted.insert(d);
        }
        Ok(Self {
            name: name.into(),
            dim,
            members: sorted.into_iter().collect(),
        })
    }

    /// Canonicalizes every raw vector; ray duplicates collapse.
    pub fn from_raw<R: AsRef<[i64]>>(
        name: impl Into<String>,
        dim: usize,
        raw: impl IntoIterator<Item = R>,
    ) -> Result<Self, SetError> {
        let members = raw
            .into_iter()
            .map(|r| canonicalize(r.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(name, dim, members)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[Direction] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, d: &Direction) -> bool {
        self.members.binary_search(d).is_ok()
    }

    /// Membership of the ray through a raw integer vector.
    pub fn contains_raw(&self, raw: &[i64]) -> bool {
        canonicalize(raw).is_ok_and(|d| self.contains(&d))
    }

    fn check_dim(&self, other: &VectorSet) -> Result<(), SetError> {
        if self.dim != other.dim {
            return Err(SetError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &VectorSet) -> Result<VectorSet, SetError> {
        self.check_dim(other)?;
        VectorSet::new(
            self.name.clone(),
            self.dim,
            self.members.iter().chain(&other.members).cloned(),
        )
    }

    pub fn intersection(&self, other: &VectorSet) -> Result<VectorSet, SetError> {
        self.check_dim(other)?;
        VectorSet::new(
            self.name.clone(),
            self.dim,
            self.members.iter().filter(|d| other.contains(d)).cloned(),
        )
    }

    pub fn difference(&self, other: &VectorSet) -> Result<VectorSet, SetError> {
        self.check_dim(other)?;
        VectorSet::new(
            self.name.clone(),
            self.dim,
            self.members.iter().filter(|d| !other.contains(d)).cloned(),
        )
    }

    pub fn is_subset(&self, other: &VectorSet) -> bool {
        self.dim == other.dim && self.members.iter().all(|d| other.contains(d))
    }
}

/// All arrangements of `{a, b, c}` as 3-vectors, deduplicated as rays.
pub fn expand_pattern(a: i64, b: i64, c: i64) -> Result<Vec<Direction>, SetError> {
    if a == 0 && b == 0 && c == 0 {
        return Err(SetError::ZeroPattern);
    }
    let arrangements = [
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ];
    let rays: BTreeSet<Direction> = arrangements
        .iter()
        .map(|v| canonicalize(v))
        .collect::<Result<_, _>>()?;
    Ok(rays.into_iter().collect())
}

/// Patterns whose expansions are united to form A3 before the removals.
/// `(1,1,1)` is a single ray.
pub const A3_PATTERNS: [[i64; 3]; 10] = [
    [0, 0, 1],
    [0, 1, 1],
    [0, 1, -1],
    [0, 1, 2],
    [0, 1, -2],
    [1, 1, 1],
    [1, 1, -1],
    [1, 1, 2],
    [1, 1, -2],
    [1, -1, 2],
];

/// Rays removed from the A3 union, spelled as printed (not all canonical).
pub const A3_REMOVED: [[i64; 3]; 6] = [
    [2, 1, 1],
    [2, 1, 0],
    [2, 1, -1],
    [-1, 2, 1],
    [1, -2, 0],
    [1, -2, 1],
];

pub const A3_SIZE: usize = 31;

pub const S4_VECTORS: [[i64; 4]; 18] = [
    [1, 0, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [1, 1, 0, 0],
    [0, 1, 1, 0],
    [0, 0, 1, 1],
    [1, -1, 0, 0],
    [0, 1, -1, 0],
    [1, 0, 1, 0],
    [0, 1, 0, 1],
    [0, 1, 0, -1],
    [1, 0, 0, 1],
    [1, -1, 1, -1],
    [1, 1, -1, -1],
    [1, -1, -1, 1],
    [1, 1, 1, -1],
    [1, 1, -1, 1],
    [-1, 1, 1, 1],
];

pub const S4_SIZE: usize = 18;

pub const S6_ADDED: [[i64; 6]; 3] = [[0, 1, 0, 0, 0, 0], [1, 0, -1, 0, 0, 0], [1, 1, 1, 1, 0, 0]];

pub const S6_REMOVED: [[i64; 6]; 6] = [
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [1, 1, 0, 0, 0, 0],
    [0, 0, 1, -1, 0, 0],
    [1, -1, -1, 1, 0, 0],
    [0, 1, 0, 1, 0, 0],
];

pub const S6_SIZE: usize = 31;

/// Intermediate sets of a "union of parts, then remove" construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    /// Each part as a set, in construction order.
    pub parts: Vec<VectorSet>,
    pub pre_removal: VectorSet,
    pub removed: VectorSet,
    pub result: VectorSet,
}

impl Construction {
    /// True iff every removed ray was present before removal.
    pub fn removals_exact(&self) -> bool {
        self.removed.is_subset(&self.pre_removal)
            && self.pre_removal.len() - self.result.len() == self.removed.len()
    }
}

fn construct(
    name: &str,
    dim: usize,
    parts: Vec<VectorSet>,
    removed: VectorSet,
) -> Result<Construction, SetError> {
    let mut pre_removal = VectorSet::new(name, dim, [])?;
    for p in &parts {
        pre_removal = pre_removal.union(p)?;
    }
    let result = pre_removal.difference(&removed)?;
    Ok(Construction {
        parts,
        pre_removal,
        removed,
        result,
    })
}

pub fn a3_construction() -> Construction {
    let parts = A3_PATTERNS
        .iter()
        .map(|&[a, b, c]| {
            let rays = expand_pattern(a, b, c).expect("nonzero pattern");
            VectorSet::new(format!("P({a},{b},{c})"), 3, rays).expect("3-vectors")
        })
        .collect();
    let removed = VectorSet::from_raw("removed", 3, A3_REMOVED).expect("nonzero");
    construct("A3", 3, parts, removed).expect("consistent dimensions")
}

/// The 31-ray set in the antisymmetric two-qutrit space.
pub fn build_a3() -> VectorSet {
    let set = a3_construction().result;
    assert_eq!(set.len(), A3_SIZE, "A3 construction drifted");
    set
}

pub fn build_s4() -> VectorSet {
    let set = VectorSet::from_raw("S4", 4, S4_VECTORS).expect("nonzero");
    assert_eq!(set.len(), S4_SIZE, "S4 transcription drifted");
    set
}

fn pad(v: &Direction, leading: usize, trailing: usize) -> Direction {
    let mut raw = vec![0; leading];
    raw.extend_from_slice(v.components());
    raw.extend(std::iter::repeat_n(0, trailing));
    canonicalize(&raw).expect("padding keeps the vector nonzero")
}

/// Parts are `{(a,0,0)}`, `{(0,0,a)}` for `a ∈ S4`, then the three additions.
pub fn s6_construction() -> Construction {
    let s4 = build_s4();
    let left =
        VectorSet::new("(a,0,0)", 6, s4.members().iter().map(|a| pad(a, 0, 2))).expect("6-vectors");
    let right =
        VectorSet::new("(0,0,a)", 6, s4.members().iter().map(|a| pad(a, 2, 0))).expect("6-vectors");
    let added = VectorSet::from_raw("added", 6, S6_ADDED).expect("nonzero");
    let removed = VectorSet::from_raw("removed", 6, S6_REMOVED).expect("nonzero");
    construct("S6", 6, vec![left, right, added], removed).expect("consistent dimensions")
}

/// The 31-ray set in the symmetric two-qutrit space.
pub fn build_s6() -> VectorSet {
    let set = s6_construction().result;
    assert_eq!(set.len(), S6_SIZE, "S6 construction drifted");
    set
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinSet {
    A3,
    S4,
    S6,
}

impl BuiltinSet {
    pub fn build(self) -> VectorSet {
        match self {
            BuiltinSet::A3 => build_a3(),
            BuiltinSet::S4 => build_s4(),
            BuiltinSet::S6 => build_s6(),
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_uppercase().as_str() {
            "A3" => Some(BuiltinSet::A3),
            "S4" => Some(BuiltinSet::S4),
            "S6" => Some(BuiltinSet::S6),
            _ => None,
        }
    }
}

/// The seventeen A3 contexts in their published numbering (1-based index =
/// position + 1) and member order.
pub const A3_LISTED_FRAMES: [[[i64; 3]; 3]; 17] = [
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

/// Result of [`parse_set`]; `collapsed_duplicates` counts lines whose ray was
/// already present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedSet {
    pub set: VectorSet,
    pub collapsed_duplicates: usize,
}

pub fn parse_set(text: &str) -> Result<ParsedSet, ParseError> {
    let mut name: Option<String> = None;
    let mut dim: Option<usize> = None;
    let mut rays = BTreeSet::new();
    let mut duplicates = 0;
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| ParseError {
            line: line_no,
            message,
        };
        let (content, comment) = match raw_line.split_once('#') {
            Some((c, rest)) => (c, Some(rest)),
            None => (raw_line, None),
        };
        if let Some(rest) = comment {
            if name.is_none() && dim.is_none() && content.trim().is_empty() {
                if let Some(n) = rest.trim().strip_prefix("name:") {
                    name = Some(n.trim().to_string());
                }
            }
        }
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let Some(m) = dim else {
            let value = content
                .strip_prefix("dim")
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or_else(|| err(format!("expected `dim <m>`, found {content:?}")))?;
            let m: usize = value
                .trim()
                .parse()
                .map_err(|_| err(format!("invalid dimension {:?}", value.trim())))?;
            if m == 0 {
                return Err(err("dimension must be positive".into()));
            }
            dim = Some(m);
            continue;
        };
        let raw = content
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|_| err(format!("invalid integer {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if raw.len() != m {
            return Err(err(format!("expected {m} components, found {}", raw.len())));
        }
        let d = canonicalize(&raw).map_err(|e| err(e.to_string()))?;
        if !rays.insert(d) {
            duplicates += 1;
        }
    }
    let dim = dim.ok_or(ParseError {
        line: text.lines().count().max(1),
        message: "missing `dim <m>` header".into(),
    })?;
    let set = VectorSet::new(name.unwrap_or_else(|| "file".into()), dim, rays)
        .expect("every member was checked against dim");
    Ok(ParsedSet {
        set,
        collapsed_duplicates: duplicates,
    })
}

pub fn serialize_set(set: &VectorSet) -> String {
    let mut out = String::new();
    writeln!(out, "# name: {}", set.name()).unwrap();
    writeln!(out, "dim {}", set.dim()).unwrap();
    for d in set.members() {
        let line: Vec<String> = d.components().iter().map(i64::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}
