//! Exact integer rays and rational matrices.
//!
//! Everything here is exact: directions are primitive integer vectors and
//! matrices hold arbitrary-precision rationals in lowest terms. There is no
//! floating-point path; [`RationalMatrix::to_f64_rows`] exists for display.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("zero direction")]
    ZeroDirection,
    #[error("empty vector")]
    Empty,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("zero state")]
    ZeroState,
}

/// A ray in Z^m, stored as its canonical primitive representative.
///
/// Canonical means: the gcd of the absolute values of the components is 1 and
/// the first nonzero component is positive. Two integer vectors describe the
/// same ray iff they canonicalize to equal `Direction`s, so `Eq`, `Ord` and
/// `Hash` are ray semantics. The derived order is lexicographic on components.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction(Vec<i64>);

impl Direction {
    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Squared Euclidean norm of the canonical representative.
    pub fn norm_sq(&self) -> i64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn is_orthogonal(&self, other: &Direction) -> Result<bool, LinAlgError> {
        Ok(inner(self, other)? == 0)
    }

    /// Components as exact rationals.
    pub fn to_rational(&self) -> RationalVector {
        RationalVector::from_integers(&self.0)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Maps a nonzero integer vector to the canonical representative of its ray.
pub fn canonicalize(raw: &[i64]) -> Result<Direction, LinAlgError> {
    if raw.is_empty() {
        return Err(LinAlgError::Empty);
    }
    let g = raw.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return Err(LinAlgError::ZeroDirection);
    }
    let first = raw.iter().copied().find(|&x| x != 0).unwrap_or(0);
    let g = if first < 0 { -g } else { g };
    Ok(Direction(raw.iter().map(|&x| x / g).collect()))
}

/// Dot product of the canonical components. Zero iff the rays are orthogonal.
pub fn inner(u: &Direction, v: &Direction) -> Result<i64, LinAlgError> {
    if u.dim() != v.dim() {
        return Err(LinAlgError::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    Ok(u.0.iter().zip(&v.0).map(|(a, b)| a * b).sum())
}

/// Rank-one projector `v vᵀ / (v·v)`.
pub fn projector(v: &Direction) -> RationalMatrix {
    let m = v.dim();
    let norm = BigInt::from(v.norm_sq());
    RationalMatrix::from_fn(m, |i, j| {
        BigRational::new(BigInt::from(v.0[i] * v.0[j]), norm.clone())
    })
}

/// The ±1-valued observable `𝕀 − 2·projector(v)`; its −1 eigenspace is the ray.
pub fn observable(v: &Direction) -> RationalMatrix {
    let m = v.dim();
    let two = BigRational::from_integer(BigInt::from(2));
    let p = projector(v);
    RationalMatrix::identity(m)
        .sub(&p.scale(&two))
        .expect("same dimension by construction")
}

/// Column vector of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalVector {
    entries: Vec<BigRational>,
}

impl RationalVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Self { entries }
    }

    pub fn from_integers(xs: &[i64]) -> Self {
        Self {
            entries: xs
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RationalVector) -> Result<BigRational, LinAlgError> {
        if self.len() != other.len() {
            return Err(LinAlgError::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn scale(&self, k: &BigRational) -> RationalVector {
        RationalVector {
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Square matrix over the rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    /// Builds a matrix from integer rows. Panics if the rows are not square.
    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must be square");
        Self::from_fn(dim, |i, j| {
            BigRational::from_integer(BigInt::from(rows[i][j]))
        })
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| BigRational::zero())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.dim + col]
    }

    fn check_shape(&self, other: &RationalMatrix) -> Result<(), LinAlgError> {
        if self.dim != other.dim {
            return Err(LinAlgError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<RationalMatrix, LinAlgError> {
        self.check_shape(other)?;
        Ok(RationalMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &RationalMatrix) -> Result<RationalMatrix, LinAlgError> {
        self.check_shape(other)?;
        Ok(RationalMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, LinAlgError> {
        self.check_shape(other)?;
        let m = self.dim;
        Ok(RationalMatrix::from_fn(m, |i, j| {
            (0..m).fold(BigRational::zero(), |acc, k| {
                acc + self.get(i, k) * other.get(k, j)
            })
        }))
    }

    pub fn scale(&self, k: &BigRational) -> RationalMatrix {
        RationalMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    pub fn neg(&self) -> RationalMatrix {
        RationalMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn trace(&self) -> BigRational {
        (0..self.dim).fold(BigRational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn transpose(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Returns `Some(c)` when the matrix equals `c·𝕀` exactly.
    pub fn as_scalar(&self) -> Option<BigRational> {
        if self.dim == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        (*self == RationalMatrix::identity(self.dim).scale(&c)).then_some(c)
    }

    pub fn apply(&self, v: &RationalVector) -> Result<RationalVector, LinAlgError> {
        if v.len() != self.dim {
            return Err(LinAlgError::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        let m = self.dim;
        Ok(RationalVector::new(
            (0..m)
                .map(|i| {
                    (0..m).fold(BigRational::zero(), |acc, k| {
                        acc + self.get(i, k) * &v.entries[k]
                    })
                })
                .collect(),
        ))
    }

    /// `⟨ψ|M|ψ⟩`, unnormalized.
    pub fn quadratic_form(&self, v: &RationalVector) -> Result<BigRational, LinAlgError> {
        v.dot(&self.apply(v)?)
    }

    /// Lossy rendering for display only.
    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| rational_to_f64(self.get(i, j)))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            write!(f, "[")?;
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Integer value of a rational, if it is one.
pub fn rational_to_i64(x: &BigRational) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}
