//! Structured linear operators on N-sections.
//!
//! Operators are kept as expression trees so identity-plus-rank-one maps
//! apply in O(N); [`Operator::materialize`] flattens to a dense matrix.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::{scalar_string, Covector, ExactError, Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinopError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operators need dimension at least 1")]
    ZeroDimension,
    #[error("a sum needs at least one part")]
    EmptySum,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Operator<S> {
    Dense(Matrix<S>),
    Identity(usize),
    Diagonal(Vector<S>),
    /// `x ↦ g(x)·u`
    RankOne { u: Vector<S>, g: Covector<S> },
    Sum { dim: usize, parts: Vec<Operator<S>> },
    Scaled { c: S, inner: Box<Operator<S>> },
}

impl<S: Scalar> Operator<S> {
    pub fn identity(dim: usize) -> Result<Self, LinopError> {
        if dim == 0 {
            return Err(LinopError::ZeroDimension);
        }
        Ok(Operator::Identity(dim))
    }

    pub fn zero(dim: usize) -> Result<Self, LinopError> {
        if dim == 0 {
            return Err(LinopError::ZeroDimension);
        }
        Ok(Operator::Diagonal(Vector::zeros(dim)))
    }

    pub fn dense(m: Matrix<S>) -> Self {
        Operator::Dense(m)
    }

    pub fn diagonal(d: Vector<S>) -> Self {
        Operator::Diagonal(d)
    }

    pub fn rank_one(u: Vector<S>, g: Covector<S>) -> Result<Self, LinopError> {
        if u.len() != g.len() {
            return Err(LinopError::DimensionMismatch {
                expected: u.len(),
                got: g.len(),
            });
        }
        Ok(Operator::RankOne { u, g })
    }

    pub fn sum(parts: Vec<Operator<S>>) -> Result<Self, LinopError> {
        let dim = parts.first().ok_or(LinopError::EmptySum)?.dim();
        if let Some(bad) = parts.iter().find(|p| p.dim() != dim) {
            return Err(LinopError::DimensionMismatch {
                expected: dim,
                got: bad.dim(),
            });
        }
        Ok(Operator::Sum { dim, parts })
    }

    pub fn dim(&self) -> usize {
        match self {
            Operator::Dense(m) => m.dim(),
            Operator::Identity(n) => *n,
            Operator::Diagonal(d) => d.len(),
            Operator::RankOne { u, .. } => u.len(),
            Operator::Sum { dim, .. } => *dim,
            Operator::Scaled { inner, .. } => inner.dim(),
        }
    }

    pub fn apply(&self, x: &Vector<S>) -> Result<Vector<S>, LinopError> {
        self.check_dim(x.len())?;
        Ok(self.apply_unchecked(x))
    }

    fn apply_unchecked(&self, x: &Vector<S>) -> Vector<S> {
        match self {
            Operator::Dense(m) => m.apply(x).expect("dimension checked"),
            Operator::Identity(_) => x.clone(),
            Operator::Diagonal(d) => Vector::new(
                d.iter()
                    .zip(x.iter())
                    .map(|(a, b)| a.clone() * b.clone())
                    .collect(),
            )
            .expect("non-empty"),
            Operator::RankOne { u, g } => {
                let gx = g.eval(x).expect("dimension checked");
                u.scale(&gx)
            }
            Operator::Sum { parts, .. } => {
                let mut acc = Vector::zeros(x.len());
                for p in parts {
                    acc = acc.add(&p.apply_unchecked(x)).expect("dimension checked");
                }
                acc
            }
            Operator::Scaled { c, inner } => inner.apply_unchecked(x).scale(c),
        }
    }

    pub fn to_matrix(&self) -> Matrix<S> {
        match self {
            Operator::Dense(m) => m.clone(),
            Operator::Identity(n) => Matrix::identity(*n),
            Operator::Diagonal(d) => {
                let mut m = Matrix::zeros(d.len());
                for (i, v) in d.iter().enumerate() {
                    *m.get_mut(i, i) = v.clone();
                }
                m
            }
            Operator::RankOne { u, g } => {
                let n = u.len();
                let mut m = Matrix::zeros(n);
                for i in 0..n {
                    for j in 0..n {
                        *m.get_mut(i, j) = u[i].clone() * g.as_slice()[j].clone();
                    }
                }
                m
            }
            Operator::Sum { dim, parts } => {
                let mut m = Matrix::zeros(*dim);
                for p in parts {
                    m.add_assign(&p.to_matrix());
                }
                m
            }
            Operator::Scaled { c, inner } => inner.to_matrix().scale(c),
        }
    }

    /// Dense form with the same action on every vector. Idempotent on `Dense`.
    pub fn materialize(&self) -> Operator<S> {
        Operator::Dense(self.to_matrix())
    }

    /// The ℓ∞→ℓ∞ operator norm: the largest row ℓ¹ sum.
    pub fn op_norm_sup(&self) -> S {
        self.op_norm_sup_witness().0
    }

    /// The norm together with a ±1 vector attaining it (signs of the first maximizing row).
    pub fn op_norm_sup_witness(&self) -> (S, Vector<S>) {
        let m = self.to_matrix();
        let mut best_row = 0;
        let mut best = S::zero();
        for (i, row) in m.rows().enumerate() {
            let s = row.iter().fold(S::zero(), |acc, a| acc + a.abs());
            if i == 0 || s > best {
                best = s;
                best_row = i;
            }
        }
        let signs = m
            .row(best_row)
            .iter()
            .map(|a| if a.is_negative() { -S::one() } else { S::one() })
            .collect();
        (best, Vector::new(signs).expect("non-empty"))
    }

    pub fn add(&self, other: &Operator<S>) -> Result<Operator<S>, LinopError> {
        Operator::sum(vec![self.clone(), other.clone()])
    }

    pub fn scale(&self, c: S) -> Operator<S> {
        Operator::Scaled {
            c,
            inner: Box::new(self.clone()),
        }
    }

    fn check_dim(&self, got: usize) -> Result<(), LinopError> {
        if got != self.dim() {
            return Err(LinopError::DimensionMismatch {
                expected: self.dim(),
                got,
            });
        }
        Ok(())
    }

    /// Converts every scalar through `f`, keeping the structure.
    pub fn map_scalars<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> Operator<T> {
        let vec = |v: &Vector<S>| Vector::new(v.iter().map(f).collect()).expect("non-empty");
        match self {
            Operator::Dense(m) => Operator::Dense(
                Matrix::from_rows(
                    m.rows()
                        .map(|r| r.iter().map(f).collect())
                        .collect(),
                )
                .expect("square"),
            ),
            Operator::Identity(n) => Operator::Identity(*n),
            Operator::Diagonal(d) => Operator::Diagonal(vec(d)),
            Operator::RankOne { u, g } => Operator::RankOne {
                u: vec(u),
                g: Covector::new(g.as_slice().iter().map(f).collect()).expect("non-empty"),
            },
            Operator::Sum { dim, parts } => Operator::Sum {
                dim: *dim,
                parts: parts.iter().map(|p| p.map_scalars(f)).collect(),
            },
            Operator::Scaled { c, inner } => Operator::Scaled {
                c: f(c),
                inner: Box::new(inner.map_scalars(f)),
            },
        }
    }
}

/// Structural description: `{"kind": ..., payload}` with exact strings.
impl<S: Scalar> Serialize for Operator<S> {
    fn serialize<Z: Serializer>(&self, ser: Z) -> Result<Z::Ok, Z::Error> {
        let mut map = ser.serialize_map(None)?;
        match self {
            Operator::Dense(m) => {
                map.serialize_entry("kind", "dense")?;
                map.serialize_entry("rows", m)?;
            }
            Operator::Identity(n) => {
                map.serialize_entry("kind", "identity")?;
                map.serialize_entry("dim", n)?;
            }
            Operator::Diagonal(d) => {
                map.serialize_entry("kind", "diagonal")?;
                map.serialize_entry("d", d)?;
            }
            Operator::RankOne { u, g } => {
                map.serialize_entry("kind", "rank_one")?;
                map.serialize_entry("u", u)?;
                map.serialize_entry("g", g)?;
            }
            Operator::Sum { dim, parts } => {
                map.serialize_entry("kind", "sum")?;
                map.serialize_entry("dim", dim)?;
                map.serialize_entry("parts", parts)?;
            }
            Operator::Scaled { c, inner } => {
                map.serialize_entry("kind", "scaled")?;
                map.serialize_entry("c", &scalar_string(c))?;
                map.serialize_entry("inner", inner.as_ref())?;
            }
        }
        map.end()
    }
}
