//! Exact scalars, vectors, covectors and dense matrices.
//!
//! Coordinates are 1-indexed in the public accessors ([`Vector::coord`],
//! [`Vector::basis`]) so that `coord(1)` is the usual `x₁`. Storage
//! is an ordinary zero-based `Vec`.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vectors must have at least one coordinate")]
    Empty,
    #[error("coordinate index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("cannot parse {0:?} as an exact rational")]
    Parse(String),
    #[error("matrix rows must all have length {0}")]
    Ragged(usize),
}

/// Checked construction of `p / q` in canonical form.
pub fn rat(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<BigRational, ExactError> {
    let q = q.into();
    if q.is_zero() {
        return Err(ExactError::ZeroDenominator);
    }
    Ok(BigRational::new(p.into(), q))
}

/// Parses `"p/q"` or `"p"`, rejecting zero denominators and anything else.
pub fn parse_scalar<S: Scalar>(text: &str) -> Result<S, ExactError> {
    let trimmed = text.trim();
    if let Some((_, q)) = trimmed.split_once('/') {
        if q.trim().parse::<i128>().is_ok_and(|v| v == 0) {
            return Err(ExactError::ZeroDenominator);
        }
    }
    trimmed
        .parse::<S>()
        .map_err(|_| ExactError::Parse(trimmed.to_string()))
}

/// Exact string form: `"p/q"`, or `"p"` when the denominator is 1.
pub fn scalar_string<S: Scalar>(value: &S) -> String {
    value.to_string()
}

/// Serde adapter storing a scalar as its exact string form.
pub mod serde_scalar {
    use super::*;

    pub fn serialize<S: Scalar, Z: Serializer>(value: &S, ser: Z) -> Result<Z::Ok, Z::Error> {
        ser.serialize_str(&scalar_string(value))
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(de: D) -> Result<S, D::Error> {
        let text = String::deserialize(de)?;
        parse_scalar(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<S>` as a list of exact strings.
pub mod serde_scalar_vec {
    use super::*;

    pub fn serialize<S: Scalar, Z: Serializer>(values: &[S], ser: Z) -> Result<Z::Ok, Z::Error> {
        let strings: Vec<String> = values.iter().map(scalar_string).collect();
        strings.serialize(ser)
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(de: D) -> Result<Vec<S>, D::Error> {
        let strings = Vec::<String>::deserialize(de)?;
        strings
            .iter()
            .map(|s| parse_scalar(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// A point of an N-section, `N >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    pub fn new(coords: Vec<S>) -> Result<Self, ExactError> {
        if coords.is_empty() {
            return Err(ExactError::Empty);
        }
        Ok(Self { coords })
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "vectors must have at least one coordinate");
        Self {
            coords: vec![S::zero(); len],
        }
    }

    /// The unit vector `e_index` (1-indexed).
    pub fn basis(len: usize, index: usize) -> Result<Self, ExactError> {
        if index == 0 || index > len {
            return Err(ExactError::IndexOutOfRange { index, len });
        }
        let mut v = Self::zeros(len);
        v.coords[index - 1] = S::one();
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// 1-indexed coordinate access.
    pub fn coord(&self, index: usize) -> Result<&S, ExactError> {
        if index == 0 || index > self.len() {
            return Err(ExactError::IndexOutOfRange {
                index,
                len: self.len(),
            });
        }
        Ok(&self.coords[index - 1])
    }

    pub fn as_slice(&self) -> &[S] {
        &self.coords
    }

    pub fn into_inner(self) -> Vec<S> {
        self.coords
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.coords.iter()
    }

    pub fn sup_norm(&self) -> S {
        sup_norm_slice(&self.coords)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            coords: self.coords.iter().map(|x| c.clone() * x.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_len(other.len())?;
        Ok(Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    fn check_len(&self, got: usize) -> Result<(), ExactError> {
        if got != self.len() {
            return Err(ExactError::LengthMismatch {
                expected: self.len(),
                got,
            });
        }
        Ok(())
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;

    /// Zero-based, like the underlying storage.
    fn index(&self, i: usize) -> &S {
        &self.coords[i]
    }
}

impl<S: Scalar> fmt::Display for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.coords)
    }
}

impl<S: Scalar> Serialize for Vector<S> {
    fn serialize<Z: Serializer>(&self, ser: Z) -> Result<Z::Ok, Z::Error> {
        serde_scalar_vec::serialize(&self.coords, ser)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Vector<S> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let coords = serde_scalar_vec::deserialize(de)?;
        Vector::new(coords).map_err(serde::de::Error::custom)
    }
}

/// A linear functional on an N-section, stored as its ℓ¹ coefficient list.
#[derive(Debug, Clone, PartialEq)]
pub struct Covector<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Covector<S> {
    pub fn new(coeffs: Vec<S>) -> Result<Self, ExactError> {
        if coeffs.is_empty() {
            return Err(ExactError::Empty);
        }
        Ok(Self { coeffs })
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "covectors must have at least one coefficient");
        Self {
            coeffs: vec![S::zero(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_inner(self) -> Vec<S> {
        self.coeffs
    }

    /// 1-indexed coefficient access.
    pub fn coeff(&self, index: usize) -> Result<&S, ExactError> {
        if index == 0 || index > self.len() {
            return Err(ExactError::IndexOutOfRange {
                index,
                len: self.len(),
            });
        }
        Ok(&self.coeffs[index - 1])
    }

    /// The dual norm of the sup norm: the sum of absolute coefficients.
    pub fn dual_norm_l1(&self) -> S {
        self.coeffs
            .iter()
            .fold(S::zero(), |acc, c| acc + c.abs())
    }

    pub fn eval(&self, x: &Vector<S>) -> Result<S, ExactError> {
        if x.len() != self.len() {
            return Err(ExactError::LengthMismatch {
                expected: self.len(),
                got: x.len(),
            });
        }
        Ok(dot(&self.coeffs, x.as_slice()))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| c.clone() * x.clone()).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for Covector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.coeffs)
    }
}

impl<S: Scalar> Serialize for Covector<S> {
    fn serialize<Z: Serializer>(&self, ser: Z) -> Result<Z::Ok, Z::Error> {
        serde_scalar_vec::serialize(&self.coeffs, ser)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Covector<S> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let coeffs = serde_scalar_vec::deserialize(de)?;
        Covector::new(coeffs).map_err(serde::de::Error::custom)
    }
}

/// Square dense matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    dim: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, ExactError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(ExactError::Empty);
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(ExactError::Ragged(dim));
        }
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1);
        Self {
            dim,
            entries: vec![S::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = S::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Zero-based entry access.
    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.dim + col]
    }

    pub fn get_mut(&mut self, row: usize, col: usize) -> &mut S {
        &mut self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[S] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.entries.chunks(self.dim)
    }

    pub fn column(&self, col: usize) -> Vector<S> {
        Vector {
            coords: (0..self.dim).map(|r| self.get(r, col).clone()).collect(),
        }
    }

    pub fn apply(&self, x: &Vector<S>) -> Result<Vector<S>, ExactError> {
        if x.len() != self.dim {
            return Err(ExactError::LengthMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(Vector {
            coords: self.rows().map(|r| dot(r, x.as_slice())).collect(),
        })
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a = a.clone() + b.clone();
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|x| c.clone() * x.clone()).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    /// Largest row ℓ¹ sum.
    pub fn max_row_l1(&self) -> S {
        self.rows()
            .map(|r| r.iter().fold(S::zero(), |acc, a| acc + a.abs()))
            .fold(S::zero(), S::max_of)
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_negligible())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for k in 0..n {
                a[col][k] = a[col][k].clone() / p.clone();
                inv[col][k] = inv[col][k].clone() / p.clone();
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for k in 0..n {
                    a[r][k] = a[r][k].clone() - factor.clone() * a[col][k].clone();
                    inv[r][k] = inv[r][k].clone() - factor.clone() * inv[col][k].clone();
                }
            }
        }
        Some(Self::from_rows(inv).expect("square"))
    }
}

impl<S: Scalar> Serialize for Matrix<S> {
    fn serialize<Z: Serializer>(&self, ser: Z) -> Result<Z::Ok, Z::Error> {
        let rows: Vec<Vec<String>> = self
            .rows()
            .map(|r| r.iter().map(scalar_string).collect())
            .collect();
        rows.serialize(ser)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Matrix<S> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(de)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<S>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Matrix::from_rows(parsed).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x.clone() * y.clone()
        }
    })
}

pub(crate) fn sup_norm_slice<S: Scalar>(xs: &[S]) -> S {
    xs.iter().fold(S::zero(), |acc, x| acc.max_of(x.abs()))
}

fn write_tuple<S: Scalar>(f: &mut fmt::Formatter<'_>, items: &[S]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}
