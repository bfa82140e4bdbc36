//! The objects of the c₀ counterexample, truncated to N-sections, and the
//! `𝕂 ⊕∞ Y` direct-sum versions.
//!
//! Every constructor panics when asked for dimension zero.

use thiserror::Error;

use crate::exactnum::{Covector, Vector};
use crate::linops::{LinopError, Operator};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("the functional must vanish on e₁ (first coefficient is {0})")]
    FirstCoefficientNonzero(String),
    #[error("direct-sum minimizers need a unit Y-vector (sup norm is {0})")]
    NotUnit(String),
    #[error(transparent)]
    Linop(#[from] LinopError),
}

/// `(0, 1/2, 1/4, …, 2^{1-N})`.
pub fn geometric_functional<S: Scalar>(n: usize) -> Covector<S> {
    assert!(n >= 1, "sections have dimension at least 1");
    Covector::new(
        (1..=n)
            .map(|j| if j == 1 { S::zero() } else { S::pow2(1 - j as i32) })
            .collect(),
    )
    .expect("non-empty")
}

/// `(1/2, 1/4, …, 2^{-M})` on an M-dimensional Y-section; lifting it by a
/// leading zero gives [`geometric_functional`]`(M + 1)`.
pub fn shifted_geometric_functional<S: Scalar>(m: usize) -> Covector<S> {
    assert!(m >= 1, "sections have dimension at least 1");
    Covector::new((1..=m).map(|j| S::pow2(-(j as i32))).collect()).expect("non-empty")
}

/// `x ↦ x - f(x)e₁` for any `f` with `f(e₁) = 0`.
pub fn operator_from_functional<S: Scalar>(f: &Covector<S>) -> Result<Operator<S>, ConstructionError> {
    let k = perturbation_from_functional(f)?;
    Ok(Operator::identity(f.len())?.add(&k.scale(-S::one()))?)
}

/// `x ↦ f(x)e₁`.
pub fn perturbation_from_functional<S: Scalar>(f: &Covector<S>) -> Result<Operator<S>, ConstructionError> {
    let first = &f.as_slice()[0];
    if !first.is_zero() {
        return Err(ConstructionError::FirstCoefficientNonzero(first.to_string()));
    }
    let e1 = Vector::basis(f.len(), 1).expect("len >= 1");
    Ok(Operator::rank_one(e1, f.clone())?)
}

pub fn paper_operator<S: Scalar>(n: usize) -> Operator<S> {
    operator_from_functional(&geometric_functional(n)).expect("geometric functional vanishes on e1")
}

pub fn paper_perturbation<S: Scalar>(n: usize) -> Operator<S> {
    perturbation_from_functional(&geometric_functional(n)).expect("geometric functional vanishes on e1")
}

/// `e₁ + ½(e₂ + … + e_N)`.
pub fn minimizing_vector<S: Scalar>(n: usize) -> Vector<S> {
    assert!(n >= 1, "sections have dimension at least 1");
    Vector::new(
        (1..=n)
            .map(|j| if j == 1 { S::one() } else { S::half() })
            .collect(),
    )
    .expect("non-empty")
}

/// `(0, f_Y)`: a Y-functional viewed on the `𝕂 ⊕∞ Y` section.
pub fn lift_functional<S: Scalar>(f_y: &Covector<S>) -> Covector<S> {
    let mut coeffs = Vec::with_capacity(f_y.len() + 1);
    coeffs.push(S::zero());
    coeffs.extend(f_y.as_slice().iter().cloned());
    Covector::new(coeffs).expect("non-empty")
}

/// `T(a, y) = (a - f(y), y)` on dimension `1 + M`, summand coordinate first.
pub fn direct_sum_operator<S: Scalar>(f_y: &Covector<S>) -> Operator<S> {
    operator_from_functional(&lift_functional(f_y)).expect("lifted functional vanishes on e1")
}

/// `K(a, y) = (f(y), 0)`.
pub fn direct_sum_perturbation<S: Scalar>(f_y: &Covector<S>) -> Operator<S> {
    perturbation_from_functional(&lift_functional(f_y)).expect("lifted functional vanishes on e1")
}

/// `(1, y/2)` for a unit `y`.
pub fn direct_sum_minimizer<S: Scalar>(y: &Vector<S>) -> Result<Vector<S>, ConstructionError> {
    let norm = y.sup_norm();
    if !norm.is_one() {
        return Err(ConstructionError::NotUnit(norm.to_string()));
    }
    let mut coords = Vec::with_capacity(y.len() + 1);
    coords.push(S::one());
    coords.extend(y.iter().map(|v| v.clone() * S::half()));
    Ok(Vector::new(coords).expect("non-empty"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    C0,
    DirectSum,
}

/// The triple `(f, T, K)` on one section.
#[derive(Debug, Clone, PartialEq)]
pub struct PaperFamily<S> {
    pub kind: FamilyKind,
    pub dim: usize,
    pub f: Covector<S>,
    pub t: Operator<S>,
    pub k: Operator<S>,
}

impl<S: Scalar> PaperFamily<S> {
    pub fn c0(n: usize) -> Self {
        Self::with_functional(geometric_functional(n)).expect("geometric functional vanishes on e1")
    }

    /// Any functional with zero first coefficient in place of the geometric one.
    pub fn with_functional(f: Covector<S>) -> Result<Self, ConstructionError> {
        Ok(Self {
            kind: FamilyKind::C0,
            dim: f.len(),
            t: operator_from_functional(&f)?,
            k: perturbation_from_functional(&f)?,
            f,
        })
    }

    pub fn direct_sum(f_y: &Covector<S>) -> Self {
        let f = lift_functional(f_y);
        Self {
            kind: FamilyKind::DirectSum,
            dim: f.len(),
            t: direct_sum_operator(f_y),
            k: direct_sum_perturbation(f_y),
            f,
        }
    }

    /// `T + K` materializes to the identity.
    pub fn sums_to_identity(&self) -> bool {
        self.t
            .add(&self.k)
            .map(|s| s.to_matrix().is_identity())
            .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Signed;

    fn q(p: i64, d: i64) -> Rational {
        Rational::ratio(p, d)
    }

    #[test]
    fn geometric_functional_examples() {
        assert_eq!(
            geometric_functional::<Rational>(3).into_inner(),
            vec![q(0, 1), q(1, 2), q(1, 4)]
        );
        assert_eq!(geometric_functional::<Rational>(1).into_inner(), vec![q(0, 1)]);
        assert_eq!(geometric_functional::<Rational>(4).dual_norm_l1(), q(7, 8));
    }

    #[test]
    fn paper_operator_on_basis() {
        let t = paper_operator::<Rational>(4);
        let e = |j| Vector::<Rational>::basis(4, j).unwrap();
        assert_eq!(t.apply(&e(1)).unwrap(), e(1));
        assert_eq!(
            t.apply(&e(2)).unwrap(),
            e(2).sub(&e(1).scale(&q(1, 2))).unwrap()
        );
        let x3 = minimizing_vector::<Rational>(3);
        assert_eq!(
            paper_operator::<Rational>(3).apply(&x3).unwrap().into_inner(),
            vec![q(5, 8), q(1, 2), q(1, 2)]
        );
    }

    #[test]
    fn perturbation_on_basis() {
        let k = paper_perturbation::<Rational>(4);
        let e = |j| Vector::<Rational>::basis(4, j).unwrap();
        assert_eq!(k.apply(&e(1)).unwrap(), Vector::zeros(4));
        assert_eq!(k.apply(&e(3)).unwrap(), e(1).scale(&q(1, 4)));
        assert!(PaperFamily::<Rational>::c0(6).sums_to_identity());
    }

    #[test]
    fn minimizing_vector_shape() {
        assert_eq!(minimizing_vector::<Rational>(1), Vector::basis(1, 1).unwrap());
        let x = minimizing_vector::<Rational>(5);
        assert_eq!(x.sup_norm(), q(1, 1));
        assert_eq!(x[4], q(1, 2));
    }

    #[test]
    fn custom_functional_must_vanish_on_e1() {
        let bad = Covector::new(vec![q(1, 3), q(1, 2)]).unwrap();
        assert!(matches!(
            PaperFamily::with_functional(bad),
            Err(ConstructionError::FirstCoefficientNonzero(_))
        ));
        let good = Covector::new(vec![q(0, 1), q(-1, 3), q(1, 5)]).unwrap();
        assert!(PaperFamily::with_functional(good).unwrap().sums_to_identity());
    }

    #[test]
    fn direct_sum_matches_c0_operator() {
        for m in 1..6 {
            let ds = direct_sum_operator::<Rational>(&shifted_geometric_functional(m));
            assert_eq!(ds.to_matrix(), paper_operator::<Rational>(m + 1).to_matrix());
            assert!(PaperFamily::<Rational>::direct_sum(&shifted_geometric_functional(m)).sums_to_identity());
        }
    }

    #[test]
    fn direct_sum_minimizer_examples() {
        let y = Vector::new(vec![q(1, 1), q(0, 1), q(0, 1)]).unwrap();
        let x = direct_sum_minimizer(&y).unwrap();
        assert_eq!(x.into_inner(), vec![q(1, 1), q(1, 2), q(0, 1), q(0, 1)]);
        assert!(direct_sum_minimizer(&Vector::new(vec![q(1, 2)]).unwrap()).is_err());

        // ‖T(1, y/2)‖ = max(|1 - f(y)/2|, 1/2)
        let f_y = Covector::new(vec![q(1, 3), q(-1, 3), q(1, 6)]).unwrap();
        let t = direct_sum_operator(&f_y);
        for y in [
            vec![q(1, 1), q(-1, 1), q(1, 1)],
            vec![q(-1, 1), q(1, 4), q(0, 1)],
            vec![q(1, 2), q(1, 1), q(-3, 4)],
        ] {
            let y = Vector::new(y).unwrap();
            let fy = f_y.eval(&y).unwrap();
            let expected = (q(1, 1) - fy / q(2, 1)).abs().max_of(q(1, 2));
            let x = direct_sum_minimizer(&y).unwrap();
            assert_eq!(t.apply(&x).unwrap().sup_norm(), expected);
        }
    }
}
