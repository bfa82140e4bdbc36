//! Minimum modulus over the ℓ∞ unit sphere of an N-section.
//!
//! The sphere is the union of the facets `{x_k = σ, |x_j| ≤ 1}`. On each
//! facet `min ‖Tx‖∞` is the linear program
//!
//! ```text
//! minimize t  s.t.  -t ≤ (Tx)_i ≤ t,  -1 ≤ x_j ≤ 1,  x_k = σ
//! ```
//!
//! and the global minimum is the smallest facet optimum. Since
//! `‖T(-x)‖ = ‖Tx‖`, only the `σ = +1` facets are solved unless mirroring
//! is switched off.
//!
//! Two oracles independent of the LP engine bound the same quantity from a
//! grid of facet points: [`brute_force_min`] enumerates the full grid and
//! [`branch_and_bound_min`] prunes cells with the Lipschitz bound.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{dot, serde_scalar, sup_norm_slice, Covector, Matrix, Vector};
use crate::linops::{LinopError, Operator};
use crate::lpsolve::{LinearProgram, LpResult, Relation};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value<S: Scalar>(self) -> S {
        match self {
            Sign::Plus => S::one(),
            Sign::Minus => -S::one(),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Identifies the facet `{x_index = sign}`; `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Facet {
    pub index: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct FacetValue<S> {
    pub facet: Facet,
    #[serde(with = "serde_scalar")]
    pub value: S,
    /// True when copied from the opposite facet instead of solved.
    pub mirrored: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct MinModResult<S> {
    #[serde(with = "serde_scalar")]
    pub value: S,
    pub witness: Vector<S>,
    pub facet: Facet,
    pub facet_values: Vec<FacetValue<S>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinModOptions {
    /// Solve only `σ = +1` facets and copy their optima to `σ = -1`.
    pub mirror: bool,
    /// Evaluate facet programs on the rayon pool.
    pub parallel: bool,
}

impl Default for MinModOptions {
    fn default() -> Self {
        Self {
            mirror: true,
            parallel: true,
        }
    }
}

/// The facet program over variables `(x_1, …, x_N, t)`.
pub fn facet_program<S: Scalar>(matrix: &Matrix<S>, facet: Facet) -> LinearProgram<S> {
    let n = matrix.dim();
    let mut objective = vec![S::zero(); n + 1];
    objective[n] = S::one();
    let mut lp = LinearProgram::new(n + 1)
        .minimize(Covector::new(objective).expect("non-empty"));
    for row in matrix.rows() {
        let mut upper = row.to_vec();
        upper.push(-S::one());
        lp = lp.constraint(upper, Relation::Le, S::zero());
        let mut lower = row.to_vec();
        lower.push(S::one());
        lp = lp.constraint(lower, Relation::Ge, S::zero());
    }
    for j in 0..n {
        lp = if j + 1 == facet.index {
            let s = facet.sign.value::<S>();
            lp.bound(j, Some(s.clone()), Some(s))
        } else {
            lp.bound(j, Some(-S::one()), Some(S::one()))
        };
    }
    lp.bound(n, Some(S::zero()), None)
}

fn solve_facet<S: Scalar>(matrix: &Matrix<S>, facet: Facet) -> (S, Vector<S>) {
    let lp = facet_program(matrix, facet);
    match lp.solve().expect("facet programs are well formed") {
        LpResult::Optimal { point, .. } => {
            let n = matrix.dim();
            let x = Vector::new(point.as_slice()[..n].to_vec()).expect("n >= 1");
            let value = matrix.apply(&x).expect("matching dimension").sup_norm();
            debug_assert!(
                !S::EXACT || value == point[n],
                "facet optimum differs from re-evaluation"
            );
            (value, x)
        }
        other => unreachable!("facet program is feasible and bounded below, got {other:?}"),
    }
}

pub fn min_modulus_sup<S: Scalar>(t: &Operator<S>) -> MinModResult<S> {
    min_modulus_sup_with(t, MinModOptions::default())
}

pub fn min_modulus_sup_with<S: Scalar>(t: &Operator<S>, options: MinModOptions) -> MinModResult<S> {
    let matrix = t.to_matrix();
    let n = matrix.dim();
    let mut facets: Vec<Facet> = Vec::with_capacity(2 * n);
    for index in 1..=n {
        facets.push(Facet {
            index,
            sign: Sign::Plus,
        });
        if !options.mirror {
            facets.push(Facet {
                index,
                sign: Sign::Minus,
            });
        }
    }

    let solved: Vec<(S, Vector<S>)> = if options.parallel {
        facets.par_iter().map(|&f| solve_facet(&matrix, f)).collect()
    } else {
        facets.iter().map(|&f| solve_facet(&matrix, f)).collect()
    };

    let mut facet_values = Vec::with_capacity(2 * n);
    let mut best: Option<(S, Facet, Vector<S>)> = None;
    let mut consider = |value: &S, facet: Facet, witness: &Vector<S>| {
        let replace = match &best {
            None => true,
            Some((b, _, _)) => value < b,
        };
        if replace {
            best = Some((value.clone(), facet, witness.clone()));
        }
    };

    if options.mirror {
        for (facet, (value, x)) in facets.iter().zip(&solved) {
            let opposite = Facet {
                index: facet.index,
                sign: Sign::Minus,
            };
            consider(value, *facet, x);
            facet_values.push(FacetValue {
                facet: *facet,
                value: value.clone(),
                mirrored: false,
            });
            facet_values.push(FacetValue {
                facet: opposite,
                value: value.clone(),
                mirrored: true,
            });
        }
    } else {
        for pair in facets.chunks(2).zip(solved.chunks(2)) {
            let (fs, vs) = pair;
            assert!(
                !S::EXACT || vs[0].0 == vs[1].0,
                "mirror symmetry violated on facet {}: {} vs {}",
                fs[0].index,
                vs[0].0,
                vs[1].0
            );
            for (facet, (value, x)) in fs.iter().zip(vs) {
                consider(value, *facet, x);
                facet_values.push(FacetValue {
                    facet: *facet,
                    value: value.clone(),
                    mirrored: false,
                });
            }
        }
    }

    let (value, facet, witness) = best.expect("at least one facet");
    MinModResult {
        value,
        witness,
        facet,
        facet_values,
    }
}

/// The inner quantity of the compact-perturbation supremum for one `K`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct PerturbationGain<S> {
    #[serde(with = "serde_scalar")]
    pub m_t: S,
    #[serde(with = "serde_scalar")]
    pub m_tk: S,
    #[serde(with = "serde_scalar")]
    pub gain: S,
}

pub fn perturbation_gain<S: Scalar>(
    t: &Operator<S>,
    k: &Operator<S>,
) -> Result<PerturbationGain<S>, LinopError> {
    let tk = t.add(k)?;
    let m_t = min_modulus_sup(t).value;
    let m_tk = min_modulus_sup(&tk).value;
    Ok(PerturbationGain {
        gain: m_tk.clone() - m_t.clone(),
        m_t,
        m_tk,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("grid resolution must be positive")]
    NonPositiveResolution,
    #[error("point budget {budget} exceeded: the oracle needs at least {needed} evaluations")]
    BudgetExceeded { needed: u64, budget: u64 },
}

/// Certified bracket `lower ≤ m(T) ≤ upper` from sampled facet points.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct OracleResult<S> {
    #[serde(with = "serde_scalar")]
    pub upper: S,
    #[serde(with = "serde_scalar")]
    pub lower: S,
    #[serde(with = "serde_scalar")]
    pub resolution: S,
    /// Sup-metric covering radius of the grid on a facet, `h/2`.
    #[serde(with = "serde_scalar")]
    pub covering_radius: S,
    #[serde(with = "serde_scalar")]
    pub lipschitz: S,
    /// `upper - L·h/2`, clamped at zero.
    #[serde(with = "serde_scalar")]
    pub lipschitz_lower: S,
    /// `1 / ‖T⁻¹‖` when `T` is invertible.
    pub inverse_lower: Option<String>,
    pub argmin: Vector<S>,
    pub points_evaluated: u64,
}

impl<S: Scalar> OracleResult<S> {
    pub fn contains(&self, value: &S) -> bool {
        &self.lower <= value && value <= &self.upper
    }
}

struct OracleSetup<S> {
    matrix: Matrix<S>,
    lipschitz: S,
    radius: S,
    inverse_lower: Option<S>,
}

impl<S: Scalar> OracleSetup<S> {
    fn new(t: &Operator<S>, h: &S) -> Result<Self, OracleError> {
        if !h.is_positive() {
            return Err(OracleError::NonPositiveResolution);
        }
        let matrix = t.to_matrix();
        let lipschitz = matrix.max_row_l1();
        let inverse_lower = matrix
            .inverse()
            .map(|inv| S::one() / inv.max_row_l1());
        Ok(Self {
            matrix,
            lipschitz,
            radius: h.clone() / S::two(),
            inverse_lower,
        })
    }

    fn finish(self, h: &S, upper: S, argmin: Vec<S>, points: u64) -> OracleResult<S> {
        let lipschitz_lower =
            (upper.clone() - self.lipschitz.clone() * self.radius.clone()).max_of(S::zero());
        let mut lower = lipschitz_lower.clone();
        if let Some(b) = &self.inverse_lower {
            lower = lower.max_of(b.clone());
        }
        OracleResult {
            upper,
            lower,
            resolution: h.clone(),
            covering_radius: self.radius,
            lipschitz: self.lipschitz,
            lipschitz_lower,
            inverse_lower: self.inverse_lower.map(|b| b.to_string()),
            argmin: Vector::new(argmin).expect("n >= 1"),
            points_evaluated: points,
        }
    }
}

/// Grid `-1, -1+h, …` on `[-1, 1]`, closed off with `1`.
pub fn facet_grid<S: Scalar>(h: &S) -> Vec<S> {
    let mut pts = vec![-S::one()];
    loop {
        let next = pts.last().expect("non-empty").clone() + h.clone();
        if next >= S::one() {
            break;
        }
        pts.push(next);
    }
    pts.push(S::one());
    pts
}

/// Exhaustive grid search over every `σ = +1` facet.
///
/// The `σ = -1` facets carry the negated grid and identical values, so they
/// are not enumerated again.
pub fn brute_force_min<S: Scalar>(
    t: &Operator<S>,
    h: &S,
    point_budget: u64,
) -> Result<OracleResult<S>, OracleError> {
    let setup = OracleSetup::new(t, h)?;
    let n = setup.matrix.dim();
    let grid = facet_grid(h);
    let g = grid.len() as u64;
    let needed = g
        .checked_pow((n - 1) as u32)
        .and_then(|p| p.checked_mul(n as u64))
        .unwrap_or(u64::MAX);
    if needed > point_budget {
        return Err(OracleError::BudgetExceeded {
            needed,
            budget: point_budget,
        });
    }

    let columns: Vec<Vec<S>> = (0..n).map(|j| setup.matrix.column(j).into_inner()).collect();
    // column increments for each grid step, and for the wrap back to -1
    let steps: Vec<S> = grid.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    let wrap = grid[0].clone() - grid[grid.len() - 1].clone();

    let axpy = |y: &mut [S], c: &S, col: &[S]| {
        for (yi, ci) in y.iter_mut().zip(col) {
            if !ci.is_zero() {
                *yi = yi.clone() + c.clone() * ci.clone();
            }
        }
    };

    let mut best: Option<(S, Vec<S>)> = None;
    let mut points = 0u64;
    for k in 0..n {
        let free: Vec<usize> = (0..n).filter(|&j| j != k).collect();
        let mut pos = vec![0usize; free.len()];
        let mut y = columns[k].clone();
        for &j in &free {
            axpy(&mut y, &grid[0], &columns[j]);
        }
        loop {
            points += 1;
            let value = sup_norm_slice(&y);
            if best.as_ref().is_none_or(|(b, _)| &value < b) {
                let mut x = vec![S::zero(); n];
                x[k] = S::one();
                for (slot, &j) in free.iter().enumerate() {
                    x[j] = grid[pos[slot]].clone();
                }
                best = Some((value, x));
            }
            // odometer increment
            let mut slot = 0;
            loop {
                if slot == free.len() {
                    break;
                }
                let j = free[slot];
                if pos[slot] + 1 < grid.len() {
                    axpy(&mut y, &steps[pos[slot]], &columns[j]);
                    pos[slot] += 1;
                    break;
                }
                axpy(&mut y, &wrap, &columns[j]);
                pos[slot] = 0;
                slot += 1;
            }
            if slot == free.len() {
                break;
            }
        }
    }
    let (upper, argmin) = best.expect("at least one point");
    Ok(setup.finish(h, upper, argmin, points))
}

struct Cell<S> {
    key: S,
    seq: u64,
    half_width: S,
    center: Vec<S>,
}

impl<S: Scalar> PartialEq for Cell<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<S: Scalar> Eq for Cell<S> {}

impl<S: Scalar> PartialOrd for Cell<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> Ord for Cell<S> {
    // min-heap on the Lipschitz lower bound, then on insertion order
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .key
            .partial_cmp(&self.key)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Lipschitz branch and bound over dyadic cells of each `σ = +1` facet.
///
/// Cells are cubes refined by halving until their half-width is at most
/// `h/2`. The bound on a cell of half-width `r` is
/// `max_i (|(Tc)_i| - r·Σ_j |T_ij|)` over the free columns `j`, which is never
/// worse than `‖Tc‖ - L·r`. A cell is discarded once that bound reaches
/// `upper - L·h/2`, so the returned bracket carries the same certificate as
/// the exhaustive grid at a fraction of the evaluations.
pub fn branch_and_bound_min<S: Scalar>(
    t: &Operator<S>,
    h: &S,
    point_budget: u64,
) -> Result<OracleResult<S>, OracleError> {
    let setup = OracleSetup::new(t, h)?;
    let n = setup.matrix.dim();
    let slack = setup.lipschitz.clone() * setup.radius.clone();
    let mut points = 0u64;
    let mut best: Option<(S, Vec<S>)> = None;
    let mut seq = 0u64;
    let mut heap = BinaryHeap::new();

    let evaluate = |x: &[S], points: &mut u64, best: &mut Option<(S, Vec<S>)>| -> Result<Vec<S>, OracleError> {
        *points += 1;
        if *points > point_budget {
            return Err(OracleError::BudgetExceeded {
                needed: *points,
                budget: point_budget,
            });
        }
        let y: Vec<S> = (0..n).map(|i| dot(setup.matrix.row(i), x)).collect();
        let value = sup_norm_slice(&y);
        if best.as_ref().is_none_or(|(b, _)| &value < b) {
            *best = Some((value, x.to_vec()));
        }
        Ok(y)
    };
    // lower bound of ‖Tx‖ over the cell, row by row
    let cell_bound = |y: &[S], r: &S, row_free: &[S]| -> S {
        y.iter()
            .zip(row_free)
            .map(|(yi, si)| yi.abs() - r.clone() * si.clone())
            .fold(None, |acc: Option<S>, b| Some(acc.map_or(b.clone(), |a| a.max_of(b))))
            .expect("n >= 1")
    };

    for k in 0..n {
        let mut center = vec![S::zero(); n];
        center[k] = S::one();
        let y = evaluate(&center, &mut points, &mut best)?;
        if n == 1 {
            continue;
        }
        let free: Vec<usize> = (0..n).filter(|&j| j != k).collect();
        let row_free: Vec<S> = (0..n)
            .map(|i| {
                free.iter()
                    .fold(S::zero(), |acc, &j| acc + setup.matrix.get(i, j).abs())
            })
            .collect();
        seq += 1;
        heap.push(Cell {
            key: cell_bound(&y, &S::one(), &row_free),
            seq,
            half_width: S::one(),
            center: center.clone(),
        });
        while let Some(cell) = heap.pop() {
            let incumbent = best.as_ref().expect("evaluated").0.clone();
            if cell.key >= incumbent - slack.clone() || cell.half_width <= setup.radius {
                continue;
            }
            let child_width = cell.half_width.clone() / S::two();
            for mask in 0u64..(1u64 << free.len()) {
                let mut c = cell.center.clone();
                for (bit, &j) in free.iter().enumerate() {
                    c[j] = if mask >> bit & 1 == 1 {
                        c[j].clone() + child_width.clone()
                    } else {
                        c[j].clone() - child_width.clone()
                    };
                }
                let y = evaluate(&c, &mut points, &mut best)?;
                seq += 1;
                heap.push(Cell {
                    key: cell_bound(&y, &child_width, &row_free),
                    seq,
                    half_width: child_width.clone(),
                    center: c,
                });
            }
        }
    }
    let (upper, argmin) = best.expect("at least one point");
    Ok(setup.finish(h, upper, argmin, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(p: i64, d: i64) -> Rational {
        Rational::ratio(p, d)
    }

    fn v(xs: &[(i64, i64)]) -> Vector<Rational> {
        Vector::new(xs.iter().map(|&(p, d)| q(p, d)).collect()).unwrap()
    }

    fn paper_t(n: usize) -> Operator<Rational> {
        let f = Covector::new(
            (1..=n)
                .map(|j| if j == 1 { q(0, 1) } else { Rational::pow2(1 - j as i32) })
                .collect(),
        )
        .unwrap();
        let k = Operator::rank_one(Vector::basis(n, 1).unwrap(), f).unwrap();
        Operator::identity(n).unwrap().add(&k.scale(q(-1, 1))).unwrap()
    }

    #[test]
    fn identity_has_unit_modulus() {
        for n in 1..5 {
            let res = min_modulus_sup(&Operator::<Rational>::identity(n).unwrap());
            assert_eq!(res.value, q(1, 1));
            assert_eq!(res.witness.sup_norm(), q(1, 1));
        }
    }

    #[test]
    fn paper_operator_two_section() {
        let res = min_modulus_sup(&paper_t(2));
        assert_eq!(res.value, q(2, 3));
        assert_eq!(res.witness, v(&[(1, 1), (2, 3)]));
        assert_eq!(
            res.facet,
            Facet {
                index: 1,
                sign: Sign::Plus
            }
        );
        assert_eq!(res.facet_values.len(), 4);
    }

    #[test]
    fn diagonal_case_analysis() {
        let d = Operator::diagonal(v(&[(2, 1), (3, 1)]));
        let res = min_modulus_sup(&d);
        assert_eq!(res.value, q(2, 1));
        assert_eq!(res.witness, v(&[(1, 1), (0, 1)]));
        let values: Vec<_> = res.facet_values.iter().map(|f| f.value.clone()).collect();
        assert_eq!(values, vec![q(2, 1), q(2, 1), q(3, 1), q(3, 1)]);
    }

    #[test]
    fn zero_operator_returns_first_basis_vector() {
        let res = min_modulus_sup(&Operator::<Rational>::zero(3).unwrap());
        assert_eq!(res.value, q(0, 1));
        assert_eq!(res.witness, Vector::basis(3, 1).unwrap());
    }

    #[test]
    fn unmirrored_matches_mirrored() {
        let t = paper_t(4);
        let a = min_modulus_sup(&t);
        let b = min_modulus_sup_with(
            &t,
            MinModOptions {
                mirror: false,
                parallel: false,
            },
        );
        assert_eq!(a.value, b.value);
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.facet, b.facet);
        assert!(b.facet_values.iter().all(|f| !f.mirrored));
    }

    #[test]
    fn parallel_is_bit_identical() {
        let t = paper_t(5);
        let seq = min_modulus_sup_with(
            &t,
            MinModOptions {
                mirror: true,
                parallel: false,
            },
        );
        assert_eq!(min_modulus_sup(&t), seq);
    }

    #[test]
    fn perturbation_gain_examples() {
        let id = Operator::<Rational>::identity(3).unwrap();
        let g = perturbation_gain(&id, &id.scale(q(-1, 1))).unwrap();
        assert_eq!((g.m_tk, g.gain), (q(0, 1), q(-1, 1)));
        let t = paper_t(3);
        let g = perturbation_gain(&t, &Operator::zero(3).unwrap()).unwrap();
        assert_eq!(g.gain, q(0, 1));
        assert!(perturbation_gain(&t, &Operator::identity(2).unwrap()).is_err());
    }

    #[test]
    fn grid_closes_at_one() {
        assert_eq!(facet_grid(&q(1, 2)), vec![q(-1, 1), q(-1, 2), q(0, 1), q(1, 2), q(1, 1)]);
        assert_eq!(facet_grid(&q(3, 4)).last(), Some(&q(1, 1)));
        assert_eq!(facet_grid(&q(5, 1)), vec![q(-1, 1), q(1, 1)]);
    }

    #[test]
    fn brute_force_identity_is_tight() {
        let res = brute_force_min(&Operator::<Rational>::identity(2).unwrap(), &q(1, 10), 1_000_000).unwrap();
        assert_eq!(res.upper, q(1, 1));
        assert_eq!(res.lower, q(1, 1));
    }

    #[test]
    fn brute_force_zero_is_tight() {
        let res = brute_force_min(&Operator::<Rational>::zero(2).unwrap(), &q(1, 10), 1_000_000).unwrap();
        assert_eq!(res.upper, q(0, 1));
        assert_eq!(res.lower, q(0, 1));
    }

    #[test]
    fn brute_force_paper_two_section() {
        let res = brute_force_min(&paper_t(2), &q(1, 100), 1_000_000).unwrap();
        assert!(res.upper >= q(2, 3) && res.upper <= q(2, 3) + q(7, 800));
        assert!(res.lower <= q(2, 3));
        assert_eq!(res.lipschitz, q(3, 2));
        assert!(res.upper.clone() - res.lower.clone() <= res.lipschitz.clone() * q(1, 200));
    }

    #[test]
    fn oracle_errors() {
        let t = paper_t(3);
        assert_eq!(brute_force_min(&t, &q(0, 1), 10), Err(OracleError::NonPositiveResolution));
        assert!(matches!(
            brute_force_min(&t, &q(1, 100), 1000),
            Err(OracleError::BudgetExceeded { needed: 121203, .. })
        ));
        assert!(matches!(
            branch_and_bound_min(&t, &q(1, 100), 5),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn branch_and_bound_brackets_paper_value() {
        for n in 2..=4 {
            let res = branch_and_bound_min(&paper_t(n), &q(1, 64), 1_000_000).unwrap();
            let exact = min_modulus_sup(&paper_t(n)).value;
            assert!(res.contains(&exact), "n={n}: {} not in [{}, {}]", exact, res.lower, res.upper);
            assert!(res.upper.clone() - res.lipschitz_lower.clone() <= res.lipschitz.clone() * q(1, 128));
        }
    }

    #[test]
    fn one_section() {
        let t = Operator::diagonal(v(&[(-3, 2)]));
        assert_eq!(min_modulus_sup(&t).value, q(3, 2));
        let b = brute_force_min(&t, &q(1, 2), 10).unwrap();
        assert_eq!((b.upper, b.points_evaluated), (q(3, 2), 1));
        let bb = branch_and_bound_min(&t, &q(1, 2), 10).unwrap();
        assert_eq!(bb.upper, q(3, 2));
    }
}
