//! Experiments over N-sections of the c₀ counterexample.
//!
//! Finite sections always attain their minimum modulus, so nothing here
//! claims non-attainment. What the experiments expose is the escape
//! profile: exact minimizers whose tail coordinates approach the forbidden
//! modulus 1/2 as N grows, while `m_N` decreases towards 1/2.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{minimizing_vector, paper_operator};
use crate::exactnum::{serde_scalar, Covector, Vector};
use crate::linops::{LinopError, Operator};
use crate::minmod::{min_modulus_sup, min_modulus_sup_with, MinModOptions, MinModResult};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("invalid section range {min}..={max} (need 2 <= min <= max)")]
    InvalidRange { min: usize, max: usize },
    #[error("the family is empty")]
    EmptyFamily,
    #[error("family member {index} is not a unit vector (sup norm {norm})")]
    NotUnit { index: usize, norm: String },
    #[error("norm budget must be non-negative, got {0}")]
    NegativeBudget(String),
    #[error(transparent)]
    Linop(#[from] LinopError),
}

/// `1 / (2 - 2^{1-N})`.
pub fn closed_form<S: Scalar>(n: usize) -> S {
    S::one() / (S::two() - S::pow2(1 - n as i32))
}

/// `1/2 + 2^{-N}`, the value of the counterexample operator at `x⁽ᴺ⁾`.
pub fn minimizing_value<S: Scalar>(n: usize) -> S {
    S::half() + S::pow2(-(n as i32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StudyConfig {
    /// Largest section dimension the study may solve.
    pub max_dimension: usize,
    pub parallel: bool,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            max_dimension: 64,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct ConvergenceRow<S> {
    pub n: usize,
    #[serde(with = "serde_scalar")]
    pub m_n: S,
    #[serde(with = "serde_scalar")]
    pub closed_form: S,
    #[serde(with = "serde_scalar")]
    pub witness_min_tail: S,
    #[serde(with = "serde_scalar")]
    pub witness_max_tail: S,
    #[serde(with = "serde_scalar")]
    pub gap: S,
}

impl<S: Scalar> ConvergenceRow<S> {
    pub fn matches_closed_form(&self) -> bool {
        self.m_n == self.closed_form
    }

    /// `0 < gap ≤ 2^{-N}`.
    pub fn gap_within_bound(&self) -> bool {
        self.gap.is_positive() && self.gap <= S::pow2(-(self.n as i32))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct ConvergenceReport<S> {
    pub n_min: usize,
    pub n_max: usize,
    /// True when the dimension budget cut the study short.
    pub partial: bool,
    pub rows: Vec<ConvergenceRow<S>>,
}

impl<S: Scalar> ConvergenceReport<S> {
    pub fn gaps_strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].gap < w[0].gap)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.rows {
            if !r.matches_closed_form() {
                out.push(format!("N={}: m_N = {} but closed form is {}", r.n, r.m_n, r.closed_form));
            }
            if !r.gap_within_bound() {
                out.push(format!("N={}: gap {} outside (0, 2^-N]", r.n, r.gap));
            }
        }
        if !self.gaps_strictly_decreasing() {
            out.push("gaps are not strictly decreasing".into());
        }
        if self.partial {
            out.push(format!(
                "dimension budget stopped the study before N={}",
                self.n_max
            ));
        }
        out
    }

    pub fn all_checks_pass(&self) -> bool {
        self.failures().is_empty()
    }
}

fn tail_moduli<S: Scalar>(witness: &Vector<S>) -> (S, S) {
    let tail = &witness.as_slice()[1..];
    let min = tail
        .iter()
        .map(|x| x.abs())
        .reduce(S::min_of)
        .unwrap_or_else(S::zero);
    let max = tail
        .iter()
        .map(|x| x.abs())
        .reduce(S::max_of)
        .unwrap_or_else(S::zero);
    (min, max)
}

fn check_range(n_min: usize, n_max: usize) -> Result<(), HarnessError> {
    if n_min < 2 || n_min > n_max {
        return Err(HarnessError::InvalidRange {
            min: n_min,
            max: n_max,
        });
    }
    Ok(())
}

fn sections<T: Send>(ns: Vec<usize>, parallel: bool, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    if parallel {
        ns.into_par_iter().map(f).collect()
    } else {
        ns.into_iter().map(f).collect()
    }
}

fn paper_minimum<S: Scalar>(n: usize, parallel: bool) -> MinModResult<S> {
    min_modulus_sup_with(
        &paper_operator::<S>(n),
        MinModOptions {
            mirror: true,
            parallel,
        },
    )
}

pub fn convergence_study<S: Scalar>(
    n_min: usize,
    n_max: usize,
    config: &StudyConfig,
) -> Result<ConvergenceReport<S>, HarnessError> {
    check_range(n_min, n_max)?;
    let last = n_max.min(config.max_dimension);
    let ns: Vec<usize> = (n_min..=last).collect();
    let rows = sections(ns, config.parallel, |n| {
        let res = paper_minimum::<S>(n, config.parallel);
        let (witness_min_tail, witness_max_tail) = tail_moduli(&res.witness);
        ConvergenceRow {
            n,
            gap: res.value.clone() - S::half(),
            closed_form: closed_form(n),
            m_n: res.value,
            witness_min_tail,
            witness_max_tail,
        }
    });
    Ok(ConvergenceReport {
        n_min,
        n_max,
        partial: last < n_max,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct EscapeRow<S> {
    pub n: usize,
    #[serde(with = "serde_scalar")]
    pub first_modulus: S,
    #[serde(with = "serde_scalar")]
    pub min_tail: S,
    #[serde(with = "serde_scalar")]
    pub max_tail: S,
    /// `min_tail - 1/2`
    #[serde(with = "serde_scalar")]
    pub min_tail_distance: S,
    #[serde(with = "serde_scalar")]
    pub max_tail_distance: S,
    /// `2^{-N}·m_N`, the distance the closed form predicts.
    #[serde(with = "serde_scalar")]
    pub predicted_distance: S,
    pub witness: Vector<S>,
}

impl<S: Scalar> EscapeRow<S> {
    pub fn matches_prediction(&self) -> bool {
        self.first_modulus.is_one()
            && self.min_tail == self.max_tail
            && self.min_tail_distance == self.predicted_distance
    }
}

/// Witness statistics per N for the exact minimizers of the counterexample operator.
pub fn non_attainment_profile<S: Scalar>(
    n_min: usize,
    n_max: usize,
    config: &StudyConfig,
) -> Result<Vec<EscapeRow<S>>, HarnessError> {
    check_range(n_min, n_max)?;
    let ns: Vec<usize> = (n_min..=n_max.min(config.max_dimension)).collect();
    Ok(sections(ns, config.parallel, |n| {
        let res = paper_minimum::<S>(n, config.parallel);
        let (min_tail, max_tail) = tail_moduli(&res.witness);
        EscapeRow {
            n,
            first_modulus: res.witness[0].abs(),
            min_tail_distance: min_tail.clone() - S::half(),
            max_tail_distance: max_tail.clone() - S::half(),
            predicted_distance: S::pow2(-(n as i32)) * res.value.clone(),
            min_tail,
            max_tail,
            witness: res.witness,
        }
    }))
}

/// Exact minimizers of the counterexample operator for each N in the range.
pub fn witness_family<S: Scalar>(n_min: usize, n_max: usize) -> Vec<Vector<S>> {
    (n_min..=n_max)
        .map(|n| paper_minimum::<S>(n, true).witness)
        .collect()
}

/// The vectors `x⁽ᴺ⁾` for each N in the range.
pub fn minimizing_family<S: Scalar>(n_min: usize, n_max: usize) -> Vec<Vector<S>> {
    (n_min..=n_max).map(minimizing_vector).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    WeaklyNull,
    NotWeaklyNull { coordinate: usize, beta: String },
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct CoordinateStats<S> {
    pub coordinate: usize,
    /// Smallest modulus over the family.
    #[serde(with = "serde_scalar")]
    pub min_modulus: S,
    /// Modulus in the last member, the finite stand-in for the limit.
    #[serde(with = "serde_scalar")]
    pub last_modulus: S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct WeakNullVerdict<S> {
    pub family_size: usize,
    pub ambient_dim: usize,
    pub coordinates: Vec<CoordinateStats<S>>,
    pub verdict: Verdict,
}

/// Coordinatewise test on a finite family of unit vectors.
///
/// Members are zero-padded to a common length. The verdict is
/// not-weakly-null when some coordinate has modulus at least `β > 0` in
/// every member (the largest such `β`, lowest coordinate among ties). It is
/// the weakly-null pattern when every coordinate that is above `threshold`
/// somewhere in the first half of the family stays at or below `threshold`
/// throughout the second half. Anything else is inconclusive.
pub fn weak_null_test<S: Scalar>(
    family: &[Vector<S>],
    threshold: &S,
) -> Result<WeakNullVerdict<S>, HarnessError> {
    if family.is_empty() {
        return Err(HarnessError::EmptyFamily);
    }
    for (index, x) in family.iter().enumerate() {
        let norm = x.sup_norm();
        if !norm.is_one() {
            return Err(HarnessError::NotUnit {
                index,
                norm: norm.to_string(),
            });
        }
    }
    let ambient = family.iter().map(Vector::len).max().expect("non-empty");
    let modulus = |x: &Vector<S>, j: usize| x.as_slice().get(j).map_or(S::zero(), |v| v.abs());

    let coordinates: Vec<CoordinateStats<S>> = (0..ambient)
        .map(|j| CoordinateStats {
            coordinate: j + 1,
            min_modulus: family
                .iter()
                .map(|x| modulus(x, j))
                .reduce(S::min_of)
                .expect("non-empty"),
            last_modulus: modulus(family.last().expect("non-empty"), j),
        })
        .collect();

    let mut best: Option<&CoordinateStats<S>> = None;
    for c in &coordinates {
        if c.min_modulus.is_positive() && best.is_none_or(|b| c.min_modulus > b.min_modulus) {
            best = Some(c);
        }
    }
    let verdict = if let Some(c) = best {
        Verdict::NotWeaklyNull {
            coordinate: c.coordinate,
            beta: c.min_modulus.to_string(),
        }
    } else if family.len() >= 2 {
        let (head, tail) = family.split_at(family.len() / 2);
        let observed: Vec<usize> = (0..ambient)
            .filter(|&j| head.iter().any(|x| &modulus(x, j) > threshold))
            .collect();
        let settles = observed
            .iter()
            .all(|&j| tail.iter().all(|x| &modulus(x, j) <= threshold));
        if !observed.is_empty() && settles {
            Verdict::WeaklyNull
        } else {
            Verdict::Inconclusive
        }
    } else {
        Verdict::Inconclusive
    };

    Ok(WeakNullVerdict {
        family_size: family.len(),
        ambient_dim: ambient,
        coordinates,
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub iterations: usize,
    pub seed: u64,
    /// The first step is `2^initial_step_log2`.
    pub initial_step_log2: i32,
    /// Halving stops at `2^min_step_log2`.
    pub min_step_log2: i32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            iterations: 200,
            seed: 0,
            initial_step_log2: -1,
            min_step_log2: -12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct SearchOutcome<S> {
    pub u: Vector<S>,
    pub g: Covector<S>,
    /// `‖K‖ = ‖u‖∞·‖g‖₁`.
    #[serde(with = "serde_scalar")]
    pub norm: S,
    #[serde(with = "serde_scalar")]
    pub norm_budget: S,
    #[serde(with = "serde_scalar")]
    pub m_t: S,
    /// Recomputed from scratch for the returned `K`.
    #[serde(with = "serde_scalar")]
    pub m_tk: S,
    #[serde(with = "serde_scalar")]
    pub gain: S,
    /// The score the search loop tracked for the returned `K`.
    #[serde(with = "serde_scalar")]
    pub loop_score: S,
    pub iterations: usize,
    pub evaluations: usize,
    pub accepted_moves: usize,
    pub seed: u64,
}

impl<S: Scalar> SearchOutcome<S> {
    pub fn perturbation(&self) -> Operator<S> {
        Operator::rank_one(self.u.clone(), self.g.clone()).expect("matching lengths")
    }
}

/// Clamp `u` to the unit cube, then shrink `g` until `‖u‖∞‖g‖₁ ≤ budget`.
fn project<S: Scalar>(u: &mut [S], g: &mut [S], budget: &S) {
    for x in u.iter_mut() {
        *x = x.clone().max_of(-S::one()).min_of(S::one());
    }
    let norm = crate::exactnum::sup_norm_slice(u)
        * g.iter().fold(S::zero(), |acc, c| acc + c.abs());
    if &norm > budget {
        let factor = budget.clone() / norm;
        for c in g.iter_mut() {
            *c = c.clone() * factor.clone();
        }
    }
}

/// Coordinate ascent over `K = u ⊗ g` with `‖K‖ ≤ norm_budget`.
///
/// Starts from `K = 0` with `u` on the lowest row where `|T w|` attains
/// `m(T)` at the exact minimizer `w`. Each iteration moves one coordinate
/// of `(u, g)` by `±step`, projects onto the budget and keeps the better
/// move if it raises the exact `m(T + K)`. Coordinates are visited in a
/// seeded shuffled order per sweep; the step halves after a sweep without
/// improvement.
pub fn rank_one_search<S: Scalar>(
    t: &Operator<S>,
    norm_budget: &S,
    config: &SearchConfig,
) -> Result<SearchOutcome<S>, HarnessError> {
    if norm_budget.is_negative() {
        return Err(HarnessError::NegativeBudget(norm_budget.to_string()));
    }
    let n = t.dim();
    let base = min_modulus_sup(t);
    let image = t.apply(&base.witness)?;
    let active = image
        .iter()
        .position(|y| y.abs() == base.value)
        .unwrap_or(0);

    let mut u = vec![S::zero(); n];
    u[active] = S::one();
    let mut g = vec![S::zero(); n];
    let mut score = base.value.clone();

    let score_of = |u: &[S], g: &[S]| -> S {
        let k = Operator::rank_one(
            Vector::new(u.to_vec()).expect("n >= 1"),
            Covector::new(g.to_vec()).expect("n >= 1"),
        )
        .expect("matching lengths");
        min_modulus_sup(&t.add(&k).expect("matching dimension")).value
    };

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut order: Vec<usize> = (0..2 * n).collect();
    let mut pos = order.len();
    let mut improved_in_sweep = true;
    let mut step_log2 = config.initial_step_log2;
    let mut evaluations = 0;
    let mut accepted_moves = 0;

    for _ in 0..config.iterations {
        if pos == order.len() {
            if !improved_in_sweep && step_log2 > config.min_step_log2 {
                step_log2 -= 1;
            }
            order.shuffle(&mut rng);
            pos = 0;
            improved_in_sweep = false;
        }
        let coord = order[pos];
        pos += 1;
        let step = S::pow2(step_log2);

        let mut best_move: Option<(S, Vec<S>, Vec<S>)> = None;
        for delta in [step.clone(), -step] {
            let (mut cu, mut cg) = (u.clone(), g.clone());
            if coord < n {
                cu[coord] = cu[coord].clone() + delta;
            } else {
                cg[coord - n] = cg[coord - n].clone() + delta;
            }
            project(&mut cu, &mut cg, norm_budget);
            if cu == u && cg == g {
                continue;
            }
            evaluations += 1;
            let s = score_of(&cu, &cg);
            if best_move.as_ref().is_none_or(|(b, _, _)| &s > b) {
                best_move = Some((s, cu, cg));
            }
        }
        if let Some((s, cu, cg)) = best_move {
            if s > score {
                score = s;
                u = cu;
                g = cg;
                accepted_moves += 1;
                improved_in_sweep = true;
            }
        }
    }

    let u = Vector::new(u).expect("n >= 1");
    let g = Covector::new(g).expect("n >= 1");
    let norm = u.sup_norm() * g.dual_norm_l1();
    let k = Operator::rank_one(u.clone(), g.clone())?;
    let m_tk = min_modulus_sup_with(
        &t.add(&k)?,
        MinModOptions {
            mirror: false,
            parallel: false,
        },
    )
    .value;
    Ok(SearchOutcome {
        u,
        g,
        norm,
        norm_budget: norm_budget.clone(),
        gain: m_tk.clone() - base.value.clone(),
        m_t: base.value,
        m_tk,
        loop_score: score,
        iterations: config.iterations,
        evaluations,
        accepted_moves,
        seed: config.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Signed;

    fn q(p: i64, d: i64) -> Rational {
        Rational::ratio(p, d)
    }

    fn serial() -> StudyConfig {
        StudyConfig {
            max_dimension: 64,
            parallel: false,
        }
    }

    #[test]
    fn convergence_rows() {
        let rep = convergence_study::<Rational>(2, 5, &StudyConfig::default()).unwrap();
        assert_eq!(rep.rows.len(), 4);
        assert_eq!(rep.rows[0].m_n, q(2, 3));
        assert_eq!(rep.rows[0].gap, q(1, 6));
        assert_eq!(rep.rows[3].m_n, q(16, 31));
        assert_eq!(rep.rows[3].gap, q(1, 62));
        assert!(rep.all_checks_pass(), "{:?}", rep.failures());
        assert_eq!(rep, convergence_study(2, 5, &serial()).unwrap());
    }

    #[test]
    fn gap_ratio_tends_to_half() {
        let rep = convergence_study::<Rational>(2, 14, &StudyConfig::default()).unwrap();
        let ratios: Vec<Rational> = rep
            .rows
            .windows(2)
            .map(|w| w[1].gap.clone() / w[0].gap.clone())
            .collect();
        // gap_{N+1}/gap_N = m_{N+1}/(2 m_N), just below 1/2
        for r in &ratios {
            assert!(*r > q(1, 3) && *r < q(1, 2));
        }
        assert!(ratios.windows(2).all(|w| w[1] > w[0]));
        let last = q(1, 2) - ratios.last().unwrap().clone();
        assert!(last < q(1, 10_000));
    }

    #[test]
    fn budget_truncates_and_flags() {
        let cfg = StudyConfig {
            max_dimension: 4,
            parallel: true,
        };
        let rep = convergence_study::<Rational>(2, 8, &cfg).unwrap();
        assert!(rep.partial);
        assert_eq!(rep.rows.len(), 3);
        assert!(!rep.all_checks_pass());
    }

    #[test]
    fn invalid_ranges() {
        assert!(convergence_study::<Rational>(1, 3, &serial()).is_err());
        assert!(convergence_study::<Rational>(5, 3, &serial()).is_err());
        assert!(non_attainment_profile::<Rational>(0, 3, &serial()).is_err());
    }

    #[test]
    fn escape_profile() {
        let rows = non_attainment_profile::<Rational>(2, 8, &StudyConfig::default()).unwrap();
        assert_eq!(rows[1].n, 3);
        assert_eq!(rows[1].min_tail, q(4, 7));
        assert_eq!(rows[1].max_tail, q(4, 7));
        for r in &rows {
            assert!(r.matches_prediction(), "N={}", r.n);
            assert!(r.min_tail > q(1, 2));
        }
        assert!(rows.windows(2).all(|w| w[1].min_tail < w[0].min_tail));
    }

    #[test]
    fn weak_null_minimizing_family() {
        let fam = minimizing_family::<Rational>(2, 12);
        let v = weak_null_test(&fam, &q(0, 1)).unwrap();
        assert_eq!(
            v.verdict,
            Verdict::NotWeaklyNull {
                coordinate: 1,
                beta: "1".into()
            }
        );
        assert_eq!(v.ambient_dim, 12);
    }

    #[test]
    fn weak_null_basis_family() {
        let fam: Vec<_> = (1..=12)
            .map(|n| Vector::<Rational>::basis(n, n).unwrap())
            .collect();
        let v = weak_null_test(&fam, &q(0, 1)).unwrap();
        assert_eq!(v.verdict, Verdict::WeaklyNull);
    }

    #[test]
    fn weak_null_inconclusive_and_errors() {
        // alternating between e1 and e2 never settles
        let fam: Vec<_> = (0..6)
            .map(|i| Vector::<Rational>::basis(2, 1 + i % 2).unwrap())
            .collect();
        assert_eq!(weak_null_test(&fam, &q(0, 1)).unwrap().verdict, Verdict::Inconclusive);
        assert_eq!(
            weak_null_test::<Rational>(&[], &q(0, 1)),
            Err(HarnessError::EmptyFamily)
        );
        let half = Vector::new(vec![q(1, 2)]).unwrap();
        assert!(matches!(
            weak_null_test(&[half], &q(0, 1)),
            Err(HarnessError::NotUnit { index: 0, .. })
        ));
    }

    #[test]
    fn search_with_zero_budget_stays_at_zero() {
        let t = paper_operator::<Rational>(4);
        let cfg = SearchConfig {
            iterations: 20,
            ..SearchConfig::default()
        };
        let out = rank_one_search(&t, &q(0, 1), &cfg).unwrap();
        assert_eq!(out.norm, q(0, 1));
        assert_eq!(out.gain, q(0, 1));
        assert!(out.g.as_slice().iter().all(|c| c == &q(0, 1)));
        assert!(rank_one_search(&t, &q(-1, 1), &cfg).is_err());
    }

    #[test]
    fn search_on_identity_respects_perturbation_bound() {
        let t = Operator::<Rational>::identity(3).unwrap();
        let budget = q(1, 8);
        let cfg = SearchConfig {
            iterations: 30,
            seed: 7,
            ..SearchConfig::default()
        };
        let out = rank_one_search(&t, &budget, &cfg).unwrap();
        assert!(out.norm <= budget);
        assert!(out.m_tk <= q(1, 1) + out.norm.clone());
        assert_eq!(out.m_tk, out.loop_score);
    }

    #[test]
    fn search_is_deterministic() {
        let t = paper_operator::<Rational>(3);
        let cfg = SearchConfig {
            iterations: 25,
            seed: 42,
            ..SearchConfig::default()
        };
        let a = rank_one_search(&t, &q(1, 1), &cfg).unwrap();
        let b = rank_one_search(&t, &q(1, 1), &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.gain.is_positive());
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form::<Rational>(10), q(512, 1023));
        assert_eq!(minimizing_value::<Rational>(3), q(5, 8));
    }
}
