//! Exact two-phase primal simplex with native variable bounds.
//!
//! Every variable, structural or slack, carries an optional lower and upper
//! bound. Nonbasic variables rest at a bound, or at zero when zero lies
//! between the bounds, so unconstrained directions stay at the origin.
//! Entering and leaving choices follow Bland's lowest-index rule, which
//! guarantees termination on degenerate programs.

use std::fmt::Write as _;

use thiserror::Error;

use crate::exactnum::{dot, parse_scalar, scalar_string, Covector, ExactError, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("malformed program: {0}")]
    Malformed(String),
    #[error("bad dump line {line}: {reason}")]
    Dump { line: usize, reason: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }

    fn parse(token: &str) -> Option<Self> {
        match token {
            "<=" => Some(Relation::Le),
            "=" => Some(Relation::Eq),
            ">=" => Some(Relation::Ge),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<S> {
    pub row: Vec<S>,
    pub relation: Relation,
    pub rhs: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bounds<S> {
    pub lower: Option<S>,
    pub upper: Option<S>,
}

impl<S> Default for Bounds<S> {
    fn default() -> Self {
        Self {
            lower: None,
            upper: None,
        }
    }
}

/// `minimize objective·x` subject to the rows and per-variable bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<S> {
    pub objective: Vec<S>,
    pub constraints: Vec<Constraint<S>>,
    pub bounds: Vec<Bounds<S>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpResult<S> {
    Optimal { value: S, point: Vector<S> },
    Infeasible,
    Unbounded,
}

impl<S: Scalar> LpResult<S> {
    pub fn optimal(&self) -> Option<(&S, &Vector<S>)> {
        match self {
            LpResult::Optimal { value, point } => Some((value, point)),
            _ => None,
        }
    }
}

impl<S: Scalar> LinearProgram<S> {
    /// A program over `variables` free variables with a zero objective.
    pub fn new(variables: usize) -> Self {
        Self {
            objective: vec![S::zero(); variables],
            constraints: Vec::new(),
            bounds: (0..variables).map(|_| Bounds::default()).collect(),
        }
    }

    pub fn variables(&self) -> usize {
        self.objective.len()
    }

    pub fn minimize(mut self, objective: Covector<S>) -> Self {
        self.objective = objective.into_inner();
        self
    }

    pub fn constraint(mut self, row: Vec<S>, relation: Relation, rhs: S) -> Self {
        self.constraints.push(Constraint { row, relation, rhs });
        self
    }

    /// Sets the bounds of variable `var` (zero-based).
    pub fn bound(mut self, var: usize, lower: Option<S>, upper: Option<S>) -> Self {
        if let Some(b) = self.bounds.get_mut(var) {
            *b = Bounds { lower, upper };
        }
        self
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.variables();
        if n == 0 {
            return Err(LpError::Malformed("no variables".into()));
        }
        if self.bounds.len() != n {
            return Err(LpError::Malformed(format!(
                "{} bound entries for {n} variables",
                self.bounds.len()
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.row.len() != n {
                return Err(LpError::Malformed(format!(
                    "row {i} has length {}, expected {n}",
                    c.row.len()
                )));
            }
        }
        for (j, b) in self.bounds.iter().enumerate() {
            if let (Some(l), Some(u)) = (&b.lower, &b.upper) {
                if l > u {
                    return Err(LpError::Malformed(format!(
                        "variable {j} has lower {l} above upper {u}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// True when `x` satisfies every row and bound exactly.
    pub fn is_feasible(&self, x: &[S]) -> bool {
        if x.len() != self.variables() {
            return false;
        }
        let rows_ok = self.constraints.iter().all(|c| {
            let lhs = dot(&c.row, x);
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            }
        });
        let bounds_ok = self.bounds.iter().zip(x).all(|(b, v)| {
            b.lower.as_ref().is_none_or(|l| v >= l) && b.upper.as_ref().is_none_or(|u| v <= u)
        });
        rows_ok && bounds_ok
    }

    pub fn solve(&self) -> Result<LpResult<S>, LpError> {
        self.validate()?;
        Ok(Tableau::build(self).run(self))
    }

    /// Text form for reproducing a failing case:
    ///
    /// ```text
    /// lp 1
    /// vars 2
    /// minimize 0 1
    /// row 1 -1/2 >= 0
    /// bound 0 -1 1
    /// bound 1 0 inf
    /// ```
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let join = |xs: &[S]| xs.iter().map(scalar_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "lp 1");
        let _ = writeln!(out, "vars {}", self.variables());
        let _ = writeln!(out, "minimize {}", join(&self.objective));
        for c in &self.constraints {
            let _ = writeln!(
                out,
                "row {} {} {}",
                join(&c.row),
                c.relation.symbol(),
                scalar_string(&c.rhs)
            );
        }
        for (j, b) in self.bounds.iter().enumerate() {
            if b.lower.is_none() && b.upper.is_none() {
                continue;
            }
            let lo = b.lower.as_ref().map_or("-inf".to_string(), scalar_string);
            let hi = b.upper.as_ref().map_or("inf".to_string(), scalar_string);
            let _ = writeln!(out, "bound {j} {lo} {hi}");
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Self, LpError> {
        let mut lp: Option<Self> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let bad = |reason: &str| LpError::Dump {
                line,
                reason: reason.to_string(),
            };
            let tokens: Vec<&str> = raw.split_whitespace().collect();
            let Some((&head, rest)) = tokens.split_first() else {
                continue;
            };
            let scalars = |ts: &[&str]| -> Result<Vec<S>, LpError> {
                ts.iter()
                    .map(|t| parse_scalar(t).map_err(LpError::from))
                    .collect()
            };
            match head {
                "lp" => {}
                "vars" => {
                    let n: usize = rest
                        .first()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| bad("expected variable count"))?;
                    lp = Some(Self::new(n));
                }
                "minimize" => {
                    let p = lp.as_mut().ok_or_else(|| bad("vars must come first"))?;
                    p.objective = scalars(rest)?;
                }
                "row" => {
                    let p = lp.as_mut().ok_or_else(|| bad("vars must come first"))?;
                    if rest.len() < 2 {
                        return Err(bad("row needs a relation and rhs"));
                    }
                    let (coeffs, tail) = rest.split_at(rest.len() - 2);
                    let relation = Relation::parse(tail[0]).ok_or_else(|| bad("unknown relation"))?;
                    p.constraints.push(Constraint {
                        row: scalars(coeffs)?,
                        relation,
                        rhs: parse_scalar(tail[1])?,
                    });
                }
                "bound" => {
                    let p = lp.as_mut().ok_or_else(|| bad("vars must come first"))?;
                    if rest.len() != 3 {
                        return Err(bad("bound needs index, lower, upper"));
                    }
                    let j: usize = rest[0].parse().map_err(|_| bad("bad variable index"))?;
                    let side = |t: &str, inf: &str| -> Result<Option<S>, LpError> {
                        if t == inf {
                            Ok(None)
                        } else {
                            Ok(Some(parse_scalar(t)?))
                        }
                    };
                    let b = p.bounds.get_mut(j).ok_or_else(|| bad("variable index out of range"))?;
                    *b = Bounds {
                        lower: side(rest[1], "-inf")?,
                        upper: side(rest[2], "inf")?,
                    };
                }
                _ => return Err(bad("unknown directive")),
            }
        }
        lp.ok_or(LpError::Dump {
            line: 0,
            reason: "missing vars line".into(),
        })
    }
}

enum Step<S> {
    Flip(S),
    Pivot(S, usize),
}

struct Tableau<S> {
    /// `B⁻¹A`, one row per constraint, one column per variable.
    rows: Vec<Vec<S>>,
    basis: Vec<usize>,
    basic_row: Vec<Option<usize>>,
    values: Vec<S>,
    lower: Vec<Option<S>>,
    upper: Vec<Option<S>>,
    structural: usize,
    artificial_start: usize,
}

fn resting_value<S: Scalar>(lower: &Option<S>, upper: &Option<S>) -> S {
    match (lower, upper) {
        (Some(l), _) if l.is_positive() => l.clone(),
        (_, Some(u)) if u.is_negative() => u.clone(),
        _ => S::zero(),
    }
}

impl<S: Scalar> Tableau<S> {
    fn build(lp: &LinearProgram<S>) -> Self {
        let n = lp.variables();
        let m = lp.constraints.len();
        let mut lower: Vec<Option<S>> = lp.bounds.iter().map(|b| b.lower.clone()).collect();
        let mut upper: Vec<Option<S>> = lp.bounds.iter().map(|b| b.upper.clone()).collect();
        let mut values: Vec<S> = lower
            .iter()
            .zip(&upper)
            .map(|(l, u)| resting_value(l, u))
            .collect();

        for c in &lp.constraints {
            let (lo, hi) = match c.relation {
                Relation::Le => (Some(S::zero()), None),
                Relation::Ge => (None, Some(S::zero())),
                Relation::Eq => (Some(S::zero()), Some(S::zero())),
            };
            lower.push(lo);
            upper.push(hi);
            values.push(S::zero());
        }

        let artificial_start = n + m;
        // (row, sign) for rows that need an artificial
        let mut needs_artificial = Vec::new();
        let mut basis = vec![0; m];
        let mut residuals = Vec::with_capacity(m);
        for (i, c) in lp.constraints.iter().enumerate() {
            let r = c.rhs.clone() - dot(&c.row, &values[..n]);
            let slack = n + i;
            let fits = lower[slack].as_ref().is_none_or(|l| &r >= l)
                && upper[slack].as_ref().is_none_or(|u| &r <= u);
            if fits {
                basis[i] = slack;
                values[slack] = r.clone();
            } else {
                needs_artificial.push(i);
            }
            residuals.push(r);
        }

        let total = artificial_start + needs_artificial.len();
        let mut rows = Vec::with_capacity(m);
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = Vec::with_capacity(total);
            row.extend(c.row.iter().cloned());
            row.extend((0..m).map(|k| if k == i { S::one() } else { S::zero() }));
            row.extend((0..needs_artificial.len()).map(|_| S::zero()));
            rows.push(row);
        }
        for (k, &i) in needs_artificial.iter().enumerate() {
            let col = artificial_start + k;
            let r = residuals[i].clone();
            if r.is_negative() {
                for a in rows[i].iter_mut() {
                    *a = -a.clone();
                }
            }
            rows[i][col] = S::one();
            basis[i] = col;
            lower.push(Some(S::zero()));
            upper.push(None);
            values.push(r.abs());
        }

        let mut basic_row = vec![None; total];
        for (i, &b) in basis.iter().enumerate() {
            basic_row[b] = Some(i);
        }
        Self {
            rows,
            basis,
            basic_row,
            values,
            lower,
            upper,
            structural: n,
            artificial_start,
        }
    }

    fn columns(&self) -> usize {
        self.values.len()
    }

    fn run(mut self, lp: &LinearProgram<S>) -> LpResult<S> {
        let total = self.columns();
        if total > self.artificial_start {
            let cost: Vec<S> = (0..total)
                .map(|j| {
                    if j >= self.artificial_start {
                        S::one()
                    } else {
                        S::zero()
                    }
                })
                .collect();
            // phase one is bounded below by zero
            let _ = self.optimize(&cost);
            let infeasibility = self.values[self.artificial_start..]
                .iter()
                .fold(S::zero(), |acc, v| acc + v.clone());
            if infeasibility.exceeds_zero() {
                return LpResult::Infeasible;
            }
            for j in self.artificial_start..total {
                self.lower[j] = Some(S::zero());
                self.upper[j] = Some(S::zero());
            }
        }

        let mut cost = lp.objective.clone();
        cost.resize(total, S::zero());
        if !self.optimize(&cost) {
            return LpResult::Unbounded;
        }
        let point = self.values[..self.structural].to_vec();
        debug_assert!(lp.is_feasible(&point), "simplex returned an infeasible point");
        LpResult::Optimal {
            value: dot(&lp.objective, &point),
            point: Vector::new(point).expect("at least one variable"),
        }
    }

    fn can_increase(&self, j: usize) -> bool {
        self.upper[j]
            .as_ref()
            .is_none_or(|u| (u.clone() - self.values[j].clone()).exceeds_zero())
    }

    fn can_decrease(&self, j: usize) -> bool {
        self.lower[j]
            .as_ref()
            .is_none_or(|l| (self.values[j].clone() - l.clone()).exceeds_zero())
    }

    fn reduced_cost(&self, cost: &[S], j: usize) -> S {
        self.rows
            .iter()
            .zip(&self.basis)
            .fold(cost[j].clone(), |acc, (row, &b)| {
                if cost[b].is_zero() || row[j].is_zero() {
                    acc
                } else {
                    acc - cost[b].clone() * row[j].clone()
                }
            })
    }

    /// Bland's rule: the lowest-index nonbasic column that improves.
    fn entering(&self, cost: &[S]) -> Option<(usize, bool)> {
        (0..self.columns())
            .filter(|&j| self.basic_row[j].is_none())
            .find_map(|j| {
                let d = self.reduced_cost(cost, j);
                if d.below_zero() && self.can_increase(j) {
                    Some((j, true))
                } else if d.exceeds_zero() && self.can_decrease(j) {
                    Some((j, false))
                } else {
                    None
                }
            })
    }

    fn ratio_test(&self, j: usize, increase: bool) -> Option<Step<S>> {
        let mut best: Option<Step<S>> = if increase {
            self.upper[j]
                .as_ref()
                .map(|u| Step::Flip(u.clone() - self.values[j].clone()))
        } else {
            self.lower[j]
                .as_ref()
                .map(|l| Step::Flip(self.values[j].clone() - l.clone()))
        };
        for (i, row) in self.rows.iter().enumerate() {
            let a = &row[j];
            if a.is_negligible() {
                continue;
            }
            let rate = if increase { -a.clone() } else { a.clone() };
            let b = self.basis[i];
            let theta = if rate.is_negative() {
                self.lower[b]
                    .as_ref()
                    .map(|l| (self.values[b].clone() - l.clone()) / -rate)
            } else {
                self.upper[b]
                    .as_ref()
                    .map(|u| (u.clone() - self.values[b].clone()) / rate)
            };
            let Some(theta) = theta else { continue };
            let theta = theta.max_of(S::zero());
            let better = match &best {
                None => true,
                Some(Step::Flip(t)) => theta < *t,
                Some(Step::Pivot(t, r)) => theta < *t || (theta == *t && b < self.basis[*r]),
            };
            if better {
                best = Some(Step::Pivot(theta, i));
            }
        }
        best
    }

    /// Returns false when the objective is unbounded below.
    fn optimize(&mut self, cost: &[S]) -> bool {
        while let Some((j, increase)) = self.entering(cost) {
            let Some(step) = self.ratio_test(j, increase) else {
                return false;
            };
            let theta = match &step {
                Step::Flip(t) | Step::Pivot(t, _) => t.clone(),
            };
            let signed = if increase { theta.clone() } else { -theta.clone() };
            if !theta.is_zero() {
                self.values[j] = self.values[j].clone() + signed.clone();
                for i in 0..self.rows.len() {
                    let a = &self.rows[i][j];
                    if a.is_zero() {
                        continue;
                    }
                    let b = self.basis[i];
                    self.values[b] = self.values[b].clone() - a.clone() * signed.clone();
                }
            }
            if let Step::Pivot(_, r) = step {
                self.pivot(r, j);
            }
        }
        true
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let leaving = self.basis[r];
        let p = self.rows[r][j].clone();
        for a in self.rows[r].iter_mut() {
            if !a.is_zero() {
                *a = a.clone() / p.clone();
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let factor = row[j].clone();
            for (a, pr) in row.iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *a = a.clone() - factor.clone() * pr.clone();
                }
            }
        }
        // pin the leaving variable exactly on the bound it reached
        let lv = &self.values[leaving];
        if let Some(l) = &self.lower[leaving] {
            if lv <= l {
                self.values[leaving] = l.clone();
            }
        }
        if let Some(u) = &self.upper[leaving] {
            if &self.values[leaving] >= u {
                self.values[leaving] = u.clone();
            }
        }
        self.basis[r] = j;
        self.basic_row[leaving] = None;
        self.basic_row[j] = Some(r);
    }
}
