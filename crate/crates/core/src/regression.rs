//! The fixed end-to-end regression over the c₀ counterexample.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::{
    direct_sum_operator, geometric_functional, minimizing_vector, paper_operator,
    shifted_geometric_functional, PaperFamily,
};
use crate::exactnum::{Covector, Vector};
use crate::harness::{closed_form, minimizing_value, weak_null_test, Verdict};
use crate::minmod::min_modulus_sup;
use crate::report::{Cell, Table, ToTable};
use crate::scalar::Scalar;

/// Deliberate faults for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Replace `2^{1-j}` by `2^{-j}` in the functional.
    CorruptFunctional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperCheckConfig {
    pub n_max: usize,
    pub fault: Option<Fault>,
}

impl Default for PaperCheckConfig {
    fn default() -> Self {
        Self {
            n_max: 10,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectionRow<S> {
    pub n: usize,
    pub f_l1: S,
    pub m_n: S,
    pub closed_form: S,
    pub minimizing_value: S,
    pub m_tk: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaperCheckReport<S> {
    pub checks: Vec<Check>,
    pub rows: Vec<SectionRow<S>>,
}

impl<S: Scalar> PaperCheckReport<S> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

fn functional<S: Scalar>(n: usize, fault: Option<Fault>) -> Covector<S> {
    match fault {
        None => geometric_functional(n),
        Some(Fault::CorruptFunctional) => Covector::new(
            (1..=n)
                .map(|j| if j == 1 { S::zero() } else { S::pow2(-(j as i32)) })
                .collect(),
        )
        .expect("n >= 1"),
    }
}

struct Collector {
    checks: Vec<Check>,
}

impl Collector {
    fn check(&mut self, name: &'static str, failures: Vec<String>) {
        self.checks.push(Check {
            name,
            passed: failures.is_empty(),
            failures,
        });
    }
}

pub fn run_paper_check<S: Scalar>(config: &PaperCheckConfig) -> PaperCheckReport<S> {
    let n_max = config.n_max.max(2);
    let families: Vec<PaperFamily<S>> = (1..=n_max)
        .map(|n| {
            PaperFamily::with_functional(functional(n, config.fault))
                .expect("functionals vanish on e1")
        })
        .collect();
    let mut out = Collector { checks: Vec::new() };

    let mut fails = Vec::new();
    for fam in &families {
        let expected = S::one() - S::pow2(1 - fam.dim as i32);
        if !fam.f.as_slice()[0].is_zero() {
            fails.push(format!("N={}: f(e1) != 0", fam.dim));
        }
        if fam.f.dual_norm_l1() != expected {
            fails.push(format!(
                "N={}: ‖f‖₁ = {} expected {}",
                fam.dim,
                fam.f.dual_norm_l1(),
                expected
            ));
        }
    }
    out.check("functional_norms", fails);

    let mut rows = Vec::new();
    let mut closed = Vec::new();
    let mut lower = Vec::new();
    let mut minimizing = Vec::new();
    let mut identity = Vec::new();
    let mut perturbed = Vec::new();
    let mut witnesses = Vec::new();
    for fam in families.iter().skip(1) {
        let n = fam.dim;
        let res = min_modulus_sup(&fam.t);
        if res.value != closed_form::<S>(n) {
            closed.push(format!("N={n}: m_N = {} expected {}", res.value, closed_form::<S>(n)));
        }
        if res.value <= S::half() {
            lower.push(format!("N={n}: m_N = {} not above 1/2", res.value));
        }
        let xn = minimizing_vector::<S>(n);
        let value = fam.t.apply(&xn).expect("matching dimension").sup_norm();
        if value != minimizing_value::<S>(n) {
            minimizing.push(format!(
                "N={n}: ‖T x⁽ᴺ⁾‖ = {value} expected {}",
                minimizing_value::<S>(n)
            ));
        }
        if !fam.sums_to_identity() {
            identity.push(format!("N={n}: T + K is not the identity"));
        }
        let tk = fam.t.add(&fam.k).expect("matching dimension");
        let m_tk = min_modulus_sup(&tk).value;
        if !m_tk.is_one() {
            perturbed.push(format!("N={n}: m(T+K) = {m_tk}"));
        }
        witnesses.push(res.witness.clone());
        rows.push(SectionRow {
            n,
            f_l1: fam.f.dual_norm_l1(),
            closed_form: closed_form(n),
            m_n: res.value,
            minimizing_value: value,
            m_tk,
        });
    }
    out.check("closed_form", closed);
    out.check("lower_bound", lower);
    out.check("minimizing_values", minimizing);
    out.check("perturbation_identity", identity);
    out.check("perturbed_modulus", perturbed);

    let expect_first = |family: &[Vector<S>], label: &str| -> Vec<String> {
        match weak_null_test(family, &S::zero()) {
            Ok(v) => match &v.verdict {
                Verdict::NotWeaklyNull { coordinate: 1, beta } if beta == "1" => vec![],
                other => vec![format!("{label}: verdict {other:?}")],
            },
            Err(e) => vec![format!("{label}: {e}")],
        }
    };
    let xs: Vec<Vector<S>> = (2..=n_max).map(minimizing_vector).collect();
    out.check("weak_null_minimizing_sequence", expect_first(&xs, "x⁽ᴺ⁾"));
    out.check("weak_null_witnesses", expect_first(&witnesses, "witnesses"));

    let basis: Vec<Vector<S>> = (1..=n_max)
        .map(|n| Vector::basis(n, n).expect("n >= 1"))
        .collect();
    let basis_fail = match weak_null_test(&basis, &S::zero()) {
        Ok(v) if v.verdict == Verdict::WeaklyNull => vec![],
        Ok(v) => vec![format!("e_N: verdict {:?}", v.verdict)],
        Err(e) => vec![format!("e_N: {e}")],
    };
    out.check("weak_null_basis", basis_fail);

    let mut ds = Vec::new();
    for n in 3..=n_max {
        let lhs = direct_sum_operator::<S>(&shifted_geometric_functional(n - 1)).to_matrix();
        if lhs != paper_operator::<S>(n).to_matrix() {
            ds.push(format!("N={n}: direct sum differs from the c0 operator"));
        }
    }
    out.check("direct_sum_equivalence", ds);

    PaperCheckReport {
        checks: out.checks,
        rows,
    }
}

impl<S: Scalar> ToTable for PaperCheckReport<S> {
    fn to_table(&self) -> Table {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| serde_json::to_value(c).expect("checks serialize"))
            .collect();
        let mut t = Table::new(
            "paper_check",
            &["N", "f_l1", "m_N", "closed_form", "minimizing_value", "m_TK"],
        )
        .with_summary("passed", self.passed())
        .with_summary("failed_checks", self.failed_checks())
        .with_summary("checks", checks);
        for r in &self.rows {
            t.push(vec![
                Cell::Int(r.n as i64),
                Cell::exact(&r.f_l1),
                Cell::exact(&r.m_n),
                Cell::exact(&r.closed_form),
                Cell::exact(&r.minimizing_value),
                Cell::exact(&r.m_tk),
            ]);
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn default_run_passes() {
        let rep = run_paper_check::<Rational>(&PaperCheckConfig::default());
        assert!(rep.passed(), "{:?}", rep.failed_checks());
        let last = rep.rows.last().unwrap();
        assert_eq!(last.n, 10);
        assert_eq!(last.m_n, Rational::ratio(512, 1023));
        assert_eq!(rep.checks.len(), 10);
    }

    #[test]
    fn corrupted_functional_is_caught() {
        let rep = run_paper_check::<Rational>(&PaperCheckConfig {
            n_max: 6,
            fault: Some(Fault::CorruptFunctional),
        });
        assert!(!rep.passed());
        let failed = rep.failed_checks();
        assert!(failed.contains(&"functional_norms"));
        assert!(failed.contains(&"closed_form"));
        assert!(!failed.contains(&"perturbation_identity"));
    }
}
