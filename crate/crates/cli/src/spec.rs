//! Operator specs on the command line.

use std::fmt;
use std::path::Path;

use minmod_core::constructions::{
    direct_sum_operator, paper_operator, paper_perturbation, shifted_geometric_functional,
};
use minmod_core::exactnum::parse_scalar;
use minmod_core::{Matrix, Operator, Rational, Vector};

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorSpec {
    PaperT,
    PaperK,
    Identity,
    Zero,
    DirectSum,
    Diagonal(Vec<Rational>),
    File(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    /// Not a known construction, or arguments that do not fit it.
    Usage(String),
    /// A matrix file that cannot be read or parsed.
    Input(String),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Usage(m) | SpecError::Input(m) => f.write_str(m),
        }
    }
}

impl OperatorSpec {
    /// Names map to constructions. Anything else is a matrix file if it
    /// exists or looks like a path, and an unknown spec otherwise.
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        Ok(match text {
            "paper-t" => OperatorSpec::PaperT,
            "paper-k" => OperatorSpec::PaperK,
            "identity" => OperatorSpec::Identity,
            "zero" => OperatorSpec::Zero,
            "direct-sum" => OperatorSpec::DirectSum,
            _ => {
                if let Some(list) = text.strip_prefix("diagonal:") {
                    let entries = list
                        .split(',')
                        .map(|s| {
                            parse_scalar(s).map_err(|e| {
                                SpecError::Usage(format!("bad diagonal entry {s:?}: {e}"))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    OperatorSpec::Diagonal(entries)
                } else if Path::new(text).exists() || text.contains(['/', '.']) {
                    OperatorSpec::File(text.to_string())
                } else {
                    return Err(SpecError::Usage(format!(
                        "unknown operator spec {text:?} (expected paper-t, paper-k, identity, zero, direct-sum, diagonal:a,b,... or a matrix file)"
                    )));
                }
            }
        })
    }

    pub fn build(&self, n: usize) -> Result<Operator, SpecError> {
        if n == 0 {
            return Err(SpecError::Usage("N must be at least 1".into()));
        }
        let op = match self {
            OperatorSpec::PaperT => paper_operator(n),
            OperatorSpec::PaperK => paper_perturbation(n),
            OperatorSpec::Identity => Operator::identity(n).expect("n >= 1"),
            OperatorSpec::Zero => Operator::zero(n).expect("n >= 1"),
            OperatorSpec::DirectSum => {
                if n < 2 {
                    return Err(SpecError::Usage("direct-sum needs N >= 2".into()));
                }
                direct_sum_operator(&shifted_geometric_functional(n - 1))
            }
            OperatorSpec::Diagonal(d) => {
                if d.len() != n {
                    return Err(SpecError::Usage(format!(
                        "diagonal has {} entries but N = {n}",
                        d.len()
                    )));
                }
                Operator::diagonal(Vector::new(d.clone()).expect("n >= 1"))
            }
            OperatorSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| SpecError::Input(format!("cannot read {path}: {e}")))?;
                let m = parse_matrix(&text).map_err(|e| SpecError::Input(format!("{path}: {e}")))?;
                if m.dim() != n {
                    return Err(SpecError::Usage(format!(
                        "{path} holds a {0}x{0} matrix but N = {n}",
                        m.dim()
                    )));
                }
                Operator::dense(m)
            }
        };
        Ok(op)
    }
}

/// Dense matrix text: a line with N, then N rows of N rationals.
///
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_matrix(text: &str) -> Result<Matrix, String> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, first) = lines.next().ok_or("empty matrix file")?;
    let n: usize = first
        .parse()
        .map_err(|_| format!("line {line}: expected the dimension, got {first:?}"))?;
    if n == 0 {
        return Err(format!("line {line}: dimension must be at least 1"));
    }
    let mut rows = Vec::with_capacity(n);
    for (line, l) in lines {
        if rows.len() == n {
            return Err(format!("line {line}: more than {n} rows"));
        }
        let row = l
            .split_whitespace()
            .map(|tok| parse_scalar(tok).map_err(|e| format!("line {line}: {e}")))
            .collect::<Result<Vec<Rational>, _>>()?;
        if row.len() != n {
            return Err(format!("line {line}: expected {n} entries, got {}", row.len()));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(format!("expected {n} rows, got {}", rows.len()));
    }
    Matrix::from_rows(rows).map_err(|e| e.to_string())
}
