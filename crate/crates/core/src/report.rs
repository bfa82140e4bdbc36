//! CSV and JSON report files.
//!
//! Schema (version [`SCHEMA_VERSION`]):
//!
//! * JSON: an object with `schema_version`, `kind`, `config` (the effective
//!   run configuration), `summary`, `columns` and `rows`; each row is an
//!   object keyed by column name in column order.
//! * CSV: `# schema_version: 1`, `# kind: …`, `# config: <json>` and one
//!   `# summary.<key>: <json>` line per summary entry, followed by a
//!   header row and the data rows.
//!
//! * Text: the same `# ` header lines, one `key = value` line per summary
//!   entry, then the rows as whitespace-aligned columns.
//!
//! Exact quantities are rational strings (`"p/q"`, or `"p"` for integers).
//! With decimals enabled every exact column `c` is followed by `c_approx`,
//! rounded to 12 places and approximate by definition.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};
use thiserror::Error;

use crate::harness::{ConvergenceReport, ConvergenceRow, EscapeRow, SearchOutcome, WeakNullVerdict};
use crate::minmod::{MinModResult, OracleResult, PerturbationGain};
use crate::scalar::Scalar;

pub const SCHEMA_VERSION: u32 = 1;
pub const DECIMAL_PLACES: usize = 12;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("csv encoding failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed report: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Destination {
    Stdout,
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Bool(bool),
    Text(String),
    Exact { exact: String, approx: String },
}

impl Cell {
    pub fn exact<S: Scalar>(value: &S) -> Self {
        Cell::Exact {
            exact: value.to_string(),
            approx: value.to_decimal(DECIMAL_PLACES),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(v) => Value::from(*v),
            Cell::Text(v) => Value::from(v.clone()),
            Cell::Exact { exact, .. } => Value::from(exact.clone()),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::Exact { exact, .. } => exact.clone(),
        }
    }
}

/// A rendered report: named columns, rows of cells, and a free-form summary.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub kind: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Map<String, Value>,
}

impl Table {
    pub fn new(kind: &str, columns: &[&str]) -> Self {
        Self {
            kind: kind.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Map::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match columns");
        self.rows.push(row);
    }

    pub fn with_summary(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.summary.insert(key.to_string(), value.into());
        self
    }

    /// Column names after expanding exact columns with their `_approx` twin.
    fn expanded_columns(&self, approx: bool) -> Vec<String> {
        let mut out = Vec::new();
        for (i, name) in self.columns.iter().enumerate() {
            out.push(name.clone());
            let exact_col = self
                .rows
                .first()
                .is_some_and(|r| matches!(r[i], Cell::Exact { .. }));
            if approx && exact_col {
                out.push(format!("{name}_approx"));
            }
        }
        out
    }

    fn expanded_row(&self, row: &[Cell], approx: bool) -> Vec<(String, Value, String)> {
        let mut out = Vec::new();
        for (name, cell) in self.columns.iter().zip(row) {
            out.push((name.clone(), cell.json(), cell.csv()));
            if let (true, Cell::Exact { approx: a, .. }) = (approx, cell) {
                out.push((format!("{name}_approx"), Value::from(a.clone()), a.clone()));
            }
        }
        out
    }

    pub fn to_json(&self, config: &Value, approx: bool) -> Value {
        let mut root = Map::new();
        root.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        root.insert("kind".into(), Value::from(self.kind.clone()));
        root.insert("config".into(), config.clone());
        root.insert("summary".into(), Value::Object(self.summary.clone()));
        root.insert(
            "columns".into(),
            Value::from(self.expanded_columns(approx)),
        );
        if approx {
            root.insert(
                "approx_note".into(),
                Value::from(format!(
                    "*_approx columns are decimal approximations rounded to {DECIMAL_PLACES} places"
                )),
            );
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.expanded_row(r, approx)
                        .into_iter()
                        .map(|(k, v, _)| (k, v))
                        .collect(),
                )
            })
            .collect::<Vec<_>>();
        root.insert("rows".into(), Value::Array(rows));
        Value::Object(root)
    }

    pub fn to_csv(&self, config: &Value, approx: bool) -> Result<String, ReportError> {
        let mut out = format!(
            "# schema_version: {SCHEMA_VERSION}\n# kind: {}\n# config: {}\n",
            self.kind, config
        );
        for (k, v) in &self.summary {
            out.push_str(&format!("# summary.{k}: {v}\n"));
        }
        if approx {
            out.push_str(&format!(
                "# *_approx columns are decimal approximations rounded to {DECIMAL_PLACES} places\n"
            ));
        }
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(self.expanded_columns(approx))?;
        for r in &self.rows {
            writer.write_record(self.expanded_row(r, approx).into_iter().map(|(_, _, c)| c))?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| ReportError::Malformed(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn render(&self, config: &Value, format: Format, approx: bool) -> Result<String, ReportError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json(config, approx))
                    .expect("json values serialize");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.to_csv(config, approx),
            Format::Text => Ok(self.to_text(config, approx)),
        }
    }

    pub fn to_text(&self, config: &Value, approx: bool) -> String {
        let mut out = format!(
            "# schema_version: {SCHEMA_VERSION}\n# kind: {}\n# config: {}\n",
            self.kind, config
        );
        for (k, v) in &self.summary {
            match v {
                Value::String(s) => out.push_str(&format!("{k} = {s}\n")),
                other => out.push_str(&format!("{k} = {other}\n")),
            }
        }
        if self.rows.is_empty() {
            return out;
        }
        let mut lines = vec![self.expanded_columns(approx)];
        for r in &self.rows {
            lines.push(self.expanded_row(r, approx).into_iter().map(|(_, _, c)| c).collect());
        }
        let widths: Vec<usize> = (0..lines[0].len())
            .map(|i| lines.iter().map(|l| l[i].chars().count()).max().unwrap_or(0))
            .collect();
        out.push('\n');
        for l in &lines {
            let cells: Vec<String> = l
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

pub trait ToTable {
    fn to_table(&self) -> Table;
}

pub fn emit_report(
    report: &impl ToTable,
    config: &Value,
    format: Format,
    approx: bool,
    destination: &Destination,
) -> Result<(), ReportError> {
    let text = report.to_table().render(config, format, approx)?;
    write_text(&text, destination)
}

pub fn write_text(text: &str, destination: &Destination) -> Result<(), ReportError> {
    match destination {
        Destination::Stdout => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| ReportError::Io {
                path: "<stdout>".into(),
                source,
            }),
        Destination::File(path) => fs::write(path, text).map_err(|source| ReportError::Io {
            path: display(path),
            source,
        }),
    }
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

impl<S: Scalar> ToTable for ConvergenceReport<S> {
    fn to_table(&self) -> Table {
        let mut t = Table::new(
            "convergence",
            &["N", "m_N", "closed_form", "gap", "witness_min_tail", "witness_max_tail"],
        )
        .with_summary("n_min", self.n_min)
        .with_summary("n_max", self.n_max)
        .with_summary("partial", self.partial)
        .with_summary("gaps_strictly_decreasing", self.gaps_strictly_decreasing())
        .with_summary("all_checks_pass", self.all_checks_pass());
        for r in &self.rows {
            t.push(vec![
                Cell::Int(r.n as i64),
                Cell::exact(&r.m_n),
                Cell::exact(&r.closed_form),
                Cell::exact(&r.gap),
                Cell::exact(&r.witness_min_tail),
                Cell::exact(&r.witness_max_tail),
            ]);
        }
        t
    }
}

impl<S: Scalar> ConvergenceReport<S> {
    /// Reads back a JSON convergence report written by [`emit_report`].
    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        let bad = |m: &str| ReportError::Malformed(m.to_string());
        let root: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
        if root["kind"] != "convergence" {
            return Err(bad("not a convergence report"));
        }
        let field = |v: &Value, k: &str| -> Result<S, ReportError> {
            let s = v[k].as_str().ok_or_else(|| bad(k))?;
            crate::exactnum::parse_scalar(s).map_err(|e| bad(&e.to_string()))
        };
        let usize_of = |v: &Value| v.as_u64().map(|x| x as usize).ok_or_else(|| bad("integer"));
        let rows = root["rows"]
            .as_array()
            .ok_or_else(|| bad("rows"))?
            .iter()
            .map(|r| {
                Ok(ConvergenceRow {
                    n: usize_of(&r["N"])?,
                    m_n: field(r, "m_N")?,
                    closed_form: field(r, "closed_form")?,
                    gap: field(r, "gap")?,
                    witness_min_tail: field(r, "witness_min_tail")?,
                    witness_max_tail: field(r, "witness_max_tail")?,
                })
            })
            .collect::<Result<Vec<_>, ReportError>>()?;
        Ok(ConvergenceReport {
            n_min: usize_of(&root["summary"]["n_min"])?,
            n_max: usize_of(&root["summary"]["n_max"])?,
            partial: root["summary"]["partial"].as_bool().ok_or_else(|| bad("partial"))?,
            rows,
        })
    }
}

/// Escape-profile rows.
pub struct EscapeProfile<S>(pub Vec<EscapeRow<S>>);

impl<S: Scalar> ToTable for EscapeProfile<S> {
    fn to_table(&self) -> Table {
        let mut t = Table::new(
            "escape_profile",
            &[
                "N",
                "first_modulus",
                "min_tail",
                "max_tail",
                "min_tail_distance",
                "max_tail_distance",
                "predicted_distance",
            ],
        )
        .with_summary("all_match_prediction", self.0.iter().all(|r| r.matches_prediction()));
        for r in &self.0 {
            t.push(vec![
                Cell::Int(r.n as i64),
                Cell::exact(&r.first_modulus),
                Cell::exact(&r.min_tail),
                Cell::exact(&r.max_tail),
                Cell::exact(&r.min_tail_distance),
                Cell::exact(&r.max_tail_distance),
                Cell::exact(&r.predicted_distance),
            ]);
        }
        t
    }
}

impl<S: Scalar> ToTable for WeakNullVerdict<S> {
    fn to_table(&self) -> Table {
        let mut t = Table::new("weak_null", &["coordinate", "min_modulus", "last_modulus"])
            .with_summary("family_size", self.family_size)
            .with_summary("ambient_dim", self.ambient_dim)
            .with_summary(
                "verdict",
                serde_json::to_value(&self.verdict).expect("verdict serializes"),
            );
        for c in &self.coordinates {
            t.push(vec![
                Cell::Int(c.coordinate as i64),
                Cell::exact(&c.min_modulus),
                Cell::exact(&c.last_modulus),
            ]);
        }
        t
    }
}

impl<S: Scalar> ToTable for MinModResult<S> {
    fn to_table(&self) -> Table {
        let mut t = Table::new("minmod", &["facet", "sign", "value", "mirrored"])
            .with_summary("value", self.value.to_string())
            .with_summary("witness", self.witness.to_string())
            .with_summary("facet", format!("{}{}", self.facet.sign, self.facet.index));
        for fv in &self.facet_values {
            t.push(vec![
                Cell::Int(fv.facet.index as i64),
                Cell::Text(fv.facet.sign.to_string()),
                Cell::exact(&fv.value),
                Cell::Bool(fv.mirrored),
            ]);
        }
        t
    }
}

impl<S: Scalar> ToTable for OracleResult<S> {
    fn to_table(&self) -> Table {
        Table::new("oracle", &[])
            .with_summary("upper", self.upper.to_string())
            .with_summary("lower", self.lower.to_string())
            .with_summary("lipschitz_lower", self.lipschitz_lower.to_string())
            .with_summary(
                "inverse_lower",
                self.inverse_lower.clone().map_or(Value::Null, Value::from),
            )
            .with_summary("resolution", self.resolution.to_string())
            .with_summary("covering_radius", self.covering_radius.to_string())
            .with_summary("lipschitz", self.lipschitz.to_string())
            .with_summary("argmin", self.argmin.to_string())
            .with_summary("points_evaluated", self.points_evaluated)
    }
}

impl<S: Scalar> ToTable for PerturbationGain<S> {
    fn to_table(&self) -> Table {
        Table::new("perturbation", &[])
            .with_summary("m_T", self.m_t.to_string())
            .with_summary("m_TK", self.m_tk.to_string())
            .with_summary("gain", self.gain.to_string())
    }
}

impl<S: Scalar> ToTable for SearchOutcome<S> {
    fn to_table(&self) -> Table {
        let mut t = Table::new("search", &["coordinate", "u", "g"])
            .with_summary("m_T", self.m_t.to_string())
            .with_summary("m_TK", self.m_tk.to_string())
            .with_summary("gain", self.gain.to_string())
            .with_summary("norm", self.norm.to_string())
            .with_summary("norm_budget", self.norm_budget.to_string())
            .with_summary("loop_score", self.loop_score.to_string())
            .with_summary("iterations", self.iterations)
            .with_summary("evaluations", self.evaluations)
            .with_summary("accepted_moves", self.accepted_moves)
            .with_summary("seed", self.seed);
        for (i, (u, g)) in self.u.iter().zip(self.g.as_slice()).enumerate() {
            t.push(vec![Cell::Int(i as i64 + 1), Cell::exact(u), Cell::exact(g)]);
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{convergence_study, StudyConfig};
    use crate::Rational;

    fn study() -> ConvergenceReport<Rational> {
        convergence_study(2, 5, &StudyConfig::default()).unwrap()
    }

    #[test]
    fn csv_schema_and_gap_column() {
        let csv = study().to_table().to_csv(&Value::Null, false).unwrap();
        let data: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data[0], "N,m_N,closed_form,gap,witness_min_tail,witness_max_tail");
        assert_eq!(data.len(), 5);
        assert!(data[4].starts_with("5,16/31,16/31,1/62,"));
        assert!(csv.starts_with("# schema_version: 1\n# kind: convergence\n"));
    }

    #[test]
    fn three_rows_for_two_to_four() {
        let rep: ConvergenceReport<Rational> = convergence_study(2, 4, &StudyConfig::default()).unwrap();
        let json = rep.to_table().to_json(&Value::Null, false);
        assert_eq!(json["rows"].as_array().unwrap().len(), 3);
        assert_eq!(json["columns"][0], "N");
        assert_eq!(json["schema_version"], 1);
    }

    #[test]
    fn json_round_trip() {
        let rep = study();
        let text = rep.to_table().render(&Value::Null, Format::Json, true).unwrap();
        assert_eq!(ConvergenceReport::<Rational>::from_json(&text).unwrap(), rep);
        assert!(ConvergenceReport::<Rational>::from_json("{}").is_err());
    }

    #[test]
    fn approx_columns_are_opt_in() {
        let t = study().to_table();
        let plain = t.to_csv(&Value::Null, false).unwrap();
        assert!(!plain.contains("_approx"));
        let approx = t.to_csv(&Value::Null, true).unwrap();
        assert!(approx.contains("m_N,m_N_approx"));
        assert!(approx.contains("16/31,0.516129032258"));
    }

    #[test]
    fn text_layout() {
        let text = study().to_table().to_text(&Value::Null, false);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "# kind: convergence");
        assert!(lines.contains(&"n_min = 2"));
        assert!(lines.iter().any(|l| l.starts_with("N  m_N ")));
        assert!(lines.last().unwrap().starts_with("5  16/31"));
    }

    #[test]
    fn minmod_summary_strings() {
        use crate::constructions::paper_operator;
        let res = crate::minmod::min_modulus_sup(&paper_operator::<Rational>(2));
        let text = res.to_table().to_text(&Value::Null, false);
        assert!(text.contains("value = 2/3\n"));
        assert!(text.contains("witness = (1, 2/3)\n"));
        assert_eq!(res.to_table().rows.len(), 4);
    }

    #[test]
    fn unwritable_destination() {
        let err = emit_report(
            &study(),
            &Value::Null,
            Format::Csv,
            false,
            &Destination::File("/nonexistent-dir/x.csv".into()),
        )
        .unwrap_err();
        assert!(matches!(err, ReportError::Io { .. }));
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = study().to_table().render(&Value::Null, Format::Json, false).unwrap();
        let b = study().to_table().render(&Value::Null, Format::Json, false).unwrap();
        assert_eq!(a, b);
    }
}
