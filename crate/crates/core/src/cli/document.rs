//! Self-describing result documents.
//!
//! The text form is a sequence of `[section]` blocks of `key = value` lines.
//! Tables carry a `columns` line followed by `row` lines. Floats are written
//! with 17 significant digits so that parsing restores them bit for bit.

use std::fmt::Write as _;

use super::config::{fmt_f64, key_values, ProblemSpec};
use super::CliError;

const HEADER: &str = "# heun result document";

/// `(line, key, value)`
type Entry = (usize, String, String);

#[derive(Debug, Clone, PartialEq)]
pub struct EigenRecord {
    pub n: usize,
    pub lambda: f64,
    pub a_coeff: f64,
    pub norm: f64,
    pub residual: f64,
}

/// One `hₙ(x)` sample; exactly one of `value` and `error` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub n: usize,
    pub x: f64,
    pub value: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormRecord {
    pub n: usize,
    pub lambda: f64,
    pub closed_form: f64,
    pub quadrature: f64,
    pub rel_error: f64,
    pub shooting_mismatch: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationSummary {
    pub passed: bool,
    pub max_offdiag: f64,
    pub max_diag_deviation: f64,
    pub norms: Vec<NormRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultDocument {
    pub command: String,
    pub version: String,
    pub timing_seconds: f64,
    pub spec: ProblemSpec,
    /// `[α, β, γ, δ, ε, a]` after solving for a `riemann` entry.
    pub parameters: [f64; 6],
    pub eigen: Vec<EigenRecord>,
    pub samples: Vec<SampleRecord>,
    pub verification: Option<VerificationSummary>,
}

const EIGEN_COLUMNS: &str = "n,lambda,a,norm,residual";
const SAMPLE_COLUMNS: &str = "n,x,h,error";
const NORM_COLUMNS: &str = "n,lambda,closed_form,quadrature,rel_error,shooting_mismatch,passed";

fn eigen_row(r: &EigenRecord) -> String {
    format!("{},{},{},{},{}", r.n, fmt_f64(r.lambda), fmt_f64(r.a_coeff), fmt_f64(r.norm), fmt_f64(r.residual))
}

fn sample_row(r: &SampleRecord) -> String {
    let value = r.value.map(fmt_f64).unwrap_or_default();
    let error = r.error.as_deref().unwrap_or("");
    format!("{},{},{},{}", r.n, fmt_f64(r.x), value, error)
}

fn norm_row(r: &NormRecord) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        r.n,
        fmt_f64(r.lambda),
        fmt_f64(r.closed_form),
        fmt_f64(r.quadrature),
        fmt_f64(r.rel_error),
        fmt_f64(r.shooting_mismatch),
        r.passed
    )
}

fn table(out: &mut String, columns: &str, rows: impl Iterator<Item = String>) {
    let _ = writeln!(out, "columns = {columns}");
    for r in rows {
        let _ = writeln!(out, "row = {r}");
    }
}

impl ResultDocument {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{HEADER}");
        let _ = writeln!(s, "[meta]");
        let _ = writeln!(s, "command = {}", self.command);
        let _ = writeln!(s, "version = {}", self.version);
        let _ = writeln!(s, "timing_seconds = {}", fmt_f64(self.timing_seconds));
        let _ = writeln!(s, "[spec]");
        s.push_str(&self.spec.to_text());
        let _ = writeln!(s, "[parameters]");
        for (k, v) in super::config::PARAMETER_KEYS.iter().zip(self.parameters) {
            let _ = writeln!(s, "{k} = {}", fmt_f64(v));
        }
        let _ = writeln!(s, "[eigenvalues]");
        table(&mut s, EIGEN_COLUMNS, self.eigen.iter().map(eigen_row));
        let _ = writeln!(s, "[samples]");
        table(&mut s, SAMPLE_COLUMNS, self.samples.iter().map(sample_row));
        if let Some(v) = &self.verification {
            let _ = writeln!(s, "[verification]");
            let _ = writeln!(s, "passed = {}", v.passed);
            let _ = writeln!(s, "max_offdiag = {}", fmt_f64(v.max_offdiag));
            let _ = writeln!(s, "max_diag_deviation = {}", fmt_f64(v.max_diag_deviation));
            table(&mut s, NORM_COLUMNS, v.norms.iter().map(norm_row));
        }
        s
    }

    /// The main table of the document as CSV: samples for `eval`, norm
    /// checks for `verify`, eigenvalue records otherwise.
    pub fn to_csv(&self) -> String {
        let (columns, rows): (&str, Vec<String>) = match (self.command.as_str(), &self.verification) {
            ("eval", _) => (SAMPLE_COLUMNS, self.samples.iter().map(sample_row).collect()),
            (_, Some(v)) => (NORM_COLUMNS, v.norms.iter().map(norm_row).collect()),
            _ => (EIGEN_COLUMNS, self.eigen.iter().map(eigen_row).collect()),
        };
        let mut s = String::new();
        let _ = writeln!(s, "{columns}");
        for r in rows {
            let _ = writeln!(s, "{r}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut sections: Vec<(String, Vec<Entry>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                sections.push((name.to_string(), Vec::new()));
                continue;
            }
            let Some((_, entries)) = sections.last_mut() else {
                return Err(perr(i + 1, "content before the first section"));
            };
            // rows may contain `#` inside error messages, so only split on `=`
            let Some((k, v)) = line.split_once('=') else {
                return Err(perr(i + 1, "expected `key = value`"));
            };
            entries.push((i + 1, k.trim().to_string(), v.trim().to_string()));
        }
        let section = |name: &str| sections.iter().find(|(n, _)| n == name).map(|(_, e)| e.as_slice());
        let required = |name: &str| section(name).ok_or_else(|| perr(0, &format!("missing section [{name}]")));

        let meta = required("meta")?;
        let spec_pairs = required("spec")?;
        let spec = ProblemSpec::from_pairs(&key_values(
            &spec_pairs.iter().map(|(_, k, v)| format!("{k} = {v}\n")).collect::<String>(),
        )?)?;

        let mut parameters = [0.0; 6];
        let param_pairs = required("parameters")?;
        for (slot, key) in super::config::PARAMETER_KEYS.iter().enumerate() {
            parameters[slot] = float(lookup(param_pairs, key)?)?;
        }

        let eigen = rows(required("eigenvalues")?, EIGEN_COLUMNS, 5)?
            .into_iter()
            .map(|(line, c)| {
                Ok(EigenRecord {
                    n: count(&c[0], line)?,
                    lambda: float_at(&c[1], line)?,
                    a_coeff: float_at(&c[2], line)?,
                    norm: float_at(&c[3], line)?,
                    residual: float_at(&c[4], line)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;

        let samples = rows(required("samples")?, SAMPLE_COLUMNS, 4)?
            .into_iter()
            .map(|(line, c)| {
                Ok(SampleRecord {
                    n: count(&c[0], line)?,
                    x: float_at(&c[1], line)?,
                    value: if c[2].is_empty() { None } else { Some(float_at(&c[2], line)?) },
                    error: if c[3].is_empty() { None } else { Some(c[3].clone()) },
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;

        let verification = match section("verification") {
            None => None,
            Some(v) => Some(VerificationSummary {
                passed: boolean(lookup(v, "passed")?)?,
                max_offdiag: float(lookup(v, "max_offdiag")?)?,
                max_diag_deviation: float(lookup(v, "max_diag_deviation")?)?,
                norms: rows(v, NORM_COLUMNS, 7)?
                    .into_iter()
                    .map(|(line, c)| {
                        Ok(NormRecord {
                            n: count(&c[0], line)?,
                            lambda: float_at(&c[1], line)?,
                            closed_form: float_at(&c[2], line)?,
                            quadrature: float_at(&c[3], line)?,
                            rel_error: float_at(&c[4], line)?,
                            shooting_mismatch: float_at(&c[5], line)?,
                            passed: boolean(&c[6]).map_err(|_| perr(line, "bad boolean"))?,
                        })
                    })
                    .collect::<Result<Vec<_>, CliError>>()?,
            }),
        };

        Ok(ResultDocument {
            command: lookup(meta, "command")?.to_string(),
            version: lookup(meta, "version")?.to_string(),
            timing_seconds: float(lookup(meta, "timing_seconds")?)?,
            spec,
            parameters,
            eigen,
            samples,
            verification,
        })
    }
}

fn perr(line: usize, message: &str) -> CliError {
    CliError::Parse { line, message: message.to_string() }
}

fn lookup<'a>(entries: &'a [Entry], key: &str) -> Result<&'a str, CliError> {
    entries
        .iter()
        .find(|(_, k, _)| k == key)
        .map(|(_, _, v)| v.as_str())
        .ok_or_else(|| perr(0, &format!("missing key `{key}`")))
}

fn float(v: &str) -> Result<f64, CliError> {
    v.parse().map_err(|_| perr(0, &format!("cannot parse `{v}` as a number")))
}

fn float_at(v: &str, line: usize) -> Result<f64, CliError> {
    v.parse().map_err(|_| perr(line, &format!("cannot parse `{v}` as a number")))
}

fn count(v: &str, line: usize) -> Result<usize, CliError> {
    v.parse().map_err(|_| perr(line, &format!("cannot parse `{v}` as an index")))
}

fn boolean(v: &str) -> Result<bool, CliError> {
    v.parse().map_err(|_| perr(0, &format!("cannot parse `{v}` as a boolean")))
}

/// Table rows of a section, split into exactly `width` cells. The last cell
/// takes the remainder of the line.
fn rows(entries: &[Entry], columns: &str, width: usize) -> Result<Vec<(usize, Vec<String>)>, CliError> {
    if lookup(entries, "columns")? != columns {
        return Err(perr(0, &format!("expected columns `{columns}`")));
    }
    entries
        .iter()
        .filter(|(_, k, _)| k == "row")
        .map(|(line, _, v)| {
            let cells: Vec<String> = v.splitn(width, ',').map(str::to_string).collect();
            if cells.len() != width {
                return Err(perr(*line, &format!("expected {width} cells")));
            }
            Ok((*line, cells))
        })
        .collect()
}
