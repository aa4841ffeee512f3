use std::fmt::Write as _;
use std::str::FromStr;

use super::CliError;
use crate::params::{complete_riemann, ClassId, HeunParameters};

pub const PARAMETER_KEYS: [&str; 6] = ["alpha", "beta", "gamma", "delta", "epsilon", "a"];

const RIEMANN_TOKEN: &str = "riemann";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format `{other}` (expected text or csv)")),
        }
    }
}

impl std::fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Csv => "csv",
        })
    }
}

/// A parameter entry: either given, or to be solved from the exponent relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamValue {
    Given(f64),
    Riemann,
}

/// A problem read from a `key = value` file.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    /// In the order of [`PARAMETER_KEYS`].
    pub parameters: [ParamValue; 6],
    pub class: ClassId,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub max_count: usize,
    pub tol: f64,
    pub format: OutputFormat,
    pub scan_points: Option<usize>,
}

pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(key: &str, v: &str, line: usize) -> Result<f64, CliError> {
    v.parse::<f64>()
        .map_err(|_| CliError::Parse { line, message: format!("`{key}`: cannot parse `{v}` as a number") })
}

fn parse_usize(key: &str, v: &str, line: usize) -> Result<usize, CliError> {
    v.parse::<usize>()
        .map_err(|_| CliError::Parse { line, message: format!("`{key}`: cannot parse `{v}` as a count") })
}

/// Splits `key = value` lines, skipping blanks and `#` comments.
pub(crate) fn key_values(text: &str) -> Result<Vec<(usize, String, String)>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Parse { line: i + 1, message: format!("expected `key = value`, got `{line}`") });
        };
        out.push((i + 1, k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        Self::from_pairs(&key_values(text)?)
    }

    pub(crate) fn from_pairs(pairs: &[(usize, String, String)]) -> Result<Self, CliError> {
        let mut parameters: [Option<ParamValue>; 6] = [None; 6];
        let mut class = None;
        let mut lambda_min = None;
        let mut lambda_max = None;
        let mut max_count = None;
        let mut tol = None;
        let mut format = None;
        let mut scan_points = None;

        for (line, key, value) in pairs {
            let line = *line;
            let dup = || CliError::Parse { line, message: format!("duplicate key `{key}`") };
            if let Some(slot) = PARAMETER_KEYS.iter().position(|k| k == key) {
                if parameters[slot].is_some() {
                    return Err(dup());
                }
                parameters[slot] = Some(if value == RIEMANN_TOKEN {
                    ParamValue::Riemann
                } else {
                    ParamValue::Given(parse_f64(key, value, line)?)
                });
                continue;
            }
            let set = match key.as_str() {
                "class" => class
                    .replace(ClassId::from_str(value).map_err(|message| CliError::Parse { line, message })?)
                    .is_some(),
                "lambda_min" => lambda_min.replace(parse_f64(key, value, line)?).is_some(),
                "lambda_max" => lambda_max.replace(parse_f64(key, value, line)?).is_some(),
                "max_count" => max_count.replace(parse_usize(key, value, line)?).is_some(),
                "tol" => tol.replace(parse_f64(key, value, line)?).is_some(),
                "format" => format
                    .replace(OutputFormat::from_str(value).map_err(|message| CliError::Parse { line, message })?)
                    .is_some(),
                "scan_points" => scan_points.replace(parse_usize(key, value, line)?).is_some(),
                _ => return Err(CliError::Parse { line, message: format!("unknown key `{key}`") }),
            };
            if set {
                return Err(dup());
            }
        }

        let missing = |k: &str| CliError::Parse { line: 0, message: format!("missing key `{k}`") };
        let mut params = [ParamValue::Riemann; 6];
        for (slot, p) in parameters.iter().enumerate() {
            params[slot] = p.ok_or_else(|| missing(PARAMETER_KEYS[slot]))?;
        }
        let riemann = params.iter().filter(|p| **p == ParamValue::Riemann).count();
        if riemann > 1 {
            return Err(CliError::Parse { line: 0, message: format!("{riemann} `riemann` tokens, at most one allowed") });
        }
        if params[5] == ParamValue::Riemann {
            return Err(CliError::Parse {
                line: 0,
                message: "`a` does not enter the exponent relation and cannot be `riemann`".into(),
            });
        }
        Ok(ProblemSpec {
            parameters: params,
            class: class.unwrap_or(ClassId::I),
            lambda_min: lambda_min.ok_or_else(|| missing("lambda_min"))?,
            lambda_max: lambda_max.ok_or_else(|| missing("lambda_max"))?,
            max_count: max_count.unwrap_or(10),
            tol: tol.unwrap_or(1e-12),
            format: format.unwrap_or_default(),
            scan_points,
        })
    }

    /// Solves for a `riemann` entry and validates the parameter set and window.
    pub fn resolve(&self) -> Result<HeunParameters, CliError> {
        let mut exps = [None; 5];
        for (slot, e) in exps.iter_mut().enumerate() {
            if let ParamValue::Given(v) = self.parameters[slot] {
                *e = Some(v);
            }
        }
        let [alpha, beta, gamma, delta, epsilon] = complete_riemann(exps)
            .map_err(|n| CliError::Validation(format!("{n} exponents missing, at most one can be solved for")))?;
        let a = match self.parameters[5] {
            ParamValue::Given(a) => a,
            ParamValue::Riemann => unreachable!("rejected while parsing"),
        };
        if !(self.lambda_min < self.lambda_max) {
            return Err(CliError::Validation(format!(
                "degenerate window [{}, {}]",
                self.lambda_min, self.lambda_max
            )));
        }
        HeunParameters::new(alpha, beta, gamma, delta, epsilon, a).map_err(CliError::from)
    }

    /// Writes the spec back in its own file syntax.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, p) in PARAMETER_KEYS.iter().zip(self.parameters) {
            let v = match p {
                ParamValue::Given(v) => fmt_f64(v),
                ParamValue::Riemann => RIEMANN_TOKEN.to_string(),
            };
            let _ = writeln!(s, "{k} = {v}");
        }
        let _ = writeln!(s, "class = {}", self.class);
        let _ = writeln!(s, "lambda_min = {}", fmt_f64(self.lambda_min));
        let _ = writeln!(s, "lambda_max = {}", fmt_f64(self.lambda_max));
        let _ = writeln!(s, "max_count = {}", self.max_count);
        let _ = writeln!(s, "tol = {}", fmt_f64(self.tol));
        let _ = writeln!(s, "format = {}", self.format);
        if let Some(n) = self.scan_points {
            let _ = writeln!(s, "scan_points = {n}");
        }
        s
    }
}
