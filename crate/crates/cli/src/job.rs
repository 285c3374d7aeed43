use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use cherednik_core::groups::{parse_group_spec, GroupSpec, Parameter, ReflectionGroup};
use cherednik_core::{Cyclotomic, CyclotomicField, ExactMatrix};
use clap::ValueEnum;
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Everything a report depends on. Reports embed it verbatim.
#[derive(Clone, Debug, Serialize)]
pub struct JobSpec {
    pub command: String,
    pub group: Vec<String>,
    pub c: Vec<String>,
    pub point: Option<String>,
    pub truncation: i64,
    pub seed: u64,
    pub format: Format,
    /// Command-specific options, resolved to strings.
    pub options: BTreeMap<String, String>,
}

impl JobSpec {
    pub fn new(command: &str) -> Self {
        JobSpec {
            command: command.to_string(),
            group: Vec::new(),
            c: Vec::new(),
            point: None,
            truncation: cherednik_core::verma::DEFAULT_TRUNCATION,
            seed: 0,
            format: Format::Json,
            options: BTreeMap::new(),
        }
    }

    pub fn option(&self, key: &str) -> Option<&str> {
        self.options.get(key).map(|s| s.as_str())
    }

    pub fn flag(&self, key: &str) -> bool {
        self.option(key) == Some("true")
    }
}

/// A family shorthand such as `Sn:3:permutation`, or a path to a custom-group
/// JSON file `{"conductor": N, "generators": [matrix, ...]}` whose entries are
/// lists of `[k, num, den]` triples meaning `sum (num/den) zeta_N^k`.
pub fn load_group(spec: &str) -> Result<Arc<ReflectionGroup>, CliError> {
    let spec = spec.trim();
    let gs = if spec.ends_with(".json") || Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| CliError::Usage(format!("cannot read {}: {}", spec, e)))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad group file: {}", e)))?;
        custom_group(&v)?
    } else {
        parse_group_spec(spec)?
    };
    Ok(Arc::new(ReflectionGroup::build(&gs)?))
}

fn big(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

fn custom_group(v: &Value) -> Result<GroupSpec, CliError> {
    let bad = |what: &str| CliError::Usage(format!("bad group file: {}", what));
    let conductor = v["conductor"].as_u64().ok_or_else(|| bad("missing conductor"))? as u32;
    let field = CyclotomicField::new(conductor);
    let mut generators = Vec::new();
    for m in v["generators"].as_array().ok_or_else(|| bad("missing generators"))? {
        let mut rows = Vec::new();
        for row in m.as_array().ok_or_else(|| bad("matrix must be a list of rows"))? {
            let mut entries = Vec::new();
            for entry in row.as_array().ok_or_else(|| bad("row must be a list"))? {
                let mut terms = Vec::new();
                for t in entry.as_array().ok_or_else(|| bad("entry must be a list of [k, num, den]"))? {
                    let k = t[0].as_i64().ok_or_else(|| bad("exponent"))?;
                    let num = big(&t[1]).ok_or_else(|| bad("numerator"))?;
                    let den = big(&t[2]).ok_or_else(|| bad("denominator"))?;
                    terms.push((k, num, den));
                }
                entries.push(Cyclotomic::from_literal(&field, &terms).ok_or_else(|| bad("literal"))?);
            }
            rows.push(entries);
        }
        generators.push(ExactMatrix::from_rows(rows));
    }
    Ok(GroupSpec::Custom { conductor, generators })
}

pub fn load_parameter(group: &ReflectionGroup, spec: &str, seed: u64) -> Result<Parameter, CliError> {
    Ok(Parameter::parse(group, spec, seed)?)
}

/// Comma-separated rationals.
pub fn parse_point(text: &str) -> Result<Vec<Cyclotomic>, CliError> {
    text.split(',')
        .map(|t| {
            cherednik_core::groups::parameter::parse_rational(t)
                .map(Cyclotomic::from_rational)
                .map_err(CliError::from)
        })
        .collect()
}
