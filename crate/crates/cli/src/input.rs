use std::path::Path;

use loewner_lab::suite::EllMode;
use loewner_lab::{Interval, ScalarFunction, SymMatrix};
use serde::Deserialize;

use crate::Failure;

/// Problem description read from `--input`. Every field is optional; each
/// command asks for the ones it needs.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Input {
    #[serde(rename = "A")]
    pub a: Option<SymMatrix>,
    #[serde(rename = "B")]
    pub b: Option<SymMatrix>,
    pub f: Option<ScalarFunction>,
    pub v: Option<f64>,
    pub m: Option<f64>,
    #[serde(rename = "M")]
    pub big_m: Option<f64>,
    pub r: Option<f64>,
    pub x: Option<Vec<f64>>,
    pub operators: Option<Vec<SymMatrix>>,
    pub mode: Option<EllMode>,
    #[serde(rename = "nN")]
    pub nn: Option<Interval>,
    #[serde(rename = "mM")]
    pub mm: Option<Interval>,
}

impl Input {
    pub fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            if path == "." {
                Failure::input(format!("invalid input: {}", e.inner()))
            } else {
                Failure::input(format!("invalid input field `{path}`: {}", e.inner()))
            }
        })
    }
}

pub fn require<T>(value: Option<T>, field: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::input(format!("missing input field `{field}`")))
}

/// Command-line value if given, otherwise the input file's.
pub fn pick<T>(flag: Option<T>, from_input: Option<T>) -> Option<T> {
    flag.or(from_input)
}

pub fn parse_function(spec: &str) -> Result<ScalarFunction, Failure> {
    spec.parse()
        .map_err(|e| Failure::input(format!("invalid --f `{spec}`: {e}")))
}
