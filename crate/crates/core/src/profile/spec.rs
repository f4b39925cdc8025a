//! Profile spec files and CSV export.

use super::examples::{builtin, builtin_representation};
use super::{CurvatureABC, Grid, RadialProfile, Representation};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;

/// `{"m": 3, "rep": "alpha", "name": "family1", "params": {"a": 0.75, "lambda": 1}, "grid": {...}}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpec {
    pub m: usize,
    pub rep: Representation,
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default)]
    pub grid: Option<Grid>,
}

impl ProfileSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<RadialProfile> {
        match builtin_representation(&self.name) {
            None => return Err(Error::UnknownName(format!("profile '{}'", self.name))),
            Some(r) if r != self.rep => {
                return Err(Error::Parse(format!(
                    "profile '{}' is given by {:?}, spec says {:?}",
                    self.name, r, self.rep
                )))
            }
            _ => {}
        }
        builtin(&self.name, &self.params, self.m, self.grid)
    }
}

/// CSV with header `param,A,B,C,A+C,A+B,A+(m-1)B`.
pub fn write_csv<W: Write>(mut out: W, m: usize, rows: &[CurvatureABC]) -> Result<()> {
    writeln!(out, "param,A,B,C,A+C,A+B,A+(m-1)B")?;
    let k = m as f64 - 1.0;
    for v in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            v.param,
            v.a,
            v.b,
            v.c,
            v.a + v.c,
            v.a + v.b,
            v.a + k * v.b
        )?;
    }
    Ok(())
}
