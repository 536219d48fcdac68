//! The sweep config: one `key = values` line per setting, `#` starts a comment.
//!
//! ```text
//! f = 9, 27, 5
//! j = 0..-6
//! T = 2 7 11
//! checks = minus delta
//! ```
//!
//! Values are separated by whitespace or commas; integer lists accept `a..b`
//! ranges (inclusive, either direction). Keys left out take empty values, so an
//! empty file describes an empty grid.

use std::path::PathBuf;
use std::str::FromStr;

use crate::congruences::{CheckSelection, GridSpec, TPolicy};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub grid: GridSpec,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl Default for SweepConfig {
    /// The built-in grid used when no config file is given.
    fn default() -> Self {
        SweepConfig {
            grid: GridSpec::default_grid(),
            seed: 0,
            output: None,
        }
    }
}

fn config_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("line {line}: {msg}"))
}

fn tokens(value: &str) -> impl Iterator<Item = &str> {
    value.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty())
}

fn parse_scalar<T: FromStr>(line: usize, key: &str, tok: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| config_err(line, format!("bad value {tok:?} for {key}")))
}

fn parse_list<T>(line: usize, key: &str, value: &str) -> Result<Vec<T>>
where
    T: FromStr + TryFrom<i64>,
{
    let mut out = Vec::new();
    for tok in tokens(value) {
        if let Some((a, b)) = tok.split_once("..") {
            let a: i64 = parse_scalar(line, key, a)?;
            let b: i64 = parse_scalar(line, key, b)?;
            if a.abs_diff(b) > 100_000 {
                return Err(config_err(line, format!("range {tok} is too long")));
            }
            let range: Vec<i64> = if a <= b { (a..=b).collect() } else { (b..=a).rev().collect() };
            for x in range {
                out.push(
                    T::try_from(x).map_err(|_| config_err(line, format!("{x} out of range for {key}")))?,
                );
            }
        } else {
            out.push(parse_scalar(line, key, tok)?);
        }
    }
    Ok(out)
}

fn parse_checks(line: usize, value: &str) -> Result<CheckSelection> {
    let mut sel = CheckSelection::NONE;
    for tok in tokens(value) {
        match tok {
            "minus" => sel.minus = true,
            "delta" => sel.delta = true,
            "integrality" => sel.integrality = true,
            "tequality" | "t_equality" => sel.t_equality = true,
            "kummer" => sel.kummer = true,
            "all" => sel = CheckSelection::ALL,
            other => return Err(config_err(line, format!("unknown check {other:?}"))),
        }
    }
    Ok(sel)
}

fn single<'a>(line: usize, key: &str, value: &'a str) -> Result<&'a str> {
    let toks: Vec<&str> = tokens(value).collect();
    match toks.as_slice() {
        [one] => Ok(one),
        _ => Err(config_err(line, format!("{key} takes exactly one value"))),
    }
}

pub fn parse_config(text: &str) -> Result<SweepConfig> {
    let mut grid = GridSpec::empty();
    grid.checks = CheckSelection::ALL;
    let mut seed = 0;
    let mut output = None;
    let mut seen = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| config_err(line, "expected `key = values`"))?;
        let key = key.trim();
        if seen.contains(&key.to_string()) {
            return Err(config_err(line, format!("duplicate key {key}")));
        }
        seen.push(key.to_string());
        match key {
            "f" => grid.f = parse_list(line, key, value)?,
            "p" => grid.ps = Some(parse_list(line, key, value)?),
            "n" => grid.ns = Some(parse_list(line, key, value)?),
            "j" => grid.j = parse_list(line, key, value)?,
            "k" => grid.k = parse_list(line, key, value)?,
            "T" => grid.t_primes = parse_list(line, key, value)?,
            "S_extra" => grid.s_extra = parse_list(line, key, value)?,
            "T_policy" => {
                grid.t_policy = match single(line, key, value)? {
                    "all" => TPolicy::All,
                    "each" => TPolicy::Each,
                    other => return Err(config_err(line, format!("unknown T_policy {other:?}"))),
                }
            }
            "checks" => grid.checks = parse_checks(line, value)?,
            "kummer_p" => grid.kummer_p = parse_list(line, key, value)?,
            "kummer_min" => grid.kummer_min = parse_scalar(line, key, single(line, key, value)?)?,
            "seed" => seed = parse_scalar(line, key, single(line, key, value)?)?,
            "output" => output = Some(PathBuf::from(single(line, key, value)?)),
            other => return Err(config_err(line, format!("unknown key {other:?}"))),
        }
    }
    if grid.kummer_min >= 0 {
        return Err(Error::Config("kummer_min must be negative".into()));
    }
    Ok(SweepConfig { grid, seed, output })
}
