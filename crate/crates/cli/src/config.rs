//! Run configuration: built-in defaults, then an optional `key = value`
//! file, then command-line flags.

use std::fs;
use std::path::Path;

use instanton_core::scalar::int;
use instanton_core::strata::DEFAULT_GRID_CAP;
use instanton_core::{parse_laurent, Error, Rational, Result, Vars, WindowSchedule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub format: Format,
    pub seed: u64,
    pub samples: usize,
    pub grid_cap: u128,
    pub grid_values: Vec<Rational>,
    pub max_window: Option<i32>,
    pub max_doublings: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        let schedule = WindowSchedule::default();
        Self {
            format: Format::Table,
            seed: 0,
            samples: 200,
            grid_cap: DEFAULT_GRID_CAP,
            grid_values: vec![int(-1), int(0), int(1)],
            max_window: schedule.max_i_max,
            max_doublings: schedule.max_doublings,
        }
    }
}

fn bad(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("config line {line}: {msg}"))
}

impl RunConfig {
    pub fn schedule(&self) -> WindowSchedule {
        WindowSchedule {
            max_doublings: self.max_doublings,
            max_i_max: self.max_window,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| bad(line, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| v.parse::<u64>().map_err(|e| bad(line, format!("{key}: {e}")));
            match key {
                "format" => {
                    cfg.format = <Format as clap::ValueEnum>::from_str(value, true)
                        .map_err(|_| bad(line, format!("unknown format `{value}`")))?
                }
                "seed" => cfg.seed = num(value)?,
                "samples" => cfg.samples = num(value)? as usize,
                "grid_cap" => cfg.grid_cap = num(value)? as u128,
                "max_doublings" => cfg.max_doublings = num(value)? as u32,
                "max_window" => {
                    cfg.max_window = match value {
                        "none" => None,
                        v => Some(num(v)? as i32),
                    }
                }
                "grid_values" => {
                    cfg.grid_values = value
                        .split(',')
                        .map(|v| {
                            let p = parse_laurent(v.trim(), Vars::XY)
                                .map_err(|e| bad(line, format!("grid value `{v}`: {e}")))?;
                            let value = match p.terms().next() {
                                None => Ok(int(0)),
                                Some((m, c)) if m.total_degree() == 0 => Ok(c.clone()),
                                _ => Err(bad(line, format!("grid value `{v}` is not a number"))),
                            };
                            value
                        })
                        .collect::<Result<_>>()?
                }
                other => return Err(bad(line, format!("unknown key `{other}`"))),
            }
        }
        Ok(cfg)
    }
}
