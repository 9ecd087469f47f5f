//! Runtime configuration: built-in defaults, `key = value` config files,
//! and the `FREEPROB_CONFIG` environment override.

use crate::error::{Error, Result};
use serde::Serialize;
use std::path::Path;

pub const DEFAULT_QUAD_TOL: f64 = 1e-10;
pub const DEFAULT_QUAD_EVALS: usize = 500_000;
pub const DEFAULT_SERIES_TOL: f64 = 1e-12;
pub const DEFAULT_SERIES_MAX_TERMS: usize = 1_000_000;
pub const DEFAULT_NEWTON_MAX_ITER: usize = 100;
pub const DEFAULT_GRID_POINTS: usize = 400;
pub const DEFAULT_GRID_XMAX: f64 = 50.0;
pub const DEFAULT_CONTOUR_RADIUS: f64 = 20.0;
pub const DEFAULT_PSD_REL_TOL: f64 = 1e-9;

/// Keys accepted in config files, in the order they are reported.
pub const KNOWN_KEYS: [&str; 8] = [
    "quadrature.tol",
    "series.tol",
    "series.max_terms",
    "newton.max_iter",
    "grid.points",
    "grid.xmax",
    "contour.radius",
    "psd.rel_tol",
];

/// Tunable numeric settings, merged over built-in defaults.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub quadrature_tol: f64,
    pub series_tol: f64,
    pub series_max_terms: usize,
    pub newton_max_iter: usize,
    pub grid_points: usize,
    pub grid_xmax: f64,
    pub contour_radius: f64,
    pub psd_rel_tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            quadrature_tol: DEFAULT_QUAD_TOL,
            series_tol: DEFAULT_SERIES_TOL,
            series_max_terms: DEFAULT_SERIES_MAX_TERMS,
            newton_max_iter: DEFAULT_NEWTON_MAX_ITER,
            grid_points: DEFAULT_GRID_POINTS,
            grid_xmax: DEFAULT_GRID_XMAX,
            contour_radius: DEFAULT_CONTOUR_RADIUS,
            psd_rel_tol: DEFAULT_PSD_REL_TOL,
        }
    }
}

impl RunConfig {
    /// Parses `key = value` lines over the defaults. `#` starts a comment.
    pub fn parse(text: &str) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.split_once('#') {
                Some((before, _)) => before.trim(),
                None => raw.trim(),
            };
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
                line: line_no,
                msg: format!("expected `key = value`, got `{line}`"),
            })?;
            cfg.apply(key.trim(), value.trim(), line_no)?;
        }
        Ok(cfg)
    }

    fn apply(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        fn real(value: &str, line: usize) -> Result<f64> {
            let v: f64 = value.parse().map_err(|_| Error::Config {
                line,
                msg: format!("`{value}` is not a number"),
            })?;
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Config {
                    line,
                    msg: format!("value must be positive and finite, got {value}"),
                })
            }
        }
        fn count(value: &str, line: usize) -> Result<usize> {
            let v: i64 = value.parse().map_err(|_| Error::Config {
                line,
                msg: format!("`{value}` is not an integer"),
            })?;
            if v > 0 {
                Ok(v as usize)
            } else {
                Err(Error::Config {
                    line,
                    msg: format!("value must be positive, got {value}"),
                })
            }
        }
        match key {
            "quadrature.tol" => self.quadrature_tol = real(value, line)?,
            "series.tol" => self.series_tol = real(value, line)?,
            "series.max_terms" => self.series_max_terms = count(value, line)?,
            "newton.max_iter" => self.newton_max_iter = count(value, line)?,
            "grid.points" => self.grid_points = count(value, line)?,
            "grid.xmax" => self.grid_xmax = real(value, line)?,
            "contour.radius" => self.contour_radius = real(value, line)?,
            "psd.rel_tol" => self.psd_rel_tol = real(value, line)?,
            other => {
                return Err(Error::Config {
                    line,
                    msg: format!(
                        "unknown key `{other}`; known keys: {}",
                        KNOWN_KEYS.join(", ")
                    ),
                })
            }
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::parse(&text)
    }

    /// Defaults, overridden by the file named in `FREEPROB_CONFIG` when set.
    pub fn from_env() -> Result<RunConfig> {
        match std::env::var_os("FREEPROB_CONFIG") {
            Some(path) => RunConfig::load(Path::new(&path)),
            None => Ok(RunConfig::default()),
        }
    }
}
