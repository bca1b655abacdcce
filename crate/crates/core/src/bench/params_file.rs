//! `key=value` parameter files.
//!
//! ```text
//! # partition 512
//! tabu_tenure = 20
//! reset_limit = 4
//! reset_percentage = 0.05
//! ```
//!
//! Keys may also be given by their short names: `T`, `RL`, `RP`, `Max_I`,
//! `Max_R`, `seed`, `plateau`. Blank lines and `#` comments are ignored.

use std::path::Path;

use thiserror::Error;

use crate::engine::SolverParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsFileError {
    #[error("cannot read parameter file: {0}")]
    Io(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Applies the assignments in `text` on top of `params`.
pub fn apply_params_text(text: &str, params: &mut SolverParams) -> Result<(), ParamsFileError> {
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: String| ParamsFileError::Syntax { line, message };
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| syntax(format!("expected key=value, got {content:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = || syntax(format!("invalid value {value:?} for {key}"));
        match key {
            "tabu_tenure" | "T" => params.tabu_tenure = value.parse().map_err(|_| bad())?,
            "reset_limit" | "RL" => params.reset_limit = value.parse().map_err(|_| bad())?,
            "reset_percentage" | "RP" => params.reset_percentage = value.parse().map_err(|_| bad())?,
            "max_iterations" | "Max_I" => params.max_iterations = value.parse().map_err(|_| bad())?,
            "max_restarts" | "Max_R" => params.max_restarts = value.parse().map_err(|_| bad())?,
            "rng_seed" | "seed" => params.rng_seed = value.parse().map_err(|_| bad())?,
            "plateau_probability" | "plateau" => {
                params.plateau_probability = value.parse().map_err(|_| bad())?
            }
            _ => return Err(syntax(format!("unknown key {key:?}"))),
        }
    }
    Ok(())
}

pub fn apply_params_file(
    path: impl AsRef<Path>,
    params: &mut SolverParams,
) -> Result<(), ParamsFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParamsFileError::Io(format!("{}: {e}", path.display())))?;
    apply_params_text(&text, params)
}
