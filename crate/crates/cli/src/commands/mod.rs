mod algebra;
mod experiment;
mod game;
mod horo;

use std::fs;

use carnot::CarnotSpec;
use serde_json::{json, Value};
use siegel::SiegelPoint;
use zkernel::GaussInt;

use crate::args::{Command, Global};
use crate::error::CliError;
use crate::output::Report;

/// Runs one command and returns its name, echoed parameters and results.
pub fn dispatch(global: &Global, command: &Command) -> Result<(&'static str, Value, Report), CliError> {
    match command {
        Command::Nt(c) => algebra::nt(c),
        Command::Group(c) => algebra::group(global, c),
        Command::Cf(c) => algebra::cf(global, c),
        Command::Count(a) => experiment::count(global, a),
        Command::Scan(a) => experiment::scan(global, a),
        Command::Exponent(a) => experiment::exponent(global, a),
        Command::Horo(c) => horo::horo(c),
        Command::Game(a) => game::game(global, a),
        Command::Cantor(a) => game::cantor(global, a),
        Command::Validate(a) => game::validate(a),
    }
}

/// The group named by `--spec`: a built-in name or a JSON file, Heis¹
/// when absent.
pub(crate) fn load_spec(global: &Global) -> Result<CarnotSpec, CliError> {
    match global.spec.as_deref() {
        None => Ok(CarnotSpec::heisenberg(1)),
        Some(name) => match CarnotSpec::builtin(name) {
            Some(s) => Ok(s),
            None => {
                let text = fs::read_to_string(name).map_err(|e| CliError::Config(format!("{name}: {e}")))?;
                Ok(CarnotSpec::from_json(&text)?)
            }
        },
    }
}

pub(crate) fn gauss_int(s: &str) -> Result<GaussInt, CliError> {
    let z = zkernel::parse_gauss_rat(s)?;
    z.as_int().cloned().ok_or_else(|| CliError::Config(format!("{s} is not a Gaussian integer")))
}

pub(crate) fn siegel_point(s: &str) -> Result<SiegelPoint, CliError> {
    Ok(SiegelPoint::parse(s)?)
}

pub(crate) fn spec_json(spec: &CarnotSpec) -> Value {
    json!({ "name": spec.name, "layer_dims": spec.layer_dims() })
}
