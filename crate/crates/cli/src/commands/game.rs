use std::fs;
use std::path::Path;

use carnot::{CarnotSpec, SpecConfig};
use dioph::{ba_constant, uniform_siegel_point};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use schmidt::{cantor_build, initial_ball, play, verify_report, verify_strategy, BlackStrategy, GameConfig, Transcript, Verification};
use serde_json::{json, Value};

use crate::args::{BlackArg, CantorArgs, GameArgs, Global, ValidateArgs};
use crate::error::CliError;
use crate::output::{exact, float, Report, Table};

fn load_config(path: Option<&Path>) -> Result<GameConfig, CliError> {
    let cfg = match path {
        None => GameConfig::default(),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?
        }
    };
    cfg.validate()?;
    Ok(cfg)
}

fn config_json(cfg: &GameConfig) -> Value {
    serde_json::to_value(cfg).expect("serializable config")
}

struct Played {
    transcript: Transcript,
    verification: Verification,
    ba_limit: f64,
    ba_control: f64,
}

pub fn game(global: &Global, a: &GameArgs) -> Result<(&'static str, Value, Report), CliError> {
    let cfg = load_config(a.config.as_deref())?;
    let strategy = match a.black {
        BlackArg::Random => BlackStrategy::Random,
        BlackArg::Adversarial => BlackStrategy::Adversarial,
    };
    let cutoff = match a.nnorm {
        Some(n) => n,
        None => cfg
            .r_pow(a.rounds / 2)
            .ceil()
            .to_integer()
            .to_u64()
            .ok_or_else(|| CliError::Config("R^⌊rounds/2⌋ does not fit a 64-bit cutoff; pass --Nnorm".into()))?,
    };
    let played: Vec<Played> = (0..a.games)
        .into_par_iter()
        .map(|g| -> Result<Played, CliError> {
            let transcript = play(&cfg, strategy, a.rounds, global.seed, g)?;
            let verification = verify_report(&cfg, &transcript.balls());
            let ba_limit = ba_constant(&transcript.limit_center, cutoff)?.value;
            let ba_control = ba_constant(&uniform_siegel_point(global.seed, g), cutoff)?.value;
            Ok(Played {
                transcript,
                verification,
                ba_limit,
                ba_control,
            })
        })
        .collect::<Result<_, _>>()?;

    let mut r = Report::default();
    let verified = played.iter().filter(|p| p.verification.ok).count();
    let beats = played.iter().filter(|p| p.ba_limit > p.ba_control).count();
    let min_ba = played.iter().map(|p| p.ba_limit).fold(f64::INFINITY, f64::min);
    let transcripts: Vec<Value> = played
        .iter()
        .map(|p| json!({ "transcript": p.transcript, "verification": p.verification }))
        .collect();
    r.put("games", exact(a.games))
        .put("verified", exact(verified))
        .put("candidates", exact(played.iter().map(|p| p.transcript.candidates()).sum::<usize>()))
        .put("ba_cutoff", exact(cutoff))
        .put("min_limit_ba", float(if played.is_empty() { 0.0 } else { min_ba }))
        .put("beats_control", exact(beats))
        .put("transcripts", json!({ "value": transcripts, "provenance": "exact" }));
    let mut t = Table::new(&["game", "limit_center", "verified", "candidates", "ba_limit", "ba_control"]);
    for (g, p) in played.iter().enumerate() {
        t.rows.push(vec![
            g.to_string(),
            p.transcript.limit_center.to_string(),
            p.verification.ok.to_string(),
            p.transcript.candidates().to_string(),
            format!("{:.12e}", p.ba_limit),
            format!("{:.12e}", p.ba_control),
        ]);
    }
    r.detail = Some(t);
    if verified < played.len() {
        r.failure = Some(CliError::Invariant(format!("{} of {} games failed verification", played.len() - verified, played.len())));
    }
    let params = json!({
        "config": config_json(&cfg),
        "rounds": a.rounds,
        "games": a.games,
        "black": strategy,
        "seed": global.seed,
    });
    Ok(("game", params, r))
}

pub fn cantor(global: &Global, a: &CantorArgs) -> Result<(&'static str, Value, Report), CliError> {
    let cfg = load_config(a.config.as_deref())?;
    let tree = cantor_build(&cfg, initial_ball(&cfg, global.seed, 0), a.branching, a.depth)?;
    let chains = tree.leaf_chains();
    let verified = chains.par_iter().filter(|c| verify_strategy(c, &cfg)).count();
    let mut r = Report::default();
    r.put("leaf_count", exact(tree.leaf_count))
        .put("dimension_estimate", float(tree.dimension_estimate))
        .put("verified_chains", exact(verified));
    let mut t = Table::new(&["leaf", "center", "radius"]);
    for (i, c) in chains.iter().enumerate() {
        let leaf = c.last().expect("chains start at the root");
        t.rows.push(vec![i.to_string(), leaf.center.to_string(), leaf.radius.to_string()]);
    }
    r.detail = Some(t);
    if verified < chains.len() {
        r.failure = Some(CliError::Invariant(format!("{} leaf chains failed verification", chains.len() - verified)));
    }
    let params = json!({ "config": config_json(&cfg), "branching": a.branching, "depth": a.depth, "seed": global.seed });
    Ok(("cantor", params, r))
}

/// Game configurations are recognised by their `alpha` field; anything
/// else is read as a group specification.
pub fn validate(a: &ValidateArgs) -> Result<(&'static str, Value, Report), CliError> {
    let text = fs::read_to_string(&a.path).map_err(|e| CliError::Config(format!("{}: {e}", a.path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", a.path.display())))?;
    let (kind, diagnostics) = if v.get("alpha").is_some() {
        let cfg: GameConfig = serde_json::from_value(v).map_err(|e| CliError::Config(e.to_string()))?;
        ("game_config", cfg.diagnostics())
    } else {
        let sc: SpecConfig = serde_json::from_value(v).map_err(|e| CliError::Config(e.to_string()))?;
        let d = match CarnotSpec::from_config(&sc).and_then(|s| s.check_axioms(a.trials)) {
            Ok(()) => Vec::new(),
            Err(e) => vec![e.to_string()],
        };
        ("carnot_spec", d)
    };
    let mut r = Report::default();
    r.put("kind", exact(kind))
        .put("valid", exact(diagnostics.is_empty()))
        .put("diagnostics", exact(diagnostics.clone()));
    if !diagnostics.is_empty() {
        r.failure = Some(CliError::Config(diagnostics.join("; ")));
    }
    Ok(("validate", json!({ "path": a.path, "trials": a.trials }), r))
}
