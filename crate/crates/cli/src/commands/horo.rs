use hyper::{excursion_profile, invert_horoball, max_depth, rational_horoheight, HoroBase, Horoball};
use serde_json::{json, Value};
use siegel::siegel_height;

use super::siegel_point;
use crate::args::HoroCommand;
use crate::error::CliError;
use crate::output::{exact, float, Report, Table};

fn ball_json(b: &Horoball) -> Value {
    let base = match &b.base {
        HoroBase::Infinity => "inf".to_string(),
        HoroBase::Point(p) => p.to_string(),
    };
    json!({ "base": exact(base), "height_sq": exact(b.height_sq().to_string()) })
}

pub fn horo(cmd: &HoroCommand) -> Result<(&'static str, Value, Report), CliError> {
    let mut r = Report::default();
    match cmd {
        HoroCommand::Invert { base, height } => {
            let b = if base.trim() == "inf" {
                Horoball::at_infinity(height)?
            } else {
                Horoball::at(siegel_point(base)?, height)?
            };
            let img = invert_horoball(&b)?;
            if invert_horoball(&img)? != b {
                return Err(CliError::Invariant(format!("inversion is not an involution on {b}")));
            }
            r.put("image", ball_json(&img));
            Ok(("horo invert", json!({ "base": base, "height": height.to_string() }), r))
        }
        HoroCommand::Rational { point, s0 } => {
            let h = siegel_height(&siegel_point(point)?);
            let rh = rational_horoheight(&h, s0)?;
            r.put("height", serde_json::to_value(&rh.height).expect("radical"))
                .put("chain_product_sq", exact(rh.chain_product_sq.to_string()))
                .put("chain_length", exact(rh.chain_length))
                .put("norm_q", exact(h.norm_q().to_string()));
            Ok(("horo rational", json!({ "point": point, "s0": s0.to_string() }), r))
        }
        HoroCommand::Excursion { point, s0, nnorm } => {
            let prof = excursion_profile(&siegel_point(point)?, s0, *nnorm)?;
            r.put("excursions", exact(prof.len())).put("max_depth", float(max_depth(&prof)));
            let mut t = Table::new(&["q_re", "q_im", "r_re", "r_im", "p_re", "p_im", "depth"]);
            t.rows = prof.iter().map(|e| e.csv_row()).collect();
            r.detail = Some(t);
            Ok(("horo excursion", json!({ "point": point, "s0": s0.to_string(), "Nnorm": nnorm }), r))
        }
    }
}
