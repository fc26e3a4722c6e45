use carnot::{c_norm_inf, heis_gauge_norm, CarnotPoint};
use heiscf::{evaluate, expand, expand_surrogate, suggested_bits, CfExpansion};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use siegel::{siegel_height, to_carnot, to_siegel, SiegelPoint};
use zkernel::rng::{keyed_rng, uniform_dyadic};
use zkernel::{analytic_sum, factor, gi_gcd, moebius, totient};

use super::{gauss_int, load_spec, siegel_point, spec_json};
use crate::args::{CfCommand, Global, GroupCommand, Model, NtCommand};
use crate::error::CliError;
use crate::output::{exact, Report, Table};

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub fn nt(cmd: &NtCommand) -> Result<(&'static str, Value, Report), CliError> {
    let mut r = Report::default();
    match cmd {
        NtCommand::Sum { kind, k, exponent } => {
            let s = analytic_sum(*kind, *k, *exponent)?;
            r.put("value", json!({ "value": s.value, "provenance": s.provenance }))
                .put("term_count", exact(s.term_count));
            Ok(("nt sum", json!({ "kind": kind, "K": k, "exponent": exponent }), r))
        }
        NtCommand::Gcd { a, b } => {
            let g = gi_gcd(&gauss_int(a)?, &gauss_int(b)?)?;
            r.put("gcd", exact(g.to_string()));
            Ok(("nt gcd", json!({ "a": a, "b": b }), r))
        }
        NtCommand::Arith { q } => {
            let z = gauss_int(q)?;
            let f = factor(&z)?;
            let factors: Vec<Value> = f
                .factors
                .iter()
                .map(|(p, e)| json!({ "prime": p.to_string(), "exponent": e }))
                .collect();
            r.put("norm", exact(z.norm().to_string()))
                .put("unit", exact(f.unit.to_string()))
                .put("factors", json!({ "value": factors, "provenance": "exact" }))
                .put("phi", exact(totient(&z)?.to_string()))
                .put("mu", exact(moebius(&z)?));
            Ok(("nt arith", json!({ "q": q }), r))
        }
    }
}

pub fn group(global: &Global, cmd: &GroupCommand) -> Result<(&'static str, Value, Report), CliError> {
    let mut r = Report::default();
    match global.model {
        Model::Carnot => {
            let spec = load_spec(global)?;
            let pt = |s: &str| CarnotPoint::parse(&spec, s);
            let params = json!({ "model": "carnot", "spec": spec_json(&spec) });
            match cmd {
                GroupCommand::Mul { g, h } => {
                    r.put("product", exact(spec.mul(&pt(g)?, &pt(h)?)?.to_string()));
                    Ok(("group mul", params, r))
                }
                GroupCommand::Inv { g } => {
                    r.put("inverse", exact(spec.inv(&pt(g)?)?.to_string()));
                    Ok(("group inv", params, r))
                }
                GroupCommand::Dilate { r: s, g } => {
                    r.put("dilation", exact(spec.dilate(s, &pt(g)?)?.to_string()));
                    Ok(("group dilate", params, r))
                }
                GroupCommand::Norm { g, h } => {
                    let g = pt(g)?;
                    let g = match h {
                        Some(h) => spec.mul(&spec.inv(&g)?, &pt(h)?)?,
                        None => g,
                    };
                    r.put("norm_inf", to_value(&c_norm_inf(&spec, &g)?));
                    if spec.heis_n().is_some() {
                        r.put("gauge", to_value(&heis_gauge_norm(&spec, &g)?));
                    }
                    Ok(("group norm", params, r))
                }
                GroupCommand::Convert { g } => {
                    r.put("siegel", exact(to_siegel(&spec, &pt(g)?)?.to_string()));
                    Ok(("group convert", params, r))
                }
            }
        }
        Model::Siegel => {
            let params = json!({ "model": "siegel" });
            match cmd {
                GroupCommand::Mul { g, h } => {
                    r.put("product", exact(siegel_point(g)?.mul(&siegel_point(h)?)?.to_string()));
                    Ok(("group mul", params, r))
                }
                GroupCommand::Inv { g } => {
                    r.put("inverse", exact(siegel_point(g)?.inv().to_string()));
                    Ok(("group inv", params, r))
                }
                GroupCommand::Dilate { r: s, g } => {
                    r.put("dilation", exact(siegel_point(g)?.dilate(s)?.to_string()));
                    Ok(("group dilate", params, r))
                }
                GroupCommand::Norm { g, h } => {
                    let g = siegel_point(g)?;
                    let d = match h {
                        Some(h) => g.dist(&siegel_point(h)?)?,
                        None => g.norm(),
                    };
                    r.put("gauge", to_value(&d));
                    Ok(("group norm", params, r))
                }
                GroupCommand::Convert { g } => {
                    r.put("carnot", exact(to_carnot(&siegel_point(g)?).to_string()));
                    Ok(("group convert", params, r))
                }
            }
        }
    }
}

fn expansion_report(e: &CfExpansion, r: &mut Report) {
    let digits: Vec<String> = e.digits.iter().map(|d| d.to_string()).collect();
    r.put("gamma0", exact(e.gamma0.to_string()))
        .put("digits", json!({ "value": digits, "provenance": "exact" }))
        .put("digit_count", exact(e.digits.len()))
        .put("terminated", exact(e.terminated))
        .put("status", exact(to_value(&e.status)))
        .put("digit_bound", to_value(&e.digit_bound));
    if !e.precision_log.is_empty() {
        r.put("precision_log", exact(json!(e.precision_log)));
    }
    let mut t = Table::new(&["n", "digit", "q", "norm_q", "convergent_p", "remainder"]);
    for (n, c) in e.convergents.iter().enumerate() {
        let digit = if n == 0 { e.gamma0.to_string() } else { e.digits[n - 1].to_string() };
        let p: Vec<String> = c.p_vec().iter().map(|x| x.to_string()).collect();
        t.rows.push(vec![
            n.to_string(),
            digit,
            c.q().to_string(),
            c.norm_q().to_string(),
            p.join(";"),
            e.remainders.get(n).map_or(String::new(), |x| x.to_string()),
        ]);
    }
    r.detail = Some(t);
}

/// A point of the unit box given by an infinite bit stream; `k`-bit
/// truncations of its Carnot coordinates serve as surrogates.
fn random_surrogate(seed: u64, max_bits: u32) -> impl Fn(u32) -> Result<SiegelPoint, heiscf::CfError> {
    let mut rng = keyed_rng(seed, "cli.cf.random", 0);
    let full: Vec<BigRational> = (0..3).map(|_| uniform_dyadic(&mut rng, max_bits)).collect();
    move |k: u32| {
        let scale = BigRational::from_integer(BigInt::from(1) << k.min(max_bits));
        let coords = full.iter().map(|c| (c * &scale).floor() / &scale).collect();
        let spec = carnot::CarnotSpec::heisenberg(1);
        let g = CarnotPoint::new(&spec, coords).expect("three coordinates");
        Ok(to_siegel(&spec, &g)?)
    }
}

pub fn cf(global: &Global, cmd: &CfCommand) -> Result<(&'static str, Value, Report), CliError> {
    let mut r = Report::default();
    match cmd {
        CfCommand::Expand { point, random, digits } => {
            let e = if *random {
                let start = global.precision_bits;
                let max_bits = start.max(suggested_bits(*digits)).saturating_mul(8);
                expand_surrogate(random_surrogate(global.seed, max_bits), *digits, start, max_bits)?
            } else {
                let h = siegel_point(point.as_deref().expect("clap requires --point"))?;
                let e = expand(&h, *digits)?;
                if e.terminated {
                    let back = evaluate(&e.gamma0, &e.digits)?;
                    if back != h || e.convergents.last() != Some(&siegel_height(&h)) {
                        return Err(CliError::Invariant(format!("expansion of {h} does not evaluate back")));
                    }
                }
                e
            };
            expansion_report(&e, &mut r);
            let params = json!({ "point": point, "random": random, "digits": digits, "seed": global.seed, "precision_bits": global.precision_bits });
            Ok(("cf expand", params, r))
        }
        CfCommand::Evaluate { gamma0, digits } => {
            let g0 = siegel_point(gamma0)?;
            let ds: Vec<SiegelPoint> = digits
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(siegel_point)
                .collect::<Result<_, _>>()?;
            let h = evaluate(&g0, &ds)?;
            let q = siegel_height(&h);
            r.put("point", exact(h.to_string()))
                .put("q", exact(q.q().to_string()))
                .put("norm_q", exact(q.norm_q().to_string()));
            Ok(("cf evaluate", json!({ "gamma0": gamma0, "digits": digits }), r))
        }
    }
}
