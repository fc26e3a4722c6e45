use carnot::{CarnotPoint, CarnotSpec, HeisDyadic};
use dioph::{
    axis_experiment, carnot_count, carnot_count_samples, estimate_exponent, siegel_scan, uniform_heis_point, uniform_siegel_point,
    Axis, CountReport, DenominatorFilter, ExponentEstimate, ExponentTarget, Hits,
};
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};
use zkernel::rng::{keyed_rng, uniform_dyadic};

use super::{load_spec, siegel_point, spec_json};
use crate::args::{AxisArg, CountArgs, ExponentArgs, Exponents, Global, Model, ScanArgs};
use crate::error::CliError;
use crate::output::{exact, float, float_opt, Report, Table};

fn filter(e: &Exponents) -> DenominatorFilter {
    if e.primes {
        DenominatorFilter::Primes
    } else {
        DenominatorFilter::All
    }
}

/// `α` defaults to the critical exponent of the model: `(Q+1)/Q` on a
/// Carnot group, 1 on Sieg¹.
fn alpha(e: &Exponents, model: Model, spec: &CarnotSpec) -> BigRational {
    e.alpha.clone().unwrap_or_else(|| match model {
        Model::Carnot => {
            let q = spec.homogeneous_dim() as i64;
            BigRational::new((q + 1).into(), q.into())
        }
        Model::Siegel => BigRational::from_integer(1.into()),
    })
}

fn hit_rows(sample: usize, hits: &Hits, t: &mut Table) {
    match hits {
        Hits::Carnot(v) => {
            for h in v {
                let p: Vec<String> = h.p.iter().map(|x| x.to_string()).collect();
                t.rows.push(vec![sample.to_string(), h.q.to_string(), p.join(";"), format!("{:.17e}", h.dist.to_f64())]);
            }
        }
        Hits::Siegel(v) => {
            for h in v {
                let p: Vec<String> = h.point.p_vec().iter().map(|x| x.to_string()).collect();
                t.rows.push(vec![sample.to_string(), h.point.q().to_string(), p.join(";"), format!("{:.17e}", h.dist_f64())]);
            }
        }
    }
}

fn median(mut v: Vec<usize>) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.sort_unstable();
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m] as f64
    } else {
        (v[m - 1] + v[m]) as f64 / 2.0
    }
}

fn count_report(reports: &[CountReport], r: &mut Report) {
    let counts: Vec<usize> = reports.iter().map(|x| x.hits.len()).collect();
    let slopes: Vec<f64> = reports.iter().filter_map(|x| x.fitted_slope).collect();
    let mean_slope = (!slopes.is_empty()).then(|| slopes.iter().sum::<f64>() / slopes.len() as f64);
    r.put("hit_count", exact(counts.iter().sum::<usize>()))
        .put("median_hits", float(median(counts.clone())))
        .put("hits_per_sample", json!({ "value": counts, "provenance": "exact" }))
        .put("fitted_slope", float_opt(mean_slope))
        .put("predicted_slope", float_opt(reports.first().and_then(|x| x.predicted_slope)));
    let mut t = Table::new(&["sample", "q", "p", "dist"]);
    for (i, x) in reports.iter().enumerate() {
        hit_rows(i, &x.hits, &mut t);
    }
    r.detail = Some(t);
}

fn uniform_point(spec: &CarnotSpec, seed: u64, i: u64) -> CarnotPoint {
    let mut rng = keyed_rng(seed, "cli.uniform", i);
    let coords = (0..spec.dim()).map(|_| uniform_dyadic(&mut rng, dioph::SAMPLE_BITS)).collect();
    CarnotPoint::new(spec, coords).expect("one coordinate per dimension")
}

pub fn count(global: &Global, a: &CountArgs) -> Result<(&'static str, Value, Report), CliError> {
    let model = a.model.unwrap_or(global.model);
    let spec = load_spec(global)?;
    let al = alpha(&a.exp, model, &spec);
    let f = filter(&a.exp);
    let reports = match model {
        Model::Carnot if spec == CarnotSpec::heisenberg(1) => carnot_count_samples(global.seed, a.samples, &a.exp.c, &al, a.exp.n, f)?,
        Model::Carnot => (0..a.samples as u64)
            .into_par_iter()
            .map(|i| carnot_count(&spec, &uniform_point(&spec, global.seed, i), &a.exp.c, &al, a.exp.n, f))
            .collect::<Result<_, _>>()?,
        Model::Siegel => (0..a.samples as u64)
            .into_par_iter()
            .map(|i| siegel_scan(&uniform_siegel_point(global.seed, i), &a.exp.c, &al, a.exp.nnorm, f))
            .collect::<Result<_, _>>()?,
    };
    let mut r = Report::default();
    count_report(&reports, &mut r);
    let cutoff = match model {
        Model::Carnot => json!({ "N": a.exp.n }),
        Model::Siegel => json!({ "Nnorm": a.exp.nnorm }),
    };
    let params = json!({
        "model": model,
        "spec": spec_json(&spec),
        "C": a.exp.c.to_string(),
        "alpha": al.to_string(),
        "cutoff": cutoff,
        "samples": a.samples,
        "filter": f,
        "seed": global.seed,
    });
    Ok(("count", params, r))
}

pub fn scan(global: &Global, a: &ScanArgs) -> Result<(&'static str, Value, Report), CliError> {
    let model = a.model.unwrap_or(global.model);
    let spec = load_spec(global)?;
    let al = alpha(&a.exp, model, &spec);
    let f = filter(&a.exp);
    let report = match model {
        Model::Carnot => carnot_count(&spec, &CarnotPoint::parse(&spec, &a.point)?, &a.exp.c, &al, a.exp.n, f)?,
        Model::Siegel => siegel_scan(&siegel_point(&a.point)?, &a.exp.c, &al, a.exp.nnorm, f)?,
    };
    let mut r = Report::default();
    count_report(std::slice::from_ref(&report), &mut r);
    let params = json!({
        "model": model,
        "point": a.point,
        "C": a.exp.c.to_string(),
        "alpha": al.to_string(),
        "N": a.exp.n,
        "Nnorm": a.exp.nnorm,
        "filter": f,
    });
    Ok(("scan", params, r))
}

fn estimates_report(estimates: &[ExponentEstimate], r: &mut Report) {
    let vals: Vec<f64> = estimates.iter().filter_map(|e| e.estimate).collect();
    let k = vals.len() as f64;
    let mean = (k > 0.0).then(|| vals.iter().sum::<f64>() / k);
    let sd = mean.map(|m| (vals.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (k - 1.0).max(1.0)).sqrt());
    r.put("mean", float_opt(mean))
        .put("std_dev", float_opt(sd))
        .put("fitted", exact(vals.len()))
        .put("samples", exact(estimates.len()));
    let mut t = Table::new(&["sample", "point", "status", "estimate", "records"]);
    for (i, e) in estimates.iter().enumerate() {
        t.rows.push(vec![
            i.to_string(),
            e.point.clone(),
            serde_json::to_value(e.status).expect("status").as_str().unwrap_or_default().to_string(),
            e.estimate.map_or(String::new(), |x| format!("{x:.12}")),
            e.samples.len().to_string(),
        ]);
    }
    r.detail = Some(t);
}

pub fn exponent(global: &Global, a: &ExponentArgs) -> Result<(&'static str, Value, Report), CliError> {
    let model = a.model.unwrap_or(global.model);
    let mut r = Report::default();
    let params = json!({
        "model": model,
        "axis": a.axis.map(|x| format!("{x:?}").to_lowercase()),
        "point": a.point,
        "samples": a.samples,
        "N": a.n,
        "Nnorm": a.nnorm,
        "seed": global.seed,
    });
    if let Some(axis) = a.axis {
        if model != Model::Carnot {
            return Err(CliError::Config("axis experiments run on the Carnot model".into()));
        }
        let axis = match axis {
            AxisArg::X => Axis::X,
            AxisArg::T => Axis::T,
        };
        let rep = axis_experiment(axis, global.seed, a.samples, a.n)?;
        r.put("mean", float(rep.mean)).put("std_dev", float(rep.std_dev));
        let mut t = Table::new(&["sample", "estimate"]);
        for (i, e) in rep.estimates.iter().enumerate() {
            t.rows.push(vec![i.to_string(), e.map_or(String::new(), |x| format!("{x:.12}"))]);
        }
        r.detail = Some(t);
        return Ok(("exponent", params, r));
    }
    let targets: Vec<ExponentTarget> = match (&a.point, model) {
        (Some(p), Model::Carnot) => {
            let spec = CarnotSpec::heisenberg(1);
            let g = CarnotPoint::parse(&spec, p)?;
            let d = HeisDyadic::from_point(&g).ok_or_else(|| CliError::Config(format!("{p} needs dyadic coordinates")))?;
            vec![ExponentTarget::Carnot(d)]
        }
        (Some(p), Model::Siegel) => vec![ExponentTarget::Siegel(siegel_point(p)?)],
        (None, Model::Carnot) => (0..a.samples as u64).map(|i| ExponentTarget::Carnot(uniform_heis_point(global.seed, i))).collect(),
        (None, Model::Siegel) => (0..a.samples as u64).map(|i| ExponentTarget::Siegel(uniform_siegel_point(global.seed, i))).collect(),
    };
    let n = match model {
        Model::Carnot => a.n,
        Model::Siegel => a.nnorm,
    };
    let estimates: Vec<ExponentEstimate> = targets.par_iter().map(|t| estimate_exponent(t, n)).collect::<Result<_, _>>()?;
    estimates_report(&estimates, &mut r);
    Ok(("exponent", params, r))
}
