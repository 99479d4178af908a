use std::f64::consts::FRAC_PI_4;

use pcircle::genbessel::{gen_bessel, GenBesselParams};
use pcircle::hardy::{convergence_trace, decay_slope_estimate, tail_schedule, HardySumConfig};
use pcircle::pgeom::{
    area_term, count_lattice_points_with_proximity, enumerate_shells, error_term_direct,
    PExponent,
};
use pcircle::{EvalPath, Error, PathMode, QuadratureSpec, SeriesControl};
use serde_json::json;

use crate::args::{
    BesselArgs, Command, CountArgs, DecayArgs, HardyArgs, NumericArgs, PathArg, ShellsArgs,
    VerifyArgs,
};
use crate::config::ConfigFile;
use crate::error::CliError;
use crate::output::{Cell, Report};
use crate::verify;

/// A rendered report and the number of failed checks it records.
pub struct Outcome {
    pub report: Report,
    pub failed: usize,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Self { report, failed: 0 }
    }
}

pub fn dispatch(command: &Command, cfg: &ConfigFile) -> Result<Outcome, CliError> {
    match command {
        Command::Count(a) => count(a, cfg).map(Into::into),
        Command::Bessel(a) => bessel(a, cfg).map(Into::into),
        Command::Shells(a) => shells(a, cfg).map(Into::into),
        Command::Hardy(a) => hardy(a, cfg).map(Into::into),
        Command::Verify(a) => verify_cmd(a, cfg),
        Command::Decay(a) => decay(a, cfg).map(Into::into),
    }
}

fn exponent(cfg: &ConfigFile, flag: Option<u32>) -> Result<PExponent, CliError> {
    let q = cfg.require(flag, "q")?;
    PExponent::new(q).map_err(|e| CliError::Usage(format!("--q: {e}")))
}

struct Numeric {
    path: EvalPath,
    ctrl: SeriesControl,
    quad: QuadratureSpec,
}

fn numeric(cfg: &ConfigFile, a: &NumericArgs) -> Result<Numeric, CliError> {
    let mode: PathMode = cfg.pick(a.path, "path")?.unwrap_or(PathArg::Auto).into();
    let mut ctrl = SeriesControl::default();
    let limit = cfg.pick(a.series_limit, "series-limit")?.unwrap_or(ctrl.arg_limit);
    ctrl.arg_limit = ctrl.arg_limit.max(limit);
    if let Some(n) = cfg.pick(a.max_terms, "max-terms")? {
        ctrl.max_terms = n;
    }
    if let Some(t) = cfg.pick(a.tail_tol, "tail-tol")? {
        ctrl.tail_tol = t;
    }
    ctrl.validate()?;
    let mut quad = QuadratureSpec::default();
    let rel = cfg.pick(a.rel_tol, "rel-tol")?.unwrap_or(quad.rel_tol);
    let abs = cfg.pick(a.abs_tol, "abs-tol")?.unwrap_or(quad.abs_tol);
    quad = quad.with_tolerances(rel, abs);
    quad.validate()?;
    Ok(Numeric {
        path: EvalPath::new(mode, limit)?,
        ctrl,
        quad,
    })
}

pub fn count(a: &CountArgs, cfg: &ConfigFile) -> Result<Report, CliError> {
    let p = exponent(cfg, a.q)?;
    let r: f64 = cfg.require(a.r, "r")?;
    let c = count_lattice_points_with_proximity(p, r)?;
    let area = area_term(p, r);
    let error_term = c.count as f64 - area;
    Ok(Report {
        header: vec!["q", "r", "count", "area", "error_term", "near_boundary"],
        rows: vec![vec![
            p.q().into(),
            r.into(),
            c.count.into(),
            area.into(),
            error_term.into(),
            c.near_boundary.into(),
        ]],
        json: json!({
            "q": p.q(),
            "p": p.p(),
            "r": r,
            "count": c.count,
            "area": area,
            "error_term": error_term,
            "near_boundary": c.near_boundary,
            "min_distance": c.min_distance,
        }),
    })
}

fn point(a: &BesselArgs, cfg: &ConfigFile) -> Result<[f64; 2], CliError> {
    let values: Vec<f64> = match &a.x {
        Some(v) => v.clone(),
        None => {
            let raw = cfg
                .raw("x")
                .ok_or_else(|| CliError::Usage("missing required value --x".into()))?;
            raw.split([',', ' '])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|e| CliError::Usage(format!("config key `x`: {e}"))))
                .collect::<Result<_, _>>()?
        }
    };
    match values[..] {
        [x1, x2] => Ok([x1, x2]),
        _ => Err(CliError::Usage("--x takes exactly two numbers".into())),
    }
}

pub fn bessel(a: &BesselArgs, cfg: &ConfigFile) -> Result<Report, CliError> {
    let p = exponent(cfg, a.q)?;
    let omega: f64 = cfg.require(a.omega, "omega")?;
    let x = point(a, cfg)?;
    let n = numeric(cfg, &a.numeric)?;
    let params = GenBesselParams::new(p, omega)?;
    let e = gen_bessel(params, x, &n.path, &n.ctrl, &n.quad)?;
    Ok(Report {
        header: vec!["q", "omega", "x1", "x2", "value", "path", "error_estimate", "work"],
        rows: vec![vec![
            p.q().into(),
            omega.into(),
            x[0].into(),
            x[1].into(),
            e.value.into(),
            e.path.to_string().into(),
            e.error_estimate.into(),
            e.work.into(),
        ]],
        json: json!({
            "q": p.q(),
            "omega": omega,
            "x": x,
            "value": e.value,
            "path": e.path,
            "error_estimate": e.error_estimate,
            "work": e.work,
        }),
    })
}

pub fn shells(a: &ShellsArgs, cfg: &ConfigFile) -> Result<Report, CliError> {
    let p = exponent(cfg, a.q)?;
    let s_max: f64 = cfg.require(a.s_max, "s-max")?;
    if !(s_max >= 1.0 && s_max.is_finite()) {
        return Err(CliError::Usage(format!("--s-max must be finite and >= 1, got {s_max}")));
    }
    let shells = enumerate_shells(p, s_max);
    let mut rows = Vec::with_capacity(shells.len());
    let mut docs = Vec::with_capacity(shells.len());
    for sh in &shells {
        let bound = sh.bound(p);
        if sh.multiplicity() as u64 > bound {
            return Err(Error::Invariant(format!(
                "shell s = {} holds {} points, above its bound {bound}",
                sh.s,
                sh.multiplicity()
            ))
            .into());
        }
        let points: Vec<String> = sh.points.iter().map(|n| format!("{}:{}", n.n1, n.n2)).collect();
        let angles: Vec<String> = sh.angles.iter().map(|&v| crate::output::float(v)).collect();
        rows.push(vec![
            Cell::Float(sh.s),
            sh.multiplicity().into(),
            bound.into(),
            points.join(";").into(),
            angles.join(";").into(),
        ]);
        docs.push(json!({
            "s": sh.s,
            "multiplicity": sh.multiplicity(),
            "bound": bound,
            "points": sh.points.iter().map(|n| [n.n1, n.n2]).collect::<Vec<_>>(),
            "angles": sh.angles,
        }));
    }
    Ok(Report {
        header: vec!["s", "multiplicity", "bound", "points", "angles"],
        rows,
        json: json!({ "q": p.q(), "s_max": s_max, "shells": docs }),
    })
}

fn parse_schedule(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("--schedule: `{}`: {e}", s.trim())))
        })
        .collect()
}

pub fn hardy(a: &HardyArgs, cfg: &ConfigFile) -> Result<Report, CliError> {
    let p = exponent(cfg, a.q)?;
    let r: f64 = cfg.require(a.r, "r")?;
    let window = cfg.pick(a.window, "window")?.unwrap_or(8);
    if window == 0 {
        return Err(CliError::Usage("--window must be positive".into()));
    }
    let schedule = match cfg.pick(a.schedule.clone(), "schedule")? {
        Some(text) => parse_schedule(&text)?,
        None => {
            let s_max: f64 = cfg.require(a.s_max, "s-max")?;
            if s_max >= 1.0 {
                tail_schedule(s_max, window)
            } else {
                vec![s_max]
            }
        }
    };
    let n = numeric(cfg, &a.numeric)?;
    let hc = HardySumConfig {
        p,
        r,
        s_max: *schedule.last().unwrap_or(&0.0),
        path: n.path,
        ctrl: n.ctrl,
        quad: n.quad,
    };
    hc.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let near_boundary = error_term_direct(p, r)?.near_boundary;
    if near_boundary {
        eprintln!("warning: a lattice point lies on or next to the curve of radius {r}");
    }
    let trace = convergence_trace(&hc, &schedule, window)?;
    let rows = trace
        .checkpoints
        .iter()
        .map(|c| {
            vec![
                c.s_max.into(),
                c.partial_sum.into(),
                c.direct_error_term.into(),
                c.residual.into(),
                c.envelope.into(),
                trace.tail_average.into(),
            ]
        })
        .collect();
    Ok(Report {
        header: vec!["s_max", "partial_sum", "direct_error_term", "residual", "envelope", "tail_average"],
        rows,
        json: json!({
            "q": p.q(),
            "r": r,
            "window": window,
            "near_boundary": near_boundary,
            "tail_average": trace.tail_average,
            "tail_residual": trace.tail_residual(),
            "checkpoints": trace.checkpoints,
        }),
    })
}

pub fn decay(a: &DecayArgs, cfg: &ConfigFile) -> Result<Report, CliError> {
    let p = exponent(cfg, a.q)?;
    let phi = cfg.pick(a.phi, "phi")?.unwrap_or(FRAC_PI_4);
    let r_min = cfg.pick(a.r_min, "r-min")?.unwrap_or(50.0);
    let r_max = cfg.pick(a.r_max, "r-max")?.unwrap_or(400.0);
    let points = cfg.pick(a.points, "points")?.unwrap_or(4001);
    if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) || points < 3 {
        return Err(CliError::Usage(
            "decay grid needs 0 < r-min < r-max and at least 3 points".into(),
        ));
    }
    let n = numeric(cfg, &a.numeric)?;
    let step = (r_max - r_min) / (points - 1) as f64;
    let grid: Vec<f64> = (0..points).map(|i| r_min + step * i as f64).collect();
    let fit = decay_slope_estimate(p, phi, &grid, &n.quad)?;
    let rows = fit
        .peaks
        .iter()
        .map(|&(r, v)| vec![r.into(), v.into(), fit.slope.into(), fit.intercept.into()])
        .collect();
    Ok(Report {
        header: vec!["r", "peak", "slope", "intercept"],
        rows,
        json: json!({
            "q": p.q(),
            "phi": phi,
            "r_min": r_min,
            "r_max": r_max,
            "points": points,
            "slope": fit.slope,
            "intercept": fit.intercept,
            "peaks": fit.peaks.iter().map(|&(r, v)| json!({ "r": r, "peak": v })).collect::<Vec<_>>(),
        }),
    })
}

fn verify_cmd(a: &VerifyArgs, cfg: &ConfigFile) -> Result<Outcome, CliError> {
    let filter: Option<String> = cfg.pick(a.filter.clone(), "filter")?;
    let fast = a.fast || cfg.get::<bool>("fast")?.unwrap_or(false);
    let results = verify::run(filter.as_deref(), fast);
    if results.is_empty() {
        return Err(CliError::Usage(format!(
            "no verification check matches `{}`",
            filter.unwrap_or_default()
        )));
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    Ok(Outcome {
        report: verify::report(&results, fast),
        failed,
    })
}
