use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::Value;

use trigspline::analysis::{convergence_order, error_stats_from_samples, sweep_power, SweepGrid};
use trigspline::polyoracle::{moment_tail, moments_via_trigspline};
use trigspline::power::power_spline_series;
use trigspline::spline::uniform_points;
use trigspline::trigpoly::dft_coeffs;
use trigspline::{FactorKind, Indicator, ParamVector, PeriodicPolySpline, TailPlan, TrigSpline, UniformGrid};

use crate::data::{env_tail, fmt17, num, nums, object, read_samples, read_spec, write_json, write_json_file};
use crate::{Oracle, TestFunction};

pub fn nodes(out: &mut impl Write, n: usize, indicator: u8) -> Result<()> {
    let grid = UniformGrid::new(n, Indicator::new(indicator)?)?;
    writeln!(out, "t")?;
    for &t in grid.nodes() {
        writeln!(out, "{}", fmt17(t))?;
    }
    Ok(())
}

pub fn coeffs(out: &mut impl Write, input: &Path, indicator: u8) -> Result<()> {
    let samples = read_samples(input, None, Indicator::new(indicator)?)?;
    let c = dft_coeffs(&samples);
    write_json(out, &object(vec![("a0", num(c.a0)), ("a", nums(&c.a)), ("b", nums(&c.b))]))
}

fn build(spec_path: &Path, input: &Path, strict_tail: bool) -> Result<TrigSpline> {
    let loaded = read_spec(spec_path)?;
    let mut spec = loaded.spec;
    if strict_tail {
        spec.tail = spec.tail.strict();
    }
    let samples = read_samples(input, Some(loaded.size), spec.interp)?;
    Ok(TrigSpline::build(&samples, spec)?)
}

fn plan_json(plan: TailPlan) -> Value {
    object(vec![
        ("terms", Value::from(plan.terms)),
        ("effective_rel_tol", num(plan.effective_rel_tol)),
        ("relaxed", Value::Bool(plan.relaxed)),
    ])
}

fn linspace(t0: f64, t1: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![t0],
        _ => (0..points)
            .map(|i| t0 + (t1 - t0) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

pub struct EvalArgs {
    pub spec: PathBuf,
    pub input: PathBuf,
    pub t0: f64,
    pub t1: f64,
    pub points: usize,
    pub deriv: usize,
    pub unsafe_derivative: bool,
    pub strict_tail: bool,
    pub dump_factors: Option<PathBuf>,
}

pub fn eval(out: &mut impl Write, args: &EvalArgs) -> Result<()> {
    if args.points == 0 {
        bail!("--points must be at least 1");
    }
    let spline = build(&args.spec, &args.input, args.strict_tail)?;
    if let Some(path) = &args.dump_factors {
        let (pc, ps) = spline.factor_plans();
        let dump = object(vec![
            ("hc", nums(spline.hc())),
            ("hs", nums(spline.hs())),
            ("plan_c", plan_json(pc)),
            ("plan_s", plan_json(ps)),
        ]);
        write_json_file(path, &dump)?;
    }
    let ts = linspace(args.t0, args.t1, args.points);
    let report = spline.eval_report(ts[0], args.deriv, args.unsafe_derivative)?;
    if report.relaxed {
        eprintln!(
            "warning: tail budget reached; values are certified to {} relative",
            fmt17(report.effective_rel_tol)
        );
    }
    let values = if args.unsafe_derivative {
        ts.iter()
            .map(|&t| spline.eval_report(t, args.deriv, true).map(|e| e.value))
            .collect::<trigspline::Result<Vec<_>>>()?
    } else {
        spline.eval_many(&ts, args.deriv)?
    };
    writeln!(out, "t,value")?;
    for (t, v) in ts.iter().zip(values) {
        writeln!(out, "{},{}", fmt17(*t), fmt17(v))?;
    }
    Ok(())
}

pub fn power(out: &mut impl Write, spec: &Path, input: &Path, deriv: usize, strict_tail: bool) -> Result<()> {
    let spline = build(spec, input, strict_tail)?;
    let report = power_spline_series(&spline, deriv)?;
    write_json(
        out,
        &object(vec![
            ("q", Value::from(report.q)),
            ("series", num(report.series_value)),
            ("quadrature", num(report.quadrature_value)),
            ("pc", num(report.pc)),
            ("ps", num(report.ps)),
            ("a0_term", num(report.a0_term)),
        ]),
    )
}

pub fn compare(out: &mut impl Write, spec: &Path, input: &Path, oracle: Oracle, points: usize) -> Result<()> {
    if points == 0 {
        bail!("--points must be at least 1");
    }
    let loaded = read_spec(spec)?;
    let samples = read_samples(input, Some(loaded.size), loaded.spec.interp)?;
    let spline = TrigSpline::build(&samples, loaded.spec)?;
    let poly = match oracle {
        Oracle::Linear => PeriodicPolySpline::linear(&samples),
        Oracle::Cubic => PeriodicPolySpline::cubic(&samples)?,
    };
    let ts = uniform_points(points);
    let approx = spline.eval_uniform(points, 0)?;
    let exact = ts.iter().map(|&t| poly.eval(t, 0)).collect::<trigspline::Result<Vec<_>>>()?;
    let stats = error_stats_from_samples(&approx, &exact)?;
    write_json(
        out,
        &object(vec![
            ("sup_err", num(stats.sup_err)),
            ("l2_err", num(stats.l2_err)),
            ("points", Value::from(stats.points)),
        ]),
    )
}

pub fn moments(out: &mut impl Write, input: &Path) -> Result<()> {
    let samples = read_samples(input, None, Indicator::Zero)?;
    let mut tail = moment_tail();
    tail.rel_tol = env_tail()?.rel_tol;
    let trig = moments_via_trigspline(&samples, tail)?;
    let cubic = PeriodicPolySpline::cubic(&samples)?;
    let cyclic = cubic.moments();
    let scale = cyclic.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let diff = trig.iter().zip(cyclic).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let rel = if scale > 0.0 { diff / scale } else { diff };
    write_json(
        out,
        &object(vec![
            ("trig", nums(&trig)),
            ("cyclic", nums(cyclic)),
            ("max_rel_diff", num(rel)),
        ]),
    )
}

fn parse_grid(raw: &str) -> Result<SweepGrid> {
    if raw == "default" {
        return Ok(SweepGrid::default());
    }
    let values = raw
        .split(',')
        .map(|v| v.trim().parse::<f64>().with_context(|| format!("--grid value `{v}` is not a number")))
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        bail!("--grid needs at least one value");
    }
    Ok(SweepGrid {
        values,
        equal_params: true,
    })
}

pub fn sweep(out: &mut impl Write, input: &Path, r: usize, nu: &str, deriv: usize, grid: &str) -> Result<()> {
    let kind: FactorKind = nu.parse()?;
    let samples = read_samples(input, None, Indicator::Zero)?;
    let result = sweep_power(&samples, r, kind, deriv, &parse_grid(grid)?)?;
    writeln!(out, "g1,g2,g3,power,flag")?;
    for cell in &result.cells {
        let [g1, g2, g3] = cell.gamma.as_array();
        let power = cell.power.map(fmt17).unwrap_or_default();
        writeln!(out, "{},{},{},{},{}", fmt17(g1), fmt17(g2), fmt17(g3), power, cell.flag.name())?;
    }
    eprintln!("baseline power: {}", fmt17(result.baseline_power));
    if result.winners.is_empty() {
        eprintln!("no parameter vector beat the polynomial spline");
    } else {
        eprintln!("{} parameter vectors beat the polynomial spline", result.winners.len());
    }
    Ok(())
}

pub fn convergence(
    out: &mut impl Write,
    func: TestFunction,
    r: usize,
    nu: &str,
    sizes: &[usize],
    summary: Option<&Path>,
) -> Result<()> {
    let kind: FactorKind = nu.parse()?;
    let f: fn(f64) -> f64 = match func {
        TestFunction::Expsin => |t: f64| t.sin().exp(),
        TestFunction::Abssin => |t: f64| t.sin().abs(),
    };
    let report = convergence_order(f, r, kind, ParamVector::simple(), sizes)?;
    writeln!(out, "N,sup_err")?;
    for &(n, e) in &report.samples {
        writeln!(out, "{n},{}", fmt17(e))?;
    }
    let json = object(vec![
        ("order", num(report.order)),
        ("slope", num(report.slope)),
        ("exact", Value::Bool(report.exact)),
    ]);
    match summary {
        Some(path) => write_json_file(path, &json),
        None => write_json(&mut std::io::stderr(), &json),
    }
}
