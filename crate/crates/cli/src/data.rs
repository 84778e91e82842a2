use std::fs::File;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use serde_json::{Map, Number, Value};

use trigspline::{FactorKind, Indicator, ParamVector, SampleSet, SplineSpec, TailControl, UniformGrid};

/// Overrides the default relative tail tolerance.
pub const TAIL_TOL_ENV: &str = "TRIGSPLINE_TAIL_TOL";

/// Sample `t` values must sit this close to a grid node.
const NODE_TOL: f64 = 1e-9;

pub const SPEC_SCHEMA: &str = r#"{"N": odd int >= 3, "I1": 0|1, "I2": 0|1, "r": int >= 1, "nu": "nu1|nu2|nu3|nu4", "gamma": [g1,g2,g3], "eta": [e1,e2,e3], "tail_rel_tol": real (optional), "tail_max_terms": int (optional)}"#;

/// `%.17g`: 17 significant digits, trailing zeros dropped.
pub fn fmt17(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if (-5..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// JSON number carrying the `fmt17` digits verbatim; non-finite becomes `null`.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(fmt17(x).parse::<Number>().expect("formatted float is valid JSON"))
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn object(fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in fields {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

pub fn write_json(out: &mut impl Write, value: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_json_file(path: &Path, value: &Value) -> Result<()> {
    let mut file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    write_json(&mut file, value)
}

/// Reads `t,value` or `value` rows. Returns the values in node order and,
/// for the two-column form, the abscissae as given.
fn read_rows(path: &Path) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot read samples from {}", path.display()))?;
    let headers: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    let with_t = match headers.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        ["t", "value"] => true,
        ["value"] => false,
        _ => bail!("samples CSV header must be `t,value` or `value`, got `{}`", headers.join(",")),
    };
    let mut ts = Vec::new();
    let mut values = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        let parse = |i: usize| -> Result<f64> {
            let field = record.get(i).unwrap_or("");
            field
                .parse::<f64>()
                .with_context(|| format!("row {}: `{field}` is not a number", line + 2))
        };
        if with_t {
            ts.push(parse(0)?);
            values.push(parse(1)?);
        } else {
            values.push(parse(0)?);
        }
    }
    Ok((values, with_t.then_some(ts)))
}

/// Loads samples on the grid of size `N` (row count when `None`) with indicator `ind`.
pub fn read_samples(path: &Path, size: Option<usize>, ind: Indicator) -> Result<SampleSet> {
    let (values, ts) = read_rows(path)?;
    let n = size.unwrap_or(values.len());
    if values.len() != n {
        bail!("samples file has {} rows but the grid has N = {n}", values.len());
    }
    let grid = UniformGrid::new(n, ind)?;
    let values = match ts {
        None => values,
        Some(ts) => {
            let mut placed = vec![None; n];
            for (&t, &v) in ts.iter().zip(&values) {
                let i = grid
                    .locate(t, NODE_TOL)
                    .with_context(|| format!("t = {t} is not a node of the N = {n}, I = {} grid", ind.value()))?;
                if placed[i - 1].replace(v).is_some() {
                    bail!("node {i} (t = {t}) appears twice");
                }
            }
            placed.into_iter().map(Option::unwrap).collect()
        }
    };
    Ok(SampleSet::new(grid, values)?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "I1")]
    i1: u8,
    #[serde(rename = "I2")]
    i2: u8,
    r: usize,
    nu: String,
    #[serde(default = "simple_params")]
    gamma: [f64; 3],
    #[serde(default = "simple_params")]
    eta: [f64; 3],
    tail_rel_tol: Option<f64>,
    tail_max_terms: Option<usize>,
}

fn simple_params() -> [f64; 3] {
    [1.0, 1.0, 1.0]
}

/// A parsed `spec.json` with its grid size.
#[derive(Debug, Clone, Copy)]
pub struct LoadedSpec {
    pub size: usize,
    pub spec: SplineSpec,
}

/// Default tail control, with `TRIGSPLINE_TAIL_TOL` applied.
pub fn env_tail() -> Result<TailControl> {
    let mut tail = TailControl::default();
    if let Ok(raw) = std::env::var(TAIL_TOL_ENV) {
        let tol: f64 = raw
            .trim()
            .parse()
            .with_context(|| format!("{TAIL_TOL_ENV}=`{raw}` is not a number"))?;
        tail = TailControl::new(tol, tail.max_terms)?;
    }
    Ok(tail)
}

pub fn read_spec(path: &Path) -> Result<LoadedSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read spec {}", path.display()))?;
    let raw: SpecFile =
        serde_json::from_str(&text).with_context(|| format!("{}: expected {SPEC_SCHEMA}", path.display()))?;
    let kind: FactorKind = raw.nu.parse()?;
    let param = |v: [f64; 3]| ParamVector::new(v[0], v[1], v[2]);
    let mut tail = env_tail()?;
    if raw.tail_rel_tol.is_some() || raw.tail_max_terms.is_some() {
        tail = TailControl::new(
            raw.tail_rel_tol.unwrap_or(tail.rel_tol),
            raw.tail_max_terms.unwrap_or(tail.max_terms),
        )?;
    }
    let spec = SplineSpec::new(
        param(raw.gamma)?,
        param(raw.eta)?,
        kind,
        raw.r,
        Indicator::new(raw.i1)?,
        Indicator::new(raw.i2)?,
    )?
    .with_tail(tail);
    UniformGrid::new(raw.n, spec.interp)?;
    Ok(LoadedSpec { size: raw.n, spec })
}
