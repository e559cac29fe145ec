use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use gzernike::io::GridField;
use gzernike::profiles::{synthesize_wavelet, DesignSpec, WaveletDesign};

use crate::args::{DesignArgs, Format, SynthArgs};
use crate::output::{emit, json_envelope};
use crate::{CliError, CliResult};

/// Environment variable overriding the default worker count.
pub const THREADS_ENV: &str = "GZERNIKE_THREADS";

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn schema<T: serde::de::DeserializeOwned>(v: Value) -> CliResult<T> {
    serde_json::from_value(v).map_err(|e| CliError::Usage(format!("schema error: {e}")))
}

fn design_report(d: &WaveletDesign) -> Value {
    let tails: Vec<Value> = d
        .radial_tables
        .iter()
        .map(|t| json!({"l": t.l(), "smax": t.smax(), "tail_energy": t.tail_energy()}))
        .collect();
    json!({"lmax": d.meta.lmax, "smax": d.meta.smax, "tails": tails, "warnings": d.tail_warnings()})
}

fn build(spec: &DesignSpec) -> CliResult<WaveletDesign> {
    spec.validate()
        .map_err(|e| CliError::Usage(format!("schema error: {e}")))?;
    let d = WaveletDesign::build(spec)?;
    for w in d.tail_warnings() {
        eprintln!("warning: {w}");
    }
    Ok(d)
}

pub fn run_design(a: &DesignArgs) -> CliResult<()> {
    let spec: DesignSpec = schema(read_json(&a.spec)?)?;
    let d = build(&spec)?;
    let data = json!({"truncation": design_report(&d), "design": d});
    emit(a.output.as_deref(), &json_envelope("design", a, data))
}

/// Accepts a `design` output envelope, a bare design, or a design spec.
fn load_design(path: &Path) -> CliResult<WaveletDesign> {
    let v = read_json(path)?;
    let inner = v.get("data").and_then(|d| d.get("design")).cloned();
    if let Some(d) = inner {
        return schema(d);
    }
    if v.get("radial_tables").is_some() {
        return schema(v);
    }
    build(&schema(v)?)
}

fn thread_count(flag: Option<usize>) -> CliResult<Option<usize>> {
    if let Some(n) = flag {
        return Ok(Some(n));
    }
    match std::env::var(THREADS_ENV) {
        Ok(s) => s.trim().parse::<usize>().map(Some).map_err(|_| {
            CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got `{s}`"
            ))
        }),
        Err(_) => Ok(None),
    }
}

pub fn run_synth(a: &SynthArgs) -> CliResult<()> {
    if a.grid == 0 || !(a.extent > 0.0) {
        return Err(CliError::Usage(
            "--grid must be positive and --extent > 0".into(),
        ));
    }
    let design = load_design(&a.input)?;
    let axis: Vec<f64> = if a.grid == 1 {
        vec![0.0]
    } else {
        (0..a.grid)
            .map(|i| -a.extent + 2.0 * a.extent * i as f64 / (a.grid - 1) as f64)
            .collect()
    };
    let axes = vec![axis.clone(), axis.clone(), axis];
    let points = GridField::points(&axes);

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count(a.threads)? {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let values: Vec<Complex64> = pool.install(|| {
        points
            .par_iter()
            .map(|p| synthesize_wavelet(&design, [p[0], p[1], p[2]]))
            .collect::<Result<Vec<_>, _>>()
    })?;

    let meta = json!({
        "design": design.meta,
        "truncation": design_report(&design),
    });
    let field = GridField::new(axes, values, meta)?;
    let text = match a.format {
        Format::Json => json_envelope("synth", a, &field),
        Format::Csv => {
            let csv = field.to_csv();
            // splice the config echo in after the version line
            let (first, rest) = csv.split_once('\n').unwrap_or((&csv, ""));
            format!(
                "{first}\n# config: {}\n{rest}",
                crate::output::config_echo("synth", a)
            )
        }
    };
    emit(a.output.as_deref(), &text)
}
