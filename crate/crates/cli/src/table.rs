use serde_json::{json, Value};

use gzernike::connect::{
    connection_row, connection_row_2d, moment_matrix, moment_matrix_2d, weight_matrix,
    weight_matrix_2d, ConnectionRow, ExpansionTable, Matrix,
};
use gzernike::io::CsvDoc;
use gzernike::profiles::{
    expand_monomial_edge, expand_pure_edge, expand_s_profile, MonomialEdgeProfile, SProfileSpec,
};
use gzernike::radial::{radial2_direct, radial3_direct, RadialIndex2, RadialIndex3};
use gzernike::transforms::scaling_matrix;
use gzernike::verify::{self, VerifyOptions};

use crate::args::{Format, TableArgs, TableKind, VerifyArgs};
use crate::output::{config_echo, emit, json_envelope};
use crate::{CliError, CliResult};

fn header(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn matrix_doc(m: &Matrix) -> (CsvDoc, Value) {
    let mut doc = CsvDoc::new(header(&["row", "col", "value"]));
    let mut rows = Vec::new();
    for i in 0..m.nrows() {
        let mut r = Vec::new();
        for j in 0..m.ncols() {
            doc.rows.push(vec![i as f64, j as f64, m[(i, j)]]);
            r.push(m[(i, j)]);
        }
        rows.push(r);
    }
    (
        doc,
        json!({"rows": m.nrows(), "cols": m.ncols(), "entries": rows}),
    )
}

fn rows_doc(rows: &[ConnectionRow]) -> (CsvDoc, Value) {
    let mut doc = CsvDoc::new(header(&["p", "s", "value"]));
    for r in rows {
        for (s, v) in r.values().iter().enumerate() {
            doc.rows.push(vec![r.p() as f64, s as f64, *v]);
        }
    }
    (doc, serde_json::to_value(rows).expect("rows serialize"))
}

fn tables_doc(tables: &[ExpansionTable]) -> (CsvDoc, Value) {
    let mut doc = CsvDoc::new(header(&["l", "s", "n", "b", "b_over_norm"]));
    for t in tables {
        doc.meta(
            &format!("tail_energy_l{}", t.l()),
            gzernike::io::fmt17(t.tail_energy()),
        );
        for (s, (b, c)) in t.coeffs().iter().zip(t.normalized()).enumerate() {
            doc.rows
                .push(vec![t.l() as f64, s as f64, (t.l() + 2 * s) as f64, *b, c]);
        }
    }
    for t in tables {
        if let Some(w) = t.tail_warning() {
            eprintln!("warning: {w}");
        }
    }
    let data: Vec<Value> = tables
        .iter()
        .map(|t| {
            json!({
                "l": t.l(),
                "alpha": t.alpha(),
                "coeffs": t.coeffs(),
                "normalized": t.normalized(),
                "tail_energy": t.tail_energy(),
            })
        })
        .collect();
    (doc, Value::Array(data))
}

fn radial_doc(a: &TableArgs, disk: bool) -> CliResult<(CsvDoc, Value)> {
    if a.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let degrees: Vec<usize> = (a.l..=a.nmax).step_by(2).collect();
    let mut names = vec!["rho".to_string()];
    names.extend(degrees.iter().map(|n| format!("n{n}")));
    let mut doc = CsvDoc::new(names);
    let mut rho_axis = Vec::new();
    let mut values = vec![Vec::new(); degrees.len()];
    for i in 0..a.points {
        let rho = i as f64 / (a.points - 1) as f64;
        let mut row = vec![rho];
        for (k, &n) in degrees.iter().enumerate() {
            let v = if disk {
                radial2_direct(RadialIndex2::new(n, a.l as i64, a.alpha)?, rho)?
            } else {
                radial3_direct(RadialIndex3::new(n, a.l, a.alpha)?, rho)?
            };
            values[k].push(v);
            row.push(v);
        }
        rho_axis.push(rho);
        doc.rows.push(row);
    }
    Ok((
        doc,
        json!({"l": a.l, "alpha": a.alpha, "n": degrees, "rho": rho_axis, "values": values}),
    ))
}

pub fn run(a: &TableArgs) -> CliResult<()> {
    let (mut doc, data) = match a.kind {
        TableKind::Radial3 => radial_doc(a, false)?,
        TableKind::Radial2 => radial_doc(a, true)?,
        TableKind::Connection | TableKind::Connection2d => {
            let rows = (0..=a.nmax)
                .map(|p| {
                    if a.kind == TableKind::Connection {
                        connection_row(p, a.l, a.alpha)
                    } else {
                        connection_row_2d(p, a.l, a.alpha)
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows_doc(&rows)
        }
        TableKind::Moment => matrix_doc(&moment_matrix(a.r, a.nmax)),
        TableKind::Moment2d => matrix_doc(&moment_matrix_2d(a.r, a.nmax)),
        TableKind::Weight => matrix_doc(&weight_matrix(a.delta, a.nmax)),
        TableKind::Weight2d => matrix_doc(&weight_matrix_2d(a.delta, a.nmax)),
        TableKind::Scaling => {
            let m = scaling_matrix(a.l, a.alpha, a.epsilon, a.nmax)?;
            let mut doc = CsvDoc::new(header(&["n", "n_prime", "value"]));
            let mut entries = Vec::new();
            for n in (a.l..=a.nmax).step_by(2) {
                for np in (a.l..m.ncol()).step_by(2) {
                    let v = m.get(n, np);
                    doc.rows.push(vec![n as f64, np as f64, v]);
                    entries.push(json!([n, np, v]));
                }
            }
            (
                doc,
                json!({"l": a.l, "alpha": a.alpha, "epsilon": a.epsilon, "entries": entries}),
            )
        }
        TableKind::Monomial => {
            let p = MonomialEdgeProfile::new(a.beta, a.alpha)?;
            tables_doc(&[expand_monomial_edge(p, a.l, a.smax)?])
        }
        TableKind::PureEdge => tables_doc(&[expand_pure_edge(a.l, a.eta, a.delta as f64, a.smax)?]),
        TableKind::SProfile => {
            let spec = SProfileSpec::new(a.beta, a.delta, a.eta, a.epsilon)?;
            tables_doc(&expand_s_profile(&spec, a.lmax, a.smax)?)
        }
    };
    let text = match a.format {
        Format::Csv => {
            doc.meta
                .insert(0, ("config".into(), config_echo("table", a)));
            doc.render()
        }
        Format::Json => json_envelope("table", a, data),
    };
    emit(a.output.as_deref(), &text)
}

pub fn run_verify(a: &VerifyArgs) -> CliResult<()> {
    if let Some(s) = &a.suite {
        if !gzernike::verify::SUITES.contains(&s.as_str()) {
            return Err(CliError::Usage(format!(
                "unknown suite `{s}`; available: {}",
                gzernike::verify::SUITES.join(", ")
            )));
        }
    }
    let report = verify::run(&VerifyOptions {
        suite: a.suite.clone(),
        alpha: a.alpha,
        pmax: a.pmax,
        seed: a.seed,
    })?;
    let passed = report.passed;
    emit(a.output.as_deref(), &json_envelope("verify", a, report))?;
    if passed {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}
