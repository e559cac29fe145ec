use gzernike::io::{fmt17, CsvDoc};
use gzernike::profiles::{
    allscale_normalized, allscale_profile, epsilon_for_peak, flatten_gain, flatten_profile,
    flattened_peak_x, locate_max, peak_range, SProfileSpec,
};

use crate::args::{Fig2Args, Fig3Args};
use crate::output::{config_echo, emit};
use crate::{CliError, CliResult};

fn grid(points: usize) -> CliResult<Vec<f64>> {
    if points < 3 {
        return Err(CliError::Usage("--points must be at least 3".into()));
    }
    Ok((0..points)
        .map(|i| i as f64 / (points - 1) as f64)
        .collect())
}

fn grid_argmax(rho: &[f64], v: &[f64]) -> f64 {
    let mut best = 0;
    for i in 1..v.len() {
        if v[i] > v[best] {
            best = i;
        }
    }
    rho[best]
}

pub fn run_fig2(a: &Fig2Args) -> CliResult<()> {
    let rho = grid(a.points)?;
    let (rho_max, bmax) = allscale_profile(a.beta, a.alpha)?;
    let b = allscale_normalized(a.beta, a.alpha)?;
    let c = flatten_profile(a.beta, a.alpha)?;
    let bv: Vec<f64> = rho.iter().map(|&r| b.eval(r)).collect();
    let cv: Vec<f64> = rho.iter().map(|&r| c.eval(r)).collect();

    let mut doc = CsvDoc::new(["rho_b", "b", "rho_c", "c"].map(String::from).to_vec());
    doc.meta("config", config_echo("fig2", a));
    doc.meta("rho_max", fmt17(rho_max));
    doc.meta("B_max", fmt17(bmax));
    doc.meta("flatten_gain", fmt17(flatten_gain(a.beta, a.alpha)));
    doc.meta("argmax_b_grid", fmt17(grid_argmax(&rho, &bv)));
    doc.meta("argmax_c_grid", fmt17(grid_argmax(&rho, &cv)));
    doc.meta(
        "argmax_c_refined",
        fmt17(locate_max(|r| c.eval(r), 0.0, 1.0, a.points)),
    );
    doc.meta(
        "argmax_c_formula",
        fmt17(flattened_peak_x(a.beta, a.alpha)?.sqrt()),
    );
    for i in 0..rho.len() {
        doc.rows.push(vec![rho[i], bv[i], rho[i], cv[i]]);
    }
    emit(a.output.as_deref(), &doc.render())
}

pub fn run_fig3(a: &Fig3Args) -> CliResult<()> {
    let rho = grid(a.points)?;
    let norm_grid = grid(a.norm_points)?;
    let mut eps = vec![1.0];
    for &p in &a.peaks {
        eps.push(epsilon_for_peak(a.beta, a.delta, a.eta, p)?);
    }
    eps.push(0.0);

    let mut curves = Vec::new();
    for &e in &eps {
        let spec = SProfileSpec::new(a.beta, a.delta, a.eta, e)?;
        let top = norm_grid.iter().map(|&r| spec.eval(r)).fold(0.0, f64::max);
        if top <= 0.0 {
            return Err(CliError::Numeric(format!(
                "profile with epsilon={e} vanishes on the grid"
            )));
        }
        curves.push(
            rho.iter()
                .map(|&r| spec.eval(r) / top)
                .collect::<Vec<f64>>(),
        );
    }
    // the sum leaves out the ε = 0 curve
    let sum: Vec<f64> = (0..rho.len())
        .map(|i| curves[..curves.len() - 1].iter().map(|c| c[i]).sum())
        .collect();

    let mut names = vec!["rho".to_string()];
    names.extend((0..curves.len()).map(|i| format!("S{i}")));
    names.push("sum".into());
    let mut doc = CsvDoc::new(names);
    doc.meta("config", config_echo("fig3", a));
    let (lo, hi) = peak_range(a.beta, a.delta, a.eta);
    doc.meta("peak_range", format!("{} {}", fmt17(lo), fmt17(hi)));
    for (i, (e, c)) in eps.iter().zip(&curves).enumerate() {
        doc.meta(
            &format!("S{i}"),
            format!(
                "epsilon={} argmax_grid={}",
                fmt17(*e),
                fmt17(grid_argmax(&rho, c))
            ),
        );
    }
    let window: Vec<f64> = rho
        .iter()
        .zip(&sum)
        .filter(|(r, _)| (0.25..=0.78).contains(*r))
        .map(|(_, s)| *s)
        .collect();
    let (smin, smax) = window
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
    doc.meta(
        "sum_on_0.25_0.78",
        format!(
            "min={} max={} ratio={}",
            fmt17(smin),
            fmt17(smax),
            fmt17(smax / smin)
        ),
    );
    for i in 0..rho.len() {
        let mut row = vec![rho[i]];
        row.extend(curves.iter().map(|c| c[i]));
        row.push(sum[i]);
        doc.rows.push(row);
    }
    emit(a.output.as_deref(), &doc.render())
}
