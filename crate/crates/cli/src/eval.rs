use num_complex::Complex64;

use gzernike::angular::{funk_multiplier, ylm, SphIndex};
use gzernike::connect::{connection_row, connection_row_2d};
use gzernike::io::format_g;
use gzernike::profiles::{allscale_profile, epsilon_for_peak, peak_range, SProfileSpec};
use gzernike::radial::{norm2, norm3, radial2_direct, radial3_direct, RadialIndex2, RadialIndex3};
use gzernike::transforms::{fourier_radial_moment, fourier_zernike, radon_zernike};

use crate::args::{EvalArgs, EvalKind};
use crate::{CliError, CliResult};

fn need<T: Copy>(v: Option<T>, name: &str, what: EvalKind) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("`eval {what:?}` requires --{name}").to_lowercase()))
}

fn real(v: f64) -> String {
    format_g(v, 15)
}

fn complex(v: Complex64) -> String {
    format!("{} {}", format_g(v.re, 15), format_g(v.im, 15))
}

pub fn run(a: &EvalArgs) -> CliResult<()> {
    let k = a.what;
    let lines: Vec<String> = match k {
        EvalKind::Radial3 => {
            let idx = RadialIndex3::new(need(a.n, "n", k)?, need(a.l, "l", k)?, a.alpha)?;
            vec![real(radial3_direct(idx, need(a.rho, "rho", k)?)?)]
        }
        EvalKind::Radial2 => {
            let idx = RadialIndex2::new(need(a.n, "n", k)?, need(a.m, "m", k)?, a.alpha)?;
            vec![real(radial2_direct(idx, need(a.rho, "rho", k)?)?)]
        }
        EvalKind::Norm3 => vec![real(norm3(RadialIndex3::new(
            need(a.n, "n", k)?,
            need(a.l, "l", k)?,
            a.alpha,
        )?))],
        EvalKind::Norm2 => vec![real(norm2(RadialIndex2::new(
            need(a.n, "n", k)?,
            need(a.m, "m", k)?,
            a.alpha,
        )?))],
        EvalKind::Ylm => {
            let idx = SphIndex::new(need(a.l, "l", k)?, need(a.m, "m", k)?)?;
            vec![complex(ylm(
                idx,
                need(a.theta, "theta", k)?,
                need(a.phi, "phi", k)?,
            ))]
        }
        EvalKind::FunkMult => vec![real(funk_multiplier(need(a.l, "l", k)?))],
        EvalKind::FourierMoment => {
            let idx = RadialIndex3::new(need(a.n, "n", k)?, need(a.l, "l", k)?, a.alpha)?;
            vec![real(fourier_radial_moment(idx, need(a.q, "q", k)?)?)]
        }
        EvalKind::Fourier => {
            let idx = RadialIndex3::new(need(a.n, "n", k)?, need(a.l, "l", k)?, a.alpha)?;
            let sph = SphIndex::new(idx.l(), a.m.unwrap_or(0))?;
            vec![complex(fourier_zernike(idx, sph, [a.x, a.y, a.z])?)]
        }
        EvalKind::Radon => {
            let idx = RadialIndex3::new(need(a.n, "n", k)?, need(a.l, "l", k)?, a.alpha)?;
            let sph = SphIndex::new(idx.l(), a.m.unwrap_or(0))?;
            let (t, p) = (need(a.theta, "theta", k)?, need(a.phi, "phi", k)?);
            let eta = [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()];
            vec![complex(radon_zernike(
                idx,
                sph,
                need(a.tau, "tau", k)?,
                eta,
            )?)]
        }
        EvalKind::ConnectionRow | EvalKind::ConnectionRow2d => {
            let (p, l) = (need(a.p, "p", k)?, need(a.l, "l", k)?);
            let row = if k == EvalKind::ConnectionRow {
                connection_row(p, l, a.alpha)?
            } else {
                connection_row_2d(p, l, a.alpha)?
            };
            row.values().iter().map(|v| real(*v)).collect()
        }
        EvalKind::EpsilonForPeak => {
            let v = epsilon_for_peak(
                need(a.beta, "beta", k)?,
                need(a.delta, "delta", k)?,
                need(a.eta, "eta", k)?,
                need(a.rho, "rho", k)?,
            )?;
            vec![real(v)]
        }
        EvalKind::PeakRange => {
            let (lo, hi) = peak_range(
                need(a.beta, "beta", k)?,
                need(a.delta, "delta", k)?,
                need(a.eta, "eta", k)?,
            );
            vec![real(lo), real(hi)]
        }
        EvalKind::Allscale => {
            let (r, b) = allscale_profile(need(a.beta, "beta", k)?, a.alpha)?;
            vec![real(r), real(b)]
        }
        EvalKind::SProfile => {
            let spec = SProfileSpec::new(
                need(a.beta, "beta", k)?,
                need(a.delta, "delta", k)?,
                need(a.eta, "eta", k)?,
                need(a.epsilon, "epsilon", k)?,
            )?;
            vec![real(spec.eval(need(a.rho, "rho", k)?))]
        }
    };
    let mut text = lines.join("\n");
    text.push('\n');
    crate::output::emit(None, &text)
}
