//! Spherical Bessel functions of real order.
//!
//! Small arguments use the power series
//! `j_a(z) = (√π/2) Σ_k (-1)^k (z/2)^{a+2k} / (k! Γ(a+k+3/2))`.
//! Elsewhere the cylinder functions `J_{ν0+k}` are generated by Miller's
//! backward recurrence and normalized with
//! `(z/2)^{ν0} = Σ_k (ν0+2k) Γ(ν0+k)/k! · J_{ν0+2k}(z)`, which holds for any
//! fractional offset `ν0`.

use super::ln_gamma;
use crate::{Error, Result};

const SERIES_LIMIT: f64 = 2.0;
const RESCALE: f64 = 1.0e250;

/// `j_a(z) = √(π/2z) J_{a+1/2}(z)` for real `a ≥ 0`, `z ≥ 0`.
pub fn spherical_bessel_j(a: f64, z: f64) -> Result<f64> {
    check_args(a, z)?;
    if z == 0.0 {
        return Ok(if a == 0.0 { 1.0 } else { 0.0 });
    }
    if z < SERIES_LIMIT {
        return Ok(spherical_bessel_series(a, z));
    }
    Ok(miller(a, 0, z)[0])
}

/// `j_{a0+k}(z)` for `k = 0..=kmax` from a single backward sweep.
pub fn spherical_bessel_j_seq(a0: f64, kmax: usize, z: f64) -> Result<Vec<f64>> {
    check_args(a0, z)?;
    if z == 0.0 {
        let mut out = vec![0.0; kmax + 1];
        if a0 == 0.0 {
            out[0] = 1.0;
        }
        return Ok(out);
    }
    if z < SERIES_LIMIT {
        return Ok((0..=kmax)
            .map(|k| spherical_bessel_series(a0 + k as f64, z))
            .collect());
    }
    Ok(miller(a0, kmax, z))
}

fn check_args(a: f64, z: f64) -> Result<()> {
    if !(a >= 0.0) {
        return Err(Error::Domain(format!(
            "spherical Bessel order must be >= 0, got {a}"
        )));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!(
            "spherical Bessel argument must be finite and >= 0, got {z}"
        )));
    }
    Ok(())
}

/// Power series for `j_a(z)`, summed until terms drop below roundoff.
pub fn spherical_bessel_series(a: f64, z: f64) -> f64 {
    if z == 0.0 {
        return if a == 0.0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * z;
    let log_t0 = a * half.ln() - ln_gamma(a + 1.5);
    let mut term = 0.5 * std::f64::consts::PI.sqrt() * log_t0.exp();
    let mut sum = term;
    let h2 = half * half;
    let mut k = 0.0;
    loop {
        term *= -h2 / ((k + 1.0) * (a + k + 1.5));
        sum += term;
        k += 1.0;
        if term.abs() <= 1e-17 * sum.abs() && k > half {
            break;
        }
        if term == 0.0 || k > 500.0 {
            break;
        }
    }
    sum
}

/// Backward recurrence for `J_{ν0+m}(z)`, `m = K0..=K0+kmax`, converted to
/// spherical functions.
fn miller(a0: f64, kmax: usize, z: f64) -> Vec<f64> {
    let nu_lo = a0 + 0.5;
    let k0 = nu_lo.floor() as usize;
    let nu0 = nu_lo - k0 as f64;
    let top_needed = k0 + kmax;
    let start = (top_needed.max(z.ceil() as usize) as f64 + 30.0 + 10.0 * z.cbrt()).ceil() as usize;

    // f[m] ∝ J_{ν0+m}(z), m = 0..=start
    let mut f = vec![0.0; start + 2];
    f[start] = 1.0e-300;
    for m in (1..=start).rev() {
        let mu = nu0 + m as f64;
        let next = (2.0 * mu / z) * f[m] - f[m + 1];
        f[m - 1] = next;
        if next.abs() > RESCALE {
            for v in f[m - 1..].iter_mut() {
                *v /= RESCALE;
            }
        }
    }

    // normalization sum over even offsets
    let mut h = ln_gamma(nu0 + 1.0).exp(); // Γ(ν0+1)/1!
    let mut norm = h * f[0];
    let mut k = 1usize;
    while 2 * k <= start {
        let kf = k as f64;
        norm += (nu0 + 2.0 * kf) * h * f[2 * k];
        h *= (nu0 + kf) / (kf + 1.0);
        k += 1;
    }
    let scale = (nu0 * (0.5 * z).ln()).exp() / norm;
    let pref = (std::f64::consts::PI / (2.0 * z)).sqrt();
    (0..=kmax).map(|k| pref * scale * f[k0 + k]).collect()
}
