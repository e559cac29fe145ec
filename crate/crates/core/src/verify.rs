//! Runtime conformance suites. Each check compares a production path with
//! an independent oracle (quadrature, a second formula, or a published
//! value) and records the measured error against its tolerance.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::angular::{ylm_dir, SphIndex};
use crate::connect::{
    connection_row, connection_row_2d, connection_row_2d_direct, connection_row_direct,
    ExpansionTable,
};
use crate::profiles::{
    allscale_profile, epsilon_for_peak, expand_pure_edge, expand_s_profile, flatten_profile,
    flattened_peak_x, locate_max, peak_range, SProfileSpec,
};
use crate::radial::{n2, n3, r2, r3, radial3_via_recursion, RadialIndex3};
use crate::specfun::{gauss_jacobi, gauss_legendre, spherical_bessel_j};
use crate::transforms::{
    fourier_radial_moment, radial_bessel_integral, radial_from_gegenbauer, radon_zernike,
    scaling_matrix, DEFAULT_QMAX,
};
use crate::{Result, VERSION};

pub const SUITES: [&str; 9] = [
    "specfun",
    "radial",
    "orthogonality",
    "fourier",
    "radon",
    "connect",
    "pipeline",
    "scaling",
    "profiles",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Restrict to one suite; all suites when `None`.
    pub suite: Option<String>,
    /// Restrict α-parametrized suites to this value.
    pub alpha: Option<f64>,
    /// Largest `p` in the connection-row comparison.
    pub pmax: usize,
    /// Seed for randomized spot checks.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            suite: None,
            alpha: None,
            pmax: 15,
            seed: 0,
        }
    }
}

struct Sink<'a> {
    suite: &'a str,
    checks: Vec<Check>,
}

impl Sink<'_> {
    /// Records the worst error of a family of comparisons.
    fn record(&mut self, name: impl Into<String>, error: f64, tolerance: f64) {
        self.checks.push(Check {
            suite: self.suite.to_string(),
            name: name.into(),
            error,
            tolerance,
            pass: error.is_finite() && error <= tolerance,
        });
    }
}

/// `∫₀¹ F(ρ) dρ` by Gauss–Jacobi in `x = 2ρ²-1` with weight
/// `(1-x)^a (1+x)^b`; `F/(4ρ)` divided by the weight must be smooth in `x`.
pub fn jacobi_rho_integral<F: Fn(f64) -> f64>(npts: usize, a: f64, b: f64, f: F) -> Result<f64> {
    let rule = gauss_jacobi(npts, a, b)?;
    Ok(rule.integrate(|x| {
        let rho = (0.5 * (1.0 + x)).sqrt();
        f(rho) / (4.0 * rho * (1.0 - x).powf(a) * (1.0 + x).powf(b))
    }))
}

pub fn run(opts: &VerifyOptions) -> Result<Report> {
    let wanted = |s: &str| opts.suite.as_deref().is_none_or(|w| w == s);
    let mut checks = Vec::new();
    for suite in SUITES {
        if !wanted(suite) {
            continue;
        }
        let mut sink = Sink {
            suite,
            checks: Vec::new(),
        };
        match suite {
            "specfun" => specfun_suite(&mut sink)?,
            "radial" => radial_suite(&mut sink, opts)?,
            "orthogonality" => orthogonality_suite(&mut sink, opts)?,
            "fourier" => fourier_suite(&mut sink, opts)?,
            "radon" => radon_suite(&mut sink, opts)?,
            "connect" => connect_suite(&mut sink, opts)?,
            "pipeline" => pipeline_suite(&mut sink)?,
            "scaling" => scaling_suite(&mut sink)?,
            _ => profiles_suite(&mut sink)?,
        }
        checks.extend(sink.checks);
    }
    let passed = checks.iter().all(|c| c.pass);
    Ok(Report {
        version: VERSION.to_string(),
        seed: opts.seed,
        checks,
        passed,
    })
}

fn alphas(opts: &VerifyOptions, default: &[f64]) -> Vec<f64> {
    opts.alpha.map_or_else(|| default.to_vec(), |a| vec![a])
}

fn specfun_suite(s: &mut Sink) -> Result<()> {
    let gl = gauss_legendre(20, (0.0, 1.0));
    let err = (0..40)
        .map(|k| (gl.integrate(|x| x.powi(k)) - 1.0 / (k as f64 + 1.0)).abs())
        .fold(0.0, f64::max);
    s.record("gauss-legendre exact through degree 39", err, 1e-13);
    let mut err: f64 = 0.0;
    for i in 1..=500 {
        let z = i as f64 * 0.1;
        err = err.max((spherical_bessel_j(0.0, z)? - z.sin() / z).abs());
        err = err.max((spherical_bessel_j(1.0, z)? - (z.sin() / (z * z) - z.cos() / z)).abs());
    }
    s.record(
        "spherical bessel j0, j1 closed forms on (0, 50]",
        err,
        1e-12,
    );
    Ok(())
}

fn radial_suite(s: &mut Sink, opts: &VerifyOptions) -> Result<()> {
    let rule_t = gauss_legendre(64, (-1.0, 1.0));
    let rule_q = gauss_legendre(16, (0.0, 1.0));
    let (mut e_rec, mut e_geg, mut e_bes) = (0.0f64, 0.0f64, 0.0f64);
    for alpha in alphas(opts, &[0.0, 0.5, 1.0, 2.0]) {
        for n in 0..=10 {
            for l in (n % 2..=n).step_by(2) {
                let idx = RadialIndex3::new(n, l, alpha)?;
                for i in 1..=9 {
                    let rho = i as f64 / 10.0;
                    let d = r3(n, l, alpha, rho);
                    e_rec = e_rec.max((radial3_via_recursion(idx, rho)? - d).abs());
                    e_geg = e_geg.max((radial_from_gegenbauer(idx, rho, &rule_t)? - d).abs());
                    if n <= 6 && i % 3 == 2 {
                        e_bes = e_bes.max(
                            (radial_bessel_integral(idx, rho, DEFAULT_QMAX, &rule_q)? - d).abs(),
                        );
                    }
                }
            }
        }
    }
    s.record("recursion grid vs direct", e_rec, 1e-10);
    s.record("gegenbauer integral vs direct", e_geg, 1e-10);
    s.record("bessel integral vs direct (n <= 6)", e_bes, 1e-5);
    Ok(())
}

fn orthogonality_suite(s: &mut Sink, opts: &VerifyOptions) -> Result<()> {
    let (mut e3, mut e2) = (0.0f64, 0.0f64);
    for alpha in alphas(opts, &[0.0, 1.0, 2.0]) {
        for l in 0..=8 {
            for n1 in (l..=16).step_by(2) {
                for n2_ in (l..=16).step_by(2) {
                    let v = jacobi_rho_integral(24, alpha, 0.5, |r| {
                        r3(n1, l, alpha, r) * r3(n2_, l, alpha, r) * r * r
                            / (1.0 - r * r).powf(alpha)
                    })?;
                    let e = if n1 == n2_ { n3(n1, l, alpha) } else { 0.0 };
                    e3 = e3.max((v - e).abs());
                    let v = jacobi_rho_integral(24, alpha, 0.0, |r| {
                        r2(n1, l, alpha, r) * r2(n2_, l, alpha, r) * r / (1.0 - r * r).powf(alpha)
                    })?;
                    let e = if n1 == n2_ { n2(n1, l, alpha) } else { 0.0 };
                    e2 = e2.max((v - e).abs());
                }
            }
        }
    }
    s.record("ball radial orthogonality and norms", e3, 1e-9);
    s.record("disk radial orthogonality and norms", e2, 1e-9);
    Ok(())
}

fn fourier_suite(s: &mut Sink, opts: &VerifyOptions) -> Result<()> {
    let mut err: f64 = 0.0;
    for alpha in alphas(opts, &[0.0, 0.5, 1.0, 2.0]) {
        for n in 0..=10 {
            for l in (n % 2..=n).step_by(2) {
                let idx = RadialIndex3::new(n, l, alpha)?;
                for &q in &[0.1, 1.0, 5.0, 20.0] {
                    let quad = jacobi_rho_integral(80, alpha, 0.5, |r| {
                        r3(n, l, alpha, r)
                            * spherical_bessel_j(l as f64, q * r).unwrap_or(f64::NAN)
                            * r
                            * r
                    })?;
                    err = err.max((fourier_radial_moment(idx, q)? - quad).abs());
                }
                let quad = jacobi_rho_integral(40, alpha, 0.5, |r| {
                    r3(n, l, alpha, r) * if l == 0 { 1.0 } else { 0.0 } * r * r
                })?;
                err = err.max((fourier_radial_moment(idx, 0.0)? - quad).abs());
            }
        }
    }
    s.record("radial Fourier moment closed form vs quadrature", err, 1e-9);
    Ok(())
}

/// `∫ Z dA` over the slice `{ω·η = τ}` of the unit ball, polar coordinates
/// in the plane.
pub fn radon_slice_quadrature(
    idx: RadialIndex3,
    sph: SphIndex,
    tau: f64,
    eta: [f64; 3],
    nr: usize,
    nphi: usize,
) -> Complex64 {
    let rp = (1.0 - tau * tau).max(0.0).sqrt();
    // orthonormal frame (u, v) of the plane
    let helper = if eta[2].abs() < 0.9 {
        [0.0, 0.0, 1.0]
    } else {
        [1.0, 0.0, 0.0]
    };
    let u = normalize(cross(eta, helper));
    let v = cross(eta, u);
    let gl = gauss_legendre(nr, (0.0, rp));
    let mut acc = Complex64::new(0.0, 0.0);
    for (&r, &w) in gl.nodes().iter().zip(gl.weights()) {
        for k in 0..nphi {
            let phi = 2.0 * PI * k as f64 / nphi as f64;
            let (c, sn) = (phi.cos(), phi.sin());
            let p = [
                tau * eta[0] + r * (c * u[0] + sn * v[0]),
                tau * eta[1] + r * (c * u[1] + sn * v[1]),
                tau * eta[2] + r * (c * u[2] + sn * v[2]),
            ];
            let rho = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt().min(1.0);
            let z = if rho == 0.0 {
                if idx.l() == 0 {
                    Complex64::new(r3(idx.n(), 0, idx.alpha(), 0.0) / (4.0 * PI).sqrt(), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            } else {
                ylm_dir(sph, p) * r3(idx.n(), idx.l(), idx.alpha(), rho)
            };
            acc += z * (r * w * 2.0 * PI / nphi as f64);
        }
    }
    acc
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize(a: [f64; 3]) -> [f64; 3] {
    let n = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

/// Uniform random direction and offset in `(-1, 1)`.
pub fn random_plane(rng: &mut ChaCha8Rng) -> (f64, [f64; 3]) {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    let s = (1.0 - z * z).sqrt();
    let tau = rng.gen_range(-0.95..0.95);
    (tau, [s * phi.cos(), s * phi.sin(), z])
}

fn radon_suite(s: &mut Sink, opts: &VerifyOptions) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let planes: Vec<(f64, [f64; 3])> = (0..5).map(|_| random_plane(&mut rng)).collect();
    let mut err: f64 = 0.0;
    for alpha in alphas(opts, &[0.0, 1.0]) {
        for n in 0..=4 {
            for l in (n % 2..=n).step_by(2) {
                let idx = RadialIndex3::new(n, l, alpha)?;
                for m in -(l as i64)..=(l as i64) {
                    let sph = SphIndex::new(l, m)?;
                    for &(tau, eta) in &planes {
                        let q = radon_slice_quadrature(idx, sph, tau, eta, 48, 64);
                        err = err.max((radon_zernike(idx, sph, tau, eta)? - q).norm());
                    }
                }
            }
        }
    }
    s.record("radon closed form vs plane-slice quadrature", err, 1e-6);
    Ok(())
}

fn connect_suite(s: &mut Sink, opts: &VerifyOptions) -> Result<()> {
    let (mut e3, mut e2) = (0.0f64, 0.0f64);
    for p in 0..=opts.pmax {
        for l in 0..=10 {
            for alpha in alphas(opts, &[0.0, 0.5, 2.0]) {
                let (a, b) = (
                    connection_row(p, l, alpha)?,
                    connection_row_direct(p, l, alpha)?,
                );
                e3 = e3.max(
                    a.values()
                        .iter()
                        .zip(b.values())
                        .map(|(x, y)| (x - y).abs())
                        .fold(0.0, f64::max),
                );
                let (a, b) = (
                    connection_row_2d(p, l, alpha)?,
                    connection_row_2d_direct(p, l, alpha)?,
                );
                e2 = e2.max(
                    a.values()
                        .iter()
                        .zip(b.values())
                        .map(|(x, y)| (x - y).abs())
                        .fold(0.0, f64::max),
                );
            }
        }
    }
    s.record("ball connection rows: stable vs closed form", e3, 1e-10);
    s.record("disk connection rows: stable vs closed form", e2, 1e-10);
    let mut err: f64 = 0.0;
    for alpha in alphas(opts, &[0.0, 0.5, 2.0]) {
        for p in 0..=6 {
            for l in 0..=6 {
                let row = connection_row(p, l, alpha)?;
                for i in 0..=20 {
                    let rho = i as f64 / 20.0;
                    let rhs: f64 = (0..=p + 1)
                        .map(|k| row.values()[k] * r3(l + 2 * k, l, alpha, rho))
                        .sum();
                    err = err.max((r3(l + 2 + 2 * p, l + 2, alpha, rho) - rhs).abs());
                }
            }
        }
    }
    s.record("ball connection reconstruction", err, 1e-11);
    Ok(())
}

fn pipeline_suite(s: &mut Sink) -> Result<()> {
    let gl = gauss_legendre(40, (0.0, 1.0));
    let (mut pw, mut coef) = (0.0f64, 0.0f64);
    for &eps in &[0.0, 0.5, 1.0] {
        let spec = SProfileSpec::new(2, 1, 2, eps)?;
        for t in expand_s_profile(&spec, 4, 8)? {
            for (k, b) in t.coeffs().iter().enumerate() {
                let q = gl.integrate(|r| {
                    spec.eval(r) * r3(t.l() + 2 * k, t.l(), 1.0, r) * r * r / (1.0 - r * r)
                });
                coef = coef.max((b - q).abs());
            }
            if t.l() <= spec.beta {
                for i in 0..=100 {
                    let rho = i as f64 / 100.0;
                    pw = pw.max((t.reconstruct(rho) - spec.eval(rho)).abs());
                }
            }
        }
    }
    s.record(
        "pipeline + lift coefficients vs quadrature (l <= 4)",
        coef,
        1e-10,
    );
    s.record(
        "pipeline pointwise reconstruction (finite orders l <= beta)",
        pw,
        1e-8,
    );
    let spec = SProfileSpec::new(0, 1, 2, 1.0)?;
    let t: ExpansionTable = expand_s_profile(&spec, 0, 4)?.remove(0);
    let e = expand_pure_edge(0, 2, 1.0, 4)?;
    let err = t
        .coeffs()
        .iter()
        .zip(e.coeffs())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    s.record("epsilon = 1 pipeline vs closed-form edge table", err, 1e-12);
    Ok(())
}

fn scaling_suite(s: &mut Sink) -> Result<()> {
    let mut err: f64 = 0.0;
    for &eps in &[0.0, 0.3, 0.7, 1.0] {
        for l in 0..=10 {
            let m = scaling_matrix(l, 0.0, eps, 10)?;
            for n in (l..=10).step_by(2) {
                for i in 0..=20 {
                    let rho = i as f64 / 20.0;
                    err = err.max((m.reconstruct(n, rho) - r3(n, l, 0.0, eps * rho)).abs());
                }
            }
        }
    }
    s.record("alpha = 0 scaling closed form reconstruction", err, 1e-10);
    let (mut rec, mut van) = (0.0f64, 0.0f64);
    for l in 0..=2 {
        let m = scaling_matrix(l, 1.0, 0.7, 8 + l)?;
        for n in (l..=8 + l).step_by(2) {
            for i in 0..=20 {
                let rho = i as f64 / 20.0;
                rec = rec.max((m.reconstruct(n, rho) - r3(n, l, 1.0, 0.7 * rho)).abs());
            }
            for np in (n + 3..m.ncol()).filter(|np| (np + l) % 2 == 0) {
                van = van.max(m.get(n, np).abs());
            }
        }
    }
    s.record("alpha = 1 scaling quadrature reconstruction", rec, 1e-9);
    s.record("alpha = 1 scaling columns beyond n + 2 vanish", van, 1e-10);
    Ok(())
}

fn profiles_suite(s: &mut Sink) -> Result<()> {
    let (b, d, e) = (16, 4, 150);
    let mut rel: f64 = 0.0;
    let mut arg: f64 = 0.0;
    for &(rb, e2) in &[
        (1.0 / 3.0, 3.0f64 / 7.0),
        (0.5, 8.0 / 47.0),
        (0.75, 32.0 / 963.0),
    ] {
        let v = epsilon_for_peak(b, d, e, rb)?;
        rel = rel.max((v - e2.sqrt()).abs() / e2.sqrt());
        let spec = SProfileSpec::new(b, d, e, v)?;
        arg = arg.max((locate_max(|x| spec.eval(x), 0.0, 1.0, 10_001) - rb).abs());
    }
    s.record(
        "calibrated epsilons sqrt(3/7), sqrt(8/47), sqrt(32/963)",
        rel,
        1e-12,
    );
    s.record("calibrated profiles peak at 1/3, 1/2, 3/4", arg, 1e-3);
    let (lo, hi) = peak_range(b, d, e);
    s.record(
        "peak range (2/9, sqrt(2/3))",
        (lo - 2.0 / 9.0)
            .abs()
            .max((hi - (2.0f64 / 3.0).sqrt()).abs()),
        1e-14,
    );
    let (rm, bm) = allscale_profile(2, 6.0)?;
    s.record(
        "all-scale maximum 7^(-1/2), 6^6/7^7",
        (rm - 7f64.powf(-0.5))
            .abs()
            .max((bm - 6f64.powi(6) / 7f64.powi(7)).abs()),
        1e-14,
    );
    let c = flatten_profile(2, 6.0)?;
    let r = locate_max(|x| c.eval(x), 0.0, 1.0, 100_001);
    s.record(
        "flattened argmax sqrt(19/63)",
        (r - (19.0f64 / 63.0).sqrt()).abs(),
        1e-4,
    );
    let mut err: f64 = 0.0;
    for &(beta, alpha) in &[(2usize, 6.0), (2, 2.0), (4, 3.0), (6, 1.0), (8, 5.0)] {
        let c = flatten_profile(beta, alpha)?;
        let r = locate_max(|x| c.eval(x), 0.0, 1.0, 100_001);
        err = err.max((r * r - flattened_peak_x(beta, alpha)?).abs());
    }
    s.record("second-round expansion point vs grid argmax", err, 1e-6);
    Ok(())
}
