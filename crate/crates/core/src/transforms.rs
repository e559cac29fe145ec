//! Fourier and Radon transforms of the ball functions, two integral
//! representations of the radial part, and the scaling coefficients.
//!
//! The Fourier kernel is `e^{+2πi ω·x}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::angular::{angles_of, ylm, ylm_dir, SphIndex};
use crate::radial::{edge_factor, r3, RadialIndex3};
use crate::specfun::{
    beta_fn, gauss_jacobi, gauss_legendre, gegenbauer_unchecked, legendre_p, ln_gamma, poch,
    poch_ratio, recip_gamma, spherical_bessel_j, spherical_bessel_j_seq, QuadratureRule,
};
use crate::{Error, Result};

fn i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Radial factor of the Fourier transform of `Z_{nl}^{m,α}` with its
/// constant `2π i^n (p+1)_α` precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierRadialKernel {
    idx: RadialIndex3,
    prefactor: Complex64,
}

impl FourierRadialKernel {
    pub fn new(idx: RadialIndex3) -> Self {
        let p = idx.p() as f64;
        let prefactor = i_pow(idx.n()) * (2.0 * PI * poch(p + 1.0, idx.alpha()));
        Self { idx, prefactor }
    }

    pub fn idx(&self) -> RadialIndex3 {
        self.idx
    }

    pub fn prefactor(&self) -> Complex64 {
        self.prefactor
    }

    /// `2π i^n (p+1)_α j_{n+α+1}(2πr) / (πr)^{α+1}` for `r > 0`.
    pub fn eval(&self, r: f64) -> Result<Complex64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("radius must be positive, got {r}")));
        }
        let a = self.idx.n() as f64 + self.idx.alpha() + 1.0;
        let j = spherical_bessel_j(a, 2.0 * PI * r)?;
        Ok(self.prefactor * (j / (PI * r).powf(self.idx.alpha() + 1.0)))
    }
}

/// `∫₀¹ R_n^{l,α}(ρ) j_l(qρ) ρ² dρ` in closed form.
pub fn fourier_radial_moment(idx: RadialIndex3, q: f64) -> Result<f64> {
    if !(q >= 0.0) {
        return Err(Error::Domain(format!("q must be non-negative, got {q}")));
    }
    let alpha = idx.alpha();
    if q == 0.0 {
        return if idx.n() == 0 {
            Ok(0.5 * beta_fn(alpha + 1.0, 1.5)?)
        } else {
            Ok(0.0)
        };
    }
    let p = idx.p();
    let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
    let a = idx.n() as f64 + alpha + 1.0;
    let j = spherical_bessel_j(a, q)?;
    Ok(sign * 2f64.powf(alpha) * poch(p as f64 + 1.0, alpha) * j / q.powf(alpha + 1.0))
}

/// Fourier transform `∫ Z_{nl}^{m,α}(ω) e^{2πi ω·x} dω` at `x`.
pub fn fourier_zernike(idx: RadialIndex3, sph: SphIndex, x: [f64; 3]) -> Result<Complex64> {
    if sph.l() != idx.l() {
        return Err(Error::Index(format!(
            "angular degree {} does not match radial index l={}",
            sph.l(),
            idx.l()
        )));
    }
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    if r == 0.0 {
        // ball integral of Z; only the constant harmonic survives
        if idx.n() == 0 && idx.l() == 0 {
            let v = (4.0 * PI).sqrt() * 0.5 * beta_fn(idx.alpha() + 1.0, 1.5)?;
            return Ok(Complex64::new(v, 0.0));
        }
        return Ok(Complex64::new(0.0, 0.0));
    }
    let radial = FourierRadialKernel::new(idx).eval(r)?;
    Ok(radial * ylm_dir(sph, x))
}

/// Radon transform of `Z_{nl}^{m,α}` over the plane `{ω : ω·η = τ}`.
pub fn radon_zernike(
    idx: RadialIndex3,
    sph: SphIndex,
    tau: f64,
    eta: [f64; 3],
) -> Result<Complex64> {
    if sph.l() != idx.l() {
        return Err(Error::Index(format!(
            "angular degree {} does not match radial index l={}",
            sph.l(),
            idx.l()
        )));
    }
    let norm = (eta[0] * eta[0] + eta[1] * eta[1] + eta[2] * eta[2]).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "plane normal must be a unit vector, |η|={norm}"
        )));
    }
    if tau.abs() >= 1.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let alpha = idx.alpha();
    let nf = idx.n() as f64;
    let p = idx.p() as f64;
    let ln_c = -2.0 * (1.0 + alpha) * std::f64::consts::LN_2
        - 0.5 * PI.ln()
        - (ln_gamma(p + 1.0 + alpha) - ln_gamma(p + 1.0))
        + ln_gamma(nf + 2.0 * alpha + 3.0)
        - ln_gamma(nf + 1.0)
        - ln_gamma(alpha + 1.5);
    let radial = (-ln_c).exp()
        * ((1.0 - tau) * (1.0 + tau)).powf(alpha + 1.0)
        * gegenbauer_unchecked(alpha + 1.5, idx.n(), tau);
    let (theta, phi) = angles_of(eta);
    Ok(ylm(sph, theta, phi) * radial)
}

/// `R_n^{l,α}(ρ)` from the Gegenbauer integral
/// `½ ((3/2)_{p+l}/(α+3/2)_{p+l}) (1-ρ²)^α ∫_{-1}^{1} C_n^{α+3/2}(ρt) P_l(t) dt`.
///
/// `rule` is moved onto `[-1, 1]`; it needs about `(n+l)/2 + 1` nodes.
pub fn radial_from_gegenbauer(idx: RadialIndex3, rho: f64, rule: &QuadratureRule) -> Result<f64> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::Domain(format!("rho must lie in [0, 1], got {rho}")));
    }
    let alpha = idx.alpha();
    let (n, l) = (idx.n(), idx.l());
    let rule = if rule.interval() == (-1.0, 1.0) {
        rule.clone()
    } else {
        rule.mapped(-1.0, 1.0)
    };
    let integral =
        rule.integrate(|t| gegenbauer_unchecked(alpha + 1.5, n, rho * t) * legendre_p(l, t));
    let k = (idx.p() + l) as f64;
    Ok(0.5 * poch_ratio(1.5, alpha + 1.5, k) * edge_factor(rho, alpha) * integral)
}

/// Default knobs for the oscillatory Bessel-product integrals.
pub const DEFAULT_QMAX: f64 = 400.0;
const MIN_TAIL_PHASE: f64 = 40.0;
/// Smallest term of a divergent asymptotic series, relative to its leading
/// term, that is still accepted as the truncation error.
const STALL_LIMIT: f64 = 1e-12;

/// `R_n^{l,α}(ρ)` from `(2/π)(-1)^p 2^α (p+1)_α ∫₀^∞ j_{n+α+1}(q) j_l(qρ) q^{1-α} dq`.
///
/// The integral is split at `Q ≥ qmax`: `[0, Q]` is covered by π-wide
/// panels with `rule`, and `[Q, ∞)` by integrating the large-argument
/// expansions of both Bessel factors term by term. `Q` is raised if needed
/// so that `(1-ρ)Q` and `ρQ` are at least 40. Needs `0 < ρ < 1`.
pub fn radial_bessel_integral(
    idx: RadialIndex3,
    rho: f64,
    qmax: f64,
    rule: &QuadratureRule,
) -> Result<f64> {
    let table = radial_bessel_integral_table(idx.alpha(), rho, idx.n(), qmax, rule)?;
    Ok(table[idx.n()][idx.l()])
}

/// All `R_n^{l,α}(ρ)`, `n ≤ nmax`, from the Bessel integral; entry `[n][l]`
/// is meaningful for `n - l` even and non-negative.
pub fn radial_bessel_integral_table(
    alpha: f64,
    rho: f64,
    nmax: usize,
    qmax: f64,
    rule: &QuadratureRule,
) -> Result<Vec<Vec<f64>>> {
    if !(alpha > -1.0) {
        return Err(Error::Domain(format!("alpha must exceed -1, got {alpha}")));
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::Domain(format!(
            "the Bessel integral representation needs 0 < rho < 1, got {rho}"
        )));
    }
    let ints = bessel_product_integrals(alpha + 1.0, nmax, nmax, rho, 1.0 - alpha, qmax, rule)?;
    let mut out = vec![vec![0.0; nmax + 1]; nmax + 1];
    for n in 0..=nmax {
        for l in (n % 2..=n).step_by(2) {
            let p = (n - l) / 2;
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            let c = 2.0 / PI * sign * 2f64.powf(alpha) * poch(p as f64 + 1.0, alpha);
            out[n][l] = c * ints[n][l];
        }
    }
    Ok(out)
}

/// `∫₀^∞ j_{a0+k}(q) j_b(qε) q^γ dq` for `k ≤ kmax`, integer `b ≤ bmax`.
///
/// Requires `0 < ε < 1` and `γ < 2` so that the integrand decays like
/// `q^{γ-2}` times oscillations.
pub(crate) fn bessel_product_integrals(
    a0: f64,
    kmax: usize,
    bmax: usize,
    eps: f64,
    gamma: f64,
    qmax: f64,
    rule: &QuadratureRule,
) -> Result<Vec<Vec<f64>>> {
    if !(gamma < 2.0) {
        return Err(Error::Domain(format!(
            "exponent {gamma} gives a divergent integral"
        )));
    }
    let q_end = qmax
        .max(MIN_TAIL_PHASE / (1.0 - eps))
        .max(MIN_TAIL_PHASE / eps);
    let npanels = (q_end / PI).ceil() as usize;
    let q_end = npanels as f64 * PI;
    let mut acc = vec![vec![0.0; bmax + 1]; kmax + 1];
    for k in 0..npanels {
        let panel = rule.mapped(k as f64 * PI, (k + 1) as f64 * PI);
        for (&q, &w) in panel.nodes().iter().zip(panel.weights()) {
            let ja = spherical_bessel_j_seq(a0, kmax, q)?;
            let jb = spherical_bessel_j_seq(0.0, bmax, q * eps)?;
            let qg = w * q.powf(gamma);
            for (row, &x) in acc.iter_mut().zip(&ja) {
                let xq = x * qg;
                for (cell, &y) in row.iter_mut().zip(&jb) {
                    *cell += xq * y;
                }
            }
        }
    }
    let hb: Vec<Vec<Complex64>> = (0..=bmax)
        .map(|b| hankel_series(b as f64, q_end * eps))
        .collect::<Result<_>>()?;
    for (k, row) in acc.iter_mut().enumerate() {
        let a = a0 + k as f64;
        let ha = hankel_series(a, q_end)?;
        for (b, cell) in row.iter_mut().enumerate() {
            *cell += product_tail(a, &ha, b as f64, &hb[b], eps, gamma, q_end)?;
        }
    }
    Ok(acc)
}

/// Coefficients `i^k a_k(ν)` of the Hankel expansion of `j_a`, `ν = a + 1/2`,
/// truncated once the terms at `z` fall below roundoff.
fn hankel_series(a: f64, z: f64) -> Result<Vec<Complex64>> {
    let nu = a + 0.5;
    let mu = 4.0 * nu * nu;
    let mut out = vec![Complex64::new(1.0, 0.0)];
    let mut ak = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200usize {
        let odd = (2 * k - 1) as f64;
        ak *= (mu - odd * odd) / (k as f64 * 8.0);
        if ak == 0.0 {
            return Ok(out);
        }
        let size = ak.abs() / z.powi(k as i32);
        if size > prev {
            if prev > STALL_LIMIT {
                return Err(Error::Convergence(format!(
                    "large-argument expansion of j_{a} at z={z} stalls at {prev:e}"
                )));
            }
            return Ok(out);
        }
        out.push(i_pow(k) * ak);
        if size < 1e-18 {
            return Ok(out);
        }
        prev = size;
    }
    Ok(out)
}

/// `∫_Q^∞ e^{iωq} q^{-s} dq` from its integration-by-parts expansion,
/// with the smallest omitted term as an error estimate.
fn osc_tail(omega: f64, s: f64, q: f64) -> (Complex64, f64) {
    let x = Complex64::new(0.0, omega * q); // iωQ
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = 1.0;
    for j in 0..500 {
        term = term * (s + j as f64) / x;
        let size = term.norm();
        if size > prev || size < 1e-18 {
            break;
        }
        sum += term;
        prev = size;
    }
    let scale = q.powf(-s) / omega;
    let lead = Complex64::new(0.0, 1.0 / omega) * Complex64::from_polar(q.powf(-s), omega * q);
    (lead * sum, scale * prev)
}

/// Largest accepted error estimate of an analytic tail.
const TAIL_TOL: f64 = 1e-10;

fn product_tail(
    a: f64,
    ha: &[Complex64],
    b: f64,
    hb: &[Complex64],
    eps: f64,
    gamma: f64,
    q: f64,
) -> Result<f64> {
    let len = ha.len() + hb.len() - 1;
    let mut d = vec![Complex64::new(0.0, 0.0); len];
    let mut e = vec![Complex64::new(0.0, 0.0); len];
    for (i, &x) in ha.iter().enumerate() {
        for (j, &y) in hb.iter().enumerate() {
            let ys = y * eps.powi(-(j as i32));
            d[i + j] += x * ys.conj();
            e[i + j] += x * ys;
        }
    }
    let mut diff = Complex64::new(0.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for k in 0..len {
        let s = 2.0 - gamma + k as f64;
        let (t1, e1) = osc_tail(1.0 - eps, s, q);
        let (t2, e2) = osc_tail(1.0 + eps, s, q);
        diff += d[k] * t1;
        sum += e[k] * t2;
        err += d[k].norm() * e1 + e[k].norm() * e2;
    }
    let err = err / (2.0 * eps);
    if err > TAIL_TOL {
        return Err(Error::Convergence(format!(
            "asymptotic tail of the Bessel product integral (orders {a}, {b}) has error estimate {err:e}; raise qmax"
        )));
    }
    let ph_diff = Complex64::from_polar(1.0, -(a - b) * PI / 2.0);
    let ph_sum = Complex64::from_polar(1.0, -(a + b) * PI / 2.0);
    Ok((ph_diff * diff - ph_sum * sum).re / (2.0 * eps))
}

/// Coefficients `C_{nn'}^{l,α}(ε)` with `R_n^{l,α}(ερ) = Σ_{n'} C_{nn'} R_{n'}^{l,0}(ρ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingMatrix {
    l: usize,
    alpha: f64,
    epsilon: f64,
    nmax: usize,
    ncol: usize,
    entries: Vec<Vec<f64>>,
}

impl ScalingMatrix {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Largest row order `n`.
    pub fn nmax(&self) -> usize {
        self.nmax
    }

    /// Largest column order `n'`.
    pub fn ncol(&self) -> usize {
        self.ncol
    }

    /// `C_{nn'}`; zero for orders outside the window or of the wrong parity.
    pub fn get(&self, n: usize, np: usize) -> f64 {
        if n < self.l || np < self.l || n > self.nmax || np > self.ncol {
            return 0.0;
        }
        if (n - self.l) % 2 != 0 || (np - self.l) % 2 != 0 {
            return 0.0;
        }
        self.entries[(n - self.l) / 2][(np - self.l) / 2]
    }

    /// `Σ_{n'} C_{nn'} R_{n'}^{l,0}(ρ)`.
    pub fn reconstruct(&self, n: usize, rho: f64) -> f64 {
        (self.l..=self.ncol)
            .step_by(2)
            .map(|np| self.get(n, np) * r3(np, self.l, 0.0, rho))
            .sum()
    }
}

/// Scaling coefficients for rows `n ≤ nmax` and columns `n' ≤ nmax + 2⌈α⌉`.
///
/// `α = 0` uses `C = R_n^{n',0}(ε) - R_n^{n'+2,0}(ε)`; other `α` project
/// `R_n^{l,α}(ερ)` onto the `α = 0` family by quadrature.
pub fn scaling_matrix(l: usize, alpha: f64, epsilon: f64, nmax: usize) -> Result<ScalingMatrix> {
    let extra = 2 * alpha.max(0.0).ceil() as usize;
    scaling_matrix_with_cols(l, alpha, epsilon, nmax, nmax + extra)
}

/// As [`scaling_matrix`] with an explicit largest column order.
pub fn scaling_matrix_with_cols(
    l: usize,
    alpha: f64,
    epsilon: f64,
    nmax: usize,
    ncol: usize,
) -> Result<ScalingMatrix> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::Domain(format!(
            "epsilon must lie in [0, 1], got {epsilon}"
        )));
    }
    if !(alpha > -1.0) {
        return Err(Error::Domain(format!("alpha must exceed -1, got {alpha}")));
    }
    if nmax < l || ncol < l {
        return Err(Error::Index(format!(
            "truncation orders must be at least l={l}"
        )));
    }
    let nmax = nmax - (nmax - l) % 2;
    let ncol = ncol - (ncol - l) % 2;
    let rows: Vec<usize> = (l..=nmax).step_by(2).collect();
    let cols: Vec<usize> = (l..=ncol).step_by(2).collect();
    let mut entries = vec![vec![0.0; cols.len()]; rows.len()];
    if alpha == 0.0 {
        for (i, &n) in rows.iter().enumerate() {
            for (j, &np) in cols.iter().enumerate() {
                if np > n {
                    continue;
                }
                let hi = if np + 2 <= n {
                    r3(n, np + 2, 0.0, epsilon)
                } else {
                    0.0
                };
                entries[i][j] = r3(n, np, 0.0, epsilon) - hi;
            }
        }
    } else if epsilon < 1.0 {
        let rule = gauss_legendre(200 + ncol.max(nmax), (0.0, 1.0));
        for (&rho, &w) in rule.nodes().iter().zip(rule.weights()) {
            let a: Vec<f64> = rows
                .iter()
                .map(|&n| r3(n, l, alpha, epsilon * rho))
                .collect();
            let b: Vec<f64> = cols.iter().map(|&np| r3(np, l, 0.0, rho)).collect();
            let wr = w * rho * rho;
            for (i, &av) in a.iter().enumerate() {
                for (j, &bv) in b.iter().enumerate() {
                    entries[i][j] += wr * av * bv;
                }
            }
        }
        scale_columns(&mut entries, &cols);
    } else {
        // rim singularity of (1-ρ²)^α: Jacobi rule in x = 2ρ²-1
        let lf = l as f64;
        let rule = gauss_jacobi(100 + ncol.max(nmax), alpha, lf + 0.5)?;
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            let rho = ((1.0 + x) / 2.0).sqrt();
            let jac = rho / 4.0 / ((1.0 - x).powf(alpha) * (1.0 + x).powf(lf + 0.5));
            let a: Vec<f64> = rows.iter().map(|&n| r3(n, l, alpha, rho)).collect();
            let b: Vec<f64> = cols.iter().map(|&np| r3(np, l, 0.0, rho)).collect();
            for (i, &av) in a.iter().enumerate() {
                for (j, &bv) in b.iter().enumerate() {
                    entries[i][j] += w * jac * av * bv;
                }
            }
        }
        scale_columns(&mut entries, &cols);
    }
    Ok(ScalingMatrix {
        l,
        alpha,
        epsilon,
        nmax,
        ncol,
        entries,
    })
}

fn scale_columns(entries: &mut [Vec<f64>], cols: &[usize]) {
    for row in entries.iter_mut() {
        for (cell, &np) in row.iter_mut().zip(cols) {
            *cell *= 2.0 * np as f64 + 3.0;
        }
    }
}

/// Gauss hypergeometric series `₂F₁(a, b; c; x)` for `|x| < 1`, terminating
/// exactly when `a` is a non-positive integer.
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::Convergence(format!(
            "2F1 series needs |x| < 1, got {x}"
        )));
    }
    let terminating = a <= 0.0 && a == a.round();
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..100_000 {
        let kf = k as f64;
        if terminating && a + kf == 0.0 {
            return Ok(sum);
        }
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && kf > 2.0 {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!(
        "2F1({a}, {b}; {c}; {x}) did not converge"
    )))
}

/// Closed form of `∫₀^∞ j_{n+α+1}(q) j_{n''}(qε) q^{1-α} dq` for `0 < ε < 1`:
///
/// `(π/2) Γ((n+n''+3)/2) ε^{n''} / (2^α Γ(n''+3/2) Γ((n-n'')/2+α+1))
///  · ₂F₁(-(n-n'')/2 - α, (n+n''+3)/2; n''+3/2; ε²)`.
pub fn weber_schafheitlin(n: usize, npp: usize, alpha: f64, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Convergence(format!(
            "the closed form needs 0 < epsilon < 1, got {epsilon}"
        )));
    }
    let nf = n as f64;
    let mf = npp as f64;
    let half_sum = 0.5 * (nf + mf + 3.0);
    let lower = 0.5 * (nf - mf) + alpha + 1.0;
    let rg = recip_gamma(lower);
    if rg == 0.0 {
        return Ok(0.0);
    }
    let pref =
        0.5 * PI * (ln_gamma(half_sum) - ln_gamma(mf + 1.5)).exp() * epsilon.powi(npp as i32)
            / 2f64.powf(alpha)
            * rg;
    let f = hyp2f1(
        -0.5 * (nf - mf) - alpha,
        half_sum,
        mf + 1.5,
        epsilon * epsilon,
    )?;
    Ok(pref * f)
}
