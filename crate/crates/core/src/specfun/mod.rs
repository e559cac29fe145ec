//! Classical special-function kernel.
//!
//! Polynomials are evaluated by forward three-term recurrence in the degree.
//! Gamma ratios go through log-gamma differences so that orders in the
//! hundreds do not overflow.

mod bessel;
mod quadrature;

pub use bessel::{spherical_bessel_j, spherical_bessel_j_seq, spherical_bessel_series};
pub use quadrature::{gauss_jacobi, gauss_legendre, QuadratureRule};

use crate::{Error, Result};

/// Jacobi parameters `(α, β)` together with a degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyParams {
    alpha: f64,
    beta: f64,
    degree: usize,
}

impl PolyParams {
    pub fn new(alpha: f64, beta: f64, degree: usize) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) {
            return Err(Error::Domain(format!(
                "Jacobi parameters must exceed -1 (alpha={alpha}, beta={beta})"
            )));
        }
        Ok(Self {
            alpha,
            beta,
            degree,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Jacobi polynomial `P_k^{(α,β)}(x)`.
pub fn jacobi_p(params: PolyParams, x: f64) -> f64 {
    jacobi_unchecked(params.degree, params.alpha, params.beta, x)
}

/// Recurrence without parameter validation; callers guarantee `α, β > -1`.
pub(crate) fn jacobi_unchecked(k: usize, a: f64, b: f64, x: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let ab = a + b;
    let mut p_prev = 1.0;
    let mut p = (a + 1.0) + 0.5 * (ab + 2.0) * (x - 1.0);
    for n in 2..=k {
        let n = n as f64;
        let c = 2.0 * n + ab;
        let a1 = 2.0 * n * (n + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
        let a3 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * c;
        let next = (a2 * p - a3 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    p
}

/// Gegenbauer polynomial `C_n^λ(x)` from `(n+1)C_{n+1} = 2(n+λ)xC_n - (n+2λ-1)C_{n-1}`.
pub fn gegenbauer_c(lambda: f64, n: usize, x: f64) -> Result<f64> {
    if !(lambda > -0.5) {
        return Err(Error::Domain(format!(
            "Gegenbauer order must exceed -1/2, got {lambda}"
        )));
    }
    Ok(gegenbauer_unchecked(lambda, n, x))
}

pub(crate) fn gegenbauer_unchecked(lambda: f64, n: usize, x: f64) -> f64 {
    let mut c_prev = 0.0;
    let mut c = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda) * x * c - (kf + 2.0 * lambda - 1.0) * c_prev) / (kf + 1.0);
        c_prev = c;
        c = next;
    }
    c
}

/// `M_n^α = ∫_{-1}^{1} (1-σ²)^{α+1} |C_n^{α+3/2}(σ)|² dσ`.
pub fn gegenbauer_norm(alpha: f64, n: usize) -> Result<f64> {
    if !(alpha > -1.0) {
        return Err(Error::Domain(format!("alpha must exceed -1, got {alpha}")));
    }
    let nf = n as f64;
    let log = std::f64::consts::PI.ln() - (2.0 * alpha + 2.0) * std::f64::consts::LN_2
        + ln_gamma(nf + 2.0 * alpha + 3.0)
        - ln_gamma(nf + 1.0)
        - (nf + alpha + 1.5).ln()
        - 2.0 * ln_gamma(alpha + 1.5);
    Ok(log.exp())
}

/// Legendre polynomial `P_l(t)` from `(2n+1)tP_n = (n+1)P_{n+1} + nP_{n-1}`.
pub fn legendre_p(l: usize, t: f64) -> f64 {
    let mut p_prev = 0.0;
    let mut p = 1.0;
    for n in 0..l {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * t * p - nf * p_prev) / (nf + 1.0);
        p_prev = p;
        p = next;
    }
    p
}

/// All Legendre values `P_0(t), ..., P_lmax(t)`.
pub fn legendre_seq(lmax: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(lmax + 1);
    let mut p_prev = 0.0;
    let mut p = 1.0;
    out.push(p);
    for n in 0..lmax {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * t * p - nf * p_prev) / (nf + 1.0);
        p_prev = p;
        p = next;
        out.push(p);
    }
    out
}

/// Associated Legendre function `P_l^m(t) = (1-t²)^{m/2} d^m P_l / dt^m`.
///
/// No Condon–Shortley phase; the spherical harmonics add the `(-1)^m` factor.
pub fn assoc_legendre_p(l: usize, m: usize, t: f64) -> Result<f64> {
    if m > l {
        return Err(Error::Index(format!("order m={m} exceeds degree l={l}")));
    }
    let s = ((1.0 - t) * (1.0 + t)).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= (2 * k - 1) as f64 * s;
    }
    if l == m {
        return Ok(pmm);
    }
    let mut p_prev = pmm;
    let mut p = t * (2 * m + 1) as f64 * pmm;
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let mf = m as f64;
        let next = (t * (2.0 * lf - 1.0) * p - (lf + mf - 1.0) * p_prev) / (lf - mf);
        p_prev = p;
        p = next;
    }
    Ok(p)
}

/// Natural log of `Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// `Γ(x)` for real `x`; exactly zero reciprocal at the poles is handled by
/// [`recip_gamma`].
pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// `1/Γ(x)`, returning exactly `0` at non-positive integers.
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

fn is_small_nonneg_int(a: f64) -> bool {
    a >= 0.0 && a <= 30.0 && a == a.round()
}

/// Generalized Pochhammer symbol `(x)_a = Γ(x+a)/Γ(x)`.
pub fn pochhammer_gen(x: f64, a: f64) -> Result<f64> {
    if !(x > 0.0) || !(x + a > 0.0) {
        return Err(Error::Domain(format!(
            "Pochhammer symbol needs x > 0 and x + a > 0 (x={x}, a={a})"
        )));
    }
    Ok(poch(x, a))
}

/// Unchecked `(x)_a`; both gamma arguments positive.
pub(crate) fn poch(x: f64, a: f64) -> f64 {
    if a == 0.0 {
        return 1.0;
    }
    if is_small_nonneg_int(a) {
        let mut prod = 1.0;
        for k in 0..(a as usize) {
            prod *= x + k as f64;
        }
        return prod;
    }
    (ln_gamma(x + a) - ln_gamma(x)).exp()
}

/// Ratio `(x)_a / (y)_a`, kept in log space for large orders.
pub(crate) fn poch_ratio(x: f64, y: f64, a: f64) -> f64 {
    if a == 0.0 {
        return 1.0;
    }
    if is_small_nonneg_int(a) {
        let mut prod = 1.0;
        for k in 0..(a as usize) {
            prod *= (x + k as f64) / (y + k as f64);
        }
        return prod;
    }
    (ln_gamma(x + a) - ln_gamma(x) - ln_gamma(y + a) + ln_gamma(y)).exp()
}

/// Euler Beta function `B(a, b)`.
pub fn beta_fn(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::Domain(format!(
            "Beta function needs positive arguments (a={a}, b={b})"
        )));
    }
    Ok((ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp())
}

/// Binomial `a(a-1)···(a-p+1)/p!` for real `a`, evaluated as a log-space
/// product with explicit sign tracking.
pub fn binom(a: f64, p: usize) -> f64 {
    let mut log = 0.0;
    let mut negative = false;
    for i in 0..p {
        let num = a - i as f64;
        if num == 0.0 {
            return 0.0;
        }
        if num < 0.0 {
            negative = !negative;
        }
        log += num.abs().ln() - ((i + 1) as f64).ln();
    }
    let v = log.exp();
    if negative {
        -v
    } else {
        v
    }
}

/// Binomial `Γ(x+1)/(Γ(y+1)Γ(x-y+1))` with a possibly non-integer lower
/// argument. Integer `y` falls back to the product form.
pub fn binom_real(x: f64, y: f64) -> f64 {
    if y >= 0.0 && y == y.round() && y < 1.0e6 {
        return binom(x, y as usize);
    }
    let a = x + 1.0;
    let b = y + 1.0;
    let c = x - y + 1.0;
    if a > 0.0 && b > 0.0 && c > 0.0 {
        (ln_gamma(a) - ln_gamma(b) - ln_gamma(c)).exp()
    } else {
        gamma(a) * recip_gamma(b) * recip_gamma(c)
    }
}
