//! Analytic radial profiles, their coefficient tables, the all-scale
//! profile with one round of Taylor flattening, the multi-scale S-profile
//! family, and synthesis of the resulting wavelet in the Fourier domain.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angular::{angles_of, apply_funk, cap_coeffs, ylm, AngularCoeffs, CapProfile, SphIndex};
use crate::connect::{compose_pipeline, lift_b_coeffs, ExpansionTable};
use crate::radial::RadialIndex3;
use crate::specfun::{binom, binom_real, gauss_legendre};
use crate::transforms::{fourier_zernike, FourierRadialKernel};
use crate::{Error, Result};

/// Extra coefficients computed past `smax` to estimate the discarded tail.
const TAIL_PROBE: usize = 4;

/// Values below this are flushed to zero.
const FLUSH: f64 = 1e-300;

/// `ρ^β (1-ρ²)^α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonomialEdgeProfile {
    pub beta: usize,
    pub alpha: f64,
}

impl MonomialEdgeProfile {
    pub fn new(beta: usize, alpha: f64) -> Result<Self> {
        if beta % 2 != 0 {
            return Err(Error::Domain(format!("beta must be even, got {beta}")));
        }
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must exceed -1, got {alpha}")));
        }
        Ok(Self { beta, alpha })
    }

    pub fn eval(&self, rho: f64) -> f64 {
        let edge = (1.0 - rho) * (1.0 + rho);
        if edge <= 0.0 {
            return if self.alpha == 0.0 && rho == 1.0 {
                1.0
            } else {
                0.0
            };
        }
        rho.powi(self.beta as i32) * edge.powf(self.alpha)
    }

    /// `b_{l+2p}^{l,α}` for one `p`.
    fn coeff(&self, l: usize, p: usize) -> f64 {
        let (a, b, lf, pf) = (self.alpha, self.beta as f64, l as f64, p as f64);
        binom((b - lf) / 2.0, p)
            / binom_real(a + pf + (b + lf + 1.0) / 2.0, a + pf)
            / (2.0 * a + b + lf + 2.0 * pf + 3.0)
    }
}

/// Table of `ρ^β(1-ρ²)^α` against `R_{l+2p}^{l,α}`, `p ≤ smax`. Finite (and
/// flagged exact) when `(β-l)/2` is a non-negative integer within range.
pub fn expand_monomial_edge(
    p: MonomialEdgeProfile,
    l: usize,
    smax: usize,
) -> Result<ExpansionTable> {
    let coeffs = (0..=smax + TAIL_PROBE).map(|s| p.coeff(l, s)).collect();
    Ok(ExpansionTable::new(l, p.alpha, coeffs)?.truncated(smax))
}

/// Table of `ρ^l(1-ρ²)^{η+δ}` against `R_{l+2p}^{l,δ}`; exactly `η+1` terms,
/// padded with zeros or cut to `smax+1`.
pub fn expand_pure_edge(l: usize, eta: usize, delta: f64, smax: usize) -> Result<ExpansionTable> {
    if !(delta > -1.0) || !delta.is_finite() {
        return Err(Error::Domain(format!("delta must exceed -1, got {delta}")));
    }
    let lf = l as f64;
    let ef = eta as f64;
    let coeffs: Vec<f64> = (0..=eta)
        .map(|p| {
            let pf = p as f64;
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            sign * binom(ef, p)
                / binom_real(delta + ef + lf + pf + 0.5, delta + ef)
                / (2.0 * delta + 2.0 * ef + 2.0 * lf + 2.0 * pf + 3.0)
        })
        .collect();
    Ok(ExpansionTable::exact(l, delta, coeffs)?
        .padded(smax)
        .truncated(smax))
}

/// Linear combination `Σ w_k ρ^{β_k} (1-ρ²)^α` sharing one edge exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeCombination {
    pub alpha: f64,
    pub terms: Vec<(f64, usize)>,
}

impl EdgeCombination {
    pub fn eval(&self, rho: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(w, beta)| {
                w * MonomialEdgeProfile {
                    beta,
                    alpha: self.alpha,
                }
                .eval(rho)
            })
            .sum()
    }

    /// Sum of the closed-form tables of the terms.
    pub fn expand(&self, l: usize, smax: usize) -> Result<ExpansionTable> {
        let mut acc = vec![0.0; smax + 1 + TAIL_PROBE];
        for &(w, beta) in &self.terms {
            let p = MonomialEdgeProfile::new(beta, self.alpha)?;
            for (s, v) in acc.iter_mut().enumerate() {
                *v += w * p.coeff(l, s);
            }
        }
        Ok(ExpansionTable::new(l, self.alpha, acc)?.truncated(smax))
    }
}

fn check_allscale(beta: usize, alpha: f64) -> Result<()> {
    if beta % 2 != 0 {
        return Err(Error::Domain(format!("beta must be even, got {beta}")));
    }
    if beta == 0 || !(alpha > 0.0) {
        return Err(Error::Degenerate(format!(
            "profile rho^{beta}(1-rho^2)^{alpha} has no interior maximum (need beta >= 2, alpha > 0)"
        )));
    }
    Ok(())
}

/// Position and value of the maximum of `ρ^β(1-ρ²)^α`.
pub fn allscale_profile(beta: usize, alpha: f64) -> Result<(f64, f64)> {
    check_allscale(beta, alpha)?;
    let h = beta as f64 / 2.0;
    let rho_max = (h / (alpha + h)).sqrt();
    let ln_bmax = h * h.ln() + alpha * alpha.ln() - (alpha + h) * (alpha + h).ln();
    Ok((rho_max, ln_bmax.exp()))
}

/// `ρ^β(1-ρ²)^α / B_max`.
pub fn allscale_normalized(beta: usize, alpha: f64) -> Result<EdgeCombination> {
    let (_, bmax) = allscale_profile(beta, alpha)?;
    Ok(EdgeCombination {
        alpha,
        terms: vec![(1.0 / bmax, beta)],
    })
}

/// `c = b·(1 + g(ρ² - ρ_max²)²)` with `b = B/B_max` and
/// `g = (α+β/2)³/(αβ)`, written as three monomial-edge terms.
pub fn flatten_profile(beta: usize, alpha: f64) -> Result<EdgeCombination> {
    let (rho_max, bmax) = allscale_profile(beta, alpha)?;
    let g = flatten_gain(beta, alpha);
    let xm = rho_max * rho_max;
    Ok(EdgeCombination {
        alpha,
        terms: vec![
            ((1.0 + g * xm * xm) / bmax, beta),
            (-2.0 * g * xm / bmax, beta + 2),
            (g / bmax, beta + 4),
        ],
    })
}

/// `(α+β/2)³/(αβ)`, half the second-order Taylor coefficient of `-ln b` at
/// the maximum in the variable `ρ²`.
pub fn flatten_gain(beta: usize, alpha: f64) -> f64 {
    let h = beta as f64 / 2.0;
    (alpha + h).powi(3) / (alpha * beta as f64)
}

/// Maximizer, in `x = ρ²`, of the flattened profile:
/// `(β²/4 + αβ/2 + 2α)/((α+β/2+2)(α+β/2))`. This is the expansion point for
/// a second flattening round.
pub fn flattened_peak_x(beta: usize, alpha: f64) -> Result<f64> {
    check_allscale(beta, alpha)?;
    let b = beta as f64;
    let h = b / 2.0;
    Ok((b * b / 4.0 + alpha * b / 2.0 + 2.0 * alpha) / ((alpha + h + 2.0) * (alpha + h)))
}

/// `ρ^β (1-ε²ρ²)^η (1-ρ²)^δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SProfileSpec {
    pub beta: usize,
    pub delta: usize,
    pub eta: usize,
    pub epsilon: f64,
}

impl SProfileSpec {
    pub fn new(beta: usize, delta: usize, eta: usize, epsilon: f64) -> Result<Self> {
        let s = Self {
            beta,
            delta,
            eta,
            epsilon,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.beta % 2 != 0 {
            return Err(Error::Domain(format!(
                "beta must be even, got {}",
                self.beta
            )));
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::Domain(format!(
                "epsilon must lie in [0, 1], got {}",
                self.epsilon
            )));
        }
        Ok(())
    }

    pub fn eval(&self, rho: f64) -> f64 {
        s_profile_eval(self, rho)
    }
}

/// Evaluates the S-profile in log space; results below 1e-300 become 0.
pub fn s_profile_eval(spec: &SProfileSpec, rho: f64) -> f64 {
    let mut ln = 0.0;
    if spec.beta > 0 {
        if rho <= 0.0 {
            return 0.0;
        }
        ln += spec.beta as f64 * rho.ln();
    }
    let e2 = spec.epsilon * spec.epsilon * rho * rho;
    if spec.eta > 0 {
        if e2 >= 1.0 {
            return 0.0;
        }
        ln += spec.eta as f64 * (-e2).ln_1p();
    }
    if spec.delta > 0 {
        if rho >= 1.0 {
            return 0.0;
        }
        ln += spec.delta as f64 * (-rho * rho).ln_1p();
    }
    let v = ln.exp();
    if v < FLUSH {
        0.0
    } else {
        v
    }
}

/// Peak positions `(ρ(1), ρ(0))` of the S-profile at the two ends of the
/// `ε` range.
pub fn peak_range(beta: usize, delta: usize, eta: usize) -> (f64, f64) {
    let h = beta as f64 / 2.0;
    let (d, e) = (delta as f64, eta as f64);
    let lo = if h == 0.0 {
        0.0
    } else {
        (h / (h + e + d)).sqrt()
    };
    let hi = if h == 0.0 { 0.0 } else { (h / (h + d)).sqrt() };
    (lo, hi)
}

/// The `ε` that puts the S-profile peak at `rho_bar`.
pub fn epsilon_for_peak(beta: usize, delta: usize, eta: usize, rho_bar: f64) -> Result<f64> {
    if beta % 2 != 0 {
        return Err(Error::Domain(format!("beta must be even, got {beta}")));
    }
    if beta == 0 || eta == 0 {
        return Err(Error::Degenerate(
            "peak position does not depend on epsilon (beta = 0 or eta = 0)".into(),
        ));
    }
    let (lo, hi) = peak_range(beta, delta, eta);
    let slack = 1e-12 * hi;
    if !(rho_bar >= lo - slack && rho_bar <= hi + slack) {
        return Err(Error::Range(format!(
            "peak position {rho_bar} outside attainable range [{lo}, {hi}]"
        )));
    }
    let h = beta as f64 / 2.0;
    let (d, e) = (delta as f64, eta as f64);
    let r2 = rho_bar * rho_bar;
    let num = (h - (h + d) * r2).max(0.0);
    let den = h + e - (h + e + d) * r2;
    Ok(((num / den).sqrt() / rho_bar).clamp(0.0, 1.0))
}

/// Tables of the S-profile against `R_{l+2s}^{l,δ}` for `l = 0, 2, ..., lmax`.
///
/// The `l = 0` table comes out of the rescale/multiply pipeline exactly;
/// higher orders are lifted from it and each is then cut to `smax + 1`
/// coefficients with the discarded part reported as tail energy.
pub fn expand_s_profile(
    spec: &SProfileSpec,
    lmax: usize,
    smax: usize,
) -> Result<Vec<ExpansionTable>> {
    spec.validate()?;
    if lmax % 2 != 0 {
        return Err(Error::Domain(format!("lmax must be even, got {lmax}")));
    }
    let seed = expand_pure_edge(0, spec.eta, 0.0, spec.eta)?.normalized();
    let base = compose_pipeline(&seed, spec.beta, spec.delta, spec.epsilon)?;
    let mut cur = base.padded(smax + lmax / 2 + TAIL_PROBE);
    let mut out = Vec::with_capacity(lmax / 2 + 1);
    loop {
        out.push(cur.truncated(smax));
        if cur.l() >= lmax {
            break;
        }
        cur = lift_b_coeffs(&cur)?;
    }
    Ok(out)
}

/// Radial profile choices for a wavelet design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProfileSpec {
    /// `ρ^β (1-ε²ρ²)^η (1-ρ²)^δ`.
    SProfile {
        beta: usize,
        delta: usize,
        eta: usize,
        epsilon: f64,
    },
    /// `ρ^β (1-ρ²)^α`, unnormalized.
    Monomial { beta: usize, alpha: f64 },
    /// All-scale profile after one flattening round.
    Flattened { beta: usize, alpha: f64 },
}

impl ProfileSpec {
    /// Edge exponent shared by all radial tables.
    pub fn alpha(&self) -> f64 {
        match *self {
            ProfileSpec::SProfile { delta, .. } => delta as f64,
            ProfileSpec::Monomial { alpha, .. } | ProfileSpec::Flattened { alpha, .. } => alpha,
        }
    }

    pub fn eval(&self, rho: f64) -> Result<f64> {
        Ok(match *self {
            ProfileSpec::SProfile {
                beta,
                delta,
                eta,
                epsilon,
            } => SProfileSpec::new(beta, delta, eta, epsilon)?.eval(rho),
            ProfileSpec::Monomial { beta, alpha } => {
                MonomialEdgeProfile::new(beta, alpha)?.eval(rho)
            }
            ProfileSpec::Flattened { beta, alpha } => flatten_profile(beta, alpha)?.eval(rho),
        })
    }

    /// Tables for `l = 0, 2, ..., lmax`.
    pub fn tables(&self, lmax: usize, smax: usize) -> Result<Vec<ExpansionTable>> {
        if lmax % 2 != 0 {
            return Err(Error::Domain(format!("lmax must be even, got {lmax}")));
        }
        match *self {
            ProfileSpec::SProfile {
                beta,
                delta,
                eta,
                epsilon,
            } => expand_s_profile(&SProfileSpec::new(beta, delta, eta, epsilon)?, lmax, smax),
            ProfileSpec::Monomial { beta, alpha } => {
                let p = MonomialEdgeProfile::new(beta, alpha)?;
                (0..=lmax)
                    .step_by(2)
                    .map(|l| expand_monomial_edge(p, l, smax))
                    .collect()
            }
            ProfileSpec::Flattened { beta, alpha } => {
                let c = flatten_profile(beta, alpha)?;
                (0..=lmax).step_by(2).map(|l| c.expand(l, smax)).collect()
            }
        }
    }
}

fn default_cap_points() -> usize {
    64
}

fn default_lmax() -> usize {
    16
}

fn default_smax() -> usize {
    24
}

/// Input of a wavelet design: an axially symmetric cap `h` on `[0, θ0]`
/// and a radial profile, with truncation orders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignSpec {
    pub theta0: f64,
    pub cap: CapProfile,
    #[serde(default = "default_cap_points")]
    pub cap_points: usize,
    pub profile: ProfileSpec,
    #[serde(default = "default_lmax")]
    pub lmax: usize,
    #[serde(default = "default_smax")]
    pub smax: usize,
}

impl DesignSpec {
    pub fn validate(&self) -> Result<()> {
        self.cap.validate()?;
        if !(self.theta0 > 0.0 && self.theta0 <= std::f64::consts::PI) {
            return Err(Error::Domain(format!(
                "theta0 must lie in (0, pi], got {}",
                self.theta0
            )));
        }
        if self.cap_points == 0 {
            return Err(Error::Domain("cap_points must be positive".into()));
        }
        if self.lmax % 2 != 0 {
            return Err(Error::Domain(format!(
                "lmax must be even, got {}",
                self.lmax
            )));
        }
        Ok(())
    }
}

/// Funk-transformed angular coefficients together with one radial table per
/// even angular order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveletDesign {
    pub angular: AngularCoeffs,
    pub radial_tables: Vec<ExpansionTable>,
    pub meta: DesignSpec,
}

impl WaveletDesign {
    /// Cap coefficients → Funk multipliers → radial tables.
    pub fn build(spec: &DesignSpec) -> Result<Self> {
        spec.validate()?;
        let rule = gauss_legendre(spec.cap_points, (0.0, spec.theta0));
        let cap = &spec.cap;
        let raw = cap_coeffs(|t| cap.eval(t, spec.theta0), spec.theta0, spec.lmax, &rule)?;
        Ok(Self {
            angular: apply_funk(&raw),
            radial_tables: spec.profile.tables(spec.lmax, spec.smax)?,
            meta: spec.clone(),
        })
    }

    /// Assembles a design from parts, checking that all tables share `α`,
    /// sit at even orders, and that odd-order angular entries vanish.
    pub fn from_parts(
        angular: AngularCoeffs,
        radial_tables: Vec<ExpansionTable>,
        meta: DesignSpec,
    ) -> Result<Self> {
        if let Some(first) = radial_tables.first() {
            if radial_tables
                .iter()
                .any(|t| t.alpha() != first.alpha() || t.l() % 2 != 0)
            {
                return Err(Error::Domain(
                    "radial tables must share alpha and have even l".into(),
                ));
            }
        }
        if angular.nonzero().iter().any(|(idx, _)| idx.l() % 2 != 0) {
            return Err(Error::Domain(
                "odd angular orders must vanish after the Funk transform".into(),
            ));
        }
        Ok(Self {
            angular,
            radial_tables,
            meta,
        })
    }

    /// Warnings for every table whose tail estimate is too large.
    pub fn tail_warnings(&self) -> Vec<String> {
        self.radial_tables
            .iter()
            .filter_map(|t| t.tail_warning())
            .collect()
    }

    /// Largest tail estimate over all tables.
    pub fn max_tail_energy(&self) -> f64 {
        self.radial_tables
            .iter()
            .fold(0.0, |m, t| m.max(t.tail_energy()))
    }
}

/// `ψ(x) = Σ_l Σ_m a_l^m Σ_s (b/N) 𝓕[Z_{l+2s,l}^{m,α}](x)`.
pub fn synthesize_wavelet(design: &WaveletDesign, x: [f64; 3]) -> Result<Complex64> {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let mut total = Complex64::new(0.0, 0.0);
    if r == 0.0 {
        // only the constant term has a nonzero ball integral
        if let Some(t) = design.radial_tables.iter().find(|t| t.l() == 0) {
            let a = design.angular.get(SphIndex::new(0, 0)?);
            let idx = RadialIndex3::new(0, 0, t.alpha())?;
            total = a * t.normalized()[0] * fourier_zernike(idx, SphIndex::new(0, 0)?, x)?;
        }
        return Ok(total);
    }
    let (theta, phi) = angles_of(x);
    for t in &design.radial_tables {
        let l = t.l();
        if l > design.angular.lmax() {
            continue;
        }
        let mut ang = Complex64::new(0.0, 0.0);
        for m in -(l as i64)..=(l as i64) {
            let idx = SphIndex::new(l, m)?;
            let a = design.angular.get(idx);
            if a != Complex64::new(0.0, 0.0) {
                ang += a * ylm(idx, theta, phi);
            }
        }
        if ang == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut radial = Complex64::new(0.0, 0.0);
        for (s, c) in t.normalized().iter().enumerate() {
            if *c != 0.0 {
                let k = FourierRadialKernel::new(RadialIndex3::new(l + 2 * s, l, t.alpha())?);
                radial += k.eval(r)? * *c;
            }
        }
        total += ang * radial;
    }
    Ok(total)
}

/// Maximizer of `f` on `[a, b]`: grid search over `npts` points, then
/// golden-section refinement inside the bracketing cell pair.
pub fn locate_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, npts: usize) -> f64 {
    let npts = npts.max(3);
    let h = (b - a) / (npts - 1) as f64;
    let mut best = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..npts {
        let v = f(a + h * i as f64);
        if v > best_v {
            best_v = v;
            best = i;
        }
    }
    let mut lo = a + h * best.saturating_sub(1) as f64;
    let mut hi = (a + h * (best + 1) as f64).min(b);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo < 1e-14 {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{n3, r3};

    /// Projection `∫ f R ρ² (1-ρ²)^{-α} dρ` by Gauss–Jacobi in `x = 2ρ²-1`, for profiles
    /// carrying an exact `(1-ρ²)^α` factor and even `l + β`.
    fn quad_b(l: usize, alpha: f64, smax: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let gj = crate::specfun::gauss_jacobi(80, alpha, 0.5).unwrap();
        (0..=smax)
            .map(|s| {
                gj.integrate(|x| {
                    let r = (0.5 * (1.0 + x)).sqrt();
                    let w = (1.0 - x).powf(alpha) * 2f64.sqrt() * r;
                    f(r) * r3(l + 2 * s, l, alpha, r) * r * r
                        / (1.0 - r * r).powf(alpha)
                        / (4.0 * r * w)
                })
            })
            .collect()
    }

    #[test]
    fn monomial_examples() {
        let t = expand_monomial_edge(MonomialEdgeProfile::new(0, 0.0).unwrap(), 0, 5).unwrap();
        assert!((t.coeffs()[0] - 1.0 / 3.0).abs() < 1e-16);
        assert!((t.coeffs()[0] - n3(0, 0, 0.0)).abs() < 1e-16);
        assert!(t.coeffs()[1..].iter().all(|v| *v == 0.0));
        assert_eq!(t.tail_energy(), 0.0);

        let p = MonomialEdgeProfile::new(2, 6.0).unwrap();
        let t = expand_monomial_edge(p, 0, 4).unwrap();
        for i in 0..=100 {
            let rho = i as f64 / 100.0;
            assert!((t.reconstruct(rho) - p.eval(rho)).abs() < 1e-11);
        }
        for &(beta, l, alpha) in &[
            (4usize, 2usize, 1.0),
            (6, 0, 2.5),
            (2, 2, 0.5),
            (8, 4, 3.0),
            (2, 4, 1.0),
        ] {
            let p = MonomialEdgeProfile::new(beta, alpha).unwrap();
            let t = expand_monomial_edge(p, l, 6).unwrap();
            let q = quad_b(l, alpha, 6, |r| p.eval(r));
            for (a, b) in t.coeffs().iter().zip(&q) {
                assert!(
                    (a - b).abs() < 1e-11,
                    "beta={beta} l={l} alpha={alpha}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn pure_edge_examples() {
        for &delta in &[0.0, 1.0, 2.5] {
            for l in 0..4 {
                let t = expand_pure_edge(l, 0, delta, 3).unwrap();
                assert!((t.coeffs()[0] - n3(l, l, delta)).abs() < 1e-15);
                assert!(t.coeffs()[1..].iter().all(|v| *v == 0.0));
            }
        }
        let t = expand_pure_edge(0, 2, 0.0, 2).unwrap();
        for i in 0..=100 {
            let rho = i as f64 / 100.0;
            assert!((t.reconstruct(rho) - (1.0 - rho * rho).powi(2)).abs() < 1e-12);
        }
        let t = expand_pure_edge(3, 7, 1.5, 7).unwrap();
        for (p, b) in t.coeffs().iter().enumerate() {
            assert_eq!(b.signum(), if p % 2 == 0 { 1.0 } else { -1.0 });
        }
        let q = quad_b(3, 1.5, 7, |r| r.powi(3) * (1.0 - r * r).powf(8.5));
        for (a, b) in t.coeffs().iter().zip(&q) {
            assert!((a - b).abs() < 1e-11);
        }
    }

    #[test]
    fn allscale_examples() {
        let (rm, bm) = allscale_profile(2, 6.0).unwrap();
        assert!((rm - 7f64.powf(-0.5)).abs() < 1e-15);
        assert!((bm - 6f64.powi(6) / 7f64.powi(7)).abs() < 1e-15);
        assert!((allscale_profile(2, 2.0).unwrap().0 - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!(allscale_profile(0, 2.0).is_err());
        assert!(allscale_profile(2, 0.0).is_err());
        for &(beta, alpha) in &[(2usize, 6.0), (4, 1.0), (8, 3.0), (16, 4.0)] {
            let p = MonomialEdgeProfile::new(beta, alpha).unwrap();
            let r = locate_max(|x| p.eval(x), 0.0, 1.0, 100_001);
            assert!((r - allscale_profile(beta, alpha).unwrap().0).abs() < 1e-4);
        }
    }

    #[test]
    fn flatten_examples() {
        assert!((flatten_gain(2, 6.0) - 343.0 / 12.0).abs() < 1e-13);
        let c = flatten_profile(2, 6.0).unwrap();
        let (_, bmax) = allscale_profile(2, 6.0).unwrap();
        for i in 0..=50 {
            let rho = i as f64 / 50.0;
            let b = rho * rho * (1.0 - rho * rho).powi(6) / bmax;
            let e = b * (1.0 + (343.0 / 12.0) * (rho * rho - 1.0 / 7.0).powi(2));
            assert!((c.eval(rho) - e).abs() < 1e-12);
        }
        let r = locate_max(|x| c.eval(x), 0.0, 1.0, 100_001);
        assert!((r - (19.0f64 / 63.0).sqrt()).abs() < 1e-4);
        for &(beta, alpha) in &[(2usize, 6.0), (2, 2.0), (4, 3.0), (6, 1.0), (8, 5.0)] {
            let c = flatten_profile(beta, alpha).unwrap();
            let r = locate_max(|x| c.eval(x), 0.0, 1.0, 100_001);
            assert!((r * r - flattened_peak_x(beta, alpha).unwrap()).abs() < 1e-6);
        }
        // expansion of the three-term combination
        let t = c.expand(2, 10).unwrap();
        for i in 0..=40 {
            let rho = i as f64 / 40.0;
            assert!((t.reconstruct(rho) - c.eval(rho)).abs() < 1e-9);
        }
    }

    const FIG: (usize, usize, usize) = (16, 4, 150);

    #[test]
    fn s_profile_examples() {
        let s0 = SProfileSpec::new(4, 2, 30, 0.0).unwrap();
        let s1 = SProfileSpec::new(4, 2, 30, 1.0).unwrap();
        for i in 0..=20 {
            let r = i as f64 / 20.0;
            let a = r.powi(4) * (1.0 - r * r).powi(2);
            assert!((s0.eval(r) - a).abs() < 1e-14);
            assert!((s1.eval(r) - r.powi(4) * (1.0 - r * r).powi(32)).abs() < 1e-14);
        }
        let (b, d, e) = FIG;
        let spec = SProfileSpec::new(b, d, e, (3.0f64 / 7.0).sqrt()).unwrap();
        let r = locate_max(|x| spec.eval(x), 0.0, 1.0, 10_001);
        assert!((r - 1.0 / 3.0).abs() < 1e-4);
        assert!(SProfileSpec::new(3, 0, 0, 0.5).is_err());
    }

    #[test]
    fn peak_calibration() {
        let (b, d, e) = FIG;
        let (lo, hi) = peak_range(b, d, e);
        assert!((lo - 2.0 / 9.0).abs() < 1e-15);
        assert!((hi - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        let (lo, hi) = peak_range(6, 2, 0);
        assert_eq!(lo, hi);
        for &(rb, eps) in &[
            (1.0 / 3.0, 3.0f64 / 7.0),
            (0.5, 8.0 / 47.0),
            (0.75, 32.0 / 963.0),
        ] {
            let v = epsilon_for_peak(b, d, e, rb).unwrap();
            assert!((v - eps.sqrt()).abs() < 1e-12 * eps.sqrt());
            let spec = SProfileSpec::new(b, d, e, v).unwrap();
            assert!((locate_max(|x| spec.eval(x), 0.0, 1.0, 10_001) - rb).abs() < 1e-3);
            // the scaling approximation bounds the calibrated value
            let (lo, _) = peak_range(b, d, e);
            assert!(v <= lo / rb && v >= 0.6 * lo / rb);
        }
        assert!((epsilon_for_peak(b, d, e, 2.0 / 9.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(epsilon_for_peak(b, d, e, 0.9).is_err());
        assert!(epsilon_for_peak(b, d, e, 0.2).is_err());
    }

    #[test]
    fn peak_map_is_monotone_and_unimodal() {
        let (b, d, e) = FIG;
        let mut prev = f64::INFINITY;
        for k in 0..=10 {
            let spec = SProfileSpec::new(b, d, e, k as f64 / 10.0).unwrap();
            let r = locate_max(|x| spec.eval(x), 0.0, 1.0, 10_001);
            if k > 0 {
                assert!(r < prev);
            }
            prev = r;
            let v: Vec<f64> = (0..10_000).map(|i| spec.eval(i as f64 / 9_999.0)).collect();
            let maxima = (1..v.len() - 1)
                .filter(|&i| v[i] > v[i - 1] && v[i] >= v[i + 1])
                .count();
            assert_eq!(maxima, 1, "eps={}", k as f64 / 10.0);
        }
    }

    #[test]
    fn s_profile_expansion_small_case() {
        let gl = gauss_legendre(40, (0.0, 1.0));
        for &eps in &[0.0, 0.5, 1.0] {
            let spec = SProfileSpec::new(2, 1, 2, eps).unwrap();
            let tables = expand_s_profile(&spec, 4, 8).unwrap();
            assert_eq!(tables.len(), 3);
            for t in &tables {
                assert_eq!(t.alpha(), 1.0);
                // every coefficient is exact, whatever the order
                let q: Vec<f64> = (0..=t.smax())
                    .map(|s| {
                        gl.integrate(|r| {
                            spec.eval(r) * r3(t.l() + 2 * s, t.l(), 1.0, r) * r * r / (1.0 - r * r)
                        })
                    })
                    .collect();
                for (a, b) in t.coeffs().iter().zip(&q) {
                    assert!((a - b).abs() < 1e-12, "l={} eps={eps}", t.l());
                }
                if t.l() <= spec.beta {
                    // finite expansion: pointwise exact
                    for i in 0..=100 {
                        let rho = i as f64 / 100.0;
                        assert!(
                            (t.reconstruct(rho) - spec.eval(rho)).abs() < 1e-8,
                            "l={} eps={eps}",
                            t.l()
                        );
                    }
                }
            }
            // l > β: only mean-square convergence; the weighted residual
            // shrinks as more terms are kept
            let energy = gl.integrate(|r| spec.eval(r).powi(2) * r * r / (1.0 - r * r));
            let resid = |smax: usize| {
                let t = &expand_s_profile(&spec, 4, smax).unwrap()[2];
                let kept: f64 = t
                    .coeffs()
                    .iter()
                    .zip(t.normalized())
                    .map(|(b, c)| b * c)
                    .sum();
                (energy - kept).max(0.0).sqrt()
            };
            let (r8, r40) = (resid(8), resid(40));
            assert!(r40 < 0.2 * r8 && r8 < 1e-2, "{r8} {r40}");
        }
        // ε=1, β=0 against the closed form
        let spec = SProfileSpec::new(0, 3, 5, 1.0).unwrap();
        let t = &expand_s_profile(&spec, 0, 10).unwrap()[0];
        let e = expand_pure_edge(0, 5, 3.0, 10).unwrap();
        for (a, b) in t.coeffs().iter().zip(e.coeffs()) {
            assert!((a - b).abs() < 1e-12 * b.abs().max(1e-3));
        }
        // ε=0 against the monomial tables
        let spec = SProfileSpec::new(4, 2, 6, 0.0).unwrap();
        let tables = expand_s_profile(&spec, 4, 6).unwrap();
        for t in &tables {
            let m =
                expand_monomial_edge(MonomialEdgeProfile::new(4, 2.0).unwrap(), t.l(), 6).unwrap();
            for (a, b) in t.coeffs().iter().zip(m.coeffs()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn large_exponent_pipeline_reconstructs() {
        let (b, d, e) = FIG;
        let eps = epsilon_for_peak(b, d, e, 0.5).unwrap();
        let spec = SProfileSpec::new(b, d, e, eps).unwrap();
        let t = &expand_s_profile(&spec, 0, 200).unwrap()[0];
        let mut worst: f64 = 0.0;
        for i in 0..=200 {
            let rho = i as f64 / 200.0;
            worst = worst.max((t.reconstruct(rho) - spec.eval(rho)).abs());
        }
        assert!(worst < 1e-8, "{worst}");
    }

    fn single_term_design(alpha: f64) -> WaveletDesign {
        let mut ang = AngularCoeffs::zeros(0);
        ang.set(SphIndex::new(0, 0).unwrap(), Complex64::new(1.0, 0.0))
            .unwrap();
        let table = ExpansionTable::exact(0, alpha, vec![n3(0, 0, alpha)]).unwrap();
        let meta = DesignSpec {
            theta0: std::f64::consts::PI,
            cap: CapProfile::One,
            cap_points: 64,
            profile: ProfileSpec::Monomial { beta: 0, alpha },
            lmax: 0,
            smax: 0,
        };
        WaveletDesign::from_parts(ang, vec![table], meta).unwrap()
    }

    #[test]
    fn synthesis_single_term() {
        let d = single_term_design(1.5);
        let idx = RadialIndex3::new(0, 0, 1.5).unwrap();
        let y = SphIndex::new(0, 0).unwrap();
        for x in [[0.0, 0.0, 0.0], [0.3, -0.2, 0.1], [1.1, 0.4, 0.7]] {
            let a = synthesize_wavelet(&d, x).unwrap();
            let b = fourier_zernike(idx, y, x).unwrap();
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn axisymmetric_design_is_rotation_invariant() {
        let spec = DesignSpec {
            theta0: 0.4,
            cap: CapProfile::Cos2,
            cap_points: 64,
            profile: ProfileSpec::SProfile {
                beta: 2,
                delta: 1,
                eta: 2,
                epsilon: 0.5,
            },
            lmax: 6,
            smax: 6,
        };
        let d = WaveletDesign::build(&spec).unwrap();
        assert!(d
            .angular
            .nonzero()
            .iter()
            .all(|(i, _)| i.l() % 2 == 0 && i.m() == 0));
        for &(r, t) in &[(0.4, 0.3), (1.2, 1.9), (0.05, 2.8)] {
            let base = synthesize_wavelet(&d, [r * f64::sin(t), 0.0, r * f64::cos(t)]).unwrap();
            for phi in [0.7, 2.0, 4.4] {
                let x = [
                    r * t.sin() * f64::cos(phi),
                    r * t.sin() * f64::sin(phi),
                    r * t.cos(),
                ];
                assert!((synthesize_wavelet(&d, x).unwrap() - base).norm() < 1e-10);
            }
        }
        // a full sphere with h ≡ 1 leaves only l = 0 after the Funk step
        let spec = DesignSpec {
            theta0: std::f64::consts::PI,
            cap: CapProfile::One,
            ..spec
        };
        let d = WaveletDesign::build(&spec).unwrap();
        for (i, v) in d.angular.nonzero() {
            assert!(i.l() == 0 || v.norm() < 1e-12);
        }
    }

    #[test]
    fn design_json_round_trip() {
        let json = r#"{"theta0": 0.5, "cap": {"kind": "poly-bump"},
            "profile": {"kind": "s-profile", "beta": 2, "delta": 1, "eta": 2, "epsilon": 0.5}}"#;
        let spec: DesignSpec = serde_json::from_str(json).unwrap();
        assert_eq!((spec.lmax, spec.smax, spec.cap_points), (16, 24, 64));
        let back: DesignSpec =
            serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(spec, back);
    }
}
