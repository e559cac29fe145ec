//! Spherical and circular harmonics, the Funk transform and angular
//! expansion coefficients.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::specfun::{assoc_legendre_p, legendre_p, legendre_seq, ln_gamma, QuadratureRule};
use crate::{Error, Result};

/// Degree and order `(l, m)` of a spherical harmonic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SphIndex {
    l: usize,
    m: i64,
}

impl SphIndex {
    pub fn new(l: usize, m: i64) -> Result<Self> {
        if m.unsigned_abs() as usize > l {
            return Err(Error::Index(format!(
                "|m| must not exceed l (l={l}, m={m})"
            )));
        }
        Ok(Self { l, m })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> i64 {
        self.m
    }
}

/// `√((2l+1)/(4π) · (l-|m|)!/(l+|m|)!)`.
fn ylm_norm(l: usize, am: usize) -> f64 {
    let lf = l as f64;
    let amf = am as f64;
    let ratio = (ln_gamma(lf - amf + 1.0) - ln_gamma(lf + amf + 1.0)).exp();
    ((2.0 * lf + 1.0) / (4.0 * std::f64::consts::PI) * ratio).sqrt()
}

/// Unit-norm spherical harmonic
/// `(-1)^m √((2l+1)/(4π)·(l-|m|)!/(l+|m|)!) P_l^{|m|}(cos θ) e^{imφ}`.
///
/// The sign factor is applied for every `m`, so `Y_l^{-m} = conj(Y_l^m)`.
pub fn ylm(idx: SphIndex, theta: f64, phi: f64) -> Complex64 {
    let am = idx.m.unsigned_abs() as usize;
    let plm = assoc_legendre_p(idx.l, am, theta.cos()).expect("validated index");
    let sign = if am % 2 == 0 { 1.0 } else { -1.0 };
    let mag = sign * ylm_norm(idx.l, am) * plm;
    Complex64::from_polar(1.0, idx.m as f64 * phi) * mag
}

/// `Y_l^m` evaluated in the direction of a nonzero 3-vector.
pub fn ylm_dir(idx: SphIndex, v: [f64; 3]) -> Complex64 {
    let (theta, phi) = angles_of(v);
    ylm(idx, theta, phi)
}

/// Polar and azimuthal angle of a nonzero vector; `φ ∈ [0, 2π)`.
pub fn angles_of(v: [f64; 3]) -> (f64, f64) {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let theta = (v[2] / r).clamp(-1.0, 1.0).acos();
    let mut phi = v[1].atan2(v[0]);
    if phi < 0.0 {
        phi += 2.0 * std::f64::consts::PI;
    }
    (theta, phi)
}

/// Unnormalized circular harmonic `e^{imφ}`.
pub fn circular_harmonic(m: i64, phi: f64) -> Complex64 {
    Complex64::from_polar(1.0, m as f64 * phi)
}

/// Funk transform multiplier `2π P_l(0)`; zero for odd `l`.
pub fn funk_multiplier(l: usize) -> f64 {
    if l % 2 == 1 {
        return 0.0;
    }
    // P_{2k}(0) = (-1)^k (1/2)_k / k!
    let k = l / 2;
    let mut p = 1.0;
    for j in 0..k {
        p *= -(0.5 + j as f64) / (j as f64 + 1.0);
    }
    2.0 * std::f64::consts::PI * p
}

/// Funk–Hecke integral `λ_l = ∫_{-1}^{1} P_l(t) f(t) dt` with `rule` on `[-1, 1]`.
pub fn funk_hecke_lambda<F: Fn(f64) -> f64>(f: F, l: usize, rule: &QuadratureRule) -> f64 {
    rule.integrate(|t| legendre_p(l, t) * f(t))
}

/// Coefficients `a_l^m` of a sphere function against unit-norm `Y_l^m`,
/// `0 ≤ l ≤ lmax`, stored densely.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngularCoeffs {
    lmax: usize,
    entries: Vec<Complex64>,
}

impl AngularCoeffs {
    pub fn zeros(lmax: usize) -> Self {
        Self {
            lmax,
            entries: vec![Complex64::new(0.0, 0.0); (lmax + 1) * (lmax + 1)],
        }
    }

    fn slot(l: usize, m: i64) -> usize {
        (l * l) as usize + (l as i64 + m) as usize
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    pub fn get(&self, idx: SphIndex) -> Complex64 {
        if idx.l > self.lmax {
            return Complex64::new(0.0, 0.0);
        }
        self.entries[Self::slot(idx.l, idx.m)]
    }

    pub fn set(&mut self, idx: SphIndex, value: Complex64) -> Result<()> {
        if idx.l > self.lmax {
            return Err(Error::Index(format!(
                "degree {} exceeds lmax {}",
                idx.l, self.lmax
            )));
        }
        self.entries[Self::slot(idx.l, idx.m)] = value;
        Ok(())
    }

    /// All `(index, value)` pairs with a nonzero value, ordered by `(l, m)`.
    pub fn nonzero(&self) -> Vec<(SphIndex, Complex64)> {
        let mut out = Vec::new();
        for l in 0..=self.lmax {
            for m in -(l as i64)..=(l as i64) {
                let v = self.entries[Self::slot(l, m)];
                if v != Complex64::new(0.0, 0.0) {
                    out.push((SphIndex { l, m }, v));
                }
            }
        }
        out
    }

    /// `Σ a_l^m Y_l^m(θ, φ)`.
    pub fn evaluate(&self, theta: f64, phi: f64) -> Complex64 {
        self.nonzero()
            .into_iter()
            .map(|(idx, a)| a * ylm(idx, theta, phi))
            .sum()
    }
}

/// Raw cap integrals `∫₀^{θ0} h(θ) P_l(cos θ) sin θ dθ` for `l ≤ lmax`.
///
/// `rule` is moved onto `[0, θ0]` whatever interval it was built on.
pub fn cap_integrals<H: Fn(f64) -> f64>(
    h: H,
    theta0: f64,
    lmax: usize,
    rule: &QuadratureRule,
) -> Result<Vec<f64>> {
    if !(theta0 > 0.0 && theta0 <= std::f64::consts::PI) {
        return Err(Error::Domain(format!(
            "cap angle must lie in (0, π], got {theta0}"
        )));
    }
    let r = rule.mapped(0.0, theta0);
    let mut out = vec![0.0; lmax + 1];
    for (&t, &w) in r.nodes().iter().zip(r.weights()) {
        let hv = h(t) * t.sin() * w;
        for (acc, p) in out.iter_mut().zip(legendre_seq(lmax, t.cos())) {
            *acc += hv * p;
        }
    }
    Ok(out)
}

/// Coefficients of the axially symmetric `A(θ, φ) = h(θ)` on `[0, θ0]`
/// against unit-norm `Y_l^0`: `a_l^0 = 2π √((2l+1)/4π) ∫ h P_l(cos θ) sin θ dθ`.
pub fn cap_coeffs<H: Fn(f64) -> f64>(
    h: H,
    theta0: f64,
    lmax: usize,
    rule: &QuadratureRule,
) -> Result<AngularCoeffs> {
    let raw = cap_integrals(h, theta0, lmax, rule)?;
    let mut out = AngularCoeffs::zeros(lmax);
    for (l, v) in raw.into_iter().enumerate() {
        let a = 2.0 * std::f64::consts::PI * ylm_norm(l, 0) * v;
        out.set(SphIndex { l, m: 0 }, Complex64::new(a, 0.0))?;
    }
    Ok(out)
}

/// Replaces every `a_l^m` by `2π P_l(0) a_l^m`.
pub fn apply_funk(coeffs: &AngularCoeffs) -> AngularCoeffs {
    let mut out = coeffs.clone();
    for l in 0..=coeffs.lmax {
        let f = funk_multiplier(l);
        for m in -(l as i64)..=(l as i64) {
            let s = AngularCoeffs::slot(l, m);
            out.entries[s] = if f == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                coeffs.entries[s] * f
            };
        }
    }
    out
}

/// Named angular cap profiles `h(θ)` on `[0, θ0]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CapProfile {
    /// `h ≡ 1`.
    One,
    /// `cos²(πθ/(2θ0))`.
    Cos2,
    /// `(1 - (θ/θ0)²)²`.
    PolyBump,
    /// Piecewise-linear interpolation of samples; zero outside the table.
    Sampled { theta: Vec<f64>, values: Vec<f64> },
}

impl CapProfile {
    /// Checks the sample table of [`CapProfile::Sampled`].
    pub fn validate(&self) -> Result<()> {
        if let CapProfile::Sampled { theta, values } = self {
            if theta.len() < 2 || theta.len() != values.len() {
                return Err(Error::Domain(
                    "sampled cap needs at least two (theta, value) pairs of equal length".into(),
                ));
            }
            if theta.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(Error::Domain(
                    "sampled cap angles must be strictly increasing".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn eval(&self, theta: f64, theta0: f64) -> f64 {
        if theta < 0.0 || theta > theta0 {
            return 0.0;
        }
        match self {
            CapProfile::One => 1.0,
            CapProfile::Cos2 => (std::f64::consts::PI * theta / (2.0 * theta0))
                .cos()
                .powi(2),
            CapProfile::PolyBump => {
                let u = theta / theta0;
                (1.0 - u * u).powi(2)
            }
            CapProfile::Sampled { theta: ts, values } => {
                if theta < ts[0] || theta > ts[ts.len() - 1] {
                    return 0.0;
                }
                let k = ts.partition_point(|&t| t <= theta).clamp(1, ts.len() - 1);
                let (t0, t1) = (ts[k - 1], ts[k]);
                let w = (theta - t0) / (t1 - t0);
                values[k - 1] * (1.0 - w) + values[k] * w
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gauss_legendre, spherical_bessel_j};
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    /// Gauss–Legendre in cos θ times the trapezoid rule in φ.
    fn sphere_quad<F: FnMut(f64, f64) -> Complex64>(nt: usize, nphi: usize, mut f: F) -> Complex64 {
        let gl = gauss_legendre(nt, (-1.0, 1.0));
        let dphi = 2.0 * PI / nphi as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (&t, &w) in gl.nodes().iter().zip(gl.weights()) {
            let theta = t.acos();
            for j in 0..nphi {
                acc += f(theta, j as f64 * dphi) * (w * dphi);
            }
        }
        acc
    }

    #[test]
    fn ylm_examples() {
        let y = ylm(SphIndex::new(0, 0).unwrap(), 0.3, 1.1);
        assert!((y.re - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-15 && y.im == 0.0);
        let y = ylm(SphIndex::new(1, 0).unwrap(), 0.7, 2.0);
        assert!((y.re - (3.0 / (4.0 * PI)).sqrt() * 0.7f64.cos()).abs() < 1e-15);
        // Y_1^1 = -√(3/8π) sin θ e^{iφ}
        let y = ylm(SphIndex::new(1, 1).unwrap(), 0.7, 2.0);
        let e = Complex64::from_polar(-(3.0 / (8.0 * PI)).sqrt() * 0.7f64.sin(), 2.0);
        assert!((y - e).norm() < 1e-15);
        assert!(SphIndex::new(2, -3).is_err());
    }

    #[test]
    fn orthonormality_up_to_degree_ten() {
        let mut idx = Vec::new();
        for l in 0..=10usize {
            for m in -(l as i64)..=(l as i64) {
                idx.push(SphIndex::new(l, m).unwrap());
            }
        }
        // tabulate once on the product grid
        let (nt, nphi) = (24, 48);
        let gl = gauss_legendre(nt, (-1.0, 1.0));
        let dphi = 2.0 * PI / nphi as f64;
        let mut pts = Vec::new();
        for (&t, &w) in gl.nodes().iter().zip(gl.weights()) {
            for j in 0..nphi {
                pts.push((t.acos(), j as f64 * dphi, w * dphi));
            }
        }
        let vals: Vec<Vec<Complex64>> = idx
            .iter()
            .map(|&i| pts.iter().map(|&(th, ph, _)| ylm(i, th, ph)).collect())
            .collect();
        for a in 0..idx.len() {
            for b in a..idx.len() {
                let s: Complex64 = (0..pts.len())
                    .map(|k| vals[a][k] * vals[b][k].conj() * pts[k].2)
                    .sum();
                let e = if a == b { 1.0 } else { 0.0 };
                assert!((s - e).norm() < 1e-11, "{:?} {:?}: {s}", idx[a], idx[b]);
            }
        }
    }

    #[test]
    fn conjugate_symmetry() {
        for l in 0..6usize {
            for m in 0..=(l as i64) {
                let p = ylm(SphIndex::new(l, m).unwrap(), 1.1, 0.4);
                let q = ylm(SphIndex::new(l, -m).unwrap(), 1.1, 0.4);
                assert!((p.conj() - q).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn reality_condition_by_quadrature() {
        // a real function has a_l^{-m} = conj(a_l^m) in this phase convention
        let f = |th: f64, ph: f64| (th.cos() + 0.3 * th.sin() * (ph.cos() - 2.0 * ph.sin())).exp();
        for l in 0..5usize {
            for m in 1..=(l as i64) {
                let ip = SphIndex::new(l, m).unwrap();
                let im = SphIndex::new(l, -m).unwrap();
                let ap = sphere_quad(32, 64, |t, p| ylm(ip, t, p).conj() * f(t, p));
                let am = sphere_quad(32, 64, |t, p| ylm(im, t, p).conj() * f(t, p));
                assert!((am - ap.conj()).norm() < 1e-12);
                assert!(ap.norm() > 1e-6);
            }
        }
    }

    #[test]
    fn funk_multiplier_values() {
        assert!((funk_multiplier(0) - 2.0 * PI).abs() < 1e-15);
        assert_eq!(funk_multiplier(1), 0.0);
        assert!((funk_multiplier(2) + PI).abs() < 1e-15);
        for l in 0..20 {
            assert!((funk_multiplier(l) - 2.0 * PI * legendre_p(l, 0.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn funk_multiplier_matches_great_circle_integral() {
        // ∫ over the great circle ⟂ n of Y_l^0 equals 2πP_l(0) Y_l^0(n)
        let n = [0.3f64, -0.5, 0.81];
        let r = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        let n = [n[0] / r, n[1] / r, n[2] / r];
        let u = {
            let c = [n[1], -n[0], 0.0];
            let r = (c[0] * c[0] + c[1] * c[1]).sqrt();
            [c[0] / r, c[1] / r, 0.0]
        };
        let w = [
            n[1] * u[2] - n[2] * u[1],
            n[2] * u[0] - n[0] * u[2],
            n[0] * u[1] - n[1] * u[0],
        ];
        for l in 0..8 {
            let idx = SphIndex::new(l, 0).unwrap();
            let npts = 256;
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..npts {
                let t = 2.0 * PI * k as f64 / npts as f64;
                let v = [
                    t.cos() * u[0] + t.sin() * w[0],
                    t.cos() * u[1] + t.sin() * w[1],
                    t.cos() * u[2] + t.sin() * w[2],
                ];
                acc += ylm_dir(idx, v) * (2.0 * PI / npts as f64);
            }
            let e = ylm_dir(idx, n) * funk_multiplier(l);
            assert!((acc - e).norm() < 1e-12, "l={l}");
        }
    }

    #[test]
    fn funk_hecke_examples() {
        let rule = gauss_legendre(32, (-1.0, 1.0));
        assert!((funk_hecke_lambda(|_| 1.0, 0, &rule) - 2.0).abs() < 1e-14);
        for l in 1..10 {
            assert!(funk_hecke_lambda(|_| 1.0, l, &rule).abs() < 1e-12);
        }
        assert!((funk_hecke_lambda(|t| t * t, 2, &rule) - 4.0 / 15.0).abs() < 1e-12);
    }

    #[test]
    fn funk_hecke_plane_wave() {
        let s = 2.0;
        let rule = gauss_legendre(40, (-1.0, 1.0));
        let lam_re = funk_hecke_lambda(|t| (s * t).cos(), 2, &rule);
        let lam_im = funk_hecke_lambda(|t| (s * t).sin(), 2, &rule);
        let lam = Complex64::new(lam_re, lam_im);
        // λ_l = 2 i^l j_l(s)
        let expect = Complex64::new(-2.0 * spherical_bessel_j(2.0, s).unwrap(), 0.0);
        assert!((lam - expect).norm() < 1e-13);
        let idx = SphIndex::new(2, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let th: f64 = rng.gen_range(0.0..PI);
            let ph: f64 = rng.gen_range(0.0..2.0 * PI);
            let wp = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
            let lhs = sphere_quad(48, 96, |t, p| {
                let w = [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()];
                let dot = w[0] * wp[0] + w[1] * wp[1] + w[2] * wp[2];
                Complex64::from_polar(1.0, s * dot) * ylm(idx, t, p)
            });
            let rhs = ylm(idx, th, ph) * lam * (2.0 * PI);
            assert!((lhs - rhs).norm() < 1e-8);
        }
    }

    #[test]
    fn cap_examples() {
        let rule = gauss_legendre(64, (0.0, 1.0));
        let raw = cap_integrals(|_| 1.0, PI, 6, &rule).unwrap();
        assert!((raw[0] - 2.0).abs() < 1e-14);
        for v in &raw[1..] {
            assert!(v.abs() < 1e-12);
        }
        let raw = cap_integrals(|_| 1.0, PI / 2.0, 1, &rule).unwrap();
        assert!((raw[1] - 0.5).abs() < 1e-14);
        assert!(cap_integrals(|_| 1.0, 0.0, 1, &rule).is_err());
    }

    #[test]
    fn cap_coeffs_match_sphere_projection() {
        let rule = gauss_legendre(64, (0.0, 1.0));
        let theta0 = 0.6;
        let h = |t: f64| CapProfile::Cos2.eval(t, theta0);
        let c = cap_coeffs(h, theta0, 6, &rule).unwrap();
        for l in 0..=6usize {
            let idx = SphIndex::new(l, 0).unwrap();
            // projection over the cap only, with a rule adapted to [0, θ0]
            let r = gauss_legendre(80, (0.0, theta0));
            let direct = 2.0 * PI * r.integrate(|t| h(t) * ylm(idx, t, 0.0).re * t.sin());
            assert!((c.get(idx).re - direct).abs() < 1e-13, "l={l}");
            assert_eq!(c.get(SphIndex::new(l, 0).unwrap()).im, 0.0);
        }
        assert!(c.nonzero().iter().all(|(i, _)| i.m() == 0));
    }

    #[test]
    fn funk_application() {
        let mut c = AngularCoeffs::zeros(4);
        for l in 0..=4usize {
            for m in -(l as i64)..=(l as i64) {
                c.set(
                    SphIndex::new(l, m).unwrap(),
                    Complex64::new(1.0 + l as f64, m as f64),
                )
                .unwrap();
            }
        }
        let f = apply_funk(&c);
        let i00 = SphIndex::new(0, 0).unwrap();
        assert!((f.get(i00) - c.get(i00) * (2.0 * PI)).norm() < 1e-15);
        for (idx, _) in f.nonzero() {
            assert_eq!(idx.l() % 2, 0);
        }
        let ff = apply_funk(&f);
        for l in 0..=4usize {
            let idx = SphIndex::new(l, 0).unwrap();
            let e = c.get(idx) * funk_multiplier(l).powi(2);
            assert!((ff.get(idx) - e).norm() < 1e-12);
        }
    }

    #[test]
    fn named_caps() {
        let t0 = 0.5;
        assert_eq!(CapProfile::One.eval(0.2, t0), 1.0);
        assert_eq!(CapProfile::One.eval(0.6, t0), 0.0);
        assert!((CapProfile::Cos2.eval(0.0, t0) - 1.0).abs() < 1e-16);
        assert!(CapProfile::Cos2.eval(t0, t0).abs() < 1e-16);
        assert!((CapProfile::PolyBump.eval(0.25, t0) - 0.5625).abs() < 1e-16);
        let s = CapProfile::Sampled {
            theta: vec![0.0, 0.2, 0.5],
            values: vec![1.0, 0.5, 0.0],
        };
        s.validate().unwrap();
        assert!((s.eval(0.1, t0) - 0.75).abs() < 1e-15);
        assert!((s.eval(0.35, t0) - 0.25).abs() < 1e-15);
        let bad = CapProfile::Sampled {
            theta: vec![0.0, 0.0],
            values: vec![1.0, 1.0],
        };
        assert!(bad.validate().is_err());
    }
}
