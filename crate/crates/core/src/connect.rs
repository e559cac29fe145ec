//! Coefficient machinery: the `l → l+2` connection coefficients, and the
//! rescale / multiply-by-`ρ^{2r}` / multiply-by-`(1-ρ²)^δ` pipeline on the
//! `l = 0` family.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::radial::{n3, r3};
use crate::specfun::{binom, poch};
use crate::{Error, Result};

/// Dense matrix type returned by the matrix builders.
pub type Matrix = DMatrix<f64>;

/// Tail estimate above which a table is reported as under-resolved.
pub const TAIL_WARN: f64 = 1e-8;

/// Raw coefficients `b_{l+2s}^{l,α} = ∫ B R_{l+2s}^{l,α} ρ² (1-ρ²)^{-α} dρ`
/// of a radial profile, `s = 0..=smax`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTable {
    l: usize,
    alpha: f64,
    coeffs: Vec<f64>,
    tail_energy: f64,
}

impl ExpansionTable {
    /// Table whose tail estimate is `|c_last| / max |c|` over the normalized
    /// coefficients `c = b/N`.
    pub fn new(l: usize, alpha: f64, coeffs: Vec<f64>) -> Result<Self> {
        let mut t = Self::exact(l, alpha, coeffs)?;
        let c = t.normalized();
        t.tail_energy = relative_tail(&c, &[]);
        Ok(t)
    }

    /// Table known to hold the complete (finite) expansion; tail estimate 0.
    pub fn exact(l: usize, alpha: f64, coeffs: Vec<f64>) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::Domain(format!("alpha must exceed -1, got {alpha}")));
        }
        if coeffs.is_empty() {
            return Err(Error::Truncation(
                "an expansion table needs at least one coefficient".into(),
            ));
        }
        Ok(Self {
            l,
            alpha,
            coeffs,
            tail_energy: 0.0,
        })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn smax(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Raw `b` coefficients.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Relative size of what the table leaves out.
    pub fn tail_energy(&self) -> f64 {
        self.tail_energy
    }

    /// `b_{l+2s} / N_{l+2s,l}^α`.
    pub fn normalized(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(s, b)| b / n3(self.l + 2 * s, self.l, self.alpha))
            .collect()
    }

    /// `Σ_s (b/N) R_{l+2s}^{l,α}(ρ)`.
    pub fn reconstruct(&self, rho: f64) -> f64 {
        self.normalized()
            .iter()
            .enumerate()
            .map(|(s, c)| c * r3(self.l + 2 * s, self.l, self.alpha, rho))
            .sum()
    }

    /// Keeps `s ≤ smax`; the tail estimate becomes the largest discarded
    /// normalized coefficient relative to the largest one overall.
    pub fn truncated(&self, smax: usize) -> ExpansionTable {
        if smax >= self.smax() {
            return self.clone();
        }
        let c = self.normalized();
        let tail = relative_tail(&c[..=smax], &c[smax + 1..]).max(self.tail_energy);
        ExpansionTable {
            l: self.l,
            alpha: self.alpha,
            coeffs: self.coeffs[..=smax].to_vec(),
            tail_energy: tail,
        }
    }

    /// Appends zero coefficients up to `smax`; only meaningful for tables
    /// holding a complete expansion.
    pub fn padded(&self, smax: usize) -> ExpansionTable {
        let mut out = self.clone();
        if smax > self.smax() {
            out.coeffs.resize(smax + 1, 0.0);
        }
        out
    }

    /// Warning text when the tail estimate exceeds [`TAIL_WARN`].
    pub fn tail_warning(&self) -> Option<String> {
        (self.tail_energy > TAIL_WARN).then(|| {
            format!(
                "expansion at l={} truncated at smax={} has tail estimate {:.3e}",
                self.l,
                self.smax(),
                self.tail_energy
            )
        })
    }
}

/// `max|dropped|/max|all|`, or `|kept_last|/max|kept|` when nothing was dropped.
fn relative_tail(kept: &[f64], dropped: &[f64]) -> f64 {
    let top = kept
        .iter()
        .chain(dropped)
        .fold(0.0f64, |m, v| m.max(v.abs()));
    if top == 0.0 {
        return 0.0;
    }
    if dropped.is_empty() {
        kept.last().map_or(0.0, |v| v.abs() / top)
    } else {
        dropped.iter().fold(0.0f64, |m, v| m.max(v.abs())) / top
    }
}

/// Coefficients `C_{ps}`, `s = 0..=p+1`, of
/// `R_{l+2+2p}^{l+2,α} = Σ_s C_{ps} R_{l+2s}^{l,α}` (or the disk analogue).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectionRow {
    p: usize,
    l: usize,
    alpha: f64,
    values: Vec<f64>,
}

impl ConnectionRow {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > -1.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("alpha must exceed -1, got {alpha}")))
    }
}

fn alt(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Ball connection row via the backward `K_{ps}` recursion.
pub fn connection_row(p: usize, l: usize, alpha: f64) -> Result<ConnectionRow> {
    check_alpha(alpha)?;
    let (pf, lf) = (p as f64, l as f64);
    let a = alpha + lf + 1.5;
    let mut values = vec![0.0; p + 2];
    let mut k = a / ((a + pf) * (a + pf + 1.0));
    for s in (0..=p).rev() {
        let sf = s as f64;
        values[s] = alt(p - s) * (lf + 1.5) * (a + 2.0 * sf) / a * k;
        if s > 0 {
            k *= (alpha + sf) / (alpha + lf + sf + 0.5);
        }
    }
    values[p + 1] = (pf + 1.0) / (a + pf + 1.0);
    Ok(ConnectionRow {
        p,
        l,
        alpha,
        values,
    })
}

/// Ball connection row from the closed Pochhammer form.
pub fn connection_row_direct(p: usize, l: usize, alpha: f64) -> Result<ConnectionRow> {
    check_alpha(alpha)?;
    let (pf, lf) = (p as f64, l as f64);
    let mut values = vec![0.0; p + 2];
    for (s, v) in values.iter_mut().enumerate().take(p + 1) {
        let sf = s as f64;
        *v = alt(p - s)
            * (lf + 1.5)
            * poch(alpha + 1.0, pf)
            * poch(alpha + lf + 1.5, sf)
            * poch(alpha + lf + 2.5, 2.0 * sf)
            / (poch(alpha + lf + 2.5, pf + 1.0)
                * poch(alpha + 1.0, sf)
                * poch(alpha + lf + 1.5, 2.0 * sf));
    }
    values[p + 1] = (pf + 1.0) / (alpha + lf + pf + 2.5);
    Ok(ConnectionRow {
        p,
        l,
        alpha,
        values,
    })
}

/// Disk connection row via the analogous backward recursion.
pub fn connection_row_2d(p: usize, l: usize, alpha: f64) -> Result<ConnectionRow> {
    check_alpha(alpha)?;
    let (pf, lf) = (p as f64, l as f64);
    let a = alpha + lf + 1.0;
    let mut values = vec![0.0; p + 2];
    let mut k = a / ((a + pf) * (a + pf + 1.0));
    for s in (0..=p).rev() {
        let sf = s as f64;
        values[s] = alt(p - s) * (lf + 1.0) * (a + 2.0 * sf) / a * k;
        if s > 0 {
            k *= (alpha + sf) / (alpha + lf + sf);
        }
    }
    values[p + 1] = (pf + 1.0) / (a + pf + 1.0);
    Ok(ConnectionRow {
        p,
        l,
        alpha,
        values,
    })
}

/// Disk connection row from the closed Pochhammer form.
pub fn connection_row_2d_direct(p: usize, l: usize, alpha: f64) -> Result<ConnectionRow> {
    check_alpha(alpha)?;
    let (pf, lf) = (p as f64, l as f64);
    let mut values = vec![0.0; p + 2];
    for (s, v) in values.iter_mut().enumerate().take(p + 1) {
        let sf = s as f64;
        *v = alt(p - s) * (lf + 1.0) * poch(alpha + 1.0, pf) * poch(alpha + lf + 1.0, sf)
            / (poch(alpha + lf + 2.0, pf + 1.0) * poch(alpha + 1.0, sf))
            * (alpha + lf + 2.0 * sf + 1.0)
            / (alpha + lf + 1.0);
    }
    values[p + 1] = (pf + 1.0) / (alpha + lf + pf + 2.0);
    Ok(ConnectionRow {
        p,
        l,
        alpha,
        values,
    })
}

/// Coefficients at order `l+2` from those at order `l`:
/// `b_{l+2+2p}^{l+2} = Σ_{s ≤ p+1} C_{ps} b_{l+2s}^{l}`. One order is consumed.
pub fn lift_b_coeffs(table: &ExpansionTable) -> Result<ExpansionTable> {
    let smax = table.smax();
    if smax == 0 {
        return Err(Error::Truncation(
            "lifting needs at least two coefficients (smax >= 1)".into(),
        ));
    }
    let mut out = Vec::with_capacity(smax);
    for p in 0..smax {
        let row = connection_row(p, table.l, table.alpha)?;
        out.push(
            row.values
                .iter()
                .zip(&table.coeffs)
                .map(|(c, b)| c * b)
                .sum(),
        );
    }
    let mut t = ExpansionTable::new(table.l + 2, table.alpha, out)?;
    t.tail_energy = t.tail_energy.max(table.tail_energy);
    Ok(t)
}

/// `c_k(ε) = Σ_{l ≥ k} (R_{2l}^{2k,0}(ε) - R_{2l}^{2k+2,0}(ε)) c_l`, the
/// `R_{2k}^{0,0}` coefficients of `C(ερ)` given those of `C(ρ)`.
pub fn rescale_coeffs(c: &[f64], epsilon: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::Domain(format!(
            "epsilon must lie in [0, 1], got {epsilon}"
        )));
    }
    let len = c.len();
    let mut out = vec![0.0; len];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (l, &cl) in c.iter().enumerate().skip(k) {
            if cl == 0.0 {
                continue;
            }
            let hi = if k < l {
                r3(2 * l, 2 * k + 2, 0.0, epsilon)
            } else {
                0.0
            };
            acc += (r3(2 * l, 2 * k, 0.0, epsilon) - hi) * cl;
        }
        *slot = acc;
    }
    Ok(out)
}

/// `C_{il}^r` in `ρ^r R_{2i}^{0,0} = Σ_l C_{il}^r R_{r+2l}^{r,0}`.
fn rho_power_coeff(i: usize, l: usize, r: usize) -> f64 {
    if l > i || i - l > r {
        return 0.0;
    }
    let (fi, fl, fr) = (i as f64, l as f64, r as f64);
    (fr + 2.0 * fl + 1.5) / (fi + fr + fl + 1.5) * binom(fr, i - l) * binom(fi + fl + 0.5, l)
        / binom(fi + fr + fl + 0.5, i)
}

fn rho_power_coeff_2d(i: usize, l: usize, r: usize) -> f64 {
    if l > i || i - l > r {
        return 0.0;
    }
    let (fi, fl, fr) = (i as f64, l as f64, r as f64);
    (fr + 2.0 * fl + 1.0) / (fi + fr + fl + 1.0) * binom(fr, i - l) * binom(fi + fl, l)
        / binom(fr + fi + fl, i)
}

fn moment_generic(
    r: usize,
    kmax: usize,
    coeff: fn(usize, usize, usize) -> f64,
    shift: f64,
) -> DMatrix<f64> {
    let ncol = kmax + r + 1;
    let mut e = DMatrix::zeros(kmax + 1, ncol);
    for k in 0..=kmax {
        for j in k.saturating_sub(r)..ncol {
            if j > k + r {
                break;
            }
            let lo = k.saturating_sub(r).max(j.saturating_sub(r));
            let hi = k.min(j);
            let mut acc = 0.0;
            for l in lo..=hi {
                acc += (2.0 * j as f64 + shift) / (r as f64 + 2.0 * l as f64 + shift)
                    * coeff(k, l, r)
                    * coeff(j, l, r);
            }
            e[(k, j)] = acc;
        }
    }
    e
}

/// `E_{kj}^r` with `ρ^{2r} R_{2k}^{0,0} = Σ_j E_{kj}^r R_{2j}^{0,0}`;
/// rows `k ≤ kmax`, columns `j ≤ kmax + r`.
pub fn moment_matrix(r: usize, kmax: usize) -> DMatrix<f64> {
    moment_generic(r, kmax, rho_power_coeff, 1.5)
}

/// Disk analogue of [`moment_matrix`].
pub fn moment_matrix_2d(r: usize, kmax: usize) -> DMatrix<f64> {
    moment_generic(r, kmax, rho_power_coeff_2d, 1.0)
}

/// `F_{ji}^δ` with `R_{2j}^{0,0}(1-ρ²)^δ = Σ_i F_{ji}^δ R_{2i}^{0,δ}`;
/// square, indices `≤ jmax`.
pub fn weight_matrix(delta: usize, jmax: usize) -> DMatrix<f64> {
    let df = delta as f64;
    let mut f = DMatrix::zeros(jmax + 1, jmax + 1);
    for j in 0..=jmax {
        for i in j.saturating_sub(delta)..=j {
            let (fi, fj) = (i as f64, j as f64);
            f[(j, i)] = alt(j - i) * (df + 2.0 * fi + 1.5) / (df + fi + fj + 1.5)
                * binom(df, j - i)
                * binom(fi + fj + 0.5, j)
                / binom(df + fi + fj + 0.5, j);
        }
    }
    f
}

/// Disk analogue of [`weight_matrix`].
pub fn weight_matrix_2d(delta: usize, jmax: usize) -> DMatrix<f64> {
    let df = delta as f64;
    let mut f = DMatrix::zeros(jmax + 1, jmax + 1);
    for j in 0..=jmax {
        for i in j.saturating_sub(delta)..=j {
            let (fi, fj) = (i as f64, j as f64);
            f[(j, i)] = alt(j - i) * (df + 2.0 * fi + 1.0) / (df + fi + fj + 1.0)
                * binom(df, j - i)
                * binom(fi + fj, j)
                / binom(df + fi + fj, j);
        }
    }
    f
}

/// `D_{ki}^{βδ} = Σ_j E_{kj}^{β/2} F_{ji}^δ`, realizing
/// `ρ^β R_{2k}^{0,0}(1-ρ²)^δ = Σ_i D_{ki} R_{2i}^{0,δ}`.
pub fn composite_matrix(beta: usize, delta: usize, kmax: usize) -> Result<DMatrix<f64>> {
    if beta % 2 != 0 {
        return Err(Error::Domain(format!("beta must be even, got {beta}")));
    }
    let r = beta / 2;
    Ok(moment_matrix(r, kmax) * weight_matrix(delta, kmax + r))
}

/// Raw coefficients of `B(ρ) = ρ^β C(ερ) (1-ρ²)^δ` against `R_{2i}^{0,δ}`,
/// given the `R_{2l}^{0,0}` coefficients `c` of `C`.
pub fn compose_pipeline(
    c: &[f64],
    beta: usize,
    delta: usize,
    epsilon: f64,
) -> Result<ExpansionTable> {
    if c.is_empty() {
        return Err(Error::Truncation("empty coefficient sequence".into()));
    }
    let scaled = rescale_coeffs(c, epsilon)?;
    let d = composite_matrix(beta, delta, c.len() - 1)?;
    let df = delta as f64;
    let out: Vec<f64> = (0..d.ncols())
        .map(|i| {
            let v: f64 = scaled
                .iter()
                .enumerate()
                .map(|(k, ck)| ck * d[(k, i)])
                .sum();
            v * n3(2 * i, 0, df)
        })
        .collect();
    ExpansionTable::exact(0, df, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::r2;
    use crate::specfun::gauss_legendre;

    #[test]
    fn row_examples() {
        let r = connection_row(0, 0, 0.0).unwrap();
        assert!((r.values()[1] - 0.4).abs() < 1e-16);
        assert!((r.values()[0] - 0.6).abs() < 1e-15);
        let r = connection_row_2d(0, 0, 0.0).unwrap();
        assert!((r.values()[1] - 0.5).abs() < 1e-16);
        assert!((r.values()[0] - 0.5).abs() < 1e-16);
    }

    #[test]
    fn row_matches_projection() {
        // C_ps = ∫ R^{l+2}_{l+2+2p} R^l_{l+2s} ρ²(1-ρ²)^{-α} dρ / N
        let (p, l, alpha) = (3usize, 2usize, 1.0);
        let row = connection_row(p, l, alpha).unwrap();
        let gl = gauss_legendre(64, (0.0, 1.0));
        for s in 0..=p + 1 {
            let q = gl.integrate(|r| {
                r3(l + 2 + 2 * p, l + 2, alpha, r) * r3(l + 2 * s, l, alpha, r) * r * r
                    / (1.0 - r * r)
            }) / n3(l + 2 * s, l, alpha);
            assert!((row.values()[s] - q).abs() < 1e-11, "s={s}");
        }
        // and nothing beyond s = p+1
        let q = gl.integrate(|r| {
            r3(l + 2 + 2 * p, l + 2, alpha, r) * r3(l + 2 * (p + 2), l, alpha, r) * r * r
                / (1.0 - r * r)
        });
        assert!(q.abs() < 1e-13);
    }

    #[test]
    fn row_structure() {
        for p in 0..=40 {
            for l in 0..=40 {
                for &alpha in &[-0.5, 0.0, 0.5, 2.0, 10.0] {
                    let row = connection_row(p, l, alpha).unwrap();
                    let v = row.values();
                    let last = (p as f64 + 1.0) / (alpha + l as f64 + p as f64 + 2.5);
                    assert_eq!(v[p + 1], last);
                    for (s, x) in v.iter().enumerate().take(p + 1) {
                        assert!(x.is_finite() && x.abs() < 2.0);
                        if alpha > -1.0 && *x != 0.0 {
                            assert_eq!(x.signum(), alt(p - s));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stable_and_direct_agree() {
        for p in 0..=15 {
            for l in 0..=10 {
                for &alpha in &[0.0, 0.5, 2.0, 7.0] {
                    let a = connection_row(p, l, alpha).unwrap();
                    let b = connection_row_direct(p, l, alpha).unwrap();
                    let a2 = connection_row_2d(p, l, alpha).unwrap();
                    let b2 = connection_row_2d_direct(p, l, alpha).unwrap();
                    for s in 0..=p + 1 {
                        assert!((a.values()[s] - b.values()[s]).abs() < 1e-10);
                        assert!((a2.values()[s] - b2.values()[s]).abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn reconstruction_pointwise() {
        for &alpha in &[0.0, 0.5, 2.0] {
            for p in 0..=6 {
                for l in 0..=6 {
                    let row = connection_row(p, l, alpha).unwrap();
                    let row2 = connection_row_2d(p, l, alpha).unwrap();
                    for i in 0..=20 {
                        let rho = i as f64 / 20.0;
                        let lhs = r3(l + 2 + 2 * p, l + 2, alpha, rho);
                        let rhs: f64 = (0..=p + 1)
                            .map(|s| row.values()[s] * r3(l + 2 * s, l, alpha, rho))
                            .sum();
                        assert!((lhs - rhs).abs() < 1e-11);
                        let lhs = r2(l + 2 + 2 * p, l + 2, alpha, rho);
                        let rhs: f64 = (0..=p + 1)
                            .map(|s| row2.values()[s] * r2(l + 2 * s, l, alpha, rho))
                            .sum();
                        assert!((lhs - rhs).abs() < 1e-11);
                    }
                }
            }
        }
    }

    #[test]
    fn lift_examples() {
        // basis element: b_2 = N at l = 0, all others zero
        let alpha = 1.0;
        let mut b = vec![0.0; 5];
        b[1] = n3(2, 0, alpha);
        let t = ExpansionTable::new(0, alpha, b.clone()).unwrap();
        let lifted = lift_b_coeffs(&t).unwrap();
        assert_eq!(lifted.smax(), 3);
        for p in 0..4 {
            let c = connection_row(p, 0, alpha).unwrap().values()[1] * b[1];
            assert_eq!(lifted.coeffs()[p], c);
        }
        assert!(lift_b_coeffs(&ExpansionTable::new(0, 0.0, vec![1.0]).unwrap()).is_err());
    }

    fn quad_b(l: usize, alpha: f64, smax: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let gl = gauss_legendre(80, (0.0, 1.0));
        (0..=smax)
            .map(|s| {
                gl.integrate(|r| {
                    f(r) * r3(l + 2 * s, l, alpha, r) * r * r / (1.0 - r * r).powf(alpha)
                })
            })
            .collect()
    }

    #[test]
    fn two_lifts_match_quadrature() {
        let alpha = 2.0;
        let f = |r: f64| r.powi(4) * (1.0 - r * r).powi(2) * (1.0 + r * r);
        let b0 = quad_b(0, alpha, 10, f);
        let t0 = ExpansionTable::new(0, alpha, b0).unwrap();
        let t4 = lift_b_coeffs(&lift_b_coeffs(&t0).unwrap()).unwrap();
        let direct = quad_b(4, alpha, t4.smax(), f);
        for (a, b) in t4.coeffs().iter().zip(&direct) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn rescale_examples() {
        let c = vec![0.3, -1.2, 0.5, 2.0];
        assert_eq!(
            rescale_coeffs(&c, 1.0)
                .unwrap()
                .iter()
                .zip(&c)
                .filter(|(a, b)| (*a - *b).abs() > 1e-14)
                .count(),
            0
        );
        let z = rescale_coeffs(&c, 0.0).unwrap();
        // C(0·ρ) is the constant C(0)
        let c0: f64 = c
            .iter()
            .enumerate()
            .map(|(l, cl)| cl * r3(2 * l, 0, 0.0, 0.0))
            .sum();
        assert!((z[0] - c0).abs() < 1e-14 && z[1..].iter().all(|v| v.abs() < 1e-14));
        // (1-ρ²)² = Σ c_k R_{2k}^{0,0}, coefficients by quadrature
        let gl = gauss_legendre(40, (0.0, 1.0));
        let c: Vec<f64> = (0..3)
            .map(|k| {
                (4.0 * k as f64 + 3.0)
                    * gl.integrate(|r| (1.0 - r * r).powi(2) * r3(2 * k, 0, 0.0, r) * r * r)
            })
            .collect();
        let ce = rescale_coeffs(&c, 0.6).unwrap();
        for i in 0..=100 {
            let rho = i as f64 / 100.0;
            let v: f64 = ce
                .iter()
                .enumerate()
                .map(|(k, ck)| ck * r3(2 * k, 0, 0.0, rho))
                .sum();
            assert!((v - (1.0 - 0.36 * rho * rho).powi(2)).abs() < 1e-10);
        }
        assert!(rescale_coeffs(&c, 1.5).is_err());
    }

    #[test]
    fn moment_matrix_examples() {
        let e = moment_matrix(0, 6);
        assert_eq!(e, DMatrix::identity(7, 7));
        let e = moment_matrix(2, 8);
        for k in 0..=8usize {
            for j in 0..e.ncols() {
                if k.abs_diff(j) > 2 {
                    assert_eq!(e[(k, j)], 0.0);
                }
            }
        }
        assert!((rho_power_coeff(1, 1, 1) - 5.0 / 7.0).abs() < 1e-15);
        assert!((rho_power_coeff(1, 0, 1) - 2.0 / 7.0).abs() < 1e-15);
        let e = moment_matrix(1, 5);
        let gl = gauss_legendre(30, (0.0, 1.0));
        for k in 0..=5 {
            for j in 0..e.ncols() {
                let jf = j as f64;
                let q = 2.0
                    * (2.0 * jf + 1.5)
                    * gl.integrate(|r| r * r * r3(2 * k, 0, 0.0, r) * r3(2 * j, 0, 0.0, r) * r * r);
                assert!((e[(k, j)] - q).abs() < 1e-11, "{k} {j}");
            }
        }
    }

    #[test]
    fn disk_moment_and_weight_pointwise() {
        for r in 0..=3 {
            let e = moment_matrix_2d(r, 6);
            for k in 0..=6usize {
                for j in 0..e.ncols() {
                    if k.abs_diff(j) > r {
                        assert_eq!(e[(k, j)], 0.0);
                    }
                }
                for i in 0..=20 {
                    let rho = i as f64 / 20.0;
                    let lhs = rho.powi(2 * r as i32) * r2(2 * k, 0, 0.0, rho);
                    let rhs: f64 = (0..e.ncols())
                        .map(|j| e[(k, j)] * r2(2 * j, 0, 0.0, rho))
                        .sum();
                    assert!((lhs - rhs).abs() < 1e-11);
                }
            }
        }
        for delta in 0..=3 {
            let f = weight_matrix_2d(delta, 6);
            for j in 0..=6 {
                for i in 0..=20 {
                    let rho = i as f64 / 20.0;
                    let lhs = r2(2 * j, 0, 0.0, rho) * (1.0 - rho * rho).powi(delta as i32);
                    let rhs: f64 = (0..=6)
                        .map(|ii| f[(j, ii)] * r2(2 * ii, 0, delta as f64, rho))
                        .sum();
                    assert!((lhs - rhs).abs() < 1e-11);
                }
            }
        }
        assert_eq!(moment_matrix_2d(0, 4), DMatrix::identity(5, 5));
        assert_eq!(weight_matrix_2d(0, 4), DMatrix::identity(5, 5));
    }

    #[test]
    fn weight_matrix_examples() {
        assert_eq!(weight_matrix(0, 5), DMatrix::identity(6, 6));
        let f = weight_matrix(2, 6);
        for j in 0..=6usize {
            for i in 0..=6usize {
                if i + 2 < j || i > j {
                    assert_eq!(f[(j, i)], 0.0);
                }
            }
            for k in 0..=50 {
                let rho = k as f64 / 50.0;
                let lhs = r3(2 * j, 0, 0.0, rho) * (1.0 - rho * rho).powi(2);
                let rhs: f64 = (0..=6).map(|i| f[(j, i)] * r3(2 * i, 0, 2.0, rho)).sum();
                assert!((lhs - rhs).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn pipeline_examples() {
        let c = vec![0.4, -0.1, 0.25];
        let t = compose_pipeline(&c, 0, 0, 1.0).unwrap();
        for (a, b) in t.normalized().iter().zip(&c) {
            assert!((a - b).abs() < 1e-14);
        }
        // C = (1-ρ²)², β=2, δ=1, ε=0.5
        let gl = gauss_legendre(40, (0.0, 1.0));
        let c: Vec<f64> = (0..3)
            .map(|k| {
                (4.0 * k as f64 + 3.0)
                    * gl.integrate(|r| (1.0 - r * r).powi(2) * r3(2 * k, 0, 0.0, r) * r * r)
            })
            .collect();
        let t = compose_pipeline(&c, 2, 1, 0.5).unwrap();
        assert_eq!(t.l(), 0);
        assert_eq!(t.alpha(), 1.0);
        for i in 0..=100 {
            let rho = i as f64 / 100.0;
            let e = rho * rho * (1.0 - 0.25 * rho * rho).powi(2) * (1.0 - rho * rho);
            assert!((t.reconstruct(rho) - e).abs() < 1e-9);
        }
        assert!(compose_pipeline(&c, 3, 1, 0.5).is_err());
    }

    #[test]
    fn truncation_reporting() {
        let t = ExpansionTable::new(0, 0.0, vec![1.0 / 3.0, 1e-3 / 7.0, 1e-9 / 11.0]).unwrap();
        assert!((t.tail_energy() - 1e-9).abs() < 1e-20);
        let tt = t.truncated(1);
        assert!((tt.tail_energy() - 1e-9).abs() < 1e-20);
        assert!(tt.tail_warning().is_none());
        let tt = t.truncated(0);
        assert!((tt.tail_energy() - 1e-3).abs() < 1e-15);
        assert!(tt.tail_warning().is_some());
    }

    proptest::proptest! {
        #[test]
        fn lift_is_linear(
            a in proptest::collection::vec(-1.0f64..1.0, 6),
            b in proptest::collection::vec(-1.0f64..1.0, 6),
            c in proptest::collection::vec(-1.0f64..1.0, 6),
            x in -2.0f64..2.0, y in -2.0f64..2.0, z in -2.0f64..2.0,
            alpha in 0.0f64..3.0,
        ) {
            let mix: Vec<f64> = (0..6).map(|i| x * a[i] + y * b[i] + z * c[i]).collect();
            let lift = |v: Vec<f64>| lift_b_coeffs(&ExpansionTable::new(2, alpha, v).unwrap()).unwrap();
            let (la, lb, lc, lm) = (lift(a), lift(b), lift(c), lift(mix));
            for i in 0..5 {
                let e = x * la.coeffs()[i] + y * lb.coeffs()[i] + z * lc.coeffs()[i];
                proptest::prop_assert!((lm.coeffs()[i] - e).abs() < 1e-12);
            }
        }
    }
}
