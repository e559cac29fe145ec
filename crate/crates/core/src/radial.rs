//! Radial parts of the generalized Zernike functions on the ball and disk.
//!
//! `R_n^{l,α}(ρ) = ρ^l (1-ρ²)^α P_p^{(α, l+1/2)}(2ρ²-1)` with `p = (n-l)/2`,
//! and the disk analogue with Jacobi parameter `|m|` in place of `l + 1/2`.

use serde::{Deserialize, Serialize};

use crate::specfun::{jacobi_unchecked, poch, poch_ratio};
use crate::{Error, Result};

/// Index `(n, l, α)` of a radial function on the 3D ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialIndex3 {
    n: usize,
    l: usize,
    alpha: f64,
}

impl RadialIndex3 {
    pub fn new(n: usize, l: usize, alpha: f64) -> Result<Self> {
        if l > n || (n - l) % 2 != 0 {
            return Err(Error::Index(format!(
                "n - l must be even and non-negative (n={n}, l={l})"
            )));
        }
        check_alpha(alpha)?;
        Ok(Self { n, l, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `p = (n - l)/2`.
    pub fn p(&self) -> usize {
        (self.n - self.l) / 2
    }
}

/// Index `(n, m, α)` of a radial function on the unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialIndex2 {
    n: usize,
    m: i64,
    alpha: f64,
}

impl RadialIndex2 {
    pub fn new(n: usize, m: i64, alpha: f64) -> Result<Self> {
        let am = m.unsigned_abs() as usize;
        if am > n || (n - am) % 2 != 0 {
            return Err(Error::Index(format!(
                "n - |m| must be even and non-negative (n={n}, m={m})"
            )));
        }
        check_alpha(alpha)?;
        Ok(Self { n, m, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn abs_m(&self) -> usize {
        self.m.unsigned_abs() as usize
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn p(&self) -> usize {
        (self.n - self.abs_m()) / 2
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > -1.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("alpha must exceed -1, got {alpha}")))
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if (0.0..=1.0).contains(&rho) {
        Ok(())
    } else {
        Err(Error::Domain(format!("rho must lie in [0, 1], got {rho}")))
    }
}

/// `(1-ρ²)^α` with the factorization `(1-ρ)(1+ρ)` for accuracy near the rim.
pub(crate) fn edge_factor(rho: f64, alpha: f64) -> f64 {
    if alpha == 0.0 {
        return 1.0;
    }
    let s = (1.0 - rho) * (1.0 + rho);
    if s == 0.0 && alpha > 0.0 {
        return 0.0;
    }
    s.powf(alpha)
}

/// Unchecked ball radial function; `n - l` even, `α > -1`, `ρ ∈ [0, 1]`.
pub(crate) fn r3(n: usize, l: usize, alpha: f64, rho: f64) -> f64 {
    if rho == 1.0 && alpha > 0.0 {
        return 0.0;
    }
    let p = (n - l) / 2;
    let jac = jacobi_unchecked(p, alpha, l as f64 + 0.5, 2.0 * rho * rho - 1.0);
    rho.powi(l as i32) * edge_factor(rho, alpha) * jac
}

/// Unchecked disk radial function with `am = |m|`.
pub(crate) fn r2(n: usize, am: usize, alpha: f64, rho: f64) -> f64 {
    if rho == 1.0 && alpha > 0.0 {
        return 0.0;
    }
    let p = (n - am) / 2;
    let jac = jacobi_unchecked(p, alpha, am as f64, 2.0 * rho * rho - 1.0);
    rho.powi(am as i32) * edge_factor(rho, alpha) * jac
}

/// `R_n^{l,α}(ρ)` by direct Jacobi evaluation.
pub fn radial3_direct(idx: RadialIndex3, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(r3(idx.n, idx.l, idx.alpha, rho))
}

/// `²R_n^{m,α}(ρ)` by direct Jacobi evaluation.
pub fn radial2_direct(idx: RadialIndex2, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(r2(idx.n, idx.abs_m(), idx.alpha, rho))
}

pub(crate) fn n3(n: usize, l: usize, alpha: f64) -> f64 {
    let p = ((n - l) / 2) as f64;
    let nf = n as f64;
    poch_ratio(p + 1.0, p + l as f64 + 1.5, alpha) / (2.0 * (nf + alpha + 1.5))
}

pub(crate) fn n2(n: usize, am: usize, alpha: f64) -> f64 {
    let p = ((n - am) / 2) as f64;
    let nf = n as f64;
    poch_ratio(p + 1.0, p + am as f64 + 1.0, alpha) / (2.0 * (nf + alpha + 1.0))
}

/// `N_{nl}^α = ∫₀¹ (R_n^{l,α})² ρ² (1-ρ²)^{-α} dρ`.
pub fn norm3(idx: RadialIndex3) -> f64 {
    n3(idx.n, idx.l, idx.alpha)
}

/// `²N_{nm}^α = ∫₀¹ (²R_n^{m,α})² ρ (1-ρ²)^{-α} dρ`.
pub fn norm2(idx: RadialIndex2) -> f64 {
    n2(idx.n, idx.abs_m(), idx.alpha)
}

/// Which recursion a [`RecursionGrid`] was filled with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridKind {
    /// `I_{nl}^α` on the ball.
    Ball,
    /// `J_{nm}^α` on the disk.
    Disk,
}

/// Triangular table of the recursion quantities `I_{nl}^α(ρ)` or `J_{nm}^α(ρ)`.
///
/// `values[n][l]` is populated for `l ≤ n`, `n - l` even; every other slot is 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecursionGrid {
    kind: GridKind,
    rho: f64,
    alpha: f64,
    nmax: usize,
    values: Vec<Vec<f64>>,
}

impl RecursionGrid {
    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    /// Raw entry; zero outside the valid triangle.
    pub fn get(&self, n: usize, l: usize) -> f64 {
        if n > self.nmax || l > n {
            return 0.0;
        }
        self.values[n][l]
    }

    /// Converts entry `(n, l)` back to the radial function value.
    pub fn radial(&self, n: usize, l: usize) -> Result<f64> {
        if n > self.nmax || l > n || (n - l) % 2 != 0 {
            return Err(Error::Index(format!(
                "no grid entry for (n={n}, l={l}) with nmax={}",
                self.nmax
            )));
        }
        if self.rho == 1.0 && self.alpha > 0.0 {
            return Ok(0.0);
        }
        let k = ((n + l) / 2) as f64;
        let conv = match self.kind {
            GridKind::Ball => poch_ratio(1.5, self.alpha + 1.5, k),
            GridKind::Disk => poch(1.0, k) / poch(self.alpha + 1.0, k),
        };
        Ok(edge_factor(self.rho, self.alpha) * conv * self.values[n][l])
    }
}

fn grid_args(rho: f64, alpha: f64) -> Result<()> {
    check_rho(rho)?;
    check_alpha(alpha)
}

/// Fills `I_{nl}^α(ρ)` for all `n ≤ nmax` row by row.
pub fn recursion_grid3(rho: f64, alpha: f64, nmax: usize) -> Result<RecursionGrid> {
    grid_args(rho, alpha)?;
    let mut v = vec![vec![0.0; nmax + 2]; nmax + 1];
    v[0][0] = 1.0;
    for n in 0..nmax {
        let nf = n as f64;
        let a = (nf + alpha + 1.5) / (nf + 1.0) * rho;
        let b = (nf + 2.0 * alpha + 2.0) / (nf + 1.0);
        let mut l = (n + 1) % 2;
        while l <= n + 1 {
            let lf = l as f64;
            let up = if l < n { v[n][l + 1] } else { 0.0 };
            let down = if l >= 1 { v[n][l - 1] } else { 0.0 };
            let prev = if n >= 1 && l < n { v[n - 1][l] } else { 0.0 };
            v[n + 1][l] = a * ((lf + 1.0) / (lf + 0.5) * up + lf / (lf + 0.5) * down) - b * prev;
            l += 2;
        }
    }
    Ok(RecursionGrid {
        kind: GridKind::Ball,
        rho,
        alpha,
        nmax,
        values: v,
    })
}

/// Fills `J_{nm}^α(ρ)`, `m ≥ 0`, for all `n ≤ nmax` row by row.
pub fn recursion_grid2(rho: f64, alpha: f64, nmax: usize) -> Result<RecursionGrid> {
    grid_args(rho, alpha)?;
    let mut v = vec![vec![0.0; nmax + 2]; nmax + 1];
    v[0][0] = 1.0;
    for n in 0..nmax {
        let nf = n as f64;
        let a = (nf + alpha + 1.0) / (nf + 1.0) * rho;
        let b = (nf + 2.0 * alpha + 1.0) / (nf + 1.0);
        let mut m = (n + 1) % 2;
        while m <= n + 1 {
            let lower = v[n][m.abs_diff(1)];
            let upper = if m < n { v[n][m + 1] } else { 0.0 };
            let prev = if n >= 1 && m < n { v[n - 1][m] } else { 0.0 };
            v[n + 1][m] = a * (lower + upper) - b * prev;
            m += 2;
        }
    }
    Ok(RecursionGrid {
        kind: GridKind::Disk,
        rho,
        alpha,
        nmax,
        values: v,
    })
}

/// `R_n^{l,α}(ρ)` through the ball recursion.
pub fn radial3_via_recursion(idx: RadialIndex3, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    if rho == 1.0 && idx.alpha > 0.0 {
        return Ok(0.0);
    }
    recursion_grid3(rho, idx.alpha, idx.n)?.radial(idx.n, idx.l)
}

/// `²R_n^{m,α}(ρ)` through the disk recursion.
pub fn radial2_via_recursion(idx: RadialIndex2, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    if rho == 1.0 && idx.alpha > 0.0 {
        return Ok(0.0);
    }
    recursion_grid2(rho, idx.alpha, idx.n)?.radial(idx.n, idx.abs_m())
}
