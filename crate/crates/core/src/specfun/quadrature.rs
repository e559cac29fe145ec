//! Gaussian quadrature rules used by the integral checks.

use nalgebra::{DMatrix, SymmetricEigen};

use super::ln_gamma;
use crate::{Error, Result};

/// Nodes and positive weights on a finite interval.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    interval: (f64, f64),
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i f(x_i)`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// The same rule affinely moved to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> QuadratureRule {
        let (lo, hi) = self.interval;
        let s = (b - a) / (hi - lo);
        QuadratureRule {
            nodes: self.nodes.iter().map(|&x| a + (x - lo) * s).collect(),
            weights: self.weights.iter().map(|&w| w * s).collect(),
            interval: (a, b),
        }
    }
}

/// Gauss–Legendre rule with `npts` nodes on `interval`.
///
/// # Panics
/// If `npts == 0`.
pub fn gauss_legendre(npts: usize, interval: (f64, f64)) -> QuadratureRule {
    assert!(npts >= 1, "a quadrature rule needs at least one node");
    let n = npts;
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let rule = QuadratureRule {
        nodes,
        weights,
        interval: (-1.0, 1.0),
    };
    if interval == (-1.0, 1.0) {
        rule
    } else {
        rule.mapped(interval.0, interval.1)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let (p, pm1) = if n == 0 { (1.0, 0.0) } else { (p1, p0) };
    let d = nf * (x * p - pm1) / (x * x - 1.0);
    (p, d)
}

/// Gauss–Jacobi rule on `[-1, 1]` for the weight `(1-x)^a (1+x)^b`, built
/// from the Jacobi matrix eigenproblem.
pub fn gauss_jacobi(npts: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if npts == 0 {
        return Err(Error::Domain(
            "a quadrature rule needs at least one node".into(),
        ));
    }
    if !(a > -1.0) || !(b > -1.0) {
        return Err(Error::Domain(format!(
            "Jacobi weight exponents must exceed -1 (a={a}, b={b})"
        )));
    }
    let n = npts;
    let ab = a + b;
    let mut jm = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let diag = if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            let c = 2.0 * kf + ab;
            (b * b - a * a) / (c * (c + 2.0))
        };
        jm[(k, k)] = diag;
        if k + 1 < n {
            let j = kf + 1.0;
            let c = 2.0 * j + ab;
            let num = 4.0 * j * (j + a) * (j + b) * (j + ab);
            let den = c * c * (c + 1.0) * (c - 1.0);
            let off = (num / den).sqrt();
            jm[(k, k + 1)] = off;
            jm[(k + 1, k)] = off;
        }
    }
    let mu0 = ((ab + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
        - ln_gamma(ab + 2.0))
    .exp();
    let eig = SymmetricEigen::new(jm);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    Ok(QuadratureRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        interval: (-1.0, 1.0),
    })
}
