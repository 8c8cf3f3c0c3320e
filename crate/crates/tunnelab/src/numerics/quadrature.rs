//! Composite Gauss-Legendre quadrature, in plain and log-scaled flavours.

use num_complex::Complex64;

use super::scaled::ScaledAmplitude;
use crate::error::{Error, Result};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi-type initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // evaluate P_n and P_n' by the recurrence
            let (mut p0, mut p1) = (1.0_f64, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let dpn = n as f64 * (x * pn - p0) / (x * x - 1.0);
            let dx = pn / dpn;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0_f64, x);
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        let pn = if n == 1 { x } else { p1 };
        let dpn = n as f64 * (x * pn - p0) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dpn * dpn);
        out.push((-x, w)); // negate so nodes come out ascending
    }
    out
}

/// Composite Gauss-Legendre integral of f over [a, b] with `panels` equal
/// panels and `n` nodes per panel.
pub fn quadrature(f: &mut dyn FnMut(f64) -> Complex64, a: f64, b: f64, panels: usize, n: usize) -> Complex64 {
    let rule = gauss_legendre(n);
    let w_panel = (b - a) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * w_panel;
        let mid = lo + 0.5 * w_panel;
        let half = 0.5 * w_panel;
        for &(x, w) in &rule {
            acc += f(mid + half * x) * (w * half);
        }
    }
    acc
}

/// Like `quadrature`, but refines (doubles the panel count) once and reports
/// the change as an error estimate; errs when the change exceeds `tol`
/// relative to the magnitude of the result.
pub fn quadrature_checked(
    f: &mut dyn FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    panels: usize,
    n: usize,
    tol: f64,
) -> Result<(Complex64, f64)> {
    let coarse = quadrature(f, a, b, panels, n);
    let fine = quadrature(f, a, b, panels * 2, n);
    let change = (fine - coarse).norm();
    let scale = fine.norm().max(f64::MIN_POSITIVE);
    if change > tol * scale {
        return Err(Error::QuadratureNotConverged {
            change: change / scale,
            tol,
        });
    }
    Ok((fine, change / scale))
}

/// Composite Gauss-Legendre integral of a ScaledAmplitude-valued integrand.
/// All node values are collected first; the largest log magnitude is divided
/// out before summation, so integrands spanning hundreds of orders of
/// magnitude stay in range. Returns (sum, log_scale): the integral equals
/// sum * exp(log_scale).
pub fn quadrature_scaled(
    f: &mut dyn FnMut(f64) -> ScaledAmplitude,
    a: f64,
    b: f64,
    panels: usize,
    n: usize,
) -> (Complex64, f64) {
    let rule = gauss_legendre(n);
    let w_panel = (b - a) / panels as f64;
    let mut nodes: Vec<(ScaledAmplitude, f64)> = Vec::with_capacity(panels * n);
    for p in 0..panels {
        let lo = a + p as f64 * w_panel;
        let mid = lo + 0.5 * w_panel;
        let half = 0.5 * w_panel;
        for &(x, w) in &rule {
            nodes.push((f(mid + half * x), w * half));
        }
    }
    let log_scale = nodes
        .iter()
        .map(|(v, _)| v.log_mag())
        .fold(f64::NEG_INFINITY, f64::max);
    if log_scale == f64::NEG_INFINITY {
        return (Complex64::new(0.0, 0.0), 0.0);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (v, w) in nodes {
        if v.is_zero() {
            continue;
        }
        let r = (v.log_mag() - log_scale).exp();
        acc += Complex64::new(r * v.phase().cos(), r * v.phase().sin()) * w;
    }
    (acc, log_scale)
}
