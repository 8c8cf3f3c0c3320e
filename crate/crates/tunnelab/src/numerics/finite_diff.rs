//! Central finite differences with Richardson extrapolation.

use num_complex::Complex64;

use crate::error::{Error, Result};

fn stencil(f: &mut dyn FnMut(f64) -> Complex64, p0: f64, n: usize, h: f64) -> Complex64 {
    match n {
        1 => (f(p0 + h) - f(p0 - h)) / (2.0 * h),
        2 => (f(p0 + h) - 2.0 * f(p0) + f(p0 - h)) / (h * h),
        3 => (f(p0 + 2.0 * h) - 2.0 * f(p0 + h) + 2.0 * f(p0 - h) - f(p0 - 2.0 * h)) / (2.0 * h * h * h),
        4 => {
            (f(p0 + 2.0 * h) - 4.0 * f(p0 + h) + 6.0 * f(p0) - 4.0 * f(p0 - h) + f(p0 - 2.0 * h))
                / (h * h * h * h)
        }
        _ => unreachable!(),
    }
}

/// n-th derivative of f at p0 from second-order central stencils evaluated
/// at steps h and h/2, combined by Richardson extrapolation to fourth order.
pub fn finite_diff(mut f: impl FnMut(f64) -> Complex64, p0: f64, n: usize, h: f64) -> Result<Complex64> {
    if n == 0 {
        let v = f(p0);
        return if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("finite_diff"))
        };
    }
    if n > 4 {
        return Err(Error::UnsupportedOrder(n));
    }
    if !(h > 0.0) {
        return Err(Error::InvalidParameter {
            name: "h",
            reason: format!("must be > 0, got {h}"),
        });
    }
    let d_h = stencil(&mut f, p0, n, h);
    let d_h2 = stencil(&mut f, p0, n, h / 2.0);
    let d = (4.0 * d_h2 - d_h) / 3.0;
    if d.re.is_finite() && d.im.is_finite() {
        Ok(d)
    } else {
        Err(Error::NonFinite("finite_diff"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_derivatives() {
        // f(p) = exp(i alpha p): n-th derivative is (i alpha)^n f
        let alpha = 1.3;
        let p0 = 0.7;
        let f = |p: f64| Complex64::new(0.0, alpha * p).exp();
        for n in 1..=4 {
            let d = finite_diff(f, p0, n, 1e-2).unwrap();
            let expect = Complex64::new(0.0, alpha).powi(n as i32) * f(p0);
            let tol = if n <= 2 { 1e-8 } else { 1e-5 };
            assert!(
                (d - expect).norm() < tol,
                "n={n}: {d} vs {expect}"
            );
        }
    }

    #[test]
    fn constant_has_zero_derivative() {
        let f = |_: f64| Complex64::new(2.5, -1.0);
        for n in 1..=4 {
            let d = finite_diff(f, 0.0, n, 1e-3).unwrap();
            assert!(d.norm() < 1e-6);
        }
    }

    #[test]
    fn order_five_rejected() {
        let r = finite_diff(|_| Complex64::new(0.0, 0.0), 0.0, 5, 1e-3);
        assert!(r.is_err());
    }

    #[test]
    fn nan_propagates_as_error() {
        let r = finite_diff(|_| Complex64::new(f64::NAN, 0.0), 0.0, 1, 1e-3);
        assert!(r.is_err());
    }
}
