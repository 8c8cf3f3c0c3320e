//! Measurement utilities on envelopes: peak location and width,
//! advancement extraction, superoscillation-band detection, shape
//! comparison, and the power-law fit used for pointer convergence studies.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::envelope::SampledEnvelope;
use crate::numerics::grid::Grid1D;

/// Location and size of the single interior maximum of |g|.
#[derive(Debug, Clone, Copy)]
pub struct PeakReport {
    pub location: f64,
    /// Modulus at the refined peak, relative to the envelope scale.
    pub height: f64,
    pub fwhm: f64,
    /// Deviation of the fitted parabola from log|g|^2 two samples away;
    /// large values flag a non-Gaussian or under-resolved peak.
    pub residual: f64,
}

/// Peak of |g| refined by a 3-point parabolic fit on log|g|^2 (exact for
/// Gaussian envelopes). Plateau maxima resolve to the leftmost grid point.
pub fn peak(g: &SampledEnvelope) -> Result<PeakReport> {
    let grid = g.grid();
    let n = grid.count();
    let mods: Vec<f64> = g.values().iter().map(|v| v.norm()).collect();
    let (mut imax, mut vmax) = (0usize, f64::NEG_INFINITY);
    for (i, &m) in mods.iter().enumerate() {
        if m > vmax {
            imax = i;
            vmax = m;
        }
    }
    if vmax <= 0.0 || !vmax.is_finite() {
        return Err(Error::NoInteriorPeak);
    }
    if imax == 0 || imax == n - 1 {
        return Err(Error::NoInteriorPeak);
    }
    // reject a second, non-adjacent maximum of the same height
    let near: Vec<usize> = mods
        .iter()
        .enumerate()
        .filter(|(_, &m)| m >= vmax * (1.0 - 1e-9))
        .map(|(i, _)| i)
        .collect();
    if near.windows(2).any(|w| w[1] - w[0] > 1) {
        return Err(Error::NoInteriorPeak);
    }

    let l = |i: usize| 2.0 * mods[i].ln();
    let (lm, l0, lp) = (l(imax - 1), l(imax), l(imax + 1));
    let denom = lm - 2.0 * l0 + lp;
    let delta = if denom < 0.0 {
        0.5 * (lm - lp) / denom
    } else {
        0.0
    };
    let delta = delta.clamp(-0.5, 0.5);
    let location = grid.point(imax) + delta * grid.step();
    let height = (l0 - 0.25 * (lm - lp) * delta).exp().sqrt();

    // residual: how far the parabola misses log|g|^2 two samples out
    let mut residual = 0.0f64;
    if imax >= 2 && imax + 2 < n {
        for (s, idx) in [(-2.0f64, imax - 2), (2.0, imax + 2)] {
            let fit = l0 + 0.5 * (lp - lm) * s + 0.5 * denom * s * s;
            residual = residual.max((fit - l(idx)).abs());
        }
    }

    // FWHM of |g| by linear interpolation on the modulus
    let half = vmax / 2.0;
    let mut left = grid.point(0);
    for i in (1..=imax).rev() {
        if mods[i - 1] < half && mods[i] >= half {
            let f = (half - mods[i - 1]) / (mods[i] - mods[i - 1]);
            left = grid.point(i - 1) + f * grid.step();
            break;
        }
    }
    let mut right = grid.point(n - 1);
    for i in imax..n - 1 {
        if mods[i] >= half && mods[i + 1] < half {
            let f = (mods[i] - half) / (mods[i] - mods[i + 1]);
            right = grid.point(i) + f * grid.step();
            break;
        }
    }
    Ok(PeakReport {
        location,
        height,
        fwhm: right - left,
        residual,
    })
}

/// Positive when the transmitted peak is ahead of the free one.
pub fn advancement(transmitted: &SampledEnvelope, free: &SampledEnvelope) -> Result<f64> {
    Ok(peak(transmitted)?.location - peak(free)?.location)
}

/// Anything that can produce a transmission amplitude in log form
/// (log modulus, continuous phase).
pub trait TransmissionFn {
    fn log_transmission(&self, p: f64) -> Result<Complex64>;
}

impl TransmissionFn for crate::spin::DelayComb {
    fn log_transmission(&self, p: f64) -> Result<Complex64> {
        let t = self.transmission(p);
        if t == Complex64::new(0.0, 0.0) {
            return Err(Error::NonFinite("comb transmission vanishes"));
        }
        Ok(Complex64::new(t.norm().ln(), t.arg()))
    }
}

impl TransmissionFn for crate::barrier::BarrierSpec {
    fn log_transmission(&self, p: f64) -> Result<Complex64> {
        crate::barrier::log_transmission(self, p)
    }
}

/// Largest contiguous interval around p_ref on the scan grid where
/// |T(p) e^{i alpha (p - p_ref)} / T(p_ref) - 1| <= rel_tol: the window in
/// which the amplitude still mimics a clean shift by alpha.
pub fn band_detect(
    t: &dyn TransmissionFn,
    p_ref: f64,
    alpha: Complex64,
    rel_tol: f64,
    scan: &Grid1D,
) -> Result<(f64, f64)> {
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "rel_tol",
            reason: format!("must be > 0, got {rel_tol}"),
        });
    }
    if !scan.contains(p_ref) {
        return Err(Error::InvalidGrid(format!(
            "scan grid does not contain the reference momentum {p_ref}"
        )));
    }
    let l_ref = t.log_transmission(p_ref)?;
    let ok = |p: f64| -> Result<bool> {
        let l = t.log_transmission(p)?;
        let log_ratio = l - l_ref + Complex64::new(0.0, 1.0) * alpha * (p - p_ref);
        Ok((log_ratio.exp() - Complex64::new(1.0, 0.0)).norm() <= rel_tol)
    };
    let i_ref = scan.nearest_index(p_ref);
    if !ok(scan.point(i_ref))? {
        return Err(Error::InvalidParameter {
            name: "rel_tol",
            reason: "shift condition already fails at the reference momentum".into(),
        });
    }
    let mut lo = i_ref;
    while lo > 0 && ok(scan.point(lo - 1))? {
        lo -= 1;
    }
    let mut hi = i_ref;
    while hi + 1 < scan.count() && ok(scan.point(hi + 1))? {
        hi += 1;
    }
    Ok((scan.point(lo), scan.point(hi)))
}

/// Peak-normalised L-infinity distance between the moduli of two envelopes,
/// evaluated at the sample points of the first that lie on both grids.
pub fn shape_distance(g1: &SampledEnvelope, g2: &SampledEnvelope) -> Result<f64> {
    let m1 = g1.max_abs_rel();
    let m2 = g2
        .values()
        .iter()
        .map(|v| v.norm())
        .fold(0.0f64, f64::max);
    if m1 == 0.0 || m2 == 0.0 {
        return Err(Error::NonFinite("shape comparison of a vanishing envelope"));
    }
    let mut worst = f64::NEG_INFINITY;
    let mut overlap = 0usize;
    for (i, x) in g1.grid().points().enumerate() {
        if !g2.grid().contains(x) {
            continue;
        }
        overlap += 1;
        let d = (g1.values()[i].norm() / m1 - g2.eval(x).norm() / m2).abs();
        worst = worst.max(d);
    }
    if overlap == 0 {
        return Err(Error::EmptyOverlap(0.0));
    }
    Ok(worst)
}

/// Least-squares slope of ln y against ln x: the fitted exponent b in
/// y ~ c x^b. Requires positive data.
pub fn power_law_exponent(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidParameter {
            name: "xs",
            reason: "need at least two matching samples".into(),
        });
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0)) {
        return Err(Error::InvalidParameter {
            name: "ys",
            reason: "power-law fit requires positive data".into(),
        });
    }
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in lx.iter().zip(&ly) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    if den == 0.0 {
        return Err(Error::InvalidParameter {
            name: "xs",
            reason: "all abscissae equal".into(),
        });
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::envelope::EnvelopeForm;
    use crate::numerics::scaled::ScaledAmplitude;

    fn gaussian_env(center: f64, sigma: f64, grid: Grid1D) -> SampledEnvelope {
        SampledEnvelope::from_form(EnvelopeForm::gaussian(center, sigma), grid).unwrap()
    }

    #[test]
    fn gaussian_peak_exact() {
        let grid = Grid1D::span(-10.0, 12.0, 221).unwrap();
        // center deliberately off the grid points
        let env = gaussian_env(1.2345, 2.0, grid);
        let p = peak(&env).unwrap();
        assert!((p.location - 1.2345).abs() < 1e-6 * 2.0, "loc {}", p.location);
        // fwhm of exp(-x^2/sigma^2) is 2 sigma sqrt(ln 2)
        let expect = 2.0 * 2.0 * (2.0f64.ln()).sqrt();
        assert!((p.fwhm - expect).abs() < 0.05, "fwhm {}", p.fwhm);
        assert!(p.residual < 1e-9, "Gaussian fit residual {}", p.residual);
    }

    #[test]
    fn peak_scale_invariance() {
        let grid = Grid1D::span(-10.0, 10.0, 201).unwrap();
        let mut env = gaussian_env(0.7, 1.5, grid);
        let p1 = peak(&env).unwrap();
        for v in env.values_mut() {
            *v *= Complex64::new(-2.5e-3, 4.0e-3);
        }
        env.set_form(EnvelopeForm::Samples);
        let p2 = peak(&env).unwrap();
        assert!((p1.location - p2.location).abs() < 1e-12);
    }

    #[test]
    fn twin_peaks_rejected() {
        let grid = Grid1D::span(-10.0, 10.0, 401).unwrap();
        let values: Vec<Complex64> = grid
            .points()
            .map(|x| {
                let a = (-(x - 3.0) * (x - 3.0)).exp();
                let b = (-(x + 3.0) * (x + 3.0)).exp();
                Complex64::new(a + b, 0.0)
            })
            .collect();
        let env = SampledEnvelope::from_samples(grid, values, ScaledAmplitude::one()).unwrap();
        match peak(&env) {
            Err(Error::NoInteriorPeak) => {}
            other => panic!("expected NoInteriorPeak, got {other:?}"),
        }
    }

    #[test]
    fn edge_maximum_rejected() {
        let grid = Grid1D::span(0.0, 5.0, 51).unwrap();
        let values: Vec<Complex64> = grid.points().map(|x| Complex64::new((-x).exp(), 0.0)).collect();
        let env = SampledEnvelope::from_samples(grid, values, ScaledAmplitude::one()).unwrap();
        assert!(matches!(peak(&env), Err(Error::NoInteriorPeak)));
    }

    #[test]
    fn advancement_antisymmetric() {
        let grid = Grid1D::span(-15.0, 15.0, 301).unwrap();
        let a = gaussian_env(2.0, 1.0, grid);
        let b = gaussian_env(-1.0, 1.0, grid);
        let ab = advancement(&a, &b).unwrap();
        let ba = advancement(&b, &a).unwrap();
        assert!((ab + ba).abs() < 1e-12);
        assert!((ab - 3.0).abs() < 1e-6);
    }

    #[test]
    fn shape_distance_basics() {
        let grid = Grid1D::span(-8.0, 8.0, 321).unwrap();
        let a = gaussian_env(0.0, 1.5, grid);
        assert!(shape_distance(&a, &a).unwrap() < 1e-15);
        // scaling either side does not matter
        let mut b = gaussian_env(0.0, 1.5, grid);
        for v in b.values_mut() {
            *v *= 7.0;
        }
        b.set_form(EnvelopeForm::Samples);
        assert!(shape_distance(&a, &b).unwrap() < 1e-12);
        // a shift shows up
        let c = gaussian_env(0.5, 1.5, grid);
        let d = shape_distance(&a, &c).unwrap();
        assert!(d > 0.1 && d < 0.5, "shift distance {d}");
    }

    #[test]
    fn band_for_pure_exponential_spans_scan() {
        struct Pure(Complex64);
        impl TransmissionFn for Pure {
            fn log_transmission(&self, p: f64) -> Result<Complex64> {
                Ok(Complex64::new(0.0, -1.0) * self.0 * p)
            }
        }
        let alpha = Complex64::new(3.0, 0.0);
        let scan = Grid1D::span(-2.0, 2.0, 401).unwrap();
        let (lo, hi) = band_detect(&Pure(alpha), 0.0, alpha, 1e-6, &scan).unwrap();
        assert_eq!(lo, scan.start());
        assert_eq!(hi, scan.end());
    }

    #[test]
    fn band_shrinks_with_tolerance() {
        let comb = crate::spin::solve_eta(8, Complex64::new(12.0, 0.0), 1.0).unwrap();
        let alpha = Complex64::new(12.0, 0.0);
        let scan = Grid1D::span(-1.0, 1.0, 801).unwrap();
        let (lo1, hi1) = band_detect(&comb, 0.0, alpha, 0.2, &scan).unwrap();
        let (lo2, hi2) = band_detect(&comb, 0.0, alpha, 0.02, &scan).unwrap();
        assert!(hi2 - lo2 <= hi1 - lo1);
        assert!(hi1 - lo1 > 0.0);
        assert!(lo1 <= 0.0 && hi1 >= 0.0);
    }

    #[test]
    fn power_law_fit_recovers_exponent() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|&x| 3.0 * f64::powf(x, -1.7)).collect();
        let b = power_law_exponent(&xs, &ys).unwrap();
        assert!((b + 1.7).abs() < 1e-12);
        assert!(power_law_exponent(&xs, &[1.0, -1.0, 1.0, 1.0]).is_err());
        assert!(power_law_exponent(&[1.0], &[1.0]).is_err());
    }
}
