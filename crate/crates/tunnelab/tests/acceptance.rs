//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line with the measured numbers before asserting. Tolerances
//! are pinned; reference values marked "frozen" were fixed from independent
//! high-precision prototype runs and act as regression anchors.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tunnelab::analysis::{self, peak};
use tunnelab::barrier::{
    barrier_moment, complex_shift, delay_distribution, hartman_packet_width, log_transmission,
    momentum_filter_shift, propagate, rect_reflection, rect_transmission, BarrierSpec, DadConfig,
    PacketSpec, PropagationKind, TransmissionMode,
};
use tunnelab::larmor::{traversal_amplitude, LarmorConfig};
use tunnelab::numerics::envelope::{EnvelopeForm, SampledEnvelope, Side};
use tunnelab::numerics::grid::Grid1D;
use tunnelab::numerics::scaled::ScaledAmplitude;
use tunnelab::pointer::{pointer_amplitude, pointer_statistics, AmplitudeLobe, SelectionPair};
use tunnelab::scenario::{parse_config, run};
use tunnelab::spin::{chop_pulse, multi_hump, solve_eta, transmit_comb};

fn report(criterion: usize, ok: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Peak-normalised L-infinity distance between |values| and a target shape.
fn linf_shape(grid: &Grid1D, values: &[Complex64], target: impl Fn(f64) -> f64) -> f64 {
    let vmax = values.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    let tmax = grid.points().map(&target).fold(0.0f64, f64::max);
    grid.points()
        .zip(values)
        .map(|(x, v)| (v.norm() / vmax - target(x) / tmax).abs())
        .fold(0.0f64, f64::max)
}

fn shifted_gauss_abs(x: f64, alpha: Complex64, sigma: f64) -> f64 {
    let pref = (2.0 / (std::f64::consts::PI * sigma * sigma)).powf(0.25);
    let u = (Complex64::new(x, 0.0) - alpha) / sigma;
    (pref * (-u * u).exp()).norm()
}

/// Restriction of an envelope to [lo, hi] for windowed peak finding.
fn window_env(env: &SampledEnvelope, lo: f64, hi: f64) -> SampledEnvelope {
    let grid = env.grid();
    let idx: Vec<usize> = (0..grid.count())
        .filter(|&i| (lo..=hi).contains(&grid.point(i)))
        .collect();
    let sub = Grid1D::new(grid.point(idx[0]), grid.step(), idx.len()).unwrap();
    let vals: Vec<Complex64> = idx.iter().map(|&i| env.values()[i]).collect();
    SampledEnvelope::from_samples(sub, vals, ScaledAmplitude::one()).unwrap()
}

#[test]
fn c01_comb_moment_identities() {
    let k = 30;
    let mut worst = 0.0f64;
    for a in [c(-15.0, 0.0), c(-15.5, 0.0), c(120.0, 0.0)] {
        let comb = solve_eta(k, a, 1.0).unwrap();
        for n in 0..=k {
            let m = comb.moment(n);
            let expect = a.powf(n as f64);
            let rel = (m - expect).norm() / expect.norm().max(1e-300);
            worst = worst.max(rel);
        }
    }
    let ok = worst < 1e-6;
    report(1, ok, &format!("moments = alpha^n for n <= 30, worst rel err {worst:.3e} (tol 1e-6)"));
    assert!(ok);
}

#[test]
fn c02_success_probability_comb() {
    let k = 30;
    let mut exact = true;
    for m in 0..=k {
        let comb = solve_eta(k, c(-(m as f64), 0.0), 1.0).unwrap();
        if comb.log10_best_success_probability() != 0.0 {
            exact = false;
        }
    }
    // strictly decreasing on the positive (advancement) side
    let mut decreasing = true;
    let mut prev = f64::INFINITY;
    let mut at = 0.1;
    while at <= 8.0 + 1e-12 {
        let comb = solve_eta(k, c(at * k as f64, 0.0), 1.0).unwrap();
        let lg = comb.log10_best_success_probability();
        if lg >= prev {
            decreasing = false;
        }
        prev = lg;
        at += 0.1;
    }
    let ok = exact && decreasing;
    report(2, ok, &format!("P_best = 1 at comb points: {exact}; log10 P strictly decreasing on (0, 8]: {decreasing} (final log10 P {prev:.1})"));
    assert!(ok);
}

#[test]
fn c03_superoscillation_band() {
    // frozen calibration: the shift condition holds to 0.1 out to
    // 0.8 K / (e |alpha|) and fails by orders of magnitude at twice that
    let k = 30.0;
    let alpha = 120.0;
    let comb = solve_eta(30, c(alpha, 0.0), 1.0).unwrap();
    let edge = 0.8 * k / (std::f64::consts::E * alpha);
    let dev = |p: f64| {
        (comb.transmission(p) * c(0.0, alpha * p).exp() - c(1.0, 0.0)).norm()
    };
    let mut in_band = 0.0f64;
    let n = 101;
    for i in 0..n {
        let p = -edge + 2.0 * edge * i as f64 / (n - 1) as f64;
        in_band = in_band.max(dev(p));
    }
    let outside = dev(2.0 * k / (std::f64::consts::E * alpha));
    let ok = in_band <= 0.1 && outside >= 1.0;
    report(3, ok, &format!("max dev {in_band:.3e} on |p| <= {edge:.4} (tol 0.1); dev {outside:.3e} at 2x band edge (need >= 1)"));
    assert!(ok);
}

#[test]
fn c04_advanced_pulse_shape() {
    let sigma = 60.0;
    let mut devs = Vec::new();
    for a_over in [c(120.0, 0.0), c(105.0, 60.0)] {
        let comb = solve_eta(30, a_over, 1.0).unwrap();
        let grid = Grid1D::span(-3.0 * sigma, a_over.re + 4.0 * sigma, 541).unwrap();
        let g0 = SampledEnvelope::from_form(EnvelopeForm::gaussian(0.0, sigma), grid).unwrap();
        let gt = transmit_comb(&g0, &comb).unwrap();
        devs.push(linf_shape(&grid, gt.values(), |x| {
            shifted_gauss_abs(x, a_over, sigma)
        }));
    }
    // frozen references: 0.01254 (real shift), 0.0039 (complex shift)
    let ok = devs[0] <= 0.02 && devs[1] <= 0.05;
    report(4, ok, &format!("peak-normalised Linf: real shift {:.4} (tol 0.02), complex shift {:.4} (tol 0.05)", devs[0], devs[1]));
    assert!(ok);
}

#[test]
fn c05_first_moment_only_negative_control() {
    // K = 1 fixes only the first moment; no superoscillatory band forms
    let sigma = 2.0;
    let alpha = c(4.0, 0.0);
    let comb = solve_eta(1, alpha, 1.0).unwrap();
    let grid = Grid1D::span(-4.0 * sigma, alpha.re + 4.0 * sigma, 401).unwrap();
    let g0 = SampledEnvelope::from_form(EnvelopeForm::gaussian(0.0, sigma), grid).unwrap();
    let gt = transmit_comb(&g0, &comb).unwrap();
    let dev = linf_shape(&grid, gt.values(), |x| shifted_gauss_abs(x, alpha, sigma));
    let ok = dev > 0.5;
    report(5, ok, &format!("K=1 shape distance from shifted Gaussian {dev:.3} (must exceed 0.5)"));
    assert!(ok);
}

#[test]
fn c06_barrier_unitarity_and_series() {
    let presets = [
        BarrierSpec::new(1.0, 5.0, 1.0).unwrap(),
        BarrierSpec::new(2.0, 5.0, 1.0).unwrap(),
        BarrierSpec::new(0.5, 20.0, 5.0).unwrap(),
        BarrierSpec::new(2.0, 2.0, 1.0).unwrap(),
        BarrierSpec::new(1.0, 10.0, 2.0).unwrap(),
    ];
    let mut worst_unitarity = 0.0f64;
    for b in &presets {
        let pth = b.p_threshold();
        for i in 0..200 {
            let p = (0.05 + 2.95 * i as f64 / 199.0) * pth;
            let t = rect_transmission(b, p, TransmissionMode::ClosedForm).unwrap();
            let r = rect_reflection(b, p).unwrap();
            let total = (2.0 * t.log_mag()).exp() + (2.0 * r.log_mag()).exp();
            worst_unitarity = worst_unitarity.max((total - 1.0).abs());
        }
    }
    // multiple-reflection series vs closed form, kappa d >= 2
    let mut worst_series = 0.0f64;
    for (b, p) in [
        (&presets[0], 1.0),
        (&presets[1], 1.0),
        (&presets[3], 1.0),
        (&presets[4], 1.5),
    ] {
        assert!(b.kappa(p) * b.d() >= 2.0);
        let closed = rect_transmission(b, p, TransmissionMode::ClosedForm).unwrap();
        let series = rect_transmission(b, p, TransmissionMode::Series { n_terms: 10 }).unwrap();
        let ratio = series.div(&closed);
        let err = (ratio.log_mag().exp() * c(0.0, ratio.phase()).exp() - c(1.0, 0.0)).norm();
        worst_series = worst_series.max(err);
    }
    let ok = worst_unitarity < 1e-10 && worst_series < 1e-8;
    report(6, ok, &format!("|T|^2+|R|^2 dev {worst_unitarity:.3e} (tol 1e-10); series vs closed {worst_series:.3e} (tol 1e-8)"));
    assert!(ok);
}

fn dad_setup() -> (BarrierSpec, DadConfig) {
    (
        BarrierSpec::new(2.0, 5.0, 1.0).unwrap(),
        DadConfig {
            n: 1 << 20,
            p_half_width: 500.0,
            edge_tol: 1e-6,
        },
    )
}

#[test]
fn c07_dad_causality_and_normalisation() {
    let (b, cfg) = dad_setup();
    let d = delay_distribution(&b, 1.0, &cfg).unwrap();
    let leak = d.causality_sup(3.0 * d.grid().step());
    let integral_dev = (d.integral() - c(1.0, 0.0)).norm();
    // sharp negative feature just left of zero delay
    let (mut xmin, mut vmin) = (0.0f64, f64::INFINITY);
    for (x, v) in d.grid().points().zip(d.smooth()) {
        if v.re < vmin {
            vmin = v.re;
            xmin = x;
        }
    }
    let feature = vmin < 0.0 && (-0.5..0.0).contains(&xmin);
    let ok = leak <= 1e-3 && integral_dev <= 1e-6 && feature;
    report(7, ok, &format!("forward leakage {leak:.2e} (tol 1e-3); |integral - 1| {integral_dev:.2e} (tol 1e-6); negative spike {vmin:.3e} at x = {xmin:.4}"));
    assert!(ok);
}

#[test]
fn c08_moment_route_equivalence() {
    let (b, cfg) = dad_setup();
    let mut worst = 0.0f64;
    for p0 in [1.0, 1.2, 1.4] {
        let d = delay_distribution(&b, p0, &cfg).unwrap();
        for n in 1..=2 {
            let refv = barrier_moment(&b, p0, n, 1e-4).unwrap();
            // average over window lengths: the position-space tail carries
            // an oscillatory threshold contribution that a sharp window
            // would truncate mid-cycle
            let m = 32;
            let mut acc = c(0.0, 0.0);
            for j in 0..m {
                let w = 500.0 + 500.0 * (j as f64 + 0.5) / m as f64;
                acc += d.moment(n, w);
            }
            acc /= m as f64;
            worst = worst.max((acc - refv).norm() / refv.norm());
        }
    }
    let ok = worst < 1e-3;
    report(8, ok, &format!("distribution vs derivative moments, n = 1, 2 at three momenta: worst rel {worst:.2e} (tol 1e-3)"));
    assert!(ok);
}

#[test]
fn c09_propagation_delay_and_advancement() {
    // above the barrier: classical delay
    let b = BarrierSpec::new(0.5, 20.0, 5.0).unwrap();
    let pk = PacketSpec::new(5.0, 4.0, -15.0).unwrap();
    let grid = Grid1D::span(20.0, 50.0, 1201).unwrap();
    let free = propagate(&b, &pk, PropagationKind::Free, 50.0, &grid).unwrap();
    let trans = propagate(&b, &pk, PropagationKind::Transmitted, 50.0, &grid).unwrap();
    let delay = -analysis::advancement(&trans, &free).unwrap();
    let k0 = (pk.p0 * pk.p0 - 2.0 * b.mu() * b.w()).sqrt();
    let classical = b.mu() * b.d() * (1.0 / k0 - 1.0 / pk.p0);
    let delay_rel = (delay - classical).abs() / classical;

    // tunnelling: advancement and magnitude
    let b2 = BarrierSpec::new(1.0, 5.0, 1.0).unwrap();
    let pk2 = PacketSpec::new(1.0, 20.0, -60.0).unwrap();
    let grid2 = Grid1D::span(20.0, 110.0, 1801).unwrap();
    let free2 = propagate(&b2, &pk2, PropagationKind::Free, 120.0, &grid2).unwrap();
    let trans2 = propagate(&b2, &pk2, PropagationKind::Transmitted, 120.0, &grid2).unwrap();
    let adv = analysis::advancement(&trans2, &free2).unwrap();
    // scale carries T(p0) exactly, so the relative heights compare the
    // transmitted peak against |T(p0)| times the free peak
    let mag_ratio = peak(&trans2).unwrap().height / peak(&free2).unwrap().height;

    let ok = delay_rel <= 0.10 && adv >= 0.8 * b2.d() && (0.5..=2.0).contains(&mag_ratio);
    report(9, ok, &format!("delay {delay:.4} vs classical {classical:.4} (rel {delay_rel:.3}, tol 0.1); advancement {adv:.3} (need >= {}); peak ratio to |T| x free {mag_ratio:.3} (need within factor 2)", 0.8 * b2.d()));
    assert!(ok);
}

/// Broad-barrier run for one width; returns (advancement, predicted, max
/// ratio deviation over |p - p0| <= 4 / sigma, all values finite).
fn hartman_case(d: f64) -> (f64, f64, f64, bool) {
    let p0 = 1.0;
    let mu = 1.0;
    let w = 2.0; // p0^2 / 2 mu W = 0.25
    let b = BarrierSpec::new(w, d, mu).unwrap();
    let sigma = hartman_packet_width(d, 1.0, 0.15).unwrap();
    let pk = PacketSpec::new(p0, sigma, -3.0 * sigma).unwrap();
    let t = 1.5 * d * mu / p0;
    let alpha = complex_shift(&b, p0).unwrap();
    let predicted = alpha.re + momentum_filter_shift(alpha, sigma).unwrap() * t / mu;
    let free_peak = pk.x0 + p0 * t / mu;
    let grid = Grid1D::span(free_peak - 4.0 * sigma, free_peak + predicted + 4.0 * sigma, 1501).unwrap();
    let free = propagate(&b, &pk, PropagationKind::Free, t, &grid).unwrap();
    let trans = propagate(&b, &pk, PropagationKind::Transmitted, t, &grid).unwrap();
    let finite = trans.values().iter().all(|v| v.re.is_finite() && v.im.is_finite())
        && trans.scale().log_mag().is_finite();
    let adv = analysis::advancement(&trans, &free).unwrap();
    let mut max_dev = 0.0f64;
    for i in 0..=800 {
        let p = p0 - 4.0 / sigma + 8.0 / sigma * i as f64 / 800.0;
        let ratio = tunnelab::barrier::approx_transmission_log_ratio(&b, p0, p)
            .unwrap()
            .exp();
        max_dev = max_dev.max((ratio - c(1.0, 0.0)).norm());
    }
    (adv, predicted, max_dev, finite)
}

#[test]
fn c10_hartman_regime() {
    let (adv_d, pred_d, dev_d, finite_d) = hartman_case(1e3);
    let (adv_p, pred_p, dev_p, finite_p) = hartman_case(1e5);
    let adv_rel_d = (adv_d - pred_d).abs() / pred_d;
    let desk_ok = adv_rel_d <= 0.10 && dev_d <= 0.05 && finite_d;
    let paper_ok = finite_p && dev_p <= 0.01;
    let ok = desk_ok && paper_ok;
    report(10, ok, &format!("desk p0 d = 1e3: advancement {adv_d:.1} vs predicted {pred_d:.1} (rel {adv_rel_d:.4}, tol 0.1), ratio dev {dev_d:.4} (tol 0.05); paper p0 d = 1e5: finite {finite_p}, ratio dev {dev_p:.4} (tol 0.01), advancement {adv_p:.1} vs {pred_p:.1}"));
    assert!(ok, "the desk-scale ratio bound 0.05 is not reachable at p0 d = 1e3; see the test output line");
}

#[test]
fn c11_composite_and_chopped_pulses() {
    let sigma = 60.0;
    let alpha = 120.0;
    let comb = solve_eta(30, c(alpha, 0.0), 1.0).unwrap();
    let centers = [-75.0, 75.0];
    let grid = Grid1D::span(-315.0, 435.0, 1001).unwrap();

    // (a) two humps advance as a whole
    let g0 = multi_hump(&[(centers[0], sigma), (centers[1], sigma)], grid).unwrap();
    let gt = transmit_comb(&g0, &comb).unwrap();
    let single = transmit_comb(
        &SampledEnvelope::from_form(EnvelopeForm::gaussian(centers[0], sigma), grid).unwrap(),
        &comb,
    )
    .unwrap();
    let adv_single = peak(&window_env(&single, centers[0] + alpha - 1.2 * sigma, centers[0] + alpha + 1.2 * sigma))
        .unwrap()
        .location
        - centers[0];
    let hump = |c0: f64| {
        peak(&window_env(&gt, c0 + alpha - 1.2 * sigma, c0 + alpha + 1.2 * sigma))
            .unwrap()
            .location
    };
    let (h1, h2) = (hump(centers[0]), hump(centers[1]));
    let adv1 = h1 - centers[0];
    let adv2 = h2 - centers[1];
    let adv_ok = (adv1 - adv_single).abs() / adv_single <= 0.10
        && (adv2 - adv_single).abs() / adv_single <= 0.10;
    let spacing = h2 - h1;
    let spacing_ok = (spacing - (centers[1] - centers[0])).abs() / (centers[1] - centers[0]) <= 0.05;

    // (b), (c) chopping at the pulse centre
    let cgrid = Grid1D::span(-180.0, 360.0, 541).unwrap();
    let gauss = SampledEnvelope::from_form(EnvelopeForm::gaussian(0.0, sigma), cgrid).unwrap();
    let gt_full = transmit_comb(&gauss, &comb).unwrap();
    let peak_full = gt_full.max_abs_rel();
    let rear_cut = transmit_comb(&chop_pulse(&gauss, 0.0, Side::Front, 0.0).unwrap(), &comb).unwrap();
    let mut rear_dev = 0.0f64;
    for (i, x) in cgrid.points().enumerate() {
        if (alpha - sigma..=alpha + 2.0 * sigma).contains(&x) {
            rear_dev = rear_dev.max((rear_cut.values()[i] - gt_full.values()[i]).norm() / peak_full);
        }
    }
    let front_cut = transmit_comb(&chop_pulse(&gauss, 0.0, Side::Rear, 0.0).unwrap(), &comb).unwrap();
    let front_peak = front_cut.max_abs_rel();
    let mut beyond = 0.0f64;
    for (i, x) in cgrid.points().enumerate() {
        if x > 0.0 {
            beyond = beyond.max(front_cut.values()[i].norm() / front_peak);
        }
    }
    let ok = adv_ok && spacing_ok && rear_dev <= 0.05 && beyond <= 1e-3;
    report(11, ok, &format!("hump advancements {adv1:.1}/{adv2:.1} vs single {adv_single:.1} (tol 10%); spacing {spacing:.1} vs 150 (tol 5%); rear-cut dev in advanced region {rear_dev:.2e} (tol 0.05); front-cut amplitude beyond the ballistic front {beyond:.2e} (tol 1e-3)"));
    assert!(ok);
}

#[test]
fn c12_larmor_sum_rule() {
    let b = BarrierSpec::new(1.0, 5.0, 1.0).unwrap();
    let cfg = LarmorConfig {
        n_v: 1024,
        v_half: 1.0,
    };
    let amp = traversal_amplitude(&b, 5.0, &cfg).unwrap();
    let t = log_transmission(&b, 5.0).unwrap().exp();
    let sum_dev = (amp.sum_rule() - t).norm();
    let mut round = 0.0f64;
    for (x, y) in amp.roundtrip().unwrap().iter().zip(amp.windowed_response()) {
        round = round.max((x - y).norm());
    }
    let taus = Grid1D::span(-5.0, 8.0, 2601).unwrap();
    let phi = amp.sample(&taus).unwrap();
    let peak_tau = peak(&phi).unwrap().location;
    let k0 = (25.0f64 - 2.0).sqrt();
    let classical = b.mu() * b.d() / k0;
    let peak_rel = (peak_tau - classical).abs() / classical;
    let ok = sum_dev <= 1e-6 && round <= 1e-6 && peak_rel <= 0.15;
    report(12, ok, &format!("sum rule dev {sum_dev:.2e} (tol 1e-6); roundtrip {round:.2e} (tol 1e-6); |phi| peak {peak_tau:.3} vs mu d / k0 = {classical:.3} (rel {peak_rel:.4}, tol 0.15)"));
    assert!(ok);
}

fn random_pair(rng: &mut StdRng) -> SelectionPair {
    loop {
        let n = rng.gen_range(2..=3);
        let lobes: Vec<AmplitudeLobe> = (0..n)
            .map(|_| AmplitudeLobe {
                center: rng.gen_range(-3.0..-0.5),
                width: 0.05,
                coef: c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            })
            .collect();
        let total: Complex64 = lobes.iter().map(|l| l.coef).sum();
        let mag: f64 = lobes.iter().map(|l| l.coef.norm()).sum();
        if total.norm() > 0.2 * mag {
            return SelectionPair::new(lobes).unwrap();
        }
    }
}

#[test]
fn c13_pointer_limits() {
    // strong limit: the mean stays inside the (negative) support
    let mut rng = StdRng::seed_from_u64(7);
    let kernel = Grid1D::span(-4.0, 0.5, 1001).unwrap();
    let out = Grid1D::span(-4.5, 1.0, 2001).unwrap();
    let mut worst_strong = f64::NEG_INFINITY;
    for _ in 0..10 {
        let pair = random_pair(&mut rng);
        let psi = pointer_amplitude(&pair, 0.02, &kernel, &out).unwrap();
        worst_strong = worst_strong.max(pointer_statistics(&psi).unwrap().mean);
    }
    let strong_ok = worst_strong <= 1e-3;

    // weak limit: deficit from the weak value shrinks like sigma^-2
    let pair = SelectionPair::new(vec![
        AmplitudeLobe {
            center: -1.0,
            width: 0.05,
            coef: c(1.0, 0.0),
        },
        AmplitudeLobe {
            center: -2.0,
            width: 0.05,
            coef: c(-6.0 / 7.0, 0.0),
        },
    ])
    .unwrap();
    let wv = pair.weak_value(2.0).unwrap();
    let wide_kernel = Grid1D::span(-3.0, 0.5, 1401).unwrap();
    let mut inv_sigmas = Vec::new();
    let mut deficits = Vec::new();
    for sigma in [24.0, 32.0, 48.0, 64.0, 96.0] {
        let lim = 6.4 * sigma;
        let og = Grid1D::span(-lim, lim, 3001).unwrap();
        let psi = pointer_amplitude(&pair, sigma, &wide_kernel, &og).unwrap();
        let mean = pointer_statistics(&psi).unwrap().mean;
        inv_sigmas.push(1.0 / sigma);
        deficits.push((mean - wv.value.re).abs());
    }
    let exponent = analysis::power_law_exponent(&inv_sigmas, &deficits).unwrap();
    let weak_ok = (1.5..=2.5).contains(&exponent);

    // anomalous sharp case: weak value 5 with a pointer of width 2,
    // cross-checked by direct quadrature of A eta(A)
    let da = kernel.step();
    let mut num = c(0.0, 0.0);
    let mut den = c(0.0, 0.0);
    for a in kernel.points() {
        let v = pair.value(a);
        num += a * v * da;
        den += v * da;
    }
    let direct = num / den;
    let sharp_ok = wv.sharp && wv.value.re > 2.0 && (direct - wv.value).norm() < 1e-6;

    let ok = strong_ok && weak_ok && sharp_ok;
    report(13, ok, &format!("strong means all <= 0 (worst {worst_strong:.3}); weak-limit deficit exponent {exponent:.3} in 1/sigma (need 1.5..2.5); sharp anomalous value {:.6} > sigma = 2, quadrature check dev {:.2e}", wv.value.re, (direct - wv.value).norm()));
    assert!(ok);
}

#[test]
fn c14_determinism() {
    let base = std::env::temp_dir().join("tunnelab_acceptance_det");
    let _ = std::fs::remove_dir_all(&base);
    let configs = [
        "[scenario]\nid = fig6\n",
        "[scenario]\nid = custom\n[barrier]\nw = 0\n",
        "[scenario]\nid = pointer\n[pointer]\npairs = 3\nsigma_steps = 3\n",
    ];
    let mut all_equal = true;
    let mut checked = 0usize;
    for (i, text) in configs.iter().enumerate() {
        let mut sums = Vec::new();
        for pass in 0..2 {
            let dir = base.join(format!("{i}_{pass}"));
            let cfg = parse_config(text, None, Some(dir)).unwrap();
            let manifest = run(&cfg, 5).unwrap();
            let mut s: Vec<(String, String)> = manifest
                .outputs
                .iter()
                .map(|o| {
                    (
                        o.path.file_name().unwrap().to_string_lossy().into_owned(),
                        o.sha256.clone(),
                    )
                })
                .collect();
            s.sort();
            sums.push(s);
            checked += manifest.outputs.len();
        }
        if sums[0] != sums[1] {
            all_equal = false;
        }
    }
    let _ = std::fs::remove_dir_all(&base);
    let ok = all_equal;
    report(14, ok, &format!("{checked} output files across three scenarios rerun with identical checksums: {all_equal}"));
    assert!(ok);
}
