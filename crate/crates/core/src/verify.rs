//! Numerical oracles that check the closed forms from the outside: a direct
//! Fourier transform, quadrature moments, the residual of the nonlinear
//! equation solved by `f`, and oscillation fits for periods and phases.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{trapezoid, Wave};
use crate::timefn::WaveParams;
use crate::{Space, C64};

/// Quadrature nodes per period used by [`rms_over_period`].
pub const RMS_NODES: usize = 1024;

/// Amplitude magnitude above which a truncated tail is flagged.
pub const TAIL_TOL: f64 = 1e-12;

/// Relative residual above which [`fit_oscillation`] abandons the `2ω` model.
pub const FALLBACK_RESIDUAL: f64 = 1e-3;

const MIN_SAMPLES: usize = 64;
const MIN_SAMPLES_PER_PERIOD: f64 = 32.0;

/// Complex amplitudes on a uniform axis at a single time.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWave {
    pub axis: Vec<f64>,
    pub values: Vec<C64>,
    pub t: f64,
    pub space: Space,
}

impl SampledWave {
    pub fn new(axis: Vec<f64>, values: Vec<C64>, t: f64, space: Space) -> Result<Self> {
        if axis.len() != values.len() {
            return Err(Error::LengthMismatch { left: axis.len(), right: values.len() });
        }
        check_uniform(&axis)?;
        Ok(Self { axis, values, t, space })
    }

    pub fn from_wave<W: Wave + ?Sized>(wave: &W, space: Space, t: f64, axis: &[f64]) -> Result<Self> {
        let values = wave.slice(space, t, axis)?;
        Self::new(axis.to_vec(), values, t, space)
    }

    pub fn step(&self) -> f64 {
        (self.axis[self.axis.len() - 1] - self.axis[0]) / (self.axis.len() - 1) as f64
    }

    /// Whether either end still carries amplitude above [`TAIL_TOL`].
    pub fn tails_undecayed(&self) -> bool {
        self.values[0].norm() > TAIL_TOL || self.values[self.values.len() - 1].norm() > TAIL_TOL
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn max_abs_diff(&self, other: &[C64]) -> f64 {
        // NaN must not vanish into `f64::max`
        self.values
            .iter()
            .zip(other)
            .map(|(a, b)| (a - b).norm())
            .map(|d| if d.is_nan() { f64::INFINITY } else { d })
            .fold(0.0, f64::max)
    }
}

fn check_uniform(axis: &[f64]) -> Result<()> {
    if axis.len() < MIN_SAMPLES {
        return Err(Error::InvalidGrid(format!(
            "sampled wave needs at least {MIN_SAMPLES} points, got {}",
            axis.len()
        )));
    }
    crate::grid::check_increasing(axis, "sampled")?;
    let n = axis.len();
    let step = (axis[n - 1] - axis[0]) / (n - 1) as f64;
    let tol = 1e-12 * (axis[0].abs().max(axis[n - 1].abs()) + step);
    if axis.windows(2).any(|w| ((w[1] - w[0]) - step).abs() > tol) {
        return Err(Error::InvalidGrid("sampled axis is not uniformly spaced".into()));
    }
    Ok(())
}

/// Output of a direct transform.
#[derive(Debug, Clone, PartialEq)]
pub struct Transform {
    /// Samples on the requested target axis.
    pub wave: SampledWave,
    /// Set when the input had not decayed at its ends.
    pub tail_warning: bool,
}

/// Trapezoid discretization of `(2πħ)^{−½} ∫ ψ(q) e^{−ipq/ħ} dq` evaluated
/// at every point of `target_axis`.
///
/// The output keeps `target_axis` as given; it need not be uniform.
pub fn numerical_ft(wave: &SampledWave, target_axis: &[f64], hbar: f64) -> Result<Transform> {
    transform(wave, target_axis, hbar, -1.0)
}

/// Inverse of [`numerical_ft`]: the conjugate kernel `e^{+ipq/ħ}`.
pub fn inverse_ft(wave: &SampledWave, target_axis: &[f64], hbar: f64) -> Result<Transform> {
    transform(wave, target_axis, hbar, 1.0)
}

fn transform(wave: &SampledWave, target_axis: &[f64], hbar: f64, sign: f64) -> Result<Transform> {
    if wave.axis.len() != wave.values.len() {
        return Err(Error::LengthMismatch { left: wave.axis.len(), right: wave.values.len() });
    }
    if !(hbar > 0.0) {
        return Err(crate::error::invalid("hbar", format!("must be positive, got {hbar}")));
    }
    let step = wave.step();
    let last = wave.axis.len() - 1;
    let weighted: Vec<(f64, C64)> = wave
        .axis
        .iter()
        .zip(&wave.values)
        .enumerate()
        .map(|(k, (&x, &v))| {
            let w = if k == 0 || k == last { 0.5 * step } else { step };
            (x, v * w)
        })
        .collect();
    let norm = 1.0 / (TAU * hbar).sqrt();
    let values = target_axis
        .par_iter()
        .map(|&k| {
            let scale = sign * k / hbar;
            let sum: C64 = weighted.iter().map(|&(x, v)| v * C64::cis(scale * x)).sum();
            sum * norm
        })
        .collect();
    let space = match wave.space {
        Space::Q => Space::P,
        Space::P => Space::Q,
    };
    Ok(Transform {
        wave: SampledWave { axis: target_axis.to_vec(), values, t: wave.t, space },
        tail_warning: wave.tails_undecayed(),
    })
}

/// `f̈ − ḟ²/(2f) + 2ω²(f − 1/f)` from the analytic derivatives.
pub fn ode_residual(params: &WaveParams, t: f64) -> f64 {
    let f = params.f(t);
    let fd = params.f_dot(t);
    let w = params.omega();
    params.f_ddot(t) - fd * fd / (2.0 * f) + 2.0 * w * w * (f - 1.0 / f)
}

/// Norm, mean and central second moment of a density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub norm: f64,
    pub mean: f64,
    pub variance: f64,
    pub tail_warning: bool,
}

impl Moments {
    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

pub fn moments(wave: &SampledWave) -> Moments {
    let mut m = density_moments(&wave.axis, &wave.density());
    m.tail_warning = wave.tails_undecayed();
    m
}

/// Trapezoid moments of a density sampled on `axis`; the mean and
/// variance are normalized by the computed norm.
pub fn density_moments(axis: &[f64], density: &[f64]) -> Moments {
    let norm = trapezoid(axis, density);
    let first: Vec<f64> = axis.iter().zip(density).map(|(x, d)| x * d).collect();
    let mean = trapezoid(axis, &first) / norm;
    let second: Vec<f64> = axis.iter().zip(density).map(|(x, d)| (x - mean).powi(2) * d).collect();
    let variance = trapezoid(axis, &second) / norm;
    let tail = TAIL_TOL * TAIL_TOL;
    let tail_warning = density.first().is_some_and(|&d| d > tail) || density.last().is_some_and(|&d| d > tail);
    Moments { norm, mean, variance, tail_warning }
}

/// Least-squares fit of `amplitude·cos(ν t + phase) + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationReport {
    pub period: f64,
    /// Phase in `[0, 2π)` at `t = 0`.
    pub phase_at_origin: f64,
    pub amplitude: f64,
    pub offset: f64,
    /// RMS of the fit residuals.
    pub fit_residual: f64,
}

/// Fits the series at angular frequency `2ω`; when that model leaves a
/// relative residual above [`FALLBACK_RESIDUAL`], the dominant period is
/// located by autocorrelation and refined, and the fit is redone there.
pub fn fit_oscillation(times: &[f64], values: &[f64], omega: f64) -> Result<OscillationReport> {
    check_series(times, values)?;
    let half_period = PI / omega;
    let span = times[times.len() - 1] - times[0];
    if span < 2.0 * half_period * (1.0 - 1e-9) {
        return Err(Error::Underspecified(format!(
            "series spans {span}, need at least two periods of {half_period}"
        )));
    }
    let per_period = (times.len() - 1) as f64 * half_period / span;
    if per_period < MIN_SAMPLES_PER_PERIOD {
        return Err(Error::Underspecified(format!(
            "{per_period:.1} samples per period, need {MIN_SAMPLES_PER_PERIOD}"
        )));
    }
    let report = fit_at_frequency(times, values, 2.0 * omega)?;
    if report.fit_residual <= FALLBACK_RESIDUAL * signal_scale(values) {
        return Ok(report);
    }
    let period = dominant_period(times, values)?;
    fit_at_frequency(times, values, TAU / period)
}

/// Linear least squares on `{cos νt, sin νt, 1}`.
pub fn fit_at_frequency(times: &[f64], values: &[f64], nu: f64) -> Result<OscillationReport> {
    check_series(times, values)?;
    let (coef, rss) = linear_fit(times, values, nu)?;
    let amplitude = coef[0].hypot(coef[1]);
    let phase = if amplitude == 0.0 { 0.0 } else { wrap_tau((-coef[1]).atan2(coef[0])) };
    Ok(OscillationReport {
        period: TAU / nu,
        phase_at_origin: phase,
        amplitude,
        offset: coef[2],
        fit_residual: (rss / values.len() as f64).sqrt(),
    })
}

/// Dominant period of a uniformly sampled series: first autocorrelation
/// peak after the first zero crossing, refined by minimizing the
/// single-frequency least-squares residual.
pub fn dominant_period(times: &[f64], values: &[f64]) -> Result<f64> {
    check_series(times, values)?;
    let n = values.len();
    let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
    let mean = values.iter().sum::<f64>() / n as f64;
    let centered: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let corr = |lag: usize| -> f64 {
        centered[..n - lag].iter().zip(&centered[lag..]).map(|(a, b)| a * b).sum::<f64>() / (n - lag) as f64
    };
    let max_lag = 2 * n / 3;
    let lags: Vec<f64> = (0..=max_lag).map(corr).collect();
    let crossing = lags
        .iter()
        .position(|&r| r < 0.0)
        .ok_or_else(|| Error::Underspecified("autocorrelation never changes sign".into()))?;
    let peak = (crossing.max(1)..max_lag)
        .find(|&k| lags[k] > 0.0 && lags[k] >= lags[k - 1] && lags[k] >= lags[k + 1])
        .ok_or_else(|| Error::Underspecified("no autocorrelation peak within the series".into()))?;
    let coarse = peak as f64 * dt;

    let rss = |nu: f64| linear_fit(times, values, nu).map(|(_, r)| r).unwrap_or(f64::INFINITY);
    let nu0 = TAU / coarse;
    // the residual is unimodal within ~2π/span of the true frequency
    let span = times[n - 1] - times[0];
    let width = (4.0 * nu0 * dt / coarse).max(PI / span).min(0.5 * nu0);
    let nu = golden_min(rss, nu0 - width, nu0 + width, 1e-14 * nu0);
    Ok(TAU / nu)
}

/// Phase of the `p` oscillation minus that of the `q` oscillation, both
/// fitted at `2ω`, mapped to `[0, 2π)`.
pub fn phase_opposition(
    times: &[f64],
    var_q: &[f64],
    var_p: &[f64],
    omega: f64,
) -> Result<f64> {
    let fq = fit_oscillation(times, var_q, omega)?;
    let fp = fit_oscillation(times, var_p, omega)?;
    let model = PI / omega;
    for f in [&fq, &fp] {
        if (f.period - model).abs() > 1e-6 * model {
            return Err(Error::Underspecified(format!(
                "oscillation period {} differs from {model}; phases are not comparable",
                f.period
            )));
        }
    }
    Ok(wrap_tau(fp.phase_at_origin - fq.phase_at_origin))
}

/// `√((1/T) ∫ f² dt)` by the periodic trapezoid rule on [`RMS_NODES`] nodes.
pub fn rms_over_period<F: Fn(f64) -> f64>(func: F, t_start: f64, period: f64) -> f64 {
    let h = period / RMS_NODES as f64;
    let sum: f64 = (0..RMS_NODES).map(|k| func(t_start + h * k as f64).powi(2)).sum();
    (sum / RMS_NODES as f64).sqrt()
}

pub fn wrap_tau(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

fn check_series(times: &[f64], values: &[f64]) -> Result<()> {
    if times.len() != values.len() {
        return Err(Error::LengthMismatch { left: times.len(), right: values.len() });
    }
    if times.len() < 4 {
        return Err(Error::Underspecified(format!("{} samples", times.len())));
    }
    crate::grid::check_increasing(times, "time")
}

fn signal_scale(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let rms = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    if rms > 0.0 {
        rms
    } else {
        1.0
    }
}

/// Coefficients of `a cos νt + b sin νt + c` and the residual sum of squares.
fn linear_fit(times: &[f64], values: &[f64], nu: f64) -> Result<([f64; 3], f64)> {
    let mut ata = [[0.0; 3]; 3];
    let mut aty = [0.0; 3];
    for (&t, &y) in times.iter().zip(values) {
        let (s, c) = (nu * t).sin_cos();
        let row = [c, s, 1.0];
        for i in 0..3 {
            aty[i] += row[i] * y;
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    let coef = solve3(ata, aty)
        .ok_or_else(|| Error::Underspecified("singular least-squares system".into()))?;
    let rss = times
        .iter()
        .zip(values)
        .map(|(&t, &y)| {
            let (s, c) = (nu * t).sin_cos();
            (y - coef[0] * c - coef[1] * s - coef[2]).powi(2)
        })
        .sum();
    Ok((coef, rss))
}

/// Gaussian elimination with partial pivoting.
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let factor = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Some(x)
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::linspace;
    use crate::timefn::Environment;
    use approx::assert_abs_diff_eq;

    fn unit_gaussian(axis: &[f64]) -> Vec<C64> {
        axis.iter().map(|&x| C64::new(PI.powf(-0.25) * (-0.5 * x * x).exp(), 0.0)).collect()
    }

    #[test]
    fn transform_of_unit_gaussian_is_itself() {
        let axis = linspace(-12.0, 12.0, 512);
        let wave = SampledWave::new(axis.clone(), unit_gaussian(&axis), 0.0, Space::Q).unwrap();
        let target = linspace(-6.0, 6.0, 101);
        let out = numerical_ft(&wave, &target, 1.0).unwrap();
        assert!(!out.tail_warning);
        assert_eq!(out.wave.space, Space::P);
        let expected = unit_gaussian(&target);
        assert!(out.wave.max_abs_diff(&expected) < 1e-9);
    }

    #[test]
    fn nan_differences_are_not_hidden() {
        let axis = linspace(-12.0, 12.0, 64);
        let wave = SampledWave::new(axis.clone(), unit_gaussian(&axis), 0.0, Space::Q).unwrap();
        let mut other = unit_gaussian(&axis);
        other[10] = C64::new(f64::NAN, 0.0);
        assert_eq!(wave.max_abs_diff(&other), f64::INFINITY);
    }

    #[test]
    fn transform_respects_hbar() {
        // ħ = 2: ψ(q) = (1/(πħ))^¼ e^{−q²/(2ħ)} maps to (1/(πħ))^¼ e^{−p²/(2ħ)}
        let hbar = 2.0;
        let g = |x: f64| C64::new((PI * hbar).powf(-0.25) * (-x * x / (2.0 * hbar)).exp(), 0.0);
        let axis = linspace(-20.0, 20.0, 600);
        let wave = SampledWave::new(axis.clone(), axis.iter().map(|&x| g(x)).collect(), 0.0, Space::Q).unwrap();
        let target = linspace(-5.0, 5.0, 11);
        let out = numerical_ft(&wave, &target, hbar).unwrap();
        let expected: Vec<C64> = target.iter().map(|&p| g(p)).collect();
        assert!(out.wave.max_abs_diff(&expected) < 1e-9);
    }

    #[test]
    fn odd_input_vanishes_at_origin() {
        let axis = linspace(-12.0, 12.0, 513);
        let odd: Vec<C64> = axis.iter().map(|&x| C64::new(x * (-0.5 * x * x).exp(), 0.3 * x.powi(3) * (-x * x).exp())).collect();
        let wave = SampledWave::new(axis, odd, 0.0, Space::Q).unwrap();
        let out = numerical_ft(&wave, &[0.0], 1.0).unwrap();
        assert!(out.wave.values[0].norm() < 1e-10);
    }

    #[test]
    fn round_trip_and_parseval() {
        let axis = linspace(-14.0, 14.0, 1024);
        let vals: Vec<C64> = axis
            .iter()
            .map(|&x| (C64::new(-0.35, 0.6) * (x - 0.7).powi(2) + C64::new(0.0, 1.3) * x).exp())
            .collect();
        let wave = SampledWave::new(axis.clone(), vals, 0.0, Space::Q).unwrap();
        let fwd = numerical_ft(&wave, &axis, 1.0).unwrap();
        let back = inverse_ft(&fwd.wave, &axis, 1.0).unwrap();
        assert!(back.wave.max_abs_diff(&wave.values) < 1e-8);
        let n_in = moments(&wave).norm;
        let n_out = moments(&fwd.wave).norm;
        assert_abs_diff_eq!(n_in, n_out, epsilon = 1e-6 * n_in);
    }

    #[test]
    fn tail_and_shape_checks() {
        let axis = linspace(-2.0, 2.0, 128);
        let wave = SampledWave::new(axis.clone(), unit_gaussian(&axis), 0.0, Space::Q).unwrap();
        assert!(numerical_ft(&wave, &[0.0], 1.0).unwrap().tail_warning);
        assert!(moments(&wave).tail_warning);
        assert!(matches!(
            SampledWave::new(axis.clone(), vec![C64::new(0.0, 0.0); 3], 0.0, Space::Q),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(SampledWave::new(linspace(0.0, 1.0, 10), vec![C64::new(0.0, 0.0); 10], 0.0, Space::Q).is_err());
        let mut bent = linspace(0.0, 1.0, 100);
        bent[50] += 1e-4;
        assert!(SampledWave::new(bent, vec![C64::new(0.0, 0.0); 100], 0.0, Space::Q).is_err());
    }

    #[test]
    fn moments_of_reference_waves() {
        let axis = linspace(-12.0, 12.0, 1001);
        let m = moments(&SampledWave::new(axis.clone(), unit_gaussian(&axis), 0.0, Space::Q).unwrap());
        assert_abs_diff_eq!(m.norm, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.mean, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.variance, 0.5, epsilon = 1e-12);

        let shifted: Vec<C64> = axis.iter().map(|&x| C64::new(PI.powf(-0.25) * (-0.5 * (x - 1.0).powi(2)).exp(), 0.0)).collect();
        let m = moments(&SampledWave::new(axis, shifted, 0.0, Space::Q).unwrap());
        assert_abs_diff_eq!(m.mean, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn ode_residual_examples() {
        let unit = WaveParams::static_case(Environment::default()).unwrap();
        assert_eq!(ode_residual(&unit, 0.7), 0.0);
        let params = WaveParams::new(1.0, 5.0, 2.0, Environment::default()).unwrap();
        for k in 0..100 {
            assert!(ode_residual(&params, k as f64 * 0.1).abs() < 1e-9);
        }
        let broken = WaveParams::new_unchecked(1.0, 5.0, 2.1, Environment::default());
        let worst = (0..100).map(|k| ode_residual(&broken, k as f64 * 0.1).abs()).fold(0.0, f64::max);
        assert!(worst > 1e-3);
    }

    #[test]
    fn fit_recovers_exact_cosine() {
        let times = linspace(0.0, 4.0 * PI, 257);
        let values: Vec<f64> = times.iter().map(|t| 2.83 * (2.0 * t + PI / 4.0).cos()).collect();
        let r = fit_oscillation(&times, &values, 1.0).unwrap();
        assert_abs_diff_eq!(r.amplitude, 2.83, epsilon = 1e-12);
        assert_abs_diff_eq!(r.phase_at_origin, PI / 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.period, PI, epsilon = 1e-15);
        assert!(r.fit_residual < 1e-12);
    }

    #[test]
    fn fit_falls_back_to_dominant_period() {
        let times = linspace(0.0, 6.0 * PI, 600);
        let values: Vec<f64> = times.iter().map(|t| 0.8 * (t - 0.3).cos() + 0.1).collect();
        let r = fit_oscillation(&times, &values, 1.0).unwrap();
        assert_abs_diff_eq!(r.period, TAU, epsilon = 1e-8);
        assert_abs_diff_eq!(r.amplitude, 0.8, epsilon = 1e-8);
        assert_abs_diff_eq!(r.phase_at_origin, TAU - 0.3, epsilon = 1e-8);
    }

    #[test]
    fn fit_rejects_short_series() {
        let times = linspace(0.0, PI, 100);
        let values = vec![0.0; 100];
        assert!(matches!(fit_oscillation(&times, &values, 1.0), Err(Error::Underspecified(_))));
        let times = linspace(0.0, 4.0 * PI, 20);
        assert!(fit_oscillation(&times, &vec![0.0; 20], 1.0).is_err());
    }

    #[test]
    fn phase_opposition_of_identical_and_opposite_series() {
        let times = linspace(0.0, 2.0 * PI, 200);
        let a: Vec<f64> = times.iter().map(|t| 3.0 + (2.0 * t + 0.4).cos()).collect();
        let b: Vec<f64> = times.iter().map(|t| 3.0 - (2.0 * t + 0.4).cos()).collect();
        let same = phase_opposition(&times, &a, &a, 1.0).unwrap();
        assert!(same < 1e-12 || TAU - same < 1e-12);
        assert_abs_diff_eq!(phase_opposition(&times, &a, &b, 1.0).unwrap(), PI, epsilon = 1e-12);
    }

    #[test]
    fn rms_examples() {
        assert_abs_diff_eq!(rms_over_period(|t| (2.0 * t).cos(), 0.0, PI), 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(rms_over_period(|_| -1.7, 0.3, 2.0), 1.7, epsilon = 1e-14);
    }
}
