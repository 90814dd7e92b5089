//! Fock-state nonstatic waves in both quadratures.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use crate::error::{finite, invalid, Error, Result};
use crate::grid::Wave;
use crate::timefn::WaveParams;
use crate::verify::rms_over_period;
use crate::{Space, C64};

/// Photon number of a Fock state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockIndex(u32);

impl FockIndex {
    /// Largest supported photon number.
    pub const MAX: u32 = 64;

    pub fn new(n: u32) -> Result<Self> {
        if n > Self::MAX {
            return Err(invalid("n", format!("must be at most {}, got {n}", Self::MAX)));
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Physicists' Hermite polynomial `H_n(x)`.
pub fn hermite(n: FockIndex, x: f64) -> Result<f64> {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n.0 {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    finite(cur, "Hermite polynomial")
}

/// `H_n(x)/√(2ⁿ n!)`, by a recurrence that stays in range for large `n`.
pub fn hermite_scaled(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, std::f64::consts::SQRT_2 * x);
    for k in 1..n {
        let k = k as f64;
        let next = (2.0 / (k + 1.0)).sqrt() * x * cur - (k / (k + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// One amplitude sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSample {
    pub value: C64,
    pub coordinate: f64,
    pub t: f64,
    pub space: Space,
}

/// A nonstatic Fock-state wave `|ψ_n(t)⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockState {
    params: WaveParams,
    n: FockIndex,
    gamma0: f64,
}

impl FockState {
    pub fn new(params: WaveParams, n: FockIndex) -> Self {
        Self { params, n, gamma0: 0.0 }
    }

    /// Sets the integration constant `γ_n(t₀)`.
    pub fn with_gamma0(self, gamma0: f64) -> Self {
        Self { gamma0, ..self }
    }

    pub fn params(&self) -> &WaveParams {
        &self.params
    }

    pub fn n(&self) -> FockIndex {
        self.n
    }

    fn level(&self) -> f64 {
        self.n.0 as f64 + 0.5
    }

    /// `γ_n(t) = −(n + ½) ω ∫_{t₀}^{t} dt′/f + γ_n(t₀)`.
    pub fn gamma(&self, t: f64) -> f64 {
        -self.level() * self.params.theta(self.params.t0(), t) + self.gamma0
    }

    pub fn psi_q(&self, q: f64, t: f64) -> Result<C64> {
        Ok(self.slice(Space::Q, t, &[q])?[0])
    }

    pub fn psi_p(&self, p: f64, t: f64) -> Result<C64> {
        Ok(self.slice(Space::P, t, &[p])?[0])
    }

    pub fn sample(&self, space: Space, x: f64, t: f64) -> Result<WaveSample> {
        Ok(WaveSample { value: self.psi(space, x, t)?, coordinate: x, t, space })
    }

    /// q space: `(W_R/π)^¼ h_n(√W_R q) e^{−Wq²/2}`.
    fn q_amplitudes(&self, t: f64, axis: &[f64]) -> Vec<C64> {
        let w = self.params.w(t);
        let scale = w.re.sqrt();
        let norm = (w.re / PI).powf(0.25);
        let half_w = w.value() * 0.5;
        axis.iter()
            .map(|&q| norm * hermite_scaled(self.n.0, scale * q) * (-half_w * q * q).exp())
            .collect()
    }

    /// p space: `(−i)ⁿ (W_R/πħ²)^¼ √(W*ⁿ/Wⁿ⁺¹) h_n(√(W_R/|W|²) p/ħ) e^{−W_p p²/2}`.
    ///
    /// The fractional power is `|W|^{−½} e^{−i(2n+1)α/2}` with `α` the
    /// continued angle of `W`. `W_R > 0` keeps `α` inside `(−π/2, π/2)`, so
    /// the principal angle is already continuous in `t`.
    fn p_amplitudes(&self, t: f64, axis: &[f64]) -> Vec<C64> {
        let hbar = self.params.hbar();
        let w = self.params.w(t);
        let w_p = w.reciprocal(hbar);
        let n = self.n.0;
        let order = (2 * n + 1) as f64;
        let prefactor = C64::new(0.0, -1.0).powu(n)
            * (w.re / (PI * hbar * hbar)).powf(0.25)
            * w.norm_sqr().powf(-0.25)
            * C64::from_polar(1.0, -order * w.unwrapped_angle / 2.0);
        let scale = w_p.re.sqrt();
        let half_w_p = w_p.value() * 0.5;
        axis.iter()
            .map(|&p| prefactor * hermite_scaled(n, scale * p) * (-half_w_p * p * p).exp())
            .collect()
    }
}

impl Wave for FockState {
    fn slice(&self, space: Space, t: f64, axis: &[f64]) -> Result<Vec<C64>> {
        let phase = C64::from_polar(1.0, self.gamma(t));
        let amps = match space {
            Space::Q => self.q_amplitudes(t, axis),
            Space::P => self.p_amplitudes(t, axis),
        };
        amps.into_iter()
            .map(|z| {
                let v = z * phase;
                if v.re.is_finite() && v.im.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::NonFinite { what: "Fock amplitude" })
                }
            })
            .collect()
    }

    fn spread(&self, space: Space, t: f64) -> (f64, f64) {
        (0.0, (self.level() / exponent_re(&self.params, space, t)).sqrt())
    }

    fn tail_extent(&self, space: Space, t: f64) -> f64 {
        ((2.0 * self.level()).sqrt() + 7.0) / exponent_re(&self.params, space, t).sqrt()
    }

    fn shortest_wavelength(&self, space: Space, t: f64) -> f64 {
        TAU / ((2.0 * self.level()).sqrt() * exponent_re(&self.params, space, t).sqrt())
    }
}

/// `W_R` or `W_{p,R}`.
fn exponent_re(params: &WaveParams, space: Space, t: f64) -> f64 {
    match space {
        Space::Q => params.w(t).re,
        Space::P => params.w_p(t).re,
    }
}

/// `W_I/W_R` (q) or `W_{p,I}/W_{p,R}` (p), from the components.
pub fn ratio(params: &WaveParams, space: Space, t: f64) -> f64 {
    let w = match space {
        Space::Q => params.w(t),
        Space::P => params.w_p(t),
    };
    w.im / w.re
}

/// `W_{p,I}/W_{p,R}` at `t`.
pub fn ratio_p(params: &WaveParams, t: f64) -> f64 {
    ratio(params, Space::P, t)
}

/// Offset `δ ∈ [0, 2π)` with `cos δ ∝ 2C` and `sin δ ∝ B − A`.
///
/// This is `atan(x, y)` with `tan δ = y/x` taken over the full circle,
/// i.e. `atan2(B − A, 2C)` shifted into `[0, 2π)`.
pub fn delta(params: &WaveParams) -> f64 {
    let d = (params.b() - params.a()).atan2(2.0 * params.c());
    if d < 0.0 {
        d + TAU
    } else {
        d
    }
}

/// `½ √((A+B)² − 4)`, the amplitude of the ratio waveform.
pub fn ratio_amplitude(params: &WaveParams) -> f64 {
    0.5 * ((params.a() + params.b()).powi(2) - 4.0).max(0.0).sqrt()
}

/// `W_{p,I}/W_{p,R} = ½√((A+B)² − 4) cos(2φ̃ + δ)`.
pub fn ratio_p_closed_form(params: &WaveParams, t: f64) -> f64 {
    ratio_amplitude(params) * (2.0 * params.phase_tilde(t) + delta(params)).cos()
}

/// `√((A+B)² − 4)/(2√2)`, identical in both quadratures.
pub fn measure_closed_form(params: &WaveParams) -> f64 {
    ratio_amplitude(params) * FRAC_1_SQRT_2
}

/// RMS of the ratio waveform over one period, by quadrature.
pub fn measure_nonstaticity(params: &WaveParams, space: Space) -> f64 {
    rms_over_period(|t| ratio(params, space, t), params.t0(), params.period())
}
