//! Nonstatic Gaussian waves, displaced or not.
//!
//! The initial waveform is `(K_R/π)^¼ exp(−K(q − ξ)²/2)` at `t = 0`; every
//! later time is described by a [`GaussianFrame`] of auxiliary functions.
//! The frame formulas reference `W(0)` and `Θ(t) = ω∫₀ᵗ dt′/f`, so the
//! environment must use `t₀ = 0`.

use std::f64::consts::{PI, TAU};

use crate::error::{invalid, Error, Result};
use crate::grid::Wave;
use crate::timefn::{ComplexW, WaveParams};
use crate::verify::rms_over_period;
use crate::{Space, C64};

/// Smallest `|g(t)|` accepted before a frame is declared degenerate.
const MIN_G: f64 = 1e-12;

/// Initial Gaussian data `K = K_R + iK_I` and displacement `ξ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    k_re: f64,
    k_im: f64,
    xi: f64,
}

impl GaussianParams {
    pub fn new(k_re: f64, k_im: f64, xi: f64) -> Result<Self> {
        if !(k_re.is_finite() && k_re > 0.0) {
            return Err(invalid("K_re", format!("must be positive and finite, got {k_re}")));
        }
        if !k_im.is_finite() {
            return Err(invalid("K_im", format!("must be finite, got {k_im}")));
        }
        if !xi.is_finite() {
            return Err(invalid("xi", format!("must be finite, got {xi}")));
        }
        Ok(Self { k_re, k_im, xi })
    }

    pub fn k(&self) -> C64 {
        C64::new(self.k_re, self.k_im)
    }
    pub fn k_re(&self) -> f64 {
        self.k_re
    }
    pub fn k_im(&self) -> f64 {
        self.k_im
    }
    pub fn xi(&self) -> f64 {
        self.xi
    }
}

/// Auxiliary functions of the Gaussian wave at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianFrame {
    pub t: f64,
    pub g: C64,
    /// Normalization factor `N(t)`.
    pub n: C64,
    /// q-space exponent parameter `𝒲(t)`.
    pub w: C64,
    /// p-space exponent parameter `𝒲_p = 1/(ħ²𝒲)`.
    pub w_p: C64,
    /// Linear coefficient `R(t)`; zero when undisplaced.
    pub r: C64,
    /// `Θ(t) = ω∫₀ᵗ dt′/f`.
    pub theta: f64,
}

impl GaussianFrame {
    pub fn w_component(&self) -> ComplexW {
        ComplexW::from_complex(self.w)
    }

    pub fn w_p_component(&self) -> ComplexW {
        ComplexW::from_complex(self.w_p)
    }
}

/// A nonstatic Gaussian wave in a static environment with `t₀ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianState {
    params: WaveParams,
    gp: GaussianParams,
    w0: C64,
}

impl GaussianState {
    pub fn new(params: WaveParams, gp: GaussianParams) -> Result<Self> {
        if params.t0() != 0.0 {
            return Err(invalid(
                "t0",
                format!("Gaussian waves are referenced to t0 = 0, got {}", params.t0()),
            ));
        }
        Ok(Self { params, gp, w0: params.w(0.0).value() })
    }

    pub fn params(&self) -> &WaveParams {
        &self.params
    }

    pub fn gaussian(&self) -> &GaussianParams {
        &self.gp
    }

    pub fn frame(&self, t: f64) -> Result<GaussianFrame> {
        let p = &self.params;
        let k = self.gp.k();
        let xi = self.gp.xi;
        let w0 = self.w0;
        let wt = p.w(t).value();
        let theta = p.theta(0.0, t);

        let plus = k + w0.conj();
        let minus = k - w0;
        let rot = C64::from_polar(1.0, 2.0 * theta);
        let g = plus * rot - minus;
        if !(g.norm() >= MIN_G) {
            return Err(Error::DegenerateFrame { t, magnitude: g.norm() });
        }

        let w = wt + 2.0 * wt.re * minus / g;
        let w_p = 1.0 / (p.hbar() * p.hbar() * w);
        let root = (w0.re * wt.re).sqrt();
        let r = 2.0 * k * xi * root / (g * C64::from_polar(1.0, -theta));

        // g e^{−2iΘ} = plus − minus e^{−2iΘ} traces a circle around `plus`
        // of radius |minus| < |plus|, so its angle relative to `plus` stays
        // within (−π/2, π/2). Splitting the root that way keeps it continuous
        // and positive at t = 0 where g = 2W_R(0).
        let z = g * rot.conj();
        let sqrt_z = plus.sqrt() * (z / plus).sqrt();

        let n = (root / PI.sqrt()).sqrt()
            * (2.0 * self.gp.k_re.sqrt()).sqrt()
            / sqrt_z
            * (-0.5 * (k * xi * xi + C64::new(0.0, theta))).exp()
            * (k * k * xi * xi / plus * (0.5 - w0.re / g)).exp();

        Ok(GaussianFrame { t, g, n, w, w_p, r, theta })
    }

    /// The initial waveform, independent of the frame machinery.
    pub fn initial_wave(&self, q: f64) -> C64 {
        let d = q - self.gp.xi;
        (self.gp.k_re / PI).powf(0.25) * (-0.5 * self.gp.k() * d * d).exp()
    }

    pub fn psi_q(&self, q: f64, t: f64) -> Result<C64> {
        Ok(self.slice(Space::Q, t, &[q])?[0])
    }

    pub fn psi_p(&self, p: f64, t: f64) -> Result<C64> {
        Ok(self.slice(Space::P, t, &[p])?[0])
    }

    /// `𝒲_I/𝒲_R` (q) or `𝒲_{p,I}/𝒲_{p,R}` (p).
    pub fn ratio(&self, space: Space, t: f64) -> Result<f64> {
        let fr = self.frame(t)?;
        let z = match space {
            Space::Q => fr.w,
            Space::P => fr.w_p,
        };
        Ok(z.im / z.re)
    }

    /// RMS of the ratio over `2π/ω`.
    pub fn measure_nonstaticity(&self, space: Space) -> Result<f64> {
        // validate the whole sweep first so the quadrature never sees an error
        let period = TAU / self.params.omega();
        let nodes = crate::verify::RMS_NODES;
        for k in 0..nodes {
            self.frame(period * k as f64 / nodes as f64)?;
        }
        Ok(rms_over_period(
            |t| self.ratio(space, t).unwrap_or(f64::NAN),
            0.0,
            period,
        ))
    }

    /// Closed-form `(mean, variance)` of the density at `t`.
    pub fn moments(&self, space: Space, t: f64) -> Result<(f64, f64)> {
        let fr = self.frame(t)?;
        Ok(match space {
            Space::Q => (fr.r.re / fr.w.re, 0.5 / fr.w.re),
            Space::P => {
                let hbar = self.params.hbar();
                let mean = hbar * fr.r.im + hbar * fr.r.re * fr.w_p.im / fr.w_p.re;
                (mean, 0.5 / fr.w_p.re)
            }
        })
    }

    fn exponent_re(&self, space: Space, t: f64) -> f64 {
        match self.frame(t) {
            Ok(fr) => match space {
                Space::Q => fr.w.re,
                Space::P => fr.w_p.re,
            },
            Err(_) => f64::NAN,
        }
    }
}

impl Wave for GaussianState {
    fn slice(&self, space: Space, t: f64, axis: &[f64]) -> Result<Vec<C64>> {
        let fr = self.frame(t)?;
        let amps: Vec<C64> = match space {
            Space::Q => axis.iter().map(|&q| fr.n * (-0.5 * fr.w * q * q + fr.r * q).exp()).collect(),
            Space::P => {
                let hbar = self.params.hbar();
                let pre = fr.n / (hbar * fr.w).sqrt();
                let shift = C64::new(0.0, hbar) * fr.r;
                axis.iter()
                    .map(|&p| {
                        let u = p + shift;
                        pre * (-0.5 * fr.w_p * u * u).exp()
                    })
                    .collect()
            }
        };
        if amps.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(amps)
        } else {
            Err(Error::NonFinite { what: "Gaussian amplitude" })
        }
    }

    fn spread(&self, space: Space, t: f64) -> (f64, f64) {
        match self.moments(space, t) {
            Ok((mean, var)) => (mean, var.sqrt()),
            Err(_) => (f64::NAN, f64::NAN),
        }
    }

    fn tail_extent(&self, space: Space, t: f64) -> f64 {
        8.0 / self.exponent_re(space, t).sqrt()
    }

    fn shortest_wavelength(&self, space: Space, t: f64) -> f64 {
        TAU / self.exponent_re(space, t).sqrt()
    }
}
