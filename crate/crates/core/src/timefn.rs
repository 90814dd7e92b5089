//! Time functions shared by every nonstatic wave: the phase `φ̃(t)`, the
//! width function `f(t)`, the exponent parameters `W(t)` and `W_p(t)`, and
//! the accumulated phase integral `Θ`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;

use crate::error::{invalid, Result};

/// Tolerance on the constraint `AB − C² = 1`.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// Static medium constants and the phase origin of `f(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Environment {
    pub omega: f64,
    pub phi: f64,
    pub t0: f64,
    pub epsilon: f64,
    pub hbar: f64,
}

impl Default for Environment {
    /// Dimensionless units: `ω = ε = ħ = 1`, `t₀ = φ = 0`.
    fn default() -> Self {
        Self { omega: 1.0, phi: 0.0, t0: 0.0, epsilon: 1.0, hbar: 1.0 }
    }
}

/// Wave configuration in a static environment.
///
/// `A`, `B`, `C` shape the periodic width function
/// `f = A sin²φ̃ + B cos²φ̃ + C sin 2φ̃` and must satisfy `AB − C² = 1` with
/// `A, B > 0`, which keeps `f` strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveParams {
    a: f64,
    b: f64,
    c: f64,
    env: Environment,
}

impl WaveParams {
    pub fn new(a: f64, b: f64, c: f64, env: Environment) -> Result<Self> {
        for (name, v) in [("A", a), ("B", b), ("C", c)] {
            if !v.is_finite() {
                return Err(invalid(name, format!("must be finite, got {v}")));
            }
        }
        if a <= 0.0 {
            return Err(invalid("A", format!("must be positive, got {a}")));
        }
        if b <= 0.0 {
            return Err(invalid("B", format!("must be positive, got {b}")));
        }
        let drift = a * b - c * c - 1.0;
        if drift.abs() > CONSTRAINT_TOL {
            return Err(invalid(
                "C",
                format!("AB - C^2 = 1 violated by {drift:e} (A={a}, B={b}, C={c})"),
            ));
        }
        check_env(&env)?;
        Ok(Self { a, b, c, env })
    }

    /// Derives `C = ±√(AB − 1)` from `A`, `B` and the sign of `C`.
    pub fn from_ab(a: f64, b: f64, c_negative: bool, env: Environment) -> Result<Self> {
        let ab = a * b;
        if !(ab >= 1.0) {
            return Err(invalid("B", format!("AB must be at least 1, got {ab}")));
        }
        let c = (ab - 1.0).sqrt();
        Self::new(a, b, if c_negative { -c } else { c }, env)
    }

    /// `A = B = 1`, `C = 0`: the ordinary stationary wave.
    pub fn static_case(env: Environment) -> Result<Self> {
        Self::new(1.0, 1.0, 0.0, env)
    }

    /// Builds parameters without checking any invariant. Only meant for
    /// negative controls that need a constraint-violating `f`.
    #[doc(hidden)]
    pub fn new_unchecked(a: f64, b: f64, c: f64, env: Environment) -> Self {
        Self { a, b, c, env }
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn env(&self) -> &Environment {
        &self.env
    }
    pub fn omega(&self) -> f64 {
        self.env.omega
    }
    pub fn hbar(&self) -> f64 {
        self.env.hbar
    }
    pub fn epsilon(&self) -> f64 {
        self.env.epsilon
    }
    pub fn t0(&self) -> f64 {
        self.env.t0
    }

    pub fn is_static(&self) -> bool {
        (self.a - self.b).abs() <= CONSTRAINT_TOL && self.c.abs() <= CONSTRAINT_TOL
    }

    /// Period of `f` (and of every undisplaced density), `π/ω`.
    pub fn period(&self) -> f64 {
        PI / self.env.omega
    }

    pub fn phase_tilde(&self, t: f64) -> f64 {
        self.env.omega * (t - self.env.t0) + self.env.phi
    }

    pub fn f(&self, t: f64) -> f64 {
        let (s, c) = self.phase_tilde(t).sin_cos();
        self.a * s * s + self.b * c * c + 2.0 * self.c * s * c
    }

    pub fn f_dot(&self, t: f64) -> f64 {
        let (s2, c2) = (2.0 * self.phase_tilde(t)).sin_cos();
        self.env.omega * ((self.a - self.b) * s2 + 2.0 * self.c * c2)
    }

    pub fn f_ddot(&self, t: f64) -> f64 {
        let (s2, c2) = (2.0 * self.phase_tilde(t)).sin_cos();
        let w = self.env.omega;
        2.0 * w * w * ((self.a - self.b) * c2 - 2.0 * self.c * s2)
    }

    /// `W(t) = εω/(ħf) − iεḟ/(2ħf)`, principal angle.
    pub fn w(&self, t: f64) -> ComplexW {
        let f = self.f(t);
        let Environment { omega, epsilon, hbar, .. } = self.env;
        ComplexW::new(
            epsilon * omega / (hbar * f),
            -epsilon * self.f_dot(t) / (2.0 * hbar * f),
        )
    }

    /// `W_p(t) = 1/(ħ² W(t))`.
    pub fn w_p(&self, t: f64) -> ComplexW {
        self.w(t).reciprocal(self.env.hbar)
    }

    /// `W` along a time sweep with its angle continued from sample to sample.
    pub fn w_sweep(&self, times: &[f64]) -> Vec<ComplexW> {
        let mut out: Vec<ComplexW> = Vec::with_capacity(times.len());
        for &t in times {
            let w = self.w(t);
            out.push(match out.last() {
                Some(prev) => w.continued_from(prev.unwrapped_angle),
                None => w,
            });
        }
        out
    }

    /// Branch-continued antiderivative of `1/f` with respect to `φ̃`.
    ///
    /// `∫ dφ̃ / f = atan(A tan φ̃ + C) / √(AB − C²)`; each time `φ̃` crosses
    /// `π/2 + kπ` the arctangent jumps by `−π`, so the reduced angle is
    /// offset by the number of half turns.
    fn phase_antiderivative(&self, phase: f64) -> f64 {
        let turns = (phase / PI).round();
        let reduced = phase - turns * PI;
        let root = (self.a * self.b - self.c * self.c).sqrt();
        ((self.a * reduced.tan() + self.c) / root).atan() / root + turns * PI / root
    }

    /// `ω ∫ dt′/f(t′)` over `[t_from, t_to]`.
    pub fn theta(&self, t_from: f64, t_to: f64) -> f64 {
        if t_from == t_to {
            return 0.0;
        }
        self.phase_antiderivative(self.phase_tilde(t_to))
            - self.phase_antiderivative(self.phase_tilde(t_from))
    }
}

fn check_env(env: &Environment) -> Result<()> {
    for (name, v) in [("omega", env.omega), ("epsilon", env.epsilon), ("hbar", env.hbar)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(invalid(name, format!("must be positive and finite, got {v}")));
        }
    }
    for (name, v) in [("phi", env.phi), ("t0", env.t0)] {
        if !v.is_finite() {
            return Err(invalid(name, format!("must be finite, got {v}")));
        }
    }
    Ok(())
}

/// A complex exponent parameter together with a polar angle that can be
/// continued across a time sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexW {
    pub re: f64,
    pub im: f64,
    /// Congruent to `atan2(im, re)` modulo 2π.
    pub unwrapped_angle: f64,
}

impl ComplexW {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im, unwrapped_angle: im.atan2(re) }
    }

    pub fn from_complex(z: C64) -> Self {
        Self::new(z.re, z.im)
    }

    pub fn value(&self) -> C64 {
        C64::new(self.re, self.im)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    /// `1/(ħ² z)`; the angle flips sign.
    pub fn reciprocal(&self, hbar: f64) -> Self {
        let d = hbar * hbar * self.norm_sqr();
        Self { re: self.re / d, im: -self.im / d, unwrapped_angle: -self.unwrapped_angle }
    }

    /// Moves the angle to the branch nearest `reference`.
    pub fn continued_from(self, reference: f64) -> Self {
        Self { unwrapped_angle: unwrap_near(self.unwrapped_angle, reference), ..self }
    }
}

/// Shifts `angle` by a multiple of 2π so it lies within π of `reference`.
pub fn unwrap_near(angle: f64, reference: f64) -> f64 {
    angle + TAU * ((reference - angle) / TAU).round()
}
