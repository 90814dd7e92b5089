#![allow(dead_code)]

use nonstatic::verify::{numerical_ft, SampledWave};
use nonstatic::{linspace, Environment, Space, Wave, WaveParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn figure_env() -> WaveParams {
    WaveParams::new(1.0, 5.0, 2.0, Environment::default()).unwrap()
}

pub fn unit_env() -> WaveParams {
    WaveParams::static_case(Environment::default()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_times(seed: u64, count: usize, max: f64) -> Vec<f64> {
    let mut r = rng(seed);
    (0..count).map(|_| r.gen_range(0.0..max)).collect()
}

/// Max-abs gap between the analytic p-space wave and the direct transform
/// of the q-space wave, both on default 1024-point axes.
pub fn fourier_gap<W: Wave>(wave: &W, t: f64, hbar: f64) -> f64 {
    let q_axis = wave.default_axis(Space::Q, &[t], 1024);
    let p_axis = wave.default_axis(Space::P, &[t], 1024);
    let q_wave = SampledWave::from_wave(wave, Space::Q, t, &q_axis).unwrap();
    let ft = numerical_ft(&q_wave, &p_axis, hbar).unwrap();
    assert!(!ft.tail_warning, "q wave has not decayed at t = {t}");
    let analytic = wave.slice(Space::P, t, &p_axis).unwrap();
    ft.wave.max_abs_diff(&analytic)
}

pub fn period_grid(periods: f64, per_period: usize, omega: f64) -> Vec<f64> {
    let t_max = periods * std::f64::consts::PI / omega;
    linspace(0.0, t_max, (periods * per_period as f64) as usize + 1)
}
