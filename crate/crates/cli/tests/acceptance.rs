//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::f64::consts::{FRAC_PI_4, PI, TAU};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nonstatic::fock::{self, delta, measure_closed_form, measure_nonstaticity};
use nonstatic::verify::{
    density_moments, dominant_period, fit_oscillation, numerical_ft, ode_residual, phase_opposition, SampledWave,
};
use nonstatic::{
    linspace, DensityGrid, Environment, FockIndex, FockState, GaussianParams, GaussianState, Space, Wave, WaveParams,
};
use nonstatic_cli::commands::density_grid;
use nonstatic_cli::config::{Resolved, RunConfig, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MEASURE_TOL: f64 = 1e-8;
const MEASURE_TIME: Duration = Duration::from_secs(1);
const AMPLITUDE_TOL: f64 = 1e-6;
const DELTA_TOL: f64 = 1e-9;
const FOURIER_TOL: f64 = 1e-8;
const FOURIER_TIME: Duration = Duration::from_secs(30);
const PERIOD_REL_TOL: f64 = 1e-3;
const PHASE_TOL: f64 = 0.02;
const ODE_TOL: f64 = 1e-9;
const ODE_CONTROL_MIN: f64 = 1e-3;
const NORM_TOL: f64 = 1e-6;
const HEISENBERG_SLACK: f64 = 1e-9;
const STATIC_TOL: f64 = 1e-10;
const REDUCTION_TOL: f64 = 1e-10;

const GOLDEN: [&str; 6] = ["fig1.toml", "fig2.toml", "fig3.toml", "fig4.toml", "fig5.toml", "static.toml"];

type Outcome = (bool, String);

fn figure_params() -> WaveParams {
    WaveParams::new(1.0, 5.0, 2.0, Environment::default()).unwrap()
}

fn gauss(k_re: f64, k_im: f64, xi: f64) -> GaussianState {
    GaussianState::new(figure_params(), GaussianParams::new(k_re, k_im, xi).unwrap()).unwrap()
}

fn fock_state(params: WaveParams, n: u32) -> FockState {
    FockState::new(params, FockIndex::new(n).unwrap())
}

fn grid<W: Wave>(wave: &W, space: Space, times: &[f64]) -> DensityGrid {
    let axis = wave.default_axis(space, times, 1024);
    wave.density(space, &axis, times).unwrap()
}

fn variances(g: &DensityGrid) -> Vec<f64> {
    g.slices().map(|(_, s)| density_moments(&g.axis, s).variance).collect()
}

fn means(g: &DensityGrid) -> Vec<f64> {
    g.slices().map(|(_, s)| density_moments(&g.axis, s).mean).collect()
}

fn golden_configs() -> Vec<(String, Resolved)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs");
    GOLDEN
        .iter()
        .map(|name| {
            let cfg = RunConfig::load(&dir.join(name)).unwrap();
            (name.to_string(), cfg.resolve(false).unwrap())
        })
        .collect()
}

fn ac1_measure() -> Outcome {
    let start = Instant::now();
    let p = figure_params();
    let closed = measure_closed_form(&p);
    let q = measure_nonstaticity(&p, Space::Q);
    let pp = measure_nonstaticity(&p, Space::P);
    let elapsed = start.elapsed();
    let worst = [closed, q, pp].iter().map(|v| (v - 2.0).abs()).fold(0.0, f64::max);
    (
        worst < MEASURE_TOL && elapsed < MEASURE_TIME,
        format!("closed={closed:.12} rms_q={q:.12} rms_p={pp:.12} max_err={worst:.1e} time={elapsed:?}"),
    )
}

fn ac2_amplitude() -> Outcome {
    let expected = 2.0 * 2f64.sqrt();
    let times = linspace(0.0, 2.0 * PI, 257);
    let fock_series: Vec<f64> = times.iter().map(|&t| fock::ratio_p(&figure_params(), t)).collect();
    let g = gauss(1.0, 2.0, 0.0);
    let gauss_series: Vec<f64> = times.iter().map(|&t| g.ratio(Space::P, t).unwrap()).collect();
    let fa = fit_oscillation(&times, &fock_series, 1.0).unwrap().amplitude;
    let ga = fit_oscillation(&times, &gauss_series, 1.0).unwrap().amplitude;
    let d = delta(&figure_params());
    let ok = (fa - expected).abs() < AMPLITUDE_TOL
        && (ga - expected).abs() < AMPLITUDE_TOL
        && (d - FRAC_PI_4).abs() < DELTA_TOL;
    (ok, format!("fock={fa:.10} gaussian={ga:.10} delta={d:.12}"))
}

fn fourier_gap<W: Wave>(wave: &W, t: f64) -> f64 {
    let q_axis = wave.default_axis(Space::Q, &[t], 1024);
    let p_axis = wave.default_axis(Space::P, &[t], 1024);
    let q = SampledWave::from_wave(wave, Space::Q, t, &q_axis).unwrap();
    let ft = numerical_ft(&q, &p_axis, 1.0).unwrap();
    let analytic = wave.slice(Space::P, t, &p_axis).unwrap();
    if ft.tail_warning {
        f64::INFINITY
    } else {
        ft.wave.max_abs_diff(&analytic)
    }
}

fn ac3_fourier() -> Outcome {
    let start = Instant::now();
    let times = linspace(0.0, TAU, 21)[..20].to_vec();
    let mut worst_fock = 0.0f64;
    for n in 0..=10 {
        let s = fock_state(figure_params(), n);
        for &t in &times {
            worst_fock = worst_fock.max(fourier_gap(&s, t));
        }
    }
    let mut worst_gauss = 0.0f64;
    for xi in [0.0, 1.0] {
        let s = gauss(1.0, 1.0, xi);
        for &t in &times {
            worst_gauss = worst_gauss.max(fourier_gap(&s, t));
        }
    }
    let elapsed = start.elapsed();
    (
        worst_fock.max(worst_gauss) < FOURIER_TOL && elapsed < FOURIER_TIME,
        format!("fock_max={worst_fock:.1e} gaussian_max={worst_gauss:.1e} time={elapsed:?}"),
    )
}

fn ac4_periods() -> Outcome {
    let times = linspace(0.0, 4.0 * PI, 257);
    let mut ok = true;
    let mut parts = Vec::new();
    let fock5 = fock_state(figure_params(), 5);
    let undisplaced = gauss(1.0, 1.0, 0.0);
    for (label, wave) in [("fock5", &fock5 as &dyn WaveDyn), ("gauss", &undisplaced as &dyn WaveDyn)] {
        for space in Space::BOTH {
            let period = dominant_period(&times, &variances(&wave.grid(space, &times))).unwrap();
            ok &= ((period - PI) / PI).abs() < PERIOD_REL_TOL;
            parts.push(format!("{label}_{space}={period:.6}"));
        }
    }
    let displaced = gauss(1.0, 1.0, 1.0);
    let long = linspace(0.0, 8.0 * PI, 513);
    let centroid = dominant_period(&long, &means(&grid(&displaced, Space::P, &long))).unwrap();
    ok &= ((centroid - TAU) / TAU).abs() < PERIOD_REL_TOL;
    parts.push(format!("displaced_p_centroid={centroid:.6}"));
    (ok, parts.join(" "))
}

/// Object-safe view used to loop over different state types.
trait WaveDyn {
    fn grid(&self, space: Space, times: &[f64]) -> DensityGrid;
}

impl<W: Wave> WaveDyn for W {
    fn grid(&self, space: Space, times: &[f64]) -> DensityGrid {
        grid(self, space, times)
    }
}

fn ac5_phase() -> Outcome {
    let times = linspace(0.0, 2.0 * PI, 129);
    let mut ok = true;
    let mut parts = Vec::new();
    let fock5 = fock_state(figure_params(), 5);
    let undisplaced = gauss(1.0, 1.0, 0.0);
    let displaced = gauss(1.0, 1.0, 1.0);
    let cases: [(&str, &dyn WaveDyn); 3] =
        [("fock5", &fock5), ("gauss", &undisplaced), ("displaced_centered", &displaced)];
    for (label, wave) in cases {
        // central variances: the centroid motion is removed by construction
        let vq = variances(&wave.grid(Space::Q, &times));
        let vp = variances(&wave.grid(Space::P, &times));
        let phase = phase_opposition(&times, &vq, &vp, 1.0).unwrap();
        ok &= (phase - PI).abs() < PHASE_TOL;
        parts.push(format!("{label}={phase:.6}"));
    }
    (ok, parts.join(" "))
}

fn ac6_ode() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let a = rng.gen_range(0.2..5.0);
        let b = rng.gen_range((1.0 / a)..(1.0 / a + 5.0));
        let env = Environment {
            omega: rng.gen_range(0.2..3.0),
            phi: rng.gen_range(-PI..PI),
            t0: rng.gen_range(-2.0..2.0),
            epsilon: rng.gen_range(0.5..2.0),
            hbar: rng.gen_range(0.5..2.0),
        };
        let p = WaveParams::from_ab(a, b, rng.gen_bool(0.5), env).unwrap();
        let t = rng.gen_range(-20.0..20.0);
        worst = worst.max(ode_residual(&p, t).abs());
    }
    let bad = WaveParams::new_unchecked(1.0, 5.0, 2.1, Environment::default());
    let control = linspace(0.0, PI, 1000).iter().map(|&t| ode_residual(&bad, t).abs()).fold(0.0, f64::max);
    (
        worst < ODE_TOL && control > ODE_CONTROL_MIN,
        format!("max_valid={worst:.1e} corrupted_control_max={control:.3e}"),
    )
}

fn ac7_normalization(configs: &[(String, Resolved)]) -> Outcome {
    let mut worst = 0.0f64;
    for (_, r) in configs {
        for space in Space::BOTH {
            for n in density_grid(r, space).unwrap().slice_norms() {
                worst = worst.max((n - 1.0).abs());
            }
        }
    }
    (worst < NORM_TOL, format!("configs={} max_norm_err={worst:.1e}", configs.len()))
}

fn ac8_squeezing(configs: &[(String, Resolved)]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, r) in configs {
        if r.params.is_static() {
            continue;
        }
        let env = r.params.env();
        // static-medium spread of the same state
        let level = match r.state {
            State::Fock(s) => 2.0 * s.n().get() as f64 + 1.0,
            State::Gauss(_) => 1.0,
        };
        let ref_q = (level * env.hbar / (2.0 * env.epsilon * env.omega)).sqrt();
        let ref_p = (level * env.epsilon * env.omega * env.hbar / 2.0).sqrt();
        let sq: Vec<f64> = variances(&density_grid(r, Space::Q).unwrap()).iter().map(|v| v.sqrt()).collect();
        let sp: Vec<f64> = variances(&density_grid(r, Space::P).unwrap()).iter().map(|v| v.sqrt()).collect();
        let min_q = sq.iter().cloned().fold(f64::INFINITY, f64::min);
        let min_p = sp.iter().cloned().fold(f64::INFINITY, f64::min);
        let min_product = sq.iter().zip(&sp).map(|(a, b)| a * b).fold(f64::INFINITY, f64::min);
        let good = min_q < ref_q && min_p < ref_p && min_product >= env.hbar / 2.0 - HEISENBERG_SLACK;
        ok &= good;
        parts.push(format!(
            "{name}: min_sq={min_q:.4}<{ref_q:.4} min_sp={min_p:.4}<{ref_p:.4} min_sqsp={min_product:.4}"
        ));
    }
    (ok, parts.join("; "))
}

fn ac9_static() -> Outcome {
    let env = Environment::default();
    let still = WaveParams::static_case(env).unwrap();
    let times = linspace(0.0, TAU, 33);
    let gs = GaussianState::new(still, GaussianParams::new(env.epsilon * env.omega / env.hbar, 0.0, 0.0).unwrap())
        .unwrap();
    let f0 = fock_state(still, 0);
    let f5 = fock_state(still, 5);
    let mut drift = 0.0f64;
    let waves: [&dyn WaveDyn; 3] = [&f0, &f5, &gs];
    for w in waves {
        for space in Space::BOTH {
            let g = w.grid(space, &times);
            let first = g.slice(0).to_vec();
            for (_, s) in g.slices() {
                drift = drift.max(s.iter().zip(&first).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
            }
        }
    }
    let mut measure = 0.0f64;
    for space in Space::BOTH {
        measure = measure
            .max(measure_nonstaticity(&still, space).abs())
            .max(gs.measure_nonstaticity(space).unwrap().abs());
    }
    measure = measure.max(measure_closed_form(&still));
    (drift < STATIC_TOL && measure == 0.0, format!("max_slice_drift={drift:.1e} measure={measure:e}"))
}

fn ac10_reduction() -> Outcome {
    let p = figure_params();
    let w0 = p.w(0.0).value();
    let g = GaussianState::new(p, GaussianParams::new(w0.re, w0.im, 0.0).unwrap()).unwrap();
    let f = fock_state(p, 0);
    let times = linspace(0.0, TAU, 41);
    let mut worst = 0.0f64;
    for space in Space::BOTH {
        let axis = f.default_axis(space, &times, 1024);
        let dg = g.density(space, &axis, &times).unwrap();
        let df = f.density(space, &axis, &times).unwrap();
        worst = worst.max(dg.values.iter().zip(&df.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
    }
    (worst < REDUCTION_TOL, format!("max_density_gap={worst:.1e}"))
}

fn main() -> ExitCode {
    let configs = golden_configs();
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("AC1 nonstaticity measure", Box::new(ac1_measure)),
        ("AC2 ratio amplitude", Box::new(ac2_amplitude)),
        ("AC3 Fourier oracle", Box::new(ac3_fourier)),
        ("AC4 periods", Box::new(ac4_periods)),
        ("AC5 phase opposition", Box::new(ac5_phase)),
        ("AC6 ODE residual", Box::new(ac6_ode)),
        ("AC7 normalization", Box::new(|| ac7_normalization(&configs))),
        ("AC8 squeezing", Box::new(|| ac8_squeezing(&configs))),
        ("AC9 static reduction", Box::new(ac9_static)),
        ("AC10 Fock reduction", Box::new(ac10_reduction)),
    ];
    let mut failures = 0;
    for (name, check) in &criteria {
        let (passed, detail) = check();
        if !passed {
            failures += 1;
        }
        println!("{} {name}: {detail}", if passed { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
