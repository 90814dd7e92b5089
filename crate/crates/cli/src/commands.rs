//! The subcommands, as library functions returning data; printing is
//! kept in the thin `run_*` wrappers.

use std::f64::consts::{PI, TAU};
use std::path::Path;

use nonstatic::verify::{self, SampledWave};
use nonstatic::{fock, linspace, DensityGrid, Space, Wave};

use crate::config::{Resolved, State};
use crate::error::CliError;
use crate::output::{destinations, emit, fmt_num, Table};

/// Gap allowed between the analytic p wave and the transformed q wave.
pub const FOURIER_TOL: f64 = 1e-8;
pub const NORM_TOL: f64 = 1e-6;
pub const ODE_TOL: f64 = 1e-9;
pub const MEASURE_TOL: f64 = 1e-8;
pub const PHASE_TOL: f64 = 0.02;
pub const INVARIANCE_TOL: f64 = 1e-10;

const FOURIER_TIMES: usize = 20;
const ODE_SAMPLES: usize = 1000;
const PHASE_PER_PERIOD: usize = 64;

pub fn density_grid(r: &Resolved, space: Space) -> Result<DensityGrid, CliError> {
    let axis = r.axis(space);
    Ok(r.state.density(space, &axis, &r.times)?)
}

pub fn density_table(grid: &DensityGrid) -> Table {
    let mut t = Table::with_capacity(vec!["t", "x", "density"], grid.values.len());
    for (time, x, d) in grid.rows() {
        t.push(&[time, x, d]);
    }
    t
}

fn grid_warnings(grid: &DensityGrid) -> Vec<String> {
    let mut out = Vec::new();
    let s = grid.space.label();
    if grid.coarse {
        out.push(format!("warning: {s} axis spacing under-resolves the wave's oscillations"));
    }
    let tail = verify::TAIL_TOL * verify::TAIL_TOL;
    let undecayed = grid.slices().any(|(_, d)| d[0] > tail || d[d.len() - 1] > tail);
    if undecayed {
        out.push(format!("warning: {s} density has not decayed at the axis ends"));
    }
    out
}

pub fn run_density(r: &Resolved) -> Result<(), CliError> {
    let spaces = r.spaces();
    let dests = destinations(r.config.output.path.as_deref(), &spaces)?;
    for (&space, dest) in spaces.iter().zip(&dests) {
        let grid = density_grid(r, space)?;
        for w in grid_warnings(&grid) {
            eprintln!("{w}");
        }
        emit(dest.as_deref(), &density_table(&grid), "density", space, &r.config)?;
    }
    Ok(())
}

/// `(t, ratio, re, im)` of `W` (q) or `W_p` (p); the Gaussian state uses
/// its own exponent parameters.
pub fn ratio_table(r: &Resolved, space: Space) -> Result<Table, CliError> {
    let mut t = Table::with_capacity(vec!["t", "ratio", "re", "im"], r.times.len());
    for &time in &r.times {
        let (re, im) = match &r.state {
            State::Fock(_) => {
                let w = match space {
                    Space::Q => r.params.w(time),
                    Space::P => r.params.w_p(time),
                };
                (w.re, w.im)
            }
            State::Gauss(g) => {
                let fr = g.frame(time)?;
                let w = match space {
                    Space::Q => fr.w,
                    Space::P => fr.w_p,
                };
                (w.re, w.im)
            }
        };
        let ratio = im / re;
        if !(ratio.is_finite() && re.is_finite() && im.is_finite()) {
            return Err(nonstatic::Error::NonFinite { what: "exponent ratio" }.into());
        }
        t.push(&[time, ratio, re, im]);
    }
    Ok(t)
}

pub fn run_ratio(r: &Resolved) -> Result<(), CliError> {
    let spaces = r.spaces();
    let dests = destinations(r.config.output.path.as_deref(), &spaces)?;
    for (&space, dest) in spaces.iter().zip(&dests) {
        emit(dest.as_deref(), &ratio_table(r, space)?, "ratio", space, &r.config)?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureReport {
    pub space: Space,
    pub rms: f64,
    /// Fock states only.
    pub closed_form: Option<f64>,
}

pub fn measure_in(r: &Resolved, space: Space) -> Result<MeasureReport, CliError> {
    Ok(match &r.state {
        State::Fock(_) => MeasureReport {
            space,
            rms: fock::measure_nonstaticity(&r.params, space),
            closed_form: Some(fock::measure_closed_form(&r.params)),
        },
        State::Gauss(g) => MeasureReport { space, rms: g.measure_nonstaticity(space)?, closed_form: None },
    })
}

pub fn measure(r: &Resolved) -> Result<Vec<MeasureReport>, CliError> {
    r.spaces().into_iter().map(|s| measure_in(r, s)).collect()
}

pub fn run_measure(r: &Resolved) -> Result<(), CliError> {
    for m in measure(r)? {
        let s = m.space.label();
        if let Some(c) = m.closed_form {
            println!("measure_{s}_closed_form={}", fmt_num(c));
        }
        println!("measure_{s}_rms={}", fmt_num(m.rms));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn below(name: &'static str, value: f64, tolerance: f64) -> Self {
        Self { name, value, tolerance, passed: value < tolerance, detail: String::new() }
    }

    fn failed(name: &'static str, tolerance: f64, detail: String) -> Self {
        Self { name, value: f64::NAN, tolerance, passed: false, detail }
    }

    pub fn line(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!("{mark} {} value={:e} tol={:e}", self.name, self.value, self.tolerance);
        if !self.detail.is_empty() {
            s.push_str(" (");
            s.push_str(&self.detail);
            s.push(')');
        }
        s
    }
}

/// Full sweep time of the state: `π/ω` for Fock, `2π/ω` for Gaussians
/// (the displaced centroid needs the longer span).
fn cycle(r: &Resolved) -> f64 {
    match r.state {
        State::Fock(_) => PI / r.params.omega(),
        State::Gauss(_) => TAU / r.params.omega(),
    }
}

fn fourier_check(r: &Resolved) -> Result<Check, CliError> {
    let t0 = r.params.t0();
    let h = cycle(r) / FOURIER_TIMES as f64;
    let mut gap = 0.0f64;
    let mut tails = false;
    for k in 0..FOURIER_TIMES {
        let t = t0 + h * k as f64;
        let q_axis = r.state.default_axis(Space::Q, &[t], nonstatic::grid::DEFAULT_AXIS_POINTS);
        let p_axis = r.state.default_axis(Space::P, &[t], nonstatic::grid::DEFAULT_AXIS_POINTS);
        let q = SampledWave::from_wave(&r.state, Space::Q, t, &q_axis)?;
        let ft = verify::numerical_ft(&q, &p_axis, r.params.hbar())?;
        tails |= ft.tail_warning;
        gap = worst([gap, ft.wave.max_abs_diff(&r.state.slice(Space::P, t, &p_axis)?)]);
    }
    let mut c = Check::below("fourier_oracle", gap, FOURIER_TOL);
    if tails {
        c.detail = "q wave not decayed at the axis ends".into();
    }
    Ok(c)
}

/// Largest value, with NaN counted as infinitely bad (`f64::max` would drop it).
fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values
        .into_iter()
        .map(|v| if v.is_nan() { f64::INFINITY } else { v })
        .fold(0.0, f64::max)
}

fn normalization_check(grids: &[DensityGrid]) -> Check {
    let gap = worst(grids.iter().flat_map(|g| g.slice_norms()).map(|n| (n - 1.0).abs()));
    Check::below("normalization", gap, NORM_TOL)
}

fn ode_check(r: &Resolved) -> Check {
    let t0 = r.params.t0();
    let h = r.params.period() / ODE_SAMPLES as f64;
    let residual = worst((0..ODE_SAMPLES).map(|k| verify::ode_residual(&r.params, t0 + h * k as f64).abs()));
    Check::below("ode_residual", residual, ODE_TOL)
}

fn measure_check(r: &Resolved) -> Result<(Check, f64), CliError> {
    let q = measure_in(r, Space::Q)?;
    let p = measure_in(r, Space::P)?;
    let mut gap = (q.rms - p.rms).abs();
    if let Some(c) = q.closed_form {
        gap = gap.max((q.rms - c).abs()).max((p.rms - c).abs());
    }
    let mut check = Check::below("measure_equality", gap, MEASURE_TOL);
    check.detail = format!("q={} p={}", fmt_num(q.rms), fmt_num(p.rms));
    Ok((check, q.rms.max(p.rms)))
}

fn invariance_check(grids: &[DensityGrid]) -> Check {
    let drift = worst(grids.iter().flat_map(|g| {
        let first = g.slice(0);
        g.slices().flat_map(move |(_, s)| s.iter().zip(first).map(|(a, b)| (a - b).abs()))
    }));
    Check::below("time_invariance", drift, INVARIANCE_TOL)
}

/// Per-slice variances by quadrature over two `π/ω` periods.
pub fn variance_series(r: &Resolved, space: Space) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let t0 = r.params.t0();
    let times = linspace(t0, t0 + 2.0 * r.params.period(), 2 * PHASE_PER_PERIOD + 1);
    let axis = r.state.default_axis(space, &times, nonstatic::grid::DEFAULT_AXIS_POINTS);
    let grid = r.state.density(space, &axis, &times)?;
    let vars = grid.slices().map(|(_, d)| verify::density_moments(&axis, d).variance).collect();
    Ok((times, vars))
}

fn phase_check(r: &Resolved) -> Result<Check, CliError> {
    let (times, vq) = variance_series(r, Space::Q)?;
    let (_, vp) = variance_series(r, Space::P)?;
    Ok(match verify::phase_opposition(&times, &vq, &vp, r.params.omega()) {
        Ok(phase) => {
            let mut c = Check::below("phase_opposition", (phase - PI).abs(), PHASE_TOL);
            c.detail = format!("phase={}", fmt_num(phase));
            c
        }
        Err(e) => Check::failed("phase_opposition", PHASE_TOL, e.to_string()),
    })
}

/// Runs every check on the configured state, always in both spaces.
pub fn verify_checks(r: &Resolved) -> Result<Vec<Check>, CliError> {
    let grids = Space::BOTH
        .iter()
        .map(|&s| density_grid(r, s))
        .collect::<Result<Vec<_>, _>>()?;
    let mut checks = vec![fourier_check(r)?, normalization_check(&grids), ode_check(r)];
    let (m, size) = measure_check(r)?;
    checks.push(m);
    if size < MEASURE_TOL {
        checks.push(invariance_check(&grids));
    } else {
        checks.push(phase_check(r)?);
    }
    Ok(checks)
}

pub fn run_verify(r: &Resolved) -> Result<(), CliError> {
    let checks = verify_checks(r)?;
    for c in &checks {
        println!("{}", c.line());
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join(", ")))
    }
}

/// Summary of a long-format density table.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub slices: usize,
    pub variance_period: Option<f64>,
    /// First time in the series at which the fitted variance peaks.
    pub variance_peak_t: Option<f64>,
    pub centroid_amplitude: f64,
    pub centroid_period: Option<f64>,
}

/// Slice times, per-slice axes and per-slice densities.
pub type DensitySlices = (Vec<f64>, Vec<Vec<f64>>, Vec<Vec<f64>>);

/// Reads `t,x,density` rows grouped by time.
pub fn read_density_csv(path: &Path) -> Result<DensitySlices, CliError> {
    let io_err = |e: csv::Error| CliError::Config(format!("{}: {e}", path.display()));
    let mut rd = csv::Reader::from_path(path).map_err(io_err)?;
    let headers = rd.headers().map_err(io_err)?.clone();
    if headers.iter().collect::<Vec<_>>() != ["t", "x", "density"] {
        return Err(CliError::Config(format!("{}: expected columns t,x,density", path.display())));
    }
    let mut times: Vec<f64> = Vec::new();
    let mut axes: Vec<Vec<f64>> = Vec::new();
    let mut dens: Vec<Vec<f64>> = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(io_err)?;
        let v: Vec<f64> = rec
            .iter()
            .map(|s| s.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        if times.last() != Some(&v[0]) {
            times.push(v[0]);
            axes.push(Vec::new());
            dens.push(Vec::new());
        }
        axes.last_mut().unwrap().push(v[1]);
        dens.last_mut().unwrap().push(v[2]);
    }
    Ok((times, axes, dens))
}

pub fn analyze(times: &[f64], axes: &[Vec<f64>], dens: &[Vec<f64>]) -> Analysis {
    let moments: Vec<_> = axes.iter().zip(dens).map(|(x, d)| verify::density_moments(x, d)).collect();
    let vars: Vec<f64> = moments.iter().map(|m| m.variance).collect();
    let means: Vec<f64> = moments.iter().map(|m| m.mean).collect();
    let spread = |v: &[f64]| v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min);
    let scale = vars.iter().cloned().fold(0.0, f64::max).sqrt();

    let oscillating = |v: &[f64], ref_scale: f64| spread(v) > 1e-9 * ref_scale.max(1e-300);
    let variance_period = if oscillating(&vars, scale * scale) {
        verify::dominant_period(times, &vars).ok()
    } else {
        None
    };
    let variance_peak_t = variance_period.and_then(|period| {
        let fit = verify::fit_at_frequency(times, &vars, TAU / period).ok()?;
        let nu = TAU / period;
        let t = (TAU - fit.phase_at_origin) / nu;
        Some(times[0] + (t - times[0]).rem_euclid(period))
    });
    let centroid_amplitude = 0.5 * spread(&means);
    let centroid_period = if oscillating(&means, scale) {
        verify::dominant_period(times, &means).ok()
    } else {
        None
    };
    Analysis { slices: times.len(), variance_period, variance_peak_t, centroid_amplitude, centroid_period }
}

pub fn run_analyze(path: &Path) -> Result<(), CliError> {
    let (times, axes, dens) = read_density_csv(path)?;
    if times.len() < 8 {
        return Err(CliError::Config(format!("{}: too few time slices ({})", path.display(), times.len())));
    }
    let a = analyze(&times, &axes, &dens);
    let opt = |v: Option<f64>| v.map(fmt_num).unwrap_or_else(|| "none".into());
    println!("slices={}", a.slices);
    println!("variance_period={}", opt(a.variance_period));
    println!("variance_peak_t={}", opt(a.variance_peak_t));
    println!("centroid_amplitude={}", fmt_num(a.centroid_amplitude));
    println!("centroid_period={}", opt(a.centroid_period));
    Ok(())
}
