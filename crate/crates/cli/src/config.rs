//! Run configuration: TOML file, command-line overrides, and validation.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use nonstatic::{
    linspace, Environment, FockIndex, FockState, GaussianParams, GaussianState, Space, Wave,
    WaveParams, C64,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub wave: WaveSection,
    #[serde(default)]
    pub state: StateSpec,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub output: OutputSection,
}

/// `A`, `B`, `C` and the medium. When `c` is absent it is derived as
/// `±√(AB − 1)` with the sign from `c_negative`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WaveSection {
    pub a: f64,
    pub b: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    pub c_negative: bool,
    pub omega: f64,
    pub phi: f64,
    pub t0: f64,
    pub epsilon: f64,
    pub hbar: f64,
}

impl Default for WaveSection {
    fn default() -> Self {
        let env = Environment::default();
        Self {
            a: 1.0,
            b: 5.0,
            c: None,
            c_negative: false,
            omega: env.omega,
            phi: env.phi,
            t0: env.t0,
            epsilon: env.epsilon,
            hbar: env.hbar,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    /// Coordinate axis; chosen per space from the wave's extent when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<AxisSpec>,
    pub times: AxisSpec,
    pub space: SpaceSel,
}

impl Default for GridSection {
    fn default() -> Self {
        Self {
            axis: None,
            times: AxisSpec { min: 0.0, max: std::f64::consts::TAU, count: 257 },
            space: SpaceSel::Both,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

/// `fock:<n>` or `gauss:<K_re>,<K_im>,<xi>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum StateSpec {
    Fock { n: u32 },
    Gauss { k_re: f64, k_im: f64, xi: f64 },
}

impl Default for StateSpec {
    fn default() -> Self {
        StateSpec::Fock { n: 5 }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Fock { n } => write!(f, "fock:{n}"),
            StateSpec::Gauss { k_re, k_im, xi } => write!(f, "gauss:{k_re:?},{k_im:?},{xi:?}"),
        }
    }
}

impl FromStr for StateSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| format!("expected fock:<n> or gauss:<Kre>,<Kim>,<xi>, got {s:?}"))?;
        match kind {
            "fock" => rest
                .trim()
                .parse()
                .map(|n| StateSpec::Fock { n })
                .map_err(|_| format!("invalid Fock number {rest:?}")),
            "gauss" => {
                let v = parse_floats(rest, 3)?;
                Ok(StateSpec::Gauss { k_re: v[0], k_im: v[1], xi: v[2] })
            }
            _ => Err(format!("unknown state kind {kind:?}")),
        }
    }
}

impl TryFrom<String> for StateSpec {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<StateSpec> for String {
    fn from(s: StateSpec) -> String {
        s.to_string()
    }
}

/// `<min>,<max>,<count>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn points(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.count)
    }
}

impl fmt::Display for AxisSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?},{:?},{}", self.min, self.max, self.count)
    }
}

impl FromStr for AxisSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected <min>,<max>,<count>, got {s:?}"));
        }
        let min: f64 = parts[0].parse().map_err(|_| format!("invalid min {:?}", parts[0]))?;
        let max: f64 = parts[1].parse().map_err(|_| format!("invalid max {:?}", parts[1]))?;
        let count: usize = parts[2].parse().map_err(|_| format!("invalid count {:?}", parts[2]))?;
        if !(min.is_finite() && max.is_finite()) {
            return Err("bounds must be finite".into());
        }
        if count >= 2 && max <= min {
            return Err(format!("max {max} must exceed min {min}"));
        }
        if count == 0 {
            return Err("count must be positive".into());
        }
        Ok(AxisSpec { min, max, count })
    }
}

impl TryFrom<String> for AxisSpec {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<AxisSpec> for String {
    fn from(a: AxisSpec) -> String {
        a.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceSel {
    Q,
    P,
    #[default]
    Both,
}

impl SpaceSel {
    pub fn spaces(self) -> Vec<Space> {
        match self {
            SpaceSel::Q => vec![Space::Q],
            SpaceSel::P => vec![Space::P],
            SpaceSel::Both => Space::BOTH.to_vec(),
        }
    }
}

impl FromStr for SpaceSel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "q" => Ok(SpaceSel::Q),
            "p" => Ok(SpaceSel::P),
            "both" => Ok(SpaceSel::Both),
            _ => Err(format!("expected q, p or both, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("expected csv or json, got {s:?}")),
        }
    }
}

fn parse_floats(s: &str, count: usize) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("invalid number {p:?}")))
        .collect::<Result<_, _>>()?;
    if v.len() != count {
        return Err(format!("expected {count} comma-separated numbers, got {}", v.len()));
    }
    Ok(v)
}

/// Values given on the command line; each replaces the file value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub c_negative: Option<bool>,
    pub omega: Option<f64>,
    pub phi: Option<f64>,
    pub t0: Option<f64>,
    pub epsilon: Option<f64>,
    pub hbar: Option<f64>,
    pub state: Option<StateSpec>,
    pub space: Option<SpaceSel>,
    pub grid: Option<AxisSpec>,
    pub times: Option<AxisSpec>,
    pub format: Option<Format>,
    pub out: Option<String>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("config file: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("--config {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn apply(&mut self, o: &Overrides) {
        let w = &mut self.wave;
        // an explicit A or B without C re-derives C from the constraint
        if (o.a.is_some() || o.b.is_some()) && o.c.is_none() {
            w.c = None;
        }
        macro_rules! set {
            ($dst:expr, $src:expr) => {
                if let Some(v) = $src {
                    $dst = v;
                }
            };
        }
        set!(w.a, o.a);
        set!(w.b, o.b);
        if o.c.is_some() {
            w.c = o.c;
        }
        set!(w.c_negative, o.c_negative);
        set!(w.omega, o.omega);
        set!(w.phi, o.phi);
        set!(w.t0, o.t0);
        set!(w.epsilon, o.epsilon);
        set!(w.hbar, o.hbar);
        set!(self.state, o.state);
        set!(self.grid.space, o.space);
        if o.grid.is_some() {
            self.grid.axis = o.grid;
        }
        set!(self.grid.times, o.times);
        set!(self.output.format, o.format);
        if o.out.is_some() {
            self.output.path = o.out.clone();
        }
    }

    /// Validates every field and builds the wave. `unchecked` skips the
    /// `AB − C² = 1` constraint (negative controls only).
    pub fn resolve(&self, unchecked: bool) -> Result<Resolved, CliError> {
        let w = &self.wave;
        let env = Environment { omega: w.omega, phi: w.phi, t0: w.t0, epsilon: w.epsilon, hbar: w.hbar };
        let params = if unchecked {
            let c = w.c.unwrap_or_else(|| {
                let c = (w.a * w.b - 1.0).max(0.0).sqrt();
                if w.c_negative {
                    -c
                } else {
                    c
                }
            });
            WaveParams::new_unchecked(w.a, w.b, c, env)
        } else {
            match w.c {
                Some(c) => WaveParams::new(w.a, w.b, c, env),
                None => WaveParams::from_ab(w.a, w.b, w.c_negative, env),
            }
            .map_err(field_error)?
        };
        let state = match self.state {
            StateSpec::Fock { n } => State::Fock(FockState::new(params, FockIndex::new(n).map_err(field_error)?)),
            StateSpec::Gauss { k_re, k_im, xi } => {
                let gp = GaussianParams::new(k_re, k_im, xi).map_err(field_error)?;
                State::Gauss(GaussianState::new(params, gp).map_err(field_error)?)
            }
        };
        let times = self.grid.times.points();
        nonstatic::grid::check_increasing(&times, "time")
            .map_err(|e| CliError::Config(format!("--times: {e}")))?;
        if let Some(axis) = &self.grid.axis {
            nonstatic::grid::check_increasing(&axis.points(), "coordinate")
                .map_err(|e| CliError::Config(format!("--grid: {e}")))?;
        }
        Ok(Resolved { config: self.clone(), params, state, times })
    }
}

fn field_error(e: nonstatic::Error) -> CliError {
    match e {
        nonstatic::Error::InvalidParameter { name, reason } => {
            let flag = match name {
                "A" | "B" | "C" => format!("--{name}"),
                "n" | "K_re" | "K_im" | "xi" => "--state".to_string(),
                other => format!("--{other}"),
            };
            CliError::Config(format!("{flag} ({name}): {reason}"))
        }
        other => CliError::from(other),
    }
}

/// A validated configuration with its wave built.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub config: RunConfig,
    pub params: WaveParams,
    pub state: State,
    pub times: Vec<f64>,
}

impl Resolved {
    pub fn spaces(&self) -> Vec<Space> {
        self.config.grid.space.spaces()
    }

    pub fn axis(&self, space: Space) -> Vec<f64> {
        match &self.config.grid.axis {
            Some(a) => a.points(),
            None => self.state.default_axis(space, &self.times, nonstatic::grid::DEFAULT_AXIS_POINTS),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum State {
    Fock(FockState),
    Gauss(GaussianState),
}

impl State {
    fn inner(&self) -> &dyn Wave {
        match self {
            State::Fock(s) => s,
            State::Gauss(s) => s,
        }
    }
}

impl Wave for State {
    fn slice(&self, space: Space, t: f64, axis: &[f64]) -> nonstatic::Result<Vec<C64>> {
        self.inner().slice(space, t, axis)
    }
    fn spread(&self, space: Space, t: f64) -> (f64, f64) {
        self.inner().spread(space, t)
    }
    fn tail_extent(&self, space: Space, t: f64) -> f64 {
        self.inner().tail_extent(space, t)
    }
    fn shortest_wavelength(&self, space: Space, t: f64) -> f64 {
        self.inner().shortest_wavelength(space, t)
    }
}
