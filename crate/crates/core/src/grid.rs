//! Sampling waves on (coordinate × time) rectangles.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::{Space, C64};

/// Minimum samples per shortest oscillation before a grid is flagged coarse.
pub const POINTS_PER_OSCILLATION: f64 = 8.0;

/// Default number of coordinate samples.
pub const DEFAULT_AXIS_POINTS: usize = 1024;

/// `count` evenly spaced points from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let step = (max - min) / (count - 1) as f64;
            (0..count).map(|k| if k + 1 == count { max } else { min + step * k as f64 }).collect()
        }
    }
}

pub fn check_increasing(axis: &[f64], name: &str) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::InvalidGrid(format!("{name} axis is empty")));
    }
    if axis.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid(format!("{name} axis has non-finite entries")));
    }
    if axis.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(format!("{name} axis must be strictly increasing")));
    }
    Ok(())
}

/// Composite trapezoid rule on an arbitrary increasing axis.
pub fn trapezoid(axis: &[f64], values: &[f64]) -> f64 {
    axis.windows(2)
        .zip(values.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

/// A wave that can be sampled in either quadrature.
pub trait Wave: Sync {
    /// Amplitudes at every point of `axis` at time `t`.
    fn slice(&self, space: Space, t: f64, axis: &[f64]) -> Result<Vec<C64>>;

    /// Closed-form mean and standard deviation of the density at `t`.
    fn spread(&self, space: Space, t: f64) -> (f64, f64);

    /// Distance from the mean beyond which the amplitude is below ~1e−13.
    fn tail_extent(&self, space: Space, t: f64) -> f64;

    /// Shortest oscillation length of the amplitude envelope at `t`.
    fn shortest_wavelength(&self, space: Space, t: f64) -> f64;

    fn psi(&self, space: Space, x: f64, t: f64) -> Result<C64> {
        Ok(self.slice(space, t, &[x])?[0])
    }

    /// Symmetric axis of `count` points wide enough for every slice at `times`.
    fn default_axis(&self, space: Space, times: &[f64], count: usize) -> Vec<f64> {
        let half = times
            .iter()
            .map(|&t| {
                let (mean, sigma) = self.spread(space, t);
                mean.abs() + self.tail_extent(space, t).max(8.0 * sigma)
            })
            .fold(0.0, f64::max);
        linspace(-half, half, count)
    }

    /// Whether `axis` under-resolves the oscillations at any of `times`.
    fn is_coarse(&self, space: Space, times: &[f64], axis: &[f64]) -> bool {
        let dx = axis.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
        times
            .iter()
            .any(|&t| self.shortest_wavelength(space, t) < POINTS_PER_OSCILLATION * dx)
    }

    /// `|ψ|²` over `axis × times`, slices evaluated in parallel.
    fn density(&self, space: Space, axis: &[f64], times: &[f64]) -> Result<DensityGrid> {
        check_increasing(axis, "coordinate")?;
        check_increasing(times, "time")?;
        let slices = times
            .par_iter()
            .map(|&t| {
                let amps = self.slice(space, t, axis)?;
                amps.iter()
                    .map(|z| {
                        let d = z.norm_sqr();
                        if d.is_finite() {
                            Ok(d)
                        } else {
                            Err(Error::NonFinite { what: "probability density" })
                        }
                    })
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DensityGrid {
            space,
            axis: axis.to_vec(),
            times: times.to_vec(),
            values: slices.concat(),
            coarse: self.is_coarse(space, times, axis),
        })
    }
}

/// Probability density sampled on a (coordinate × time) rectangle.
///
/// `values` is stored time-major: slice `i` occupies
/// `values[i * axis.len()..(i + 1) * axis.len()]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    pub space: Space,
    pub axis: Vec<f64>,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    /// Set when the axis spacing under-resolves the wave's oscillations.
    pub coarse: bool,
}

impl DensityGrid {
    pub fn slice(&self, i: usize) -> &[f64] {
        let n = self.axis.len();
        &self.values[i * n..(i + 1) * n]
    }

    pub fn slices(&self) -> impl Iterator<Item = (f64, &[f64])> {
        self.times.iter().copied().zip(self.values.chunks(self.axis.len()))
    }

    /// Trapezoid integral of each time slice.
    pub fn slice_norms(&self) -> Vec<f64> {
        self.slices().map(|(_, s)| trapezoid(&self.axis, s)).collect()
    }

    /// `(t, x, density)` rows in time-major order.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.slices()
            .flat_map(move |(t, s)| self.axis.iter().zip(s).map(move |(&x, &d)| (t, x, d)))
    }
}
