//! Nonstatic quantum light waves in a static medium.
//!
//! Fock-state and Gaussian-state wave functions are evaluated in closed form
//! in both the q- and p-quadrature representations. The [`verify`] module
//! holds independent numerical oracles (a direct Fourier transform,
//! quadrature moments, oscillation fits) used to check the closed forms.

pub mod error;
pub mod fock;
pub mod gaussian;
pub mod grid;
pub mod timefn;
pub mod verify;

use std::fmt;
use std::str::FromStr;

pub use error::{Error, Result};
pub use fock::{FockIndex, FockState};
pub use gaussian::{GaussianFrame, GaussianParams, GaussianState};
pub use grid::{linspace, DensityGrid, Wave};
pub use timefn::{ComplexW, Environment, WaveParams};

pub use num_complex::Complex64 as C64;

/// Quadrature representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Q,
    P,
}

impl Space {
    pub const BOTH: [Space; 2] = [Space::Q, Space::P];

    pub fn label(self) -> &'static str {
        match self {
            Space::Q => "q",
            Space::P => "p",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" | "Q" => Ok(Space::Q),
            "p" | "P" => Ok(Space::P),
            _ => Err(error::invalid("space", format!("expected q or p, got {s:?}"))),
        }
    }
}
