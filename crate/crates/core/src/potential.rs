//! Short-range potential shapes `V(r) = +- v w(r/a)`.

use alloc::vec::Vec;

use crate::math;
use crate::{Error, Result};

/// Dimensionless shape function `w(x)`, `w(0) <= 1`, monotone non-increasing
/// and vanishing at infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// `w = 1` for `x <= 1`, else 0.
    Square,
    /// `w = exp(-x^2)`
    Gaussian,
    /// `w = exp(-x)`
    Exponential,
    /// `w = 1 / (1 + exp(x - 1))`
    WoodsSaxon,
    /// Linear interpolation of sampled `(x, w)` pairs; zero past the table.
    Tabulated(TabulatedShape),
}

impl Shape {
    pub fn w(&self, x: f64) -> f64 {
        match self {
            Shape::Square => {
                if x <= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Shape::Gaussian => math::exp(-x * x),
            Shape::Exponential => math::exp(-x),
            Shape::WoodsSaxon => 1.0 / (1.0 + math::exp(x - 1.0)),
            Shape::Tabulated(t) => t.w(x),
        }
    }

    /// Discontinuities of `w` in units of `x`; integration grids must land
    /// on them so every Runge-Kutta stage samples a single branch.
    pub fn breakpoints(&self) -> &[f64] {
        match self {
            Shape::Square => &[1.0],
            _ => &[],
        }
    }

    /// Radius (in `x`) past which `w < eps`; matching and node counting are
    /// safe beyond it.
    pub fn tail_cut(&self, eps: f64) -> f64 {
        match self {
            Shape::Square => 1.0,
            Shape::Gaussian => math::sqrt(math::ln(1.0 / eps)),
            Shape::Exponential => math::ln(1.0 / eps),
            Shape::WoodsSaxon => 1.0 + math::ln(1.0 / eps),
            Shape::Tabulated(t) => *t.xs.last().unwrap_or(&1.0),
        }
    }
}

/// Sampled shape table, validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedShape {
    xs: Vec<f64>,
    ws: Vec<f64>,
}

impl TabulatedShape {
    /// Requires ascending `x` starting at exactly `x = 0` with `w(0) = 1`,
    /// and `w` non-increasing within `[0, 1]`.
    pub fn new(xs: Vec<f64>, ws: Vec<f64>) -> Result<Self> {
        if xs.len() != ws.len() || xs.len() < 2 {
            return Err(Error::InvalidPotential {
                reason: "need at least two (x, w) samples of equal length",
            });
        }
        if xs[0] != 0.0 {
            return Err(Error::InvalidPotential {
                reason: "first sample must be at x = 0",
            });
        }
        if ws[0] != 1.0 {
            return Err(Error::InvalidPotential {
                reason: "shape must be normalized to w(0) = 1",
            });
        }
        for i in 1..xs.len() {
            if xs[i] <= xs[i - 1] {
                return Err(Error::InvalidPotential {
                    reason: "x samples must be strictly ascending",
                });
            }
            if ws[i] > ws[i - 1] || ws[i] < 0.0 {
                return Err(Error::InvalidPotential {
                    reason: "w must be non-increasing within [0, 1]",
                });
            }
        }
        Ok(TabulatedShape { xs, ws })
    }

    fn w(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return self.ws[0];
        }
        let n = self.xs.len();
        if x >= self.xs[n - 1] {
            return 0.0;
        }
        let mut hi = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => return self.ws[i],
            Err(i) => i,
        };
        if hi == 0 {
            hi = 1;
        }
        let (x0, x1) = (self.xs[hi - 1], self.xs[hi]);
        let t = (x - x0) / (x1 - x0);
        self.ws[hi - 1] + t * (self.ws[hi] - self.ws[hi - 1])
    }
}

/// Attractive well or repulsive barrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialSign {
    Well,
    Barrier,
}

impl PotentialSign {
    pub fn factor(&self) -> f64 {
        match self {
            PotentialSign::Well => -1.0,
            PotentialSign::Barrier => 1.0,
        }
    }
}

/// Full potential specification `V(r) = sign * v * w(r/a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    pub shape: Shape,
    pub sign: PotentialSign,
    /// Coupling `v >= 0`.
    pub coupling: f64,
    /// Range `a > 0`.
    pub range: f64,
}

impl PotentialSpec {
    pub fn new(shape: Shape, sign: PotentialSign, coupling: f64, range: f64) -> Result<Self> {
        if !(coupling >= 0.0) {
            return Err(Error::InvalidConfig {
                reason: "coupling must be >= 0",
            });
        }
        if !(range > 0.0) {
            return Err(Error::InvalidConfig {
                reason: "range must be positive",
            });
        }
        Ok(PotentialSpec {
            shape,
            sign,
            coupling,
            range,
        })
    }

    /// Potential value at radius `r`.
    pub fn value(&self, r: f64) -> f64 {
        self.sign.factor() * self.coupling * self.shape.w(r / self.range)
    }

    /// Same potential with a different coupling (for coupling scans).
    pub fn with_coupling(&self, v: f64) -> PotentialSpec {
        PotentialSpec {
            shape: self.shape.clone(),
            sign: self.sign,
            coupling: v,
            range: self.range,
        }
    }

    /// Signed depth in the well convention: positive for wells.
    pub fn signed_depth(&self) -> f64 {
        -self.sign.factor() * self.coupling
    }

    /// Radius past which the potential magnitude drops below
    /// `eps * coupling`.
    pub fn tail_radius(&self, eps: f64) -> f64 {
        self.range * self.shape.tail_cut(eps)
    }
}
