//! Partial-wave scattering from spherically symmetric wells and barriers.
//!
//! The crate computes phase shifts, critical and supercritical couplings,
//! and resonance parameters for short-range potentials in both the
//! Schrodinger and Dirac equations. Square wells and barriers are handled
//! in closed form; general monotone shapes (Gaussian, exponential,
//! Woods-Saxon, tabulated) go through a fixed-step radial integrator with
//! node detection and a local sine fit for the numerical phase.
//!
//! Everything works in natural units (`hbar = c = 1`); unit conversion is
//! the caller's business. The crate is `no_std`-compatible (with `alloc`)
//! when built without the default `std` feature.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bessel;
pub mod channel;
pub mod critical;
pub mod dirac;
mod math;
pub mod phase;
pub mod potential;
pub mod radial;
pub mod resonance;
pub mod roots;
pub mod schrodinger;

pub use channel::{Channel, SchrodingerChannel};
pub use critical::{CriticalCondition, CriticalCoupling, EnergySign};
pub use dirac::{DiracKinematics, DiracSquareSystem, RadialSolution};
pub use phase::PhaseShiftSample;
pub use potential::{PotentialSign, PotentialSpec, Shape, TabulatedShape};
pub use radial::{IntegrationConfig, NumericalPhaseResult, ResonanceCurve};
pub use resonance::{CrossingKind, ResonancePeak};
pub use schrodinger::SchrodingerWell;

use core::fmt;

/// Errors shared by every solver in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside a special function's domain (e.g. `x <= 0`).
    NonpositiveArgument { name: &'static str, value: f64 },
    /// Double factorial of an integer below -1.
    InvalidOrder { n: i32 },
    /// The Dirac quantum number chi must be nonzero.
    ZeroChi,
    /// Channel label that parses to nothing sensible.
    BadChannelLabel(alloc::string::String),
    /// Scattering requires |E| > m.
    BelowThreshold { energy: f64, mass: f64 },
    /// Schrodinger phase shifts need k > 0.
    NonpositiveMomentum { k: f64 },
    /// Curve analysis needs more samples than were provided.
    TooFewSamples { needed: usize, got: usize },
    /// Adjacent phase samples jump by more than pi/2: broken branch.
    BranchDiscontinuity { index: usize, jump: f64 },
    /// A scan over [lo, hi] found fewer sign changes than requested.
    BracketExhausted {
        lo: f64,
        hi: f64,
        wanted: usize,
        found: usize,
    },
    /// Bisection needs a sign change over the bracket.
    NoSignChange { lo: f64, hi: f64 },
    /// Radial components exceeded the magnitude cap during integration.
    IntegrationOverflow { radius: f64 },
    /// Fewer than the requested number of nodes before the radius cap.
    NodeNotFound { wanted: u32, found: u32, radius: f64 },
    /// Both fit samples vanish; no sine can be fitted.
    DegenerateFit { radius: f64 },
    /// Zero-momentum interior momentum is imaginary below this coupling.
    EvanescentInterior { v_threshold: f64 },
    /// sin^2(delta) = 1/2 is not bracketed on the given side of the peak.
    HalfMaxNotBracketed { side: &'static str },
    /// Width extraction was asked for a crossing that is not a resonance.
    NotAResonance,
    /// Operation restricted to a specific channel.
    WrongChannel { expected: &'static str },
    /// Ill-formed potential shape (tabulated data validation).
    InvalidPotential { reason: &'static str },
    /// Ill-formed integration or solver configuration.
    InvalidConfig { reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonpositiveArgument { name, value } => {
                write!(f, "argument {name} = {value} outside domain (must be > 0)")
            }
            Error::InvalidOrder { n } => write!(f, "double factorial undefined for n = {n} < -1"),
            Error::ZeroChi => write!(f, "chi = 0 is not a Dirac channel"),
            Error::BadChannelLabel(s) => write!(f, "unrecognized channel label {s:?}"),
            Error::BelowThreshold { energy, mass } => {
                write!(f, "|E| = |{energy}| <= m = {mass}: no propagating external wave")
            }
            Error::NonpositiveMomentum { k } => write!(f, "momentum k = {k} must be positive"),
            Error::TooFewSamples { needed, got } => {
                write!(f, "need at least {needed} samples, got {got}")
            }
            Error::BranchDiscontinuity { index, jump } => {
                write!(f, "phase branch jumps by {jump} rad at sample {index}")
            }
            Error::BracketExhausted {
                lo,
                hi,
                wanted,
                found,
            } => write!(
                f,
                "found {found} of {wanted} roots scanning [{lo}, {hi}]"
            ),
            Error::NoSignChange { lo, hi } => {
                write!(f, "no sign change over bracket [{lo}, {hi}]")
            }
            Error::IntegrationOverflow { radius } => {
                write!(f, "radial components overflowed near r = {radius}")
            }
            Error::NodeNotFound {
                wanted,
                found,
                radius,
            } => write!(
                f,
                "only {found} of {wanted} nodes found before r = {radius}"
            ),
            Error::DegenerateFit { radius } => {
                write!(f, "degenerate sine fit near r = {radius}: samples vanish")
            }
            Error::EvanescentInterior { v_threshold } => write!(
                f,
                "zero-momentum interior momentum imaginary; need coupling > {v_threshold}"
            ),
            Error::HalfMaxNotBracketed { side } => {
                write!(f, "half maximum of sin^2(delta) not bracketed on the {side} side")
            }
            Error::NotAResonance => write!(f, "crossing has negative slope: not a resonance"),
            Error::WrongChannel { expected } => {
                write!(f, "operation only defined for the {expected} channel")
            }
            Error::InvalidPotential { reason } => write!(f, "invalid potential: {reason}"),
            Error::InvalidConfig { reason } => write!(f, "invalid configuration: {reason}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
