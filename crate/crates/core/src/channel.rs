//! Dirac angular-momentum bookkeeping.
//!
//! Everything downstream indexes radial functions by the pair
//! `(l_chi, l_minus_chi)`; this module is the only place those rules live.

use alloc::string::String;
use core::fmt;

use crate::{Error, Result};

/// Spectroscopic letters for orbital angular momentum 0, 1, 2, ...
const L_LETTERS: &[u8] = b"spdfghiklmnoqrtuv";

/// One Dirac partial wave, labeled by `chi = +-(j + 1/2)`.
///
/// Built only through [`Channel::from_chi`] or [`Channel::parse`], so the
/// index relations below always hold:
///
/// * `l_chi = chi` for `chi > 0`, `-chi - 1` for `chi < 0`
/// * `l_minus_chi = -chi` for `-chi > 0`, `chi - 1` for `-chi < 0`
/// * `l_chi - l_minus_chi = sign(chi)`
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Channel {
    chi: i32,
}

impl Channel {
    pub fn from_chi(chi: i32) -> Result<Self> {
        if chi == 0 {
            return Err(Error::ZeroChi);
        }
        Ok(Channel { chi })
    }

    /// Parse either a signed integer (`"-1"`, `"+2"`) or a spectroscopic
    /// label (`"s1/2"`, `"p3/2"`, `"d3/2"`, ...).
    pub fn parse(label: &str) -> Result<Self> {
        let s = label.trim();
        if let Ok(chi) = s.parse::<i32>() {
            return Channel::from_chi(chi);
        }
        let bad = || Error::BadChannelLabel(String::from(label));
        let mut bytes = s.bytes();
        let letter = bytes.next().ok_or_else(bad)?.to_ascii_lowercase();
        let l = L_LETTERS.iter().position(|&c| c == letter).ok_or_else(bad)? as i32;
        let rest = &s[1..];
        let (num, den) = rest.split_once('/').ok_or_else(bad)?;
        let two_j_num: i32 = num.trim().parse().map_err(|_| bad())?;
        let den: i32 = den.trim().parse().map_err(|_| bad())?;
        if den != 2 || two_j_num <= 0 || two_j_num % 2 == 0 {
            return Err(bad());
        }
        // j = two_j_num / 2; chi = -(j + 1/2) when l = j - 1/2, +(j + 1/2) when l = j + 1/2.
        let j_plus_half = (two_j_num + 1) / 2;
        if l == j_plus_half - 1 {
            Channel::from_chi(-j_plus_half)
        } else if l == j_plus_half {
            Channel::from_chi(j_plus_half)
        } else {
            Err(bad())
        }
    }

    pub fn chi(&self) -> i32 {
        self.chi
    }

    /// Total angular momentum `j = |chi| - 1/2`.
    pub fn j(&self) -> f64 {
        self.chi.unsigned_abs() as f64 - 0.5
    }

    /// Sign of chi (`tau` in the small-r boundary conditions).
    pub fn tau(&self) -> i32 {
        self.chi.signum()
    }

    /// Orbital index of the large component `f`.
    pub fn l_chi(&self) -> u32 {
        if self.chi > 0 {
            self.chi as u32
        } else {
            (-self.chi - 1) as u32
        }
    }

    /// Orbital index of the small component `g`.
    pub fn l_minus_chi(&self) -> u32 {
        if self.chi < 0 {
            (-self.chi) as u32
        } else {
            (self.chi - 1) as u32
        }
    }

    /// Orbital angular momentum of the wave, `l = j + sign(chi)/2`.
    ///
    /// Coincides with `l_chi` and picks the `s, p, d, ...` letter.
    pub fn orbital_l(&self) -> u32 {
        self.l_chi()
    }

    /// Partner channel under the crossing transformation
    /// `E -> -E, V -> -V, chi -> -chi, f <-> g`.
    ///
    /// Only the quantum-number flip happens here; the energy and potential
    /// flips are the caller's side of the bargain.
    pub fn crossed(&self) -> Channel {
        Channel { chi: -self.chi }
    }

    /// Display label such as `"s1/2"` or `"p3/2"`.
    pub fn label(&self) -> String {
        use alloc::format;
        let l = self.orbital_l() as usize;
        let two_j = 2 * self.chi.unsigned_abs() - 1;
        if l < L_LETTERS.len() {
            format!("{}{}/2", L_LETTERS[l] as char, two_j)
        } else {
            format!("l{}j{}/2", l, two_j)
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Nonrelativistic partial wave: just the orbital quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchrodingerChannel(pub u32);

impl fmt::Display for SchrodingerChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.0 as usize;
        if l < L_LETTERS.len() {
            write!(f, "{}", L_LETTERS[l] as char)
        } else {
            write!(f, "l{}", l)
        }
    }
}
