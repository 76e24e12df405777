//! Variable identifiers for the coupling-constant rings.
//!
//! Indexed families: renormalized couplings `I_k`, bare couplings `t_k`,
//! rescaled couplings `J_k = I_k/(2k+1)!!`, and ghost couplings `Im<k>`
//! standing for `I_{-k}`. Nullary variables: `v` and `w` are the dedicated
//! denominator variables `v = 1/(1-I_1)` and `w = 1/(1-3J_1)`, `N` is the
//! matrix order, `tH` the 't Hooft coupling, and `zeta` the spectral-curve
//! variable (the only family whose exponents may be negative or
//! half-integral).

use std::fmt;
use std::str::FromStr;

use crate::algebra::AlgebraError;

/// Variable family, ordered by the canonical tiebreak rank
/// `v < w < N < tH < I < J < t < ghost < zeta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    V,
    W,
    BigN,
    THooft,
    I,
    J,
    T,
    GhostI,
    Zeta,
}

impl Family {
    /// True for families that carry an index (`I_k`, `t_k`, `J_k`, `Im<k>`).
    pub fn is_indexed(self) -> bool {
        matches!(self, Family::I | Family::J | Family::T | Family::GhostI)
    }
}

/// A single variable: a family plus an index (0 for nullary families).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub family: Family,
    pub index: u32,
}

impl VarId {
    pub fn i(index: u32) -> Self {
        VarId { family: Family::I, index }
    }

    pub fn j(index: u32) -> Self {
        VarId { family: Family::J, index }
    }

    pub fn t(index: u32) -> Self {
        VarId { family: Family::T, index }
    }

    /// Ghost coupling `I_{-index}`; requires `index >= 1`.
    pub fn ghost(index: u32) -> Self {
        assert!(index >= 1, "ghost index must be >= 1");
        VarId { family: Family::GhostI, index }
    }

    pub fn v() -> Self {
        VarId { family: Family::V, index: 0 }
    }

    pub fn w() -> Self {
        VarId { family: Family::W, index: 0 }
    }

    pub fn big_n() -> Self {
        VarId { family: Family::BigN, index: 0 }
    }

    pub fn t_hooft() -> Self {
        VarId { family: Family::THooft, index: 0 }
    }

    pub fn zeta() -> Self {
        VarId { family: Family::Zeta, index: 0 }
    }

    /// Weight under the canonical grading: `wt(I_k) = wt(t_k) = wt(J_k) = k-1`,
    /// `wt(Im<n>) = -n-1`, everything else weightless.
    pub fn weight(&self) -> i64 {
        match self.family {
            Family::I | Family::T | Family::J => self.index as i64 - 1,
            Family::GhostI => -(self.index as i64) - 1,
            _ => 0,
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::V => write!(f, "v"),
            Family::W => write!(f, "w"),
            Family::BigN => write!(f, "N"),
            Family::THooft => write!(f, "tH"),
            Family::I => write!(f, "I{}", self.index),
            Family::J => write!(f, "J{}", self.index),
            Family::T => write!(f, "t{}", self.index),
            Family::GhostI => write!(f, "Im{}", self.index),
            Family::Zeta => write!(f, "zeta"),
        }
    }
}

impl FromStr for VarId {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(format!("unknown variable `{s}`"));
        match s {
            "v" => return Ok(VarId::v()),
            "w" => return Ok(VarId::w()),
            "N" => return Ok(VarId::big_n()),
            "tH" => return Ok(VarId::t_hooft()),
            "zeta" => return Ok(VarId::zeta()),
            _ => {}
        }
        let (family, rest) = if let Some(rest) = s.strip_prefix("Im") {
            (Family::GhostI, rest)
        } else if let Some(rest) = s.strip_prefix('I') {
            (Family::I, rest)
        } else if let Some(rest) = s.strip_prefix('J') {
            (Family::J, rest)
        } else if let Some(rest) = s.strip_prefix('t') {
            (Family::T, rest)
        } else {
            return Err(bad());
        };
        let index: u32 = rest.parse().map_err(|_| bad())?;
        if family == Family::GhostI && index == 0 {
            return Err(bad());
        }
        Ok(VarId { family, index })
    }
}
