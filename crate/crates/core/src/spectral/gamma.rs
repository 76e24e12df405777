//! Exact gamma values at half-integers, as rational multiples of sqrt(pi).
//!
//! `gamma_half(k)` returns `r` with `Gamma(k + 1/2) = r sqrt(pi)`, built
//! from `Gamma(1/2) = sqrt(pi)` by the functional equation in both
//! directions. Every curve formula pairs one gamma factor against one
//! `1/sqrt(pi)`, so the parity bookkeeping closes; [`SqrtPi`] carries it
//! explicitly and converting to a plain rational fails on an odd residue.

use crate::algebra::rational::{rat, rat_int, Rational};

/// `Gamma(k + 1/2) / sqrt(pi)` exactly.
pub fn gamma_half(k: i64) -> Rational {
    let mut r = rat_int(1);
    if k >= 0 {
        for j in 0..k {
            // Gamma(j + 1 + 1/2) = (j + 1/2) Gamma(j + 1/2)
            r *= rat(2 * j + 1, 2);
        }
    } else {
        for j in 0..(-k) {
            // Gamma(-j - 1/2) = Gamma(-j + 1/2) / (-j - 1/2)
            r *= rat(2, -(2 * j + 1));
        }
    }
    r
}

/// A rational multiple of an integer power of sqrt(pi).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtPi {
    pub value: Rational,
    /// Exponent of sqrt(pi).
    pub parity: i64,
}

impl SqrtPi {
    pub fn rational(value: Rational) -> Self {
        SqrtPi { value, parity: 0 }
    }

    /// `Gamma(k + 1/2)` as a tracked value.
    pub fn gamma(k: i64) -> Self {
        SqrtPi { value: gamma_half(k), parity: 1 }
    }

    /// One over `sqrt(pi)`.
    pub fn inv_sqrt_pi() -> Self {
        SqrtPi { value: rat_int(1), parity: -1 }
    }

    /// `1 / Gamma(k + 1/2)` as a tracked value.
    pub fn inv_gamma(k: i64) -> Self {
        SqrtPi { value: gamma_half(k).recip(), parity: -1 }
    }

    pub fn mul(&self, other: &SqrtPi) -> SqrtPi {
        SqrtPi { value: &self.value * &other.value, parity: self.parity + other.parity }
    }

    /// Collapse to a rational; any surviving sqrt(pi) power is a structural
    /// failure in the caller's bookkeeping.
    pub fn into_rational(self) -> Result<Rational, String> {
        if self.parity == 0 {
            Ok(self.value)
        } else {
            Err(format!("sqrt(pi) residue of parity {}", self.parity))
        }
    }
}
