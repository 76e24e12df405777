//! Sparse exponent-map monomials.
//!
//! Exponents are stored per variable as `i64`. For every family except
//! `zeta` the exponent is a positive integer (sparse form stores no zeros).
//! For `zeta` the stored value is the exponent *doubled*, so half-integral
//! and negative spectral-curve orders stay in integer arithmetic.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::var::{Family, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    /// Sorted by `VarId`, no zero exponents.
    exps: Vec<(VarId, i64)>,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// Single variable to the first power (`zeta` gets doubled exponent 2).
    pub fn var(v: VarId) -> Self {
        Self::var_pow(v, 1)
    }

    /// `v^e` with `e` in plain units (`zeta` exponent is doubled internally).
    pub fn var_pow(v: VarId, e: i64) -> Self {
        let raw = if v.family == Family::Zeta { 2 * e } else { e };
        Self::from_raw(vec![(v, raw)])
    }

    /// `zeta^(e2/2)` from a doubled exponent.
    pub fn zeta_pow_doubled(e2: i64) -> Self {
        Self::from_raw(vec![(VarId::zeta(), e2)])
    }

    /// Build from raw `(var, exponent)` pairs; zeta exponents are doubled.
    /// Merges duplicates, drops zeros, and validates sign constraints.
    pub fn from_raw(pairs: Vec<(VarId, i64)>) -> Self {
        let mut exps = pairs;
        exps.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(VarId, i64)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        for &(v, e) in &merged {
            if v.family != Family::Zeta {
                assert!(e > 0, "negative exponent on {v}");
            }
        }
        Monomial { exps: merged }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, i64)> + '_ {
        self.exps.iter().copied()
    }

    /// Raw exponent of `v` (doubled for zeta), 0 if absent.
    pub fn raw_exp(&self, v: VarId) -> i64 {
        self.exps
            .binary_search_by(|probe| probe.0.cmp(&v))
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    /// Plain-unit exponent of a non-zeta variable.
    pub fn exp(&self, v: VarId) -> i64 {
        debug_assert!(v.family != Family::Zeta);
        self.raw_exp(v)
    }

    /// Doubled zeta order of this monomial.
    pub fn zeta_order_doubled(&self) -> i64 {
        self.raw_exp(VarId::zeta())
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(VarId, i64)> = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        out.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        if ea + eb != 0 {
                            out.push((va, ea + eb));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    out.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial { exps: out }
    }

    /// Replace the exponent of `v` (raw units), removing it when zero.
    pub fn with_raw_exp(&self, v: VarId, e: i64) -> Monomial {
        let mut exps: Vec<(VarId, i64)> =
            self.exps.iter().copied().filter(|&(u, _)| u != v).collect();
        if e != 0 {
            exps.push((v, e));
        }
        Self::from_raw(exps)
    }

    /// Remove `v` entirely.
    pub fn without(&self, v: VarId) -> Monomial {
        self.with_raw_exp(v, 0)
    }

    /// Weighted degree under the canonical grading.
    pub fn weighted_degree(&self) -> i64 {
        self.exps.iter().map(|&(v, e)| e * v.weight()).sum()
    }

    /// Number of indexed-variable factors (`I`, `t`, `J`, ghost exponents
    /// summed); nullary variables and zeta do not count.
    pub fn factor_count(&self) -> i64 {
        self.exps
            .iter()
            .filter(|&&(v, _)| v.family.is_indexed())
            .map(|&(_, e)| e)
            .sum()
    }

    /// True if any exponent is half-integral (only zeta can be).
    pub fn has_half_integer(&self) -> bool {
        self.zeta_order_doubled() % 2 != 0
    }
}

/// Graded-lexicographic order: weighted degree first, then the exponent
/// vectors compared variable-by-variable in canonical variable order
/// (a higher power on an earlier variable sorts later).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.weighted_degree().cmp(&other.weighted_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(&&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&&(_, eb))) => return 0.cmp(&eb),
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if v.family == Family::Zeta {
                if e == 2 {
                    write!(f, "{v}")?;
                } else if e % 2 == 0 {
                    write!(f, "{v}^{}", e / 2)?;
                } else {
                    write!(f, "{v}^({e}/2)")?;
                }
            } else if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
