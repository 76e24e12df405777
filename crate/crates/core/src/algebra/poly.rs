//! Sparse polynomials over the coupling variables with exact rational
//! coefficients.
//!
//! Canonical form: a `BTreeMap` keyed by [`Monomial`] in the graded-lex
//! order, with no zero coefficients stored. All operations return canonical
//! results, so equality is structural.
//!
//! Differentiation knows the two built-in derivation rules
//! `d v / d I_1 = v^2` and `d w / d J_1 = 3 w^2` that realize the
//! denominator variables `v = 1/(1-I_1)` and `w = 1/(1-3J_1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::algebra::monomial::Monomial;
use crate::algebra::rational::{rat_int, Rational};
use crate::algebra::var::{Family, VarId};
use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(rat_int(1))
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(v: VarId) -> Self {
        Poly::term(Monomial::var(v), rat_int(1))
    }

    pub fn var_pow(v: VarId, e: i64) -> Self {
        Poly::term(Monomial::var_pow(v, e), rat_int(1))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in pairs {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Accumulate one term, keeping canonical form.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The set of variables that actually occur.
    pub fn variables(&self) -> Vec<VarId> {
        let mut vars: Vec<VarId> = Vec::new();
        for m in self.terms.keys() {
            for (v, _) in m.iter() {
                if let Err(pos) = vars.binary_search(&v) {
                    vars.insert(pos, v);
                }
            }
        }
        vars
    }

    /// Largest index of `family` occurring, if any.
    pub fn max_index(&self, family: Family) -> Option<u32> {
        self.variables()
            .into_iter()
            .filter(|v| v.family == family)
            .map(|v| v.index)
            .max()
    }

    /// Formal derivative. `I_1` and `J_1` trigger the `v`/`w` chain rules in
    /// addition to the plain power rule; `zeta` is rejected.
    pub fn differentiate(&self, x: VarId) -> Result<Poly, AlgebraError> {
        if x.family == Family::Zeta {
            return Err(AlgebraError::DifferentiateByZeta);
        }
        let chain: Option<(VarId, i64)> = if x == VarId::i(1) {
            Some((VarId::v(), 1))
        } else if x == VarId::j(1) {
            Some((VarId::w(), 3))
        } else {
            None
        };
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(x);
            if e > 0 {
                out.add_term(m.with_raw_exp(x, e - 1), c * rat_int(e));
            }
            if let Some((dv, scale)) = chain {
                let p = m.exp(dv);
                if p > 0 {
                    out.add_term(m.with_raw_exp(dv, p + 1), c * rat_int(p * scale));
                }
            }
        }
        Ok(out)
    }

    /// Substitute an exact numeric value for a variable (plain non-negative
    /// integer exponents only).
    pub fn eval_var(&self, x: VarId, value: &Rational) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(x);
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff *= value.clone();
            }
            out.add_term(m.without(x), coeff);
        }
        out
    }

    /// Coefficient of `x^power` as a polynomial in the remaining variables.
    pub fn coefficient_of_power(&self, x: VarId, power: i64) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.raw_exp(x) == power {
                out.add_term(m.without(x), c.clone());
            }
        }
        out
    }

    /// Check weighted homogeneity; returns the first offending monomial.
    pub fn check_homogeneous(&self, degree: i64) -> Result<(), Monomial> {
        for m in self.terms.keys() {
            if m.weighted_degree() != degree {
                return Err(m.clone());
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff = if mag.denom().is_one() {
                format!("{}", mag.numer())
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            if m.is_one() {
                write!(f, "{coeff}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({coeff})*{m}")?;
            }
        }
        Ok(())
    }
}
