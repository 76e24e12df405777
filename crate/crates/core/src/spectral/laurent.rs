//! Exact Laurent series in the spectral variable with polynomial
//! coefficients, plus an optional logarithmic summand.
//!
//! The curve and action identities of the concluding relations are exact at
//! each order, so they are checked here on polynomial coefficients rather
//! than truncated series. Exponents are stored doubled to keep the 2D
//! half-integer lattice in integer arithmetic.

use std::collections::BTreeMap;

use crate::algebra::rational::{rat, rat_int, Rational};
use crate::algebra::{Monomial, Poly, VarId};

/// `log_coeff * log(zeta) + sum_e terms[e] zeta^{e/2}` with exact
/// polynomial coefficients in the couplings (no `zeta` inside the
/// coefficients; `zeta` stands for `z - I_0`).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LaurentPoly {
    pub log_coeff: Poly,
    pub terms: BTreeMap<i64, Poly>,
}

impl LaurentPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, e2: i64, p: Poly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(e2).or_insert_with(Poly::zero);
        entry.add_assign_ref(&p);
        if entry.is_zero() {
            self.terms.remove(&e2);
        }
    }

    pub fn coefficient(&self, e2: i64) -> Poly {
        self.terms.get(&e2).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.log_coeff = &out.log_coeff - &other.log_coeff;
        for (&e2, p) in &other.terms {
            out.add_term(e2, -p);
        }
        out
    }

    /// Formal derivative in the spectral variable `z` (with `zeta = z - I_0`
    /// the chain rule is trivial: `d zeta/dz = 1`).
    pub fn d_dz(&self) -> LaurentPoly {
        let mut out = LaurentPoly::new();
        if !self.log_coeff.is_zero() {
            out.add_term(-2, self.log_coeff.clone());
        }
        for (&e2, p) in &self.terms {
            if e2 != 0 {
                out.add_term(e2 - 2, p.scale(&rat(e2, 2)));
            }
        }
        out
    }

    /// The flow derivation `X = d/dI_0 + sum_l I_{l+1} d/dI_l` acting on a
    /// series whose coefficients are `I_0`-free: `d/dI_0` sees only the
    /// base-point dependence of `zeta` and of `log(zeta)`.
    pub fn flow(&self) -> LaurentPoly {
        let mut out = LaurentPoly::new();
        // d/dI_0: zeta^{e} -> -e zeta^{e-1}; log zeta -> -zeta^{-1}
        if !self.log_coeff.is_zero() {
            out.add_term(-2, -&self.log_coeff);
        }
        for (&e2, p) in &self.terms {
            if e2 != 0 {
                out.add_term(e2 - 2, p.scale(&rat(-e2, 2)));
            }
        }
        // coefficient-wise sum_l I_{l+1} d/dI_l, including the log coefficient
        out.log_coeff = flow_poly(&self.log_coeff);
        for (&e2, p) in &self.terms {
            out.add_term(e2, flow_poly(p));
        }
        out
    }

    /// Restrict to `I_0 = I_1 = 0` (coefficients lose their `I_1` part;
    /// `zeta` becomes plain `z`, which the caller tracks).
    pub fn at_base_point(&self) -> LaurentPoly {
        let mut out = LaurentPoly::new();
        out.log_coeff = self.log_coeff.eval_var(VarId::i(1), &rat_int(0));
        for (&e2, p) in &self.terms {
            out.add_term(e2, p.eval_var(VarId::i(1), &rat_int(0)));
        }
        out
    }

    /// Keep only orders in the inclusive doubled window.
    pub fn windowed(&self, lo2: i64, hi2: i64) -> LaurentPoly {
        let mut out = LaurentPoly::new();
        out.log_coeff = self.log_coeff.clone();
        for (&e2, p) in &self.terms {
            if e2 >= lo2 && e2 <= hi2 {
                out.add_term(e2, p.clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.log_coeff.is_zero() && self.terms.is_empty()
    }
}

/// `sum_l I_{l+1} dp/dI_l` on bare-I polynomial coefficients.
fn flow_poly(p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for var in p.variables() {
        if var.family == crate::algebra::Family::I && var.index >= 1 {
            let df = p.differentiate(var).expect("non-zeta");
            out.add_assign_ref(&df.mul_monomial(&Monomial::var(VarId::i(var.index + 1))));
        }
    }
    out
}

/// Coefficient helper: `c * (I_n - [n = 1])`.
pub fn coupling_minus_delta(n: u32, c: Rational) -> Poly {
    let mut p = Poly::term(Monomial::var(VarId::i(n)), c.clone());
    if n == 1 {
        p.add_term(Monomial::one(), -c);
    }
    p
}
