//! Special deformations of the spectral curves in both coordinate systems,
//! their action functions, and the identities tying them together.
//!
//! Each curve exists in two shapes: an exact Laurent form in
//! `zeta = z - I_0` with polynomial coefficients in the renormalized
//! couplings (built on [`laurent::LaurentPoly`]), and truncated series
//! forms — the `zeta`-form with I-coefficients or the `z`-form with
//! bare-coupling coefficients — used for the coordinate-equivalence checks.
//! The square roots of 2 and pi never materialize: every 1D/matrix-model
//! coefficient carries one overall factor sqrt(2) (the `sqrt2` flag), and
//! gamma factors enter only through [`gamma::SqrtPi`], whose parity must
//! cancel.

pub mod gamma;
pub mod laurent;

use std::collections::BTreeMap;

use crate::algebra::rational::{binomial_half, factorial, rat, rat_int};
use crate::algebra::series::substitute_all;
use crate::algebra::{Family, Monomial, Poly, Policy, TruncatedSeries, VarId};
use crate::coords;
use crate::engines::EngineError;
use crate::spectral::gamma::SqrtPi;
use crate::spectral::laurent::{coupling_minus_delta, LaurentPoly};
use crate::tseries::Model;

/// Spectral variable of a series: bare `z` or the shifted `zeta = z - I_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveVar {
    Z,
    Zeta,
}

/// A windowed Laurent/Puiseux series with truncated-series coefficients.
/// Exponents are doubled; `sqrt2` marks an overall factor sqrt(2).
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSeries {
    pub var: CurveVar,
    pub sqrt2: bool,
    pub window: (i64, i64),
    terms: BTreeMap<i64, TruncatedSeries>,
    policy: Policy,
}

impl CurveSeries {
    pub fn zero(var: CurveVar, sqrt2: bool, window: (i64, i64), policy: Policy) -> Self {
        CurveSeries { var, sqrt2, window, terms: BTreeMap::new(), policy }
    }

    pub fn policy(&self) -> &Policy {
        &self.policy
    }

    pub fn add_term(&mut self, e2: i64, series: TruncatedSeries) {
        if e2 < self.window.0 || e2 > self.window.1 || series.is_zero() {
            return;
        }
        assert_eq!(series.policy(), &self.policy);
        let entry = self
            .terms
            .entry(e2)
            .or_insert_with(|| TruncatedSeries::zero(self.policy.clone()));
        *entry = entry.add(&series);
        if entry.is_zero() {
            self.terms.remove(&e2);
        }
    }

    pub fn coefficient(&self, e2: i64) -> TruncatedSeries {
        self.terms
            .get(&e2)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::zero(self.policy.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &TruncatedSeries)> {
        self.terms.iter().map(|(&e2, s)| (e2, s))
    }

    pub fn sub(&self, other: &CurveSeries) -> CurveSeries {
        assert_eq!(self.var, other.var);
        assert_eq!(self.sqrt2, other.sqrt2, "incompatible sqrt2 normalization");
        assert_eq!(self.window, other.window);
        let mut out = self.clone();
        for (e2, s) in other.iter() {
            out.add_term(e2, s.neg());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Set every coupling to zero, keeping exact constants per order
    /// (`N`/`tH` survive as polynomials).
    pub fn at_zero_couplings(&self) -> BTreeMap<i64, Poly> {
        let mut out = BTreeMap::new();
        for (e2, s) in self.iter() {
            let mut constant = Poly::zero();
            for (m, c) in s.body().iter() {
                if m.iter().all(|(v, _)| !v.family.is_indexed() && v.family != Family::Zeta) {
                    // v and w are 1 at zero couplings
                    let stripped: Vec<(VarId, i64)> = m
                        .iter()
                        .filter(|(v, _)| v.family != Family::V && v.family != Family::W)
                        .collect();
                    constant.add_term(Monomial::from_raw(stripped), c.clone());
                }
            }
            if !constant.is_zero() {
                out.insert(e2, constant);
            }
        }
        out
    }
}

fn ts(p: Poly, policy: &Policy) -> TruncatedSeries {
    TruncatedSeries::from_poly(p, policy.clone())
}

// ---------------------------------------------------------------------------
// Exact zeta-forms (sqrt(2)-factored where applicable)
// ---------------------------------------------------------------------------

/// 1D curve, exact: `zeta^{-1} + (1/2) sum_{n>=1} (I_n - [n=1]) zeta^n / n!`.
pub fn one_dim_curve_exact(top: u32) -> LaurentPoly {
    let mut lp = LaurentPoly::new();
    lp.add_term(-2, Poly::one());
    for n in 1..=top {
        lp.add_term(
            2 * n as i64,
            coupling_minus_delta(n, rat(1, 2) * factorial(n).recip()),
        );
    }
    lp
}

/// Thin matrix-model curve, exact: the 1D tail with an `N`-weighted pole.
pub fn hmm_thin_curve_exact(top: u32) -> LaurentPoly {
    let mut lp = one_dim_curve_exact(top);
    let pole = lp.coefficient(-2);
    lp.add_term(-2, &(&pole * &Poly::var(VarId::big_n())) - &pole);
    lp
}

/// Fat matrix-model curve through 't Hooft order `k_max`, exact:
/// `tH zeta^{-1} + (1/2) sum (I_n - [n=1]) zeta^n/n!
///  + zeta^{-2} v X(Ftilde) + sum_l (l+1)! zeta^{-l-2} dFtilde/dI_l`
/// with `Ftilde = sum_k tH^{k+1} F^t_{0,k}`.
pub fn hmm_fat_curve_exact(top: u32, k_max: u32) -> Result<LaurentPoly, EngineError> {
    let mut lp = LaurentPoly::new();
    lp.add_term(-2, Poly::var(VarId::t_hooft()));
    for n in 1..=top {
        lp.add_term(
            2 * n as i64,
            coupling_minus_delta(n, rat(1, 2) * factorial(n).recip()),
        );
    }
    for k in 1..=k_max {
        let th = Poly::var_pow(VarId::t_hooft(), k as i64 + 1);
        let flow = if k == 1 {
            crate::engines::matrix_model::fat1_deriv(1)
                .mul_monomial(&Monomial::var(VarId::i(2)))
        } else {
            crate::engines::flow_field(
                crate::engines::matrix_model::fat_tower(k)?.as_ref(),
                Family::I,
            )
        };
        lp.add_term(-4, (&flow * &th).mul_monomial(&Monomial::var(VarId::v())));
        for l in 1..=(2 * k - 1) {
            let df = crate::engines::matrix_model::fat_deriv(k, l)?;
            lp.add_term(
                -2 * (l as i64 + 2),
                (&df * &th).scale(&factorial(l + 1)),
            );
        }
    }
    Ok(lp)
}

/// 2D curve, exact (no sqrt(2) factor): coefficient of `zeta^{n-1/2}` is
/// `-(1/2) (I_n - [n=1]) / gamma_half(n)`, the `n = 1` delta supplying the
/// leading `zeta^{1/2}`.
pub fn two_dim_curve_exact(top: u32) -> LaurentPoly {
    let mut lp = LaurentPoly::new();
    for n in 1..=top {
        let coeff = SqrtPi::gamma(-(n as i64))
            .mul(&SqrtPi::inv_sqrt_pi())
            .mul(&SqrtPi::rational(rat(
                if n % 2 == 0 { -1 } else { 1 },
                2,
            )));
        let coeff = coeff
            .into_rational()
            .expect("sqrt(pi) parity closes by construction");
        // (-1)^n/gamma_half(n) = gamma_half(-n), so this is -(1/2)/gamma_half(n)
        lp.add_term(2 * n as i64 - 1, coupling_minus_delta(n, coeff));
    }
    lp
}

// ---------------------------------------------------------------------------
// Action functions, exact
// ---------------------------------------------------------------------------

/// `S = c log(zeta) + (1/2) sum (I_n - [n=1]) zeta^{n+1}/(n+1)!` with
/// `c = 1` (1D) or `c = N` (thin matrix model); sqrt(2)-factored.
pub fn action_exact(model: Model, top: u32) -> LaurentPoly {
    let mut lp = LaurentPoly::new();
    match model {
        Model::OneDim => lp.log_coeff = Poly::one(),
        Model::Hmm => lp.log_coeff = Poly::var(VarId::big_n()),
        Model::TwoDim => {
            // -(sqrt(pi)/2) (I_n - [n=1]) / Gamma(n + 3/2) per order
            for n in 1..=top {
                let coeff = SqrtPi::rational(rat(-1, 2))
                    .mul(&SqrtPi::gamma(0))
                    .mul(&SqrtPi::inv_gamma(n as i64 + 1))
                    .into_rational()
                    .expect("parity closes");
                lp.add_term(2 * n as i64 + 1, coupling_minus_delta(n, coeff));
            }
            return lp;
        }
        Model::HmmFat => panic!("no action function for the fat expansion"),
    }
    for n in 1..=top {
        lp.add_term(
            2 * (n as i64 + 1),
            coupling_minus_delta(n, rat(1, 2) * factorial(n + 1).recip()),
        );
    }
    lp
}

/// Report of the action-function identities for one model.
#[derive(Debug)]
pub struct ActionReport {
    pub model: Model,
    pub antiderivative_ok: bool,
    pub dt0_ok: bool,
    pub restriction_ok: bool,
    pub detail: Option<String>,
}

impl ActionReport {
    pub fn pass(&self) -> bool {
        self.antiderivative_ok && self.dt0_ok && self.restriction_ok
    }
}

/// Check, exactly and order by order on the window `zeta^{-|top|}..zeta^{top}`:
/// the formal `z`-derivative of the action is the curve; the flow identity
/// `(1 - I_1) dS/dt_0 = X(S)` reproduces the displayed closed form; and the
/// restriction `-dS/dt_0` at `I_0 = I_1 = 0` is the undeformed curve.
pub fn action_and_base_check(model: Model, top: u32) -> Result<ActionReport, EngineError> {
    let slack = top + 2;
    let (curve, action) = match model {
        Model::OneDim => (one_dim_curve_exact(slack), action_exact(Model::OneDim, slack)),
        Model::Hmm => (hmm_thin_curve_exact(slack), action_exact(Model::Hmm, slack)),
        Model::TwoDim => (two_dim_curve_exact(slack), action_exact(Model::TwoDim, slack)),
        Model::HmmFat => panic!("no action function for the fat expansion"),
    };
    let window = (-2 * top as i64, 2 * top as i64);
    let mut detail = None;

    let anti = action.d_dz().sub(&curve).windowed(window.0, window.1);
    let antiderivative_ok = anti.is_zero();
    if !antiderivative_ok {
        detail = Some(format!("dS/dz mismatch at orders {:?}", anti.terms.keys()));
    }

    // (1 - I_1) dS/dt_0 = X(S), compared against the closed displays:
    // 1D/thin: -c zeta^{-1} + (1 - I_1) zeta / 2; 2D: -(1 - I_1) zeta^{1/2}.
    let flowed = action.flow();
    let mut expected = LaurentPoly::new();
    let one_minus_i1 = &Poly::one() - &Poly::var(VarId::i(1));
    match model {
        Model::OneDim => {
            expected.add_term(-2, -&Poly::one());
            expected.add_term(2, one_minus_i1.scale(&rat(1, 2)));
        }
        Model::Hmm => {
            expected.add_term(-2, -&Poly::var(VarId::big_n()));
            expected.add_term(2, one_minus_i1.scale(&rat(1, 2)));
        }
        Model::TwoDim => {
            expected.add_term(1, -&one_minus_i1);
        }
        Model::HmmFat => unreachable!(),
    }
    let flow_residual = flowed.sub(&expected).windowed(window.0, window.1);
    let dt0_ok = flow_residual.is_zero();
    if !dt0_ok && detail.is_none() {
        detail = Some(format!(
            "flow identity mismatch at orders {:?}",
            flow_residual.terms.keys()
        ));
    }

    // restriction at I_0 = I_1 = 0 of -dS/dt_0 = -(expected)/(1 - I_1)
    // reproduces the zero-coupling curve
    let base_curve = {
        let mut zeroed = LaurentPoly::new();
        for (&e2, p) in &curve.terms {
            let mut stripped = p.clone();
            for var in p.variables() {
                if var.family == Family::I {
                    stripped = stripped.eval_var(var, &rat_int(0));
                }
            }
            zeroed.add_term(e2, stripped);
        }
        zeroed
    };
    let restricted = {
        // -(expected) with I_1 = 0; the 1/(1 - I_1) prefactor is 1 there
        let mut neg = LaurentPoly::new();
        for (&e2, p) in &expected.terms {
            neg.add_term(e2, -&p.eval_var(VarId::i(1), &rat_int(0)));
        }
        neg
    };
    let base_residual = restricted.sub(&base_curve).windowed(window.0, window.1);
    let restriction_ok = base_residual.is_zero();
    if !restriction_ok && detail.is_none() {
        detail = Some(format!(
            "base restriction mismatch at orders {:?}",
            base_residual.terms.keys()
        ));
    }

    Ok(ActionReport { model, antiderivative_ok, dt0_ok, restriction_ok, detail })
}

// ---------------------------------------------------------------------------
// Truncated forms and the coordinate-equivalence comparison
// ---------------------------------------------------------------------------

/// The `zeta`-form as a truncated series over an I-variable policy.
pub fn curve_series_i(lp: &LaurentPoly, window: (i64, i64), ipolicy: &Policy, sqrt2: bool) -> CurveSeries {
    assert!(lp.log_coeff.is_zero());
    let mut out = CurveSeries::zero(CurveVar::Zeta, sqrt2, window, ipolicy.clone());
    for (&e2, p) in &lp.terms {
        out.add_term(e2, ts(p.clone(), ipolicy));
    }
    out
}

/// Expand a `zeta`-form into the bare-coupling `z`-form:
/// `zeta^e = sum_k C(e, k) (-I_0)^k z^{e-k}` with every coupling replaced
/// by its bare series, truncated under `tpolicy`.
pub fn zeta_form_to_z(
    lp: &LaurentPoly,
    window: (i64, i64),
    tpolicy: &Policy,
    sqrt2: bool,
) -> Result<CurveSeries, EngineError> {
    assert!(lp.log_coeff.is_zero());
    let depth = tpolicy.max_factors();
    let i0 = coords::i0_series(tpolicy);
    let mut i0_pows: Vec<TruncatedSeries> = vec![ts(Poly::one(), tpolicy)];
    for k in 1..=depth {
        i0_pows.push(i0_pows[k as usize - 1].mul(&i0));
    }
    let mut out = CurveSeries::zero(CurveVar::Z, sqrt2, window, tpolicy.clone());
    for (&e2, p) in &lp.terms {
        let coeff_t = engine_like_to_t(p, tpolicy)?;
        if coeff_t.is_zero() {
            continue;
        }
        for k in 0..=depth {
            let target = e2 - 2 * k as i64;
            if target < window.0 || target > window.1 {
                continue;
            }
            let sign = if k % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            let c = binomial_half(e2, k) * sign;
            if num_traits::Zero::is_zero(&c) {
                continue;
            }
            out.add_term(target, coeff_t.mul(&i0_pows[k as usize]).scale(&c));
        }
    }
    Ok(out)
}

/// Substitute bare-coupling series for `I_k` and `v` in a coefficient
/// polynomial (passing `N` and `tH` through).
fn engine_like_to_t(p: &Poly, tpolicy: &Policy) -> Result<TruncatedSeries, EngineError> {
    let mut map = BTreeMap::new();
    for var in p.variables() {
        match var.family {
            Family::I => {
                let series = if var.index == 0 {
                    coords::i0_series(tpolicy)
                } else {
                    coords::i_from_t(var.index, tpolicy)
                };
                map.insert(var, series);
            }
            Family::V => {
                map.insert(
                    var,
                    crate::algebra::series::geometric_of(&coords::i_from_t(1, tpolicy)),
                );
            }
            _ => {}
        }
    }
    Ok(substitute_all(p, &map, tpolicy)?)
}

/// The direct bare-coupling `z`-forms of the three deformed curves.
pub fn curve_t_form(
    model: Model,
    window: (i64, i64),
    tpolicy: &Policy,
) -> Result<CurveSeries, EngineError> {
    let max_t = tpolicy.family_cap(Family::T).expect("t policy");
    let pole_orders = (-window.0 / 2).max(0) as u32;
    let ext_m = max_t.max(pole_orders.saturating_sub(1)) + 1;
    let ext = {
        let mut e = Policy::t_vars(ext_m, tpolicy.max_factors() + 1);
        for fam in tpolicy.nullary_families() {
            e = e.with_nullary(fam);
        }
        e
    };
    let sqrt2 = model != Model::TwoDim;
    let mut out = CurveSeries::zero(CurveVar::Z, sqrt2, window, tpolicy.clone());
    match model {
        Model::OneDim | Model::Hmm => {
            let f0 =
                crate::tseries::free_energy_t_series(Model::OneDim, 0, &ext)?;
            let n_factor = if model == Model::Hmm {
                Poly::var(VarId::big_n())
            } else {
                Poly::one()
            };
            // polynomial part (1/2) sum (t_n - [n=1]) z^n / n!
            for n in 0..=max_t.min((window.1 / 2).max(0) as u32) {
                let mut factor = Poly::var(VarId::t(n));
                if n == 1 {
                    factor = &factor - &Poly::one();
                }
                out.add_term(
                    2 * n as i64,
                    ts(factor, tpolicy).scale(&(rat(1, 2) * factorial(n).recip())),
                );
            }
            // pole and descending tail
            out.add_term(-2, ts(n_factor.clone(), tpolicy));
            for n in 1..=pole_orders.saturating_sub(1) {
                let df = f0.differentiate(VarId::t(n - 1)).expect("t var");
                let coeff = df.restrict(tpolicy).mul_poly(&n_factor).scale(&factorial(n));
                out.add_term(-2 * (n as i64 + 1), coeff);
            }
        }
        Model::TwoDim => {
            let f0 = crate::tseries::free_energy_t_series(Model::TwoDim, 0, &ext)?;
            out.add_term(1, ts(Poly::one(), tpolicy));
            for n in 0..=max_t {
                let e2 = 2 * n as i64 - 1;
                if e2 > window.1 {
                    break;
                }
                let sign = if n % 2 == 0 { rat_int(1) } else { rat_int(-1) };
                let c = SqrtPi::rational(sign)
                    .mul(&SqrtPi::gamma(-(n as i64)))
                    .mul(&SqrtPi::inv_sqrt_pi())
                    .mul(&SqrtPi::rational(rat(-1, 2)))
                    .into_rational()
                    .expect("parity closes");
                out.add_term(e2, ts(Poly::var(VarId::t(n)), tpolicy).scale(&c));
            }
            for n in 0..=ext_m {
                let e2 = -2 * n as i64 - 3;
                if e2 < window.0 {
                    break;
                }
                let df = f0.differentiate(VarId::t(n)).expect("t var");
                let c = SqrtPi::gamma(n as i64 + 1)
                    .mul(&SqrtPi::inv_sqrt_pi())
                    .mul(&SqrtPi::rational(rat(-1, 2)))
                    .into_rational()
                    .expect("parity closes");
                out.add_term(e2, df.restrict(tpolicy).scale(&c));
            }
        }
        Model::HmmFat => panic!("the fat deformation is built in I-coordinates only"),
    }
    Ok(out)
}

/// The double-factorial-weighted normalization of the Airy deformation,
/// obtained from the gamma-weighted one by the per-order rescaling
/// `2^{1/2 - e}` (equivalently `w(z) = sqrt(2) y(z/2)`). Only its
/// zero-coupling restriction is pinned externally; the two normalizations
/// share the undeformed curve.
pub fn airy_double_factorial_form(curve: &CurveSeries) -> CurveSeries {
    let mut out = CurveSeries::zero(curve.var, curve.sqrt2, curve.window, curve.policy.clone());
    for (e2, s) in curve.iter() {
        // 2^{1/2 - e} with e = e2/2: for the half-integer lattice e2 is odd,
        // so (1 - e2/2...) stays integral after doubling: 2^{(1 - e2)/2}
        let shift = (1 - e2) / 2;
        debug_assert_eq!((1 - e2) % 2, 0, "half-integer lattice expected");
        let factor = if shift >= 0 {
            rat_int(1i64 << shift)
        } else {
            rat(1, 1i64 << (-shift))
        };
        out.add_term(e2, s.scale(&factor));
    }
    out
}

/// Outcome of the I-form vs t-form comparison for one model.
#[derive(Debug)]
pub struct CurveComparison {
    pub model: Model,
    pub window: (i64, i64),
    pub matches: bool,
    pub first_mismatch: Option<(i64, String)>,
}

/// Compare the renormalized-coupling form against the bare-coupling form
/// over a doubled window at a bare policy.
pub fn compare_curve_forms(
    model: Model,
    window: (i64, i64),
    tpolicy: &Policy,
) -> Result<CurveComparison, EngineError> {
    let top = (window.1 / 2).max(0) as u32 + tpolicy.max_factors() + 1;
    let exact = match model {
        Model::OneDim => one_dim_curve_exact(top),
        Model::Hmm => hmm_thin_curve_exact(top),
        Model::TwoDim => two_dim_curve_exact(top),
        Model::HmmFat => panic!("no bare-coupling form for the fat deformation"),
    };
    let sqrt2 = model != Model::TwoDim;
    let from_i = zeta_form_to_z(&exact, window, tpolicy, sqrt2)?;
    let direct = curve_t_form(model, window, tpolicy)?;
    let residual = direct.sub(&from_i);
    let first_mismatch = residual
        .iter()
        .next()
        .map(|(e2, s)| (e2, format!("{}", s.body())));
    Ok(CurveComparison {
        model,
        window,
        matches: residual.is_zero(),
        first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dim_zero_couplings() {
        // sqrt(2)-factored base curve: 1/z - z/2, i.e. sqrt2/z - z/sqrt2
        let lp = one_dim_curve_exact(4);
        let curve = curve_series_i(&lp, (-4, 8), &Policy::i_vars(4, 3), true);
        let base = curve.at_zero_couplings();
        assert_eq!(base.get(&-2), Some(&Poly::one()));
        assert_eq!(base.get(&2), Some(&Poly::constant(rat(-1, 2))));
        assert_eq!(base.len(), 2);
        // pole coefficient is exactly 1 (times sqrt2) with couplings on
        assert_eq!(curve.coefficient(-2).body(), &Poly::one());
    }

    #[test]
    fn thin_base_and_pole() {
        let lp = hmm_thin_curve_exact(3);
        let curve = curve_series_i(
            &lp,
            (-4, 6),
            &Policy::i_vars(3, 3).with_nullary(Family::BigN),
            true,
        );
        let base = curve.at_zero_couplings();
        assert_eq!(base.get(&-2), Some(&Poly::var(VarId::big_n())));
        assert_eq!(base.get(&2), Some(&Poly::constant(rat(-1, 2))));
    }

    #[test]
    fn two_dim_zero_couplings_is_airy() {
        let lp = two_dim_curve_exact(5);
        let curve = curve_series_i(&lp, (-3, 11), &Policy::i_vars(5, 3), false);
        let base = curve.at_zero_couplings();
        // z^{1/2} only
        assert_eq!(base.get(&1), Some(&Poly::one()));
        assert_eq!(base.len(), 1);
    }

    #[test]
    fn fat_curve_examples() {
        // K=1: coefficient of zeta^{-3} is tH^2 v; tH-linear part is the
        // thin curve's N-linear part with N -> tH; K=0 at zero couplings is
        // the base curve
        let lp = hmm_fat_curve_exact(3, 1).unwrap();
        let expect = Poly::term(
            Monomial::var_pow(VarId::t_hooft(), 2).mul(&Monomial::var(VarId::v())),
            rat_int(1),
        );
        assert_eq!(lp.coefficient(-6), expect);
        // tH-linear part: only the pole
        for (&e2, p) in &lp.terms {
            let linear = p.coefficient_of_power(VarId::t_hooft(), 1);
            if e2 == -2 {
                assert_eq!(linear, Poly::one());
            } else {
                assert!(linear.is_zero(), "unexpected tH-linear term at {e2}");
            }
        }
        let k0 = hmm_fat_curve_exact(3, 0).unwrap();
        let curve = curve_series_i(
            &k0,
            (-4, 6),
            &Policy::i_vars(3, 3).with_nullary(Family::THooft).with_nullary(Family::V),
            true,
        );
        let base = curve.at_zero_couplings();
        assert_eq!(base.get(&-2), Some(&Poly::var(VarId::t_hooft())));
        assert_eq!(base.get(&2), Some(&Poly::constant(rat(-1, 2))));
        assert_eq!(base.len(), 2);
    }

    #[test]
    fn coordinate_forms_agree_one_dim() {
        let policy = Policy::t_vars(3, 4);
        let cmp = compare_curve_forms(Model::OneDim, (-12, 12), &policy).unwrap();
        assert!(cmp.matches, "mismatch: {:?}", cmp.first_mismatch);
    }

    #[test]
    fn coordinate_forms_agree_hmm() {
        let policy = Policy::t_vars(3, 4).with_nullary(Family::BigN);
        let cmp = compare_curve_forms(Model::Hmm, (-12, 12), &policy).unwrap();
        assert!(cmp.matches, "mismatch: {:?}", cmp.first_mismatch);
    }

    #[test]
    fn coordinate_forms_agree_two_dim() {
        let policy = Policy::t_vars(3, 4);
        let cmp = compare_curve_forms(Model::TwoDim, (-12, 12), &policy).unwrap();
        assert!(cmp.matches, "mismatch: {:?}", cmp.first_mismatch);
    }

    #[test]
    fn action_checks_pass() {
        for model in [Model::OneDim, Model::Hmm, Model::TwoDim] {
            let report = action_and_base_check(model, 5).unwrap();
            assert!(report.pass(), "{:?}", report);
        }
    }

    #[test]
    fn airy_normalizations_share_the_base_curve() {
        // gamma-weighted and double-factorial-weighted deformations agree
        // at zero couplings: both reduce to z^{1/2}
        let policy = Policy::t_vars(2, 3);
        let y = curve_t_form(Model::TwoDim, (-7, 7), &policy).unwrap();
        let w = airy_double_factorial_form(&y);
        assert_eq!(w.at_zero_couplings(), y.at_zero_couplings());
        assert_eq!(y.at_zero_couplings().get(&1), Some(&Poly::one()));
        // deformed coefficients differ by the stated rescaling: the t_0
        // term at z^{-1/2} carries 2^{1/2-(-1/2)} = 2
        let y_half = y.coefficient(-1);
        let w_half = w.coefficient(-1);
        assert_eq!(w_half, y_half.scale(&rat_int(2)));
    }

    #[test]
    fn gamma_coefficient_identity() {
        // the n=1 coefficient of the 2D curve equals +1 against the leading
        // zeta^{1/2} after the delta absorption
        let lp = two_dim_curve_exact(2);
        let c1 = lp.coefficient(1);
        // (I_1 - 1) * (-1) = 1 - I_1
        let expect = &Poly::one() - &Poly::var(VarId::i(1));
        assert_eq!(c1, expect);
    }
}
