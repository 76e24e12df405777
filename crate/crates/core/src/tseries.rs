//! Conversion of engine outputs into bare-coupling series.
//!
//! Engines produce polynomials in `(v, I_k)` or `(w, J_k)`; verification and
//! the spectral t-forms need them as truncated series in `t_0..t_M`. The
//! denominator variables expand as geometric series in `I_1(t)`, `J_k`
//! rescales by `(2k+1)!!`, and `N`/`tH` pass through.

use std::collections::BTreeMap;

use crate::algebra::rational::{odd_double_factorial, rat};
use crate::algebra::series::{geometric_of, log_inv_one_minus, substitute_all};
use crate::algebra::{Family, Poly, Policy, TruncatedSeries, VarId};
use crate::coords;
use crate::engines::EngineError;

/// The four computable models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    OneDim,
    Hmm,
    HmmFat,
    TwoDim,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::OneDim => "1d",
            Model::Hmm => "hmm",
            Model::HmmFat => "hmm-fat",
            Model::TwoDim => "2d",
        }
    }

    pub fn parse(s: &str) -> Option<Model> {
        match s {
            "1d" => Some(Model::OneDim),
            "hmm" => Some(Model::Hmm),
            "hmm-fat" => Some(Model::HmmFat),
            "2d" => Some(Model::TwoDim),
            _ => None,
        }
    }
}

/// Substitution map sending every renormalized variable occurring in `p`
/// to its bare-coupling series under `policy`.
fn renormalized_assignments(
    p: &Poly,
    policy: &Policy,
) -> BTreeMap<VarId, TruncatedSeries> {
    let i1 = coords::i_from_t(1, policy);
    let geom = geometric_of(&i1);
    let mut map = BTreeMap::new();
    for var in p.variables() {
        match var.family {
            Family::V | Family::W => {
                map.insert(var, geom.clone());
            }
            Family::I => {
                let series = if var.index == 0 {
                    coords::i0_series(policy)
                } else {
                    coords::i_from_t(var.index, policy)
                };
                map.insert(var, series);
            }
            Family::J => {
                let scale = odd_double_factorial(2 * var.index as i64 + 1).recip();
                map.insert(var, coords::i_from_t(var.index, policy).scale(&scale));
            }
            _ => {}
        }
    }
    map
}

/// Expand an engine polynomial into a bare-coupling series.
pub fn engine_poly_to_t(p: &Poly, policy: &Policy) -> TruncatedSeries {
    let map = renormalized_assignments(p, policy);
    substitute_all(p, &map, policy).expect("engine polynomials carry integer exponents")
}

/// `log(1/(1-I_1))` as a bare-coupling series.
pub fn log_series(policy: &Policy) -> TruncatedSeries {
    log_inv_one_minus(&coords::i_from_t(1, policy))
}

/// Free energy of `model` at genus `g` as a bare-coupling series. The
/// policy must admit `N` for the matrix model.
pub fn free_energy_t_series(
    model: Model,
    g: u32,
    policy: &Policy,
) -> Result<TruncatedSeries, EngineError> {
    match (model, g) {
        (Model::OneDim, 0) => {
            let ipoly = one_dim_f0_poly(policy);
            Ok(engine_poly_to_t(&ipoly, policy))
        }
        (Model::OneDim, 1) => Ok(log_series(policy).scale(&rat(1, 2))),
        (Model::OneDim, _) => {
            Ok(engine_poly_to_t(crate::engines::one_dim::free_energy(g)?.as_ref(), policy))
        }
        (Model::Hmm, 0) => {
            let ipoly = &one_dim_f0_poly(policy) * &Poly::var(VarId::big_n());
            Ok(engine_poly_to_t(&ipoly, policy))
        }
        (Model::Hmm, 1) => Ok(log_series(policy)
            .mul_poly(&Poly::var_pow(VarId::big_n(), 2))
            .scale(&rat(1, 2))),
        (Model::Hmm, _) => {
            Ok(engine_poly_to_t(crate::engines::matrix_model::free_energy(g)?.as_ref(), policy))
        }
        (Model::TwoDim, 0) => {
            let max_t = policy.family_cap(Family::T).expect("t policy");
            let mixed = crate::engines::two_dim::f0_bare_mixed(max_t);
            let mut map = BTreeMap::new();
            map.insert(VarId::i(0), coords::i0_series(policy));
            Ok(substitute_all(&mixed, &map, policy)?)
        }
        (Model::TwoDim, 1) => Ok(log_series(policy).scale(&rat(1, 24))),
        (Model::TwoDim, _) => {
            Ok(engine_poly_to_t(crate::engines::two_dim::free_energy(g)?.as_ref(), policy))
        }
        (Model::HmmFat, _) => panic!("fat tower is organized by 't Hooft order, not genus"),
    }
}

/// Fat genus-zero free energy through 't Hooft order `k_max`:
/// `tH F_0^{1D}(t) + sum_{k=1..k_max} tH^{k+1} F^t_{0,k}(t)`.
/// The policy must admit `tH`.
pub fn fat_f0_t_series(k_max: u32, policy: &Policy) -> Result<TruncatedSeries, EngineError> {
    let base = engine_poly_to_t(&one_dim_f0_poly(policy), policy)
        .mul_poly(&Poly::var(VarId::t_hooft()));
    let mut out = base;
    for k in 1..=k_max {
        let fk = if k == 1 {
            log_series(policy).scale(&rat(1, 2))
        } else {
            engine_poly_to_t(crate::engines::matrix_model::fat_tower(k)?.as_ref(), policy)
        };
        out = out.add(&fk.mul_poly(&Poly::var_pow(VarId::t_hooft(), k as i64 + 1)));
    }
    Ok(out)
}

/// The genus-0 closed form as a polynomial in `I_0..I_M`, depth-truncated
/// so the later substitution is exact modulo the policy.
fn one_dim_f0_poly(policy: &Policy) -> Poly {
    let max_t = policy.family_cap(Family::T).expect("t policy");
    let ipolicy = Policy::i_vars(max_t, policy.max_factors());
    crate::engines::one_dim::f0_series(&ipolicy).body().clone()
}
