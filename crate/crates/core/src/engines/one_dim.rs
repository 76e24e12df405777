//! Topological 1D gravity: closed genus-0 series, the genus-1 derivative
//! table, and the descending constraint recursion for genus two and up.
//!
//! Genus `g >= 2` lives in the ring `(v, I_2..I_{2g-1})`, weighted
//! homogeneous of degree `2g-2`. The partials are solved top-down:
//!
//! - `dF_g/dI_K = (v/(K+1)) (dF_{g-1}/dI_{K-2}
//!        + sum_{p=2}^{2g-K} C(p+K,p) I_p dF_g/dI_{K+p-1})` for `K = 2g-1..3`
//! - `dF_g/dI_2 = (v/3) (v X(F_{g-1}) + sum_{p=2}^{2g-2} C(p+2,p) I_p dF_g/dI_{p+1})`
//! - `dF_g/dI_1 = (v/2) sum_{l=2}^{2g-1} (l+1) I_l dF_g/dI_l`
//!
//! with `X = sum_l I_{l+1} d/dI_l` the flow field, followed by Euler
//! reconstruction; the `dF_g/dI_1` equation is redundant and doubles as a
//! built-in consistency assertion.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::rational::{binomial, factorial, rat, rat_int};
use crate::algebra::series::{Policy, TruncatedSeries};
use crate::algebra::{Family, Monomial, Poly, VarId};
use crate::engines::{
    check_consistency, check_homogeneous, euler_reconstruct, flow_field, EngineError,
};

const MODEL: &str = "1d";

/// Genus-0 free energy `sum_k (-1)^k/(k+1)! (I_k + [k=1]) I_0^{k+1}` as a
/// truncated series in the renormalized couplings.
pub fn f0_series(policy: &Policy) -> TruncatedSeries {
    let max_i = policy.family_cap(Family::I).expect("I-variable policy");
    let mut body = Poly::zero();
    for k in 0..=max_i.min(policy.max_factors()) {
        let sign = if k % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        let coeff = sign / factorial(k + 1);
        body.add_term(
            Monomial::var(VarId::i(k)).mul(&Monomial::var_pow(VarId::i(0), k as i64 + 1)),
            coeff.clone(),
        );
        if k == 1 {
            body.add_term(Monomial::var_pow(VarId::i(0), 2), coeff);
        }
    }
    TruncatedSeries::from_poly(body, policy.clone())
}

/// Genus-1 derivative table: `dF_1/dI_1 = v/2`, all other partials zero.
pub fn genus1_deriv(k: u32) -> Poly {
    if k == 1 {
        Poly::term(Monomial::var(VarId::v()), rat(1, 2))
    } else {
        Poly::zero()
    }
}

fn memo() -> &'static Mutex<BTreeMap<u32, Arc<Poly>>> {
    static MEMO: OnceLock<Mutex<BTreeMap<u32, Arc<Poly>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// `dF_g/dI_k` for `g >= 1` (zero beyond the variable support).
pub fn deriv(g: u32, k: u32) -> Result<Poly, EngineError> {
    assert!(g >= 1 && k >= 1);
    if g == 1 {
        return Ok(genus1_deriv(k));
    }
    Ok(free_energy(g)?.differentiate(VarId::i(k))?)
}

/// Flow field `X(F_g) = sum_l I_{l+1} dF_g/dI_l`.
fn flow_of_genus(g: u32) -> Result<Poly, EngineError> {
    if g == 1 {
        return Ok(genus1_deriv(1).mul_monomial(&Monomial::var(VarId::i(2))));
    }
    Ok(flow_field(free_energy(g)?.as_ref(), Family::I))
}

/// Correlators of genus `g >= 2`: the coefficient of each normalized
/// monomial times its multiplicity factorials.
pub fn correlators(g: u32) -> Result<crate::engines::extract::CorrelatorTable, EngineError> {
    crate::engines::extract::correlators(
        MODEL,
        g,
        free_energy(g)?.as_ref(),
        crate::engines::extract::TildeConvention::HalfPower,
        2 * g as i64 - 2,
    )
}

/// Free energy of genus `g >= 2` as an exact polynomial in `(v, I_k)`.
pub fn free_energy(g: u32) -> Result<Arc<Poly>, EngineError> {
    assert!(g >= 2, "closed form exists only for g >= 2");
    if let Some(hit) = memo().lock().unwrap().get(&g) {
        return Ok(hit.clone());
    }
    let top = 2 * g - 1;
    let v = Monomial::var(VarId::v());
    let mut partials: BTreeMap<u32, Poly> = BTreeMap::new();

    for big_k in (3..=top).rev() {
        let mut rhs = deriv(g - 1, big_k - 2)?;
        for p in 2..=(2 * g - big_k) {
            let scaled = partials[&(big_k + p - 1)]
                .mul_monomial(&Monomial::var(VarId::i(p)))
                .scale(&binomial(p + big_k, p));
            rhs.add_assign_ref(&scaled);
        }
        partials.insert(
            big_k,
            rhs.mul_monomial(&v).scale(&rat(1, big_k as i64 + 1)),
        );
    }
    {
        let mut rhs = flow_of_genus(g - 1)?.mul_monomial(&v);
        for p in 2..=(2 * g - 2) {
            let scaled = partials[&(p + 1)]
                .mul_monomial(&Monomial::var(VarId::i(p)))
                .scale(&binomial(p + 2, p));
            rhs.add_assign_ref(&scaled);
        }
        partials.insert(2, rhs.mul_monomial(&v).scale(&rat(1, 3)));
    }
    {
        let mut rhs = Poly::zero();
        for l in 2..=top {
            let scaled = partials[&l]
                .mul_monomial(&Monomial::var(VarId::i(l)))
                .scale(&rat_int(l as i64 + 1));
            rhs.add_assign_ref(&scaled);
        }
        partials.insert(1, rhs.mul_monomial(&v).scale(&rat(1, 2)));
    }

    let f = euler_reconstruct(&partials, Family::I, 2 * g as i64 - 2);
    check_homogeneous(MODEL, g, &f, 2 * g as i64 - 2)?;
    check_consistency(MODEL, g, &f, &partials, Family::I)?;
    let f = Arc::new(f);
    memo().lock().unwrap().insert(g, f.clone());
    Ok(f)
}
