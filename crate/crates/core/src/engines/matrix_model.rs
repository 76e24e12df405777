//! Hermitian one-matrix model: thin genus expansion `F_g^N` (exact
//! polynomials in `N`) and the fat genus-zero tower `F^t_{0,k}` of the
//! 't Hooft reorganization.
//!
//! The thin recursion mirrors the 1D one but adds quadratic terms mixing
//! lower genera and second-derivative terms from two genera down; the fat
//! tower obeys the same equations with `N -> 1` and the two-down terms
//! absent. Seeds: `dF_1^N/dI_1 = N^2 v / 2` and `dF^t_{0,1}/dI_1 = v/2`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::rational::{factorial, rat, rat_int, Rational};
use crate::algebra::{Family, Monomial, Poly, VarId};
use crate::engines::{
    check_consistency, check_homogeneous, euler_reconstruct, flow_field, EngineError,
};

const MODEL: &str = "hmm";
const MODEL_FAT: &str = "hmm-fat";

/// Genus-0 free energy `N * F_0^{1D}` in the renormalized couplings.
pub fn f0_series(
    policy: &crate::algebra::Policy,
) -> crate::algebra::TruncatedSeries {
    crate::engines::one_dim::f0_series(policy).mul_poly(&Poly::var(VarId::big_n()))
}

/// Thin genus-1 derivative table: `dF_1^N/dI_1 = N^2 v / 2`.
pub fn genus1_deriv(k: u32) -> Poly {
    if k == 1 {
        Poly::term(
            Monomial::var(VarId::v()).mul(&Monomial::var_pow(VarId::big_n(), 2)),
            rat(1, 2),
        )
    } else {
        Poly::zero()
    }
}

/// Fat tower order-1 derivative table: `dF^t_{0,1}/dI_1 = v / 2`.
pub fn fat1_deriv(k: u32) -> Poly {
    crate::engines::one_dim::genus1_deriv(k)
}

fn thin_memo() -> &'static Mutex<BTreeMap<u32, Arc<Poly>>> {
    static MEMO: OnceLock<Mutex<BTreeMap<u32, Arc<Poly>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(BTreeMap::new()))
}

fn fat_memo() -> &'static Mutex<BTreeMap<u32, Arc<Poly>>> {
    static MEMO: OnceLock<Mutex<BTreeMap<u32, Arc<Poly>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// `dF_g^N/dI_k` (thin), `g >= 1`.
pub fn deriv(g: u32, k: u32) -> Result<Poly, EngineError> {
    assert!(g >= 1 && k >= 1);
    if g == 1 {
        return Ok(genus1_deriv(k));
    }
    Ok(free_energy(g)?.differentiate(VarId::i(k))?)
}

fn deriv2(g: u32, a: u32, b: u32) -> Result<Poly, EngineError> {
    Ok(deriv(g, a)?.differentiate(VarId::i(b))?)
}

/// `X(F_g^N)` with `X = sum_l I_{l+1} d/dI_l`.
fn flow_of_genus(g: u32) -> Result<Poly, EngineError> {
    if g == 1 {
        return Ok(genus1_deriv(1).mul_monomial(&Monomial::var(VarId::i(2))));
    }
    Ok(flow_field(free_energy(g)?.as_ref(), Family::I))
}

fn fat_flow(k: u32) -> Result<Poly, EngineError> {
    if k == 1 {
        return Ok(fat1_deriv(1).mul_monomial(&Monomial::var(VarId::i(2))));
    }
    Ok(flow_field(fat_tower(k)?.as_ref(), Family::I))
}

/// `dF^t_{0,k}/dI_l` for the fat tower, `k >= 1`.
pub fn fat_deriv(k: u32, l: u32) -> Result<Poly, EngineError> {
    assert!(k >= 1 && l >= 1);
    if k == 1 {
        return Ok(fat1_deriv(l));
    }
    Ok(fat_tower(k)?.differentiate(VarId::i(l))?)
}

fn vpow(p: i64) -> Monomial {
    Monomial::var_pow(VarId::v(), p)
}

/// Correlators of the thin expansion: exact polynomials in `N`.
pub fn correlators(g: u32) -> Result<crate::engines::extract::CorrelatorTable, EngineError> {
    crate::engines::extract::correlators(
        MODEL,
        g,
        free_energy(g)?.as_ref(),
        crate::engines::extract::TildeConvention::HalfPower,
        2 * g as i64 - 2,
    )
}

/// Thin free energy `F_g^N` for `g >= 2`: exact polynomial in `(v, N, I_k)`.
pub fn free_energy(g: u32) -> Result<Arc<Poly>, EngineError> {
    assert!(g >= 2);
    if let Some(hit) = thin_memo().lock().unwrap().get(&g) {
        return Ok(hit.clone());
    }
    let top = 2 * g - 1;
    let n_var = Poly::var(VarId::big_n());
    let mut partials: BTreeMap<u32, Poly> = BTreeMap::new();

    // K = 2g-1 .. 5
    for big_k in (5..=top).rev() {
        let inv = factorial(big_k + 1).recip();
        let mut rhs = (&deriv(g - 1, big_k - 2)? * &n_var)
            .mul_monomial(&vpow(1))
            .scale(&(rat_int(2) * factorial(big_k - 1) * inv.clone()));
        for n in 2..=(2 * g - big_k) {
            let c = factorial(n + big_k) * factorial(n).recip() * inv.clone();
            rhs.add_assign_ref(
                &partials[&(big_k + n - 1)]
                    .mul_monomial(&Monomial::var(VarId::i(n)).mul(&vpow(1)))
                    .scale(&c),
            );
        }
        for g1 in 1..=g.saturating_sub(2) {
            for i in 2..=(big_k - 3) {
                let c = factorial(i) * factorial(big_k - 1 - i) * inv.clone();
                rhs.add_assign_ref(
                    &(&deriv(g1, i - 1)? * &deriv(g - 1 - g1, big_k - 2 - i)?)
                        .mul_monomial(&vpow(1))
                        .scale(&c),
                );
            }
            let c = rat_int(2) * factorial(big_k - 2) * inv.clone();
            rhs.add_assign_ref(
                &(&deriv(g1, big_k - 3)? * &flow_of_genus(g - 1 - g1)?)
                    .mul_monomial(&vpow(2))
                    .scale(&c),
            );
        }
        if g >= 3 {
            let gm2 = g - 2;
            for i in 2..=(big_k - 3) {
                let c = factorial(i) * factorial(big_k - 1 - i) * inv.clone();
                rhs.add_assign_ref(
                    &deriv2(gm2, i - 1, big_k - 2 - i)?.mul_monomial(&vpow(1)).scale(&c),
                );
            }
            // the two boundary indices of the second-derivative sum each
            // contribute v dF/dI_{K-4} + v X(dF/dI_{K-3})
            let c = rat_int(2) * factorial(big_k - 2) * inv.clone();
            rhs.add_assign_ref(&deriv(gm2, big_k - 4)?.mul_monomial(&vpow(2)).scale(&c));
            rhs.add_assign_ref(
                &flow_field(&deriv(gm2, big_k - 3)?, Family::I)
                    .mul_monomial(&vpow(2))
                    .scale(&c),
            );
        }
        partials.insert(big_k, rhs);
    }

    // K = 4
    if top >= 4 {
        let mut rhs = (&deriv(g - 1, 2)? * &n_var)
            .mul_monomial(&vpow(1))
            .scale(&rat(1, 10));
        for n in 2..=(2 * g - 4) {
            let c = factorial(n + 4) * factorial(n).recip() * factorial(5).recip();
            rhs.add_assign_ref(
                &partials[&(n + 3)]
                    .mul_monomial(&Monomial::var(VarId::i(n)).mul(&vpow(1)))
                    .scale(&c),
            );
        }
        for g1 in 1..=g.saturating_sub(2) {
            rhs.add_assign_ref(
                &(&deriv(g1, 1)? * &flow_of_genus(g - 1 - g1)?)
                    .mul_monomial(&vpow(2))
                    .scale(&rat(1, 30)),
            );
        }
        if g >= 3 {
            // boundary pieces of the second-derivative sum, as above
            rhs.add_assign_ref(&flow_of_genus(g - 2)?.mul_monomial(&vpow(3)).scale(&rat(1, 30)));
            rhs.add_assign_ref(
                &flow_field(&deriv(g - 2, 1)?, Family::I)
                    .mul_monomial(&vpow(2))
                    .scale(&rat(1, 30)),
            );
        }
        partials.insert(4, rhs);
    }

    // K = 3
    {
        let mut rhs = (&deriv(g - 1, 1)? * &n_var)
            .mul_monomial(&vpow(1))
            .scale(&rat(1, 6));
        for n in 2..=(2 * g - 3) {
            let c = factorial(n + 3) * factorial(n).recip() * factorial(4).recip();
            rhs.add_assign_ref(
                &partials[&(n + 2)]
                    .mul_monomial(&Monomial::var(VarId::i(n)).mul(&vpow(1)))
                    .scale(&c),
            );
        }
        for g1 in 1..=g.saturating_sub(2) {
            rhs.add_assign_ref(
                &(&flow_of_genus(g1)? * &flow_of_genus(g - 1 - g1)?)
                    .mul_monomial(&vpow(3))
                    .scale(&rat(1, 24)),
            );
        }
        if g >= 3 {
            let inner = flow_of_genus(g - 2)?.mul_monomial(&vpow(1));
            let outer = flow_field(&inner, Family::I);
            rhs.add_assign_ref(&outer.mul_monomial(&vpow(2)).scale(&rat(1, 24)));
        }
        if g == 2 {
            rhs.add_assign_ref(&n_var.mul_monomial(&vpow(2)).scale(&rat(1, 24)));
        }
        partials.insert(3, rhs);
    }

    // K = 2
    {
        let mut rhs = (&flow_of_genus(g - 1)? * &n_var)
            .mul_monomial(&vpow(2))
            .scale(&rat(1, 3));
        for n in 2..=(2 * g - 2) {
            let c = factorial(n + 2) * factorial(n).recip() * factorial(3).recip();
            rhs.add_assign_ref(
                &partials[&(n + 1)]
                    .mul_monomial(&Monomial::var(VarId::i(n)).mul(&vpow(1)))
                    .scale(&c),
            );
        }
        partials.insert(2, rhs);
    }

    // K = 1 (dilaton)
    {
        let mut rhs = Poly::zero();
        for n in 2..=top {
            rhs.add_assign_ref(
                &partials[&n]
                    .mul_monomial(&Monomial::var(VarId::i(n)))
                    .scale(&rat_int(n as i64 + 1)),
            );
        }
        partials.insert(1, rhs.mul_monomial(&vpow(1)).scale(&rat(1, 2)));
    }

    let f = euler_reconstruct(&partials, Family::I, 2 * g as i64 - 2);
    check_homogeneous(MODEL, g, &f, 2 * g as i64 - 2)?;
    check_consistency(MODEL, g, &f, &partials, Family::I)?;
    let f = Arc::new(f);
    thin_memo().lock().unwrap().insert(g, f.clone());
    Ok(f)
}

/// Fat genus-zero tower `F^t_{0,k}` for `k >= 2`: exact polynomial in
/// `(v, I_2..I_{2k-1})`, weighted homogeneous of degree `2k-2`.
pub fn fat_tower(k: u32) -> Result<Arc<Poly>, EngineError> {
    assert!(k >= 2, "order 1 exists only as a derivative table");
    if let Some(hit) = fat_memo().lock().unwrap().get(&k) {
        return Ok(hit.clone());
    }
    let top = 2 * k - 1;
    let mut partials: BTreeMap<u32, Poly> = BTreeMap::new();

    for big_k in (5..=top).rev() {
        let inv = factorial(big_k + 1).recip();
        let mut rhs = fat_deriv(k - 1, big_k - 2)?
            .mul_monomial(&vpow(1))
            .scale(&(rat_int(2) * factorial(big_k - 1) * inv.clone()));
        for n in 2..=(2 * k - big_k) {
            let c = factorial(n + big_k) * factorial(n).recip() * inv.clone();
            rhs.add_assign_ref(
                &partials[&(big_k + n - 1)]
                    .mul_monomial(&Monomial::var(VarId::i(n)).mul(&vpow(1)))
                    .scale(&c),
            );
        }
        for k1 in 1..=k.saturating_sub(2) {
            for i in 2..=(big_k - 3) {
                let c = factorial(i) * factorial(big_k - 1 - i) * inv.clone();
                rhs.add_assign_ref(
                    &(&fat_deriv(k1, i - 1)? * &fat_deriv(k - 1 - k1, big_k - 2 - i)?)
                        .mul_monomial(&vpow(1))
                        .scale(&c),
                );
            }
            let c = rat_int(2) * factorial(big_k - 2) * inv.clone();
            rhs.add_assign_ref(
                &(&fat_deriv(k1, big_k - 3)? * &fat_flow(k - 1 - k1)?)
                    .mul_monomial(&vpow(2))
                    .scale(&c),
            );
        }
        partials.insert(big_k, rhs);
    }

    if top >= 4 {
        let mut rhs = fat_deriv(k - 1, 2)?.mul_monomial(&vpow(1)).scale(&rat(1, 10));
        for n in 2..=(2 * k - 4) {
            let c = factorial(n + 4) * factorial(n).recip() * factorial(5).recip();
            rhs.add_assign_ref(
                &partials[&(n + 3)]
                    .mul_monomial(&Monomial::var(VarId::i(n)).mul(&vpow(1)))
                    .scale(&c),
            );
        }
        for k1 in 1..=k.saturating_sub(2) {
            rhs.add_assign_ref(
                &(&fat_deriv(k1, 1)? * &fat_flow(k - 1 - k1)?)
                    .mul_monomial(&vpow(2))
                    .scale(&rat(1, 30)),
            );
        }
        partials.insert(4, rhs);
    }

    {
        let mut rhs = fat_deriv(k - 1, 1)?.mul_monomial(&vpow(1)).scale(&rat(1, 6));
        for n in 2..=(2 * k - 3) {
            let c = factorial(n + 3) * factorial(n).recip() * factorial(4).recip();
            rhs.add_assign_ref(
                &partials[&(n + 2)]
                    .mul_monomial(&Monomial::var(VarId::i(n)).mul(&vpow(1)))
                    .scale(&c),
            );
        }
        for k1 in 1..=k.saturating_sub(2) {
            rhs.add_assign_ref(
                &(&fat_flow(k1)? * &fat_flow(k - 1 - k1)?)
                    .mul_monomial(&vpow(3))
                    .scale(&rat(1, 24)),
            );
        }
        partials.insert(3, rhs);
    }

    {
        let mut rhs = fat_flow(k - 1)?.mul_monomial(&vpow(2)).scale(&rat(1, 3));
        for n in 2..=(2 * k - 2) {
            let c = factorial(n + 2) * factorial(n).recip() * factorial(3).recip();
            rhs.add_assign_ref(
                &partials[&(n + 1)]
                    .mul_monomial(&Monomial::var(VarId::i(n)).mul(&vpow(1)))
                    .scale(&c),
            );
        }
        partials.insert(2, rhs);
    }

    {
        let mut rhs = Poly::zero();
        for n in 2..=top {
            rhs.add_assign_ref(
                &partials[&n]
                    .mul_monomial(&Monomial::var(VarId::i(n)))
                    .scale(&rat_int(n as i64 + 1)),
            );
        }
        partials.insert(1, rhs.mul_monomial(&vpow(1)).scale(&rat(1, 2)));
    }

    let f = euler_reconstruct(&partials, Family::I, 2 * k as i64 - 2);
    check_homogeneous(MODEL_FAT, k, &f, 2 * k as i64 - 2)?;
    check_consistency(MODEL_FAT, k, &f, &partials, Family::I)?;
    let f = Arc::new(f);
    fat_memo().lock().unwrap().insert(k, f.clone());
    Ok(f)
}

/// Evaluate the matrix order `N` at an exact numeric value.
pub fn eval_big_n(p: &Poly, value: &Rational) -> Poly {
    p.eval_var(VarId::big_n(), value)
}

/// Coefficient of `N^power` as a polynomial without `N`.
pub fn n_power_part(p: &Poly, power: u32) -> Poly {
    p.coefficient_of_power(VarId::big_n(), power as i64)
}
