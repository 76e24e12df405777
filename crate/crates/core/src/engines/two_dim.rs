//! Topological 2D gravity: genus-0 closed forms (including the ghost-variable
//! rewriting), the genus-1 derivative table, and the `J`-variable recursion
//! for genus two and up, with extraction of the psi-class intersection
//! numbers.
//!
//! Genus `g >= 2` lives in `(w, J_2..J_{3g-2})` with `J_k = I_k/(2k+1)!!` and
//! `w = 1/(1-3J_1)`, weighted homogeneous of degree `3g-3`. Writing
//! `T = sum_l (2l+3) J_{l+1} w d/dJ_l`, the partials solve descending as
//!
//! - `dF_g/dJ_K = sum_{p=2}^{3g-1-K} (2p+1) J_p w dF_g/dJ_{K+p-1}
//!      + sum_{g1} dF_{g1}/dJ_{K-2} w T(F_{g-g1})
//!      + sum_{l=1}^{3g-2-K} (2l+3) J_{l+1} w^2 d2F_{g-1}/dJ_l dJ_{K-2}
//!      + (2K-3) w^2 dF_{g-1}/dJ_{K-3}
//!      + (w/2) (sum_{g1} sum_{l} dF_{g1}/dJ_l dF_{g-g1}/dJ_{K-2-l}
//!   + sum_{l} d2F_{g-1}/dJ_l dJ_{K-2-l})` for `K = 3g-2 .. 4`,
//! - a modified equation at `K = 3` (the `w^3` tail), and
//! - `dF_g/dJ_2`, `dF_g/dJ_1` from the squared flow and the dilaton relation,
//!
//! followed by Euler reconstruction and a full partial recheck.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::rational::{factorial, odd_double_factorial, rat, rat_int};
use crate::algebra::series::{Policy, TruncatedSeries};
use crate::algebra::{Family, Monomial, Poly, VarId};
use crate::engines::{
    check_consistency, check_homogeneous, euler_reconstruct, EngineError,
};

const MODEL: &str = "2d";

/// Genus-0 free energy in renormalized couplings:
/// `I_0^3/6 - sum_n (-1)^n I_0^{n+2}/(n+2)! I_n
///  + (1/2) sum_{n,k} (-1)^{n+k} I_0^{n+k+1}/(n! k! (n+k+1)) I_n I_k`.
pub fn f0_series(policy: &Policy) -> TruncatedSeries {
    let max_i = policy.family_cap(Family::I).expect("I-variable policy");
    let depth = policy.max_factors();
    let mut body = Poly::term(Monomial::var_pow(VarId::i(0), 3), rat(1, 6));
    for n in 0..=max_i.min(depth) {
        let sign = if n % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        body.add_term(
            Monomial::var(VarId::i(n)).mul(&Monomial::var_pow(VarId::i(0), n as i64 + 2)),
            -sign / factorial(n + 2),
        );
    }
    for n in 0..=max_i.min(depth) {
        for k in 0..=max_i.min(depth) {
            let sign = if (n + k) % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            let coeff = sign
                / (factorial(n) * factorial(k) * rat_int(n as i64 + k as i64 + 1))
                / rat_int(2);
            let mono = Monomial::var(VarId::i(n))
                .mul(&Monomial::var(VarId::i(k)))
                .mul(&Monomial::var_pow(VarId::i(0), (n + k) as i64 + 1));
            body.add_term(mono, coeff);
        }
    }
    TruncatedSeries::from_poly(body, policy.clone())
}

/// Ghost form of the genus-0 free energy:
/// `I_0^3/6 + I_{-2} - I_0 I_{-1} + (1/2) sum_n (-1)^n I_n I_{-n-1}`,
/// with the ghosts expanded in `I_0, I_1, ...` (ghost t's set to zero).
pub fn f0_ghost_series(policy: &Policy) -> TruncatedSeries {
    let depth = policy.max_factors();
    let ghost = |n: u32| crate::coords::ghost_in_i(n, depth);
    let mut body = Poly::term(Monomial::var_pow(VarId::i(0), 3), rat(1, 6));
    body.add_assign_ref(&ghost(2));
    body.add_assign_ref(&(&-&Poly::var(VarId::i(0)) * &ghost(1)));
    for n in 0..=depth.saturating_sub(2) {
        let sign = if n % 2 == 0 { rat(1, 2) } else { rat(-1, 2) };
        let term = (&Poly::var(VarId::i(n)) * &ghost(n + 1)).scale(&sign);
        body.add_assign_ref(&term);
    }
    TruncatedSeries::from_poly(body, policy.clone())
}

/// The extended genus-0 form restricted to zero ghost couplings:
/// `I_0^3/6 - (1/2) sum_{n,k} (-1)^{n+k} I_0^{n+k+1}/(n! k! (n+k+1)) I_n I_k
///  + sum_{n>=1} (-1)^n (I_n - [n=1]) I_{-n-1}`.
pub fn f0_extended_series(policy: &Policy) -> TruncatedSeries {
    let max_i = policy.family_cap(Family::I).expect("I-variable policy");
    let depth = policy.max_factors();
    let mut body = Poly::term(Monomial::var_pow(VarId::i(0), 3), rat(1, 6));
    for n in 0..=max_i.min(depth) {
        for k in 0..=max_i.min(depth) {
            let sign = if (n + k) % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            let coeff = -sign
                / (factorial(n) * factorial(k) * rat_int(n as i64 + k as i64 + 1))
                / rat_int(2);
            let mono = Monomial::var(VarId::i(n))
                .mul(&Monomial::var(VarId::i(k)))
                .mul(&Monomial::var_pow(VarId::i(0), (n + k) as i64 + 1));
            body.add_term(mono, coeff);
        }
    }
    for n in 1..=max_i.min(depth) {
        let sign = if n % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        let ghost = crate::coords::ghost_in_i(n + 1, depth);
        let mut factor = Poly::var(VarId::i(n));
        if n == 1 {
            factor = &factor - &Poly::one();
        }
        body.add_assign_ref(&(&factor * &ghost).scale(&sign));
    }
    TruncatedSeries::from_poly(body, policy.clone())
}

/// Genus-0 free energy in bare couplings with the base point kept explicit:
/// `I_0^3/6 - sum_k I_0^{k+2}/(k!(k+2)) t_k
///  + (1/2) sum_{n,k} I_0^{n+k+1}/(n! k! (n+k+1)) t_n t_k`,
/// returned as a mixed polynomial in `(t_k, I_0)` for later substitution.
pub fn f0_bare_mixed(max_t: u32) -> Poly {
    let mut body = Poly::term(Monomial::var_pow(VarId::i(0), 3), rat(1, 6));
    for k in 0..=max_t {
        body.add_term(
            Monomial::var(VarId::t(k)).mul(&Monomial::var_pow(VarId::i(0), k as i64 + 2)),
            -(factorial(k) * rat_int(k as i64 + 2)).recip(),
        );
    }
    for n in 0..=max_t {
        for k in 0..=max_t {
            let coeff = (factorial(n) * factorial(k) * rat_int(n as i64 + k as i64 + 1))
                .recip()
                / rat_int(2);
            let mono = Monomial::var(VarId::t(n))
                .mul(&Monomial::var(VarId::t(k)))
                .mul(&Monomial::var_pow(VarId::i(0), (n + k) as i64 + 1));
            body.add_term(mono, coeff);
        }
    }
    body
}

/// The four equivalent genus-0 forms, converted to bare couplings under
/// `tpolicy` and checked for mutual agreement; any disagreement is a hard
/// failure naming the first differing coefficient.
pub struct F0Forms {
    pub direct: TruncatedSeries,
    pub ghost: TruncatedSeries,
    pub extended: TruncatedSeries,
    pub bare: TruncatedSeries,
}

pub fn f0_all_forms(tpolicy: &Policy) -> Result<F0Forms, EngineError> {
    let max_t = tpolicy.family_cap(Family::T).expect("t policy");
    let ipolicy = Policy::i_vars(max_t + tpolicy.max_factors(), tpolicy.max_factors());
    let direct = f0_series(&ipolicy);
    let ghost = f0_ghost_series(&ipolicy);
    let extended = f0_extended_series(&ipolicy);
    let bare = crate::tseries::free_energy_t_series(crate::tseries::Model::TwoDim, 0, tpolicy)?;
    let direct_t = crate::tseries::engine_poly_to_t(direct.body(), tpolicy);
    for (name, other) in [
        ("ghost", &ghost),
        ("extended", &extended),
    ] {
        let residual = direct.sub(other);
        let offender = residual.body().iter().next().map(|(m, c)| (m.clone(), c.clone()));
        if let Some((m, c)) = offender {
            return Err(EngineError::Structure {
                model: MODEL,
                genus: 0,
                detail: format!("{name} form differs first at ({c}) * {m}"),
            });
        }
    }
    let residual = bare.sub(&direct_t);
    let offender = residual.body().iter().next().map(|(m, c)| (m.clone(), c.clone()));
    if let Some((m, c)) = offender {
        return Err(EngineError::Structure {
            model: MODEL,
            genus: 0,
            detail: format!("bare-coupling form differs first at ({c}) * {m}"),
        });
    }
    Ok(F0Forms { direct, ghost, extended, bare })
}

/// Genus-1 derivative table: `dF_1/dJ_1 = w/8`.
pub fn genus1_deriv(k: u32) -> Poly {
    if k == 1 {
        Poly::term(Monomial::var(VarId::w()), rat(1, 8))
    } else {
        Poly::zero()
    }
}

fn memo() -> &'static Mutex<BTreeMap<u32, Arc<Poly>>> {
    static MEMO: OnceLock<Mutex<BTreeMap<u32, Arc<Poly>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// `dF_g/dJ_k` for `g >= 1`.
pub fn deriv(g: u32, k: u32) -> Result<Poly, EngineError> {
    assert!(g >= 1 && k >= 1);
    if g == 1 {
        return Ok(genus1_deriv(k));
    }
    Ok(free_energy(g)?.differentiate(VarId::j(k))?)
}

fn deriv2(g: u32, a: u32, b: u32) -> Result<Poly, EngineError> {
    Ok(deriv(g, a)?.differentiate(VarId::j(b))?)
}

/// `T(p) = sum_l (2l+3) J_{l+1} w dp/dJ_l` on an arbitrary `(w, J)` poly.
fn flow_t(p: &Poly) -> Poly {
    let mut indices: Vec<u32> = vec![1];
    for var in p.variables() {
        if var.family == Family::J && !indices.contains(&var.index) {
            indices.push(var.index);
        }
    }
    let mut out = Poly::zero();
    let w = Monomial::var(VarId::w());
    for l in indices {
        let df = p.differentiate(VarId::j(l)).expect("non-zeta");
        out.add_assign_ref(
            &df.mul_monomial(&Monomial::var(VarId::j(l + 1)).mul(&w))
                .scale(&rat_int(2 * l as i64 + 3)),
        );
    }
    out
}

/// `T(F_g)` through the genus-1 table when needed.
fn flow_of_genus(g: u32) -> Result<Poly, EngineError> {
    if g == 1 {
        let w = Monomial::var(VarId::w());
        return Ok(genus1_deriv(1)
            .mul_monomial(&Monomial::var(VarId::j(2)).mul(&w))
            .scale(&rat_int(5)));
    }
    Ok(flow_t(free_energy(g)?.as_ref()))
}

fn wpow(p: i64) -> Monomial {
    Monomial::var_pow(VarId::w(), p)
}

/// Free energy of genus `g >= 2` as an exact polynomial in `(w, J_k)`.
pub fn free_energy(g: u32) -> Result<Arc<Poly>, EngineError> {
    assert!(g >= 2);
    if let Some(hit) = memo().lock().unwrap().get(&g) {
        return Ok(hit.clone());
    }
    let top = 3 * g - 2;
    let mut partials: BTreeMap<u32, Poly> = BTreeMap::new();

    // K = 3g-2 .. 4
    for big_k in (4..=top).rev() {
        let mut rhs = Poly::zero();
        for p in 2..=(3 * g - 1 - big_k) {
            rhs.add_assign_ref(
                &partials[&(big_k + p - 1)]
                    .mul_monomial(&Monomial::var(VarId::j(p)).mul(&wpow(1)))
                    .scale(&rat_int(2 * p as i64 + 1)),
            );
        }
        for g1 in 1..=(g - 1) {
            let left = deriv(g1, big_k - 2)?;
            if left.is_zero() {
                continue;
            }
            rhs.add_assign_ref(&(&left * &flow_of_genus(g - g1)?).mul_monomial(&wpow(1)));
        }
        for l in 1..=(3 * g - 2 - big_k) {
            rhs.add_assign_ref(
                &deriv2(g - 1, l, big_k - 2)?
                    .mul_monomial(&Monomial::var(VarId::j(l + 1)).mul(&wpow(2)))
                    .scale(&rat_int(2 * l as i64 + 3)),
            );
        }
        rhs.add_assign_ref(
            &deriv(g - 1, big_k - 3)?
                .mul_monomial(&wpow(2))
                .scale(&rat_int(2 * big_k as i64 - 3)),
        );
        let mut quad = Poly::zero();
        for l in 1..=(big_k - 3) {
            for g1 in 1..=(g - 1) {
                quad.add_assign_ref(&(&deriv(g1, l)? * &deriv(g - g1, big_k - 2 - l)?));
            }
            quad.add_assign_ref(&deriv2(g - 1, l, big_k - 2 - l)?);
        }
        rhs.add_assign_ref(&quad.mul_monomial(&wpow(1)).scale(&rat(1, 2)));
        partials.insert(big_k, rhs);
    }

    // K = 3
    {
        let mut rhs = Poly::zero();
        for p in 2..=(3 * g - 4) {
            rhs.add_assign_ref(
                &partials[&(p + 2)]
                    .mul_monomial(&Monomial::var(VarId::j(p)).mul(&wpow(1)))
                    .scale(&rat_int(2 * p as i64 + 1)),
            );
        }
        for g1 in 1..=(g - 1) {
            let left = deriv(g1, 1)?;
            rhs.add_assign_ref(&(&left * &flow_of_genus(g - g1)?).mul_monomial(&wpow(1)));
        }
        for l in 1..=(3 * g - 5) {
            rhs.add_assign_ref(
                &deriv2(g - 1, l, 1)?
                    .mul_monomial(&Monomial::var(VarId::j(l + 1)).mul(&wpow(2)))
                    .scale(&rat_int(2 * l as i64 + 3)),
            );
            rhs.add_assign_ref(
                &deriv(g - 1, l)?
                    .mul_monomial(&Monomial::var(VarId::j(l + 1)).mul(&wpow(3)))
                    .scale(&rat_int(3 * (2 * l as i64 + 3))),
            );
        }
        partials.insert(3, rhs);
    }

    // K = 2: squared flow on F_{g-1} plus split quadratics
    {
        let mut rhs = Poly::zero();
        for p in 2..=(3 * g - 3) {
            rhs.add_assign_ref(
                &partials[&(p + 1)]
                    .mul_monomial(&Monomial::var(VarId::j(p)).mul(&wpow(1)))
                    .scale(&rat_int(2 * p as i64 + 1)),
            );
        }
        let squared = flow_t(&flow_of_genus(g - 1)?);
        rhs.add_assign_ref(&squared.mul_monomial(&wpow(1)).scale(&rat(1, 2)));
        for g1 in 1..=(g - 1) {
            rhs.add_assign_ref(
                &(&flow_of_genus(g1)? * &flow_of_genus(g - g1)?)
                    .mul_monomial(&wpow(1))
                    .scale(&rat(1, 2)),
            );
        }
        partials.insert(2, rhs);
    }

    // K = 1 (dilaton)
    {
        let mut rhs = Poly::zero();
        for p in 2..=top {
            rhs.add_assign_ref(
                &partials[&p]
                    .mul_monomial(&Monomial::var(VarId::j(p)).mul(&wpow(1)))
                    .scale(&rat_int(2 * p as i64 + 1)),
            );
        }
        partials.insert(1, rhs);
    }

    let f = euler_reconstruct(&partials, Family::J, 3 * g as i64 - 3);
    check_homogeneous(MODEL, g, &f, 3 * g as i64 - 3)?;
    check_consistency(MODEL, g, &f, &partials, Family::J)?;
    let f = Arc::new(f);
    memo().lock().unwrap().insert(g, f.clone());
    Ok(f)
}

/// Intersection numbers of genus `g >= 2`: tilde coefficients times the
/// multiplicity factorials, with the selection rule enforced.
pub fn correlators(g: u32) -> Result<crate::engines::extract::CorrelatorTable, EngineError> {
    crate::engines::extract::correlators(
        MODEL,
        g,
        free_energy(g)?.as_ref(),
        crate::engines::extract::TildeConvention::ThirdPower,
        3 * g as i64 - 3,
    )
}

/// Rewrite a `(w, J)` polynomial in `(v, I)` variables via
/// `J_k = I_k/(2k+1)!!` and `w = v` (they denote the same denominator since
/// `3 J_1 = I_1`).
pub fn to_i_form(p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in p.iter() {
        let mut coeff = c.clone();
        let mut mono = Monomial::one();
        for (var, e) in m.iter() {
            match var.family {
                Family::J => {
                    let scale = odd_double_factorial(2 * var.index as i64 + 1);
                    for _ in 0..e {
                        coeff /= scale.clone();
                    }
                    mono = mono.mul(&Monomial::var_pow(VarId::i(var.index), e));
                }
                Family::W => mono = mono.mul(&Monomial::var_pow(VarId::v(), e)),
                _ => mono = mono.mul(&Monomial::from_raw(vec![(var, e)])),
            }
        }
        out.add_term(mono, coeff);
    }
    out
}

/// Expansion coefficients of `F_g` in powers of `I_1`:
/// `F_g = sum_n a_{g,n}(I_2, ...) I_1^n`. For `g = 1` the closed values
/// `a_{1,n} = 1/(24 n)` are returned; for `g >= 2` the coefficients are
/// produced by the Euler-operator recursion
/// `a_{g,1} = E(a_{g,0})`, `m a_{g,m} = (m-1) a_{g,m-1} + E(a_{g,m-1})`
/// with `E = sum_{k>=2} (2k+1)/3 I_k d/dI_k`.
pub fn i1_expansion(g: u32, n_max: u32) -> Result<Vec<Poly>, EngineError> {
    assert!(g >= 1);
    if g == 1 {
        let mut out = vec![Poly::zero()];
        for n in 1..=n_max {
            out.push(Poly::constant(rat(1, 24 * n as i64)));
        }
        return Ok(out);
    }
    let euler_op = |p: &Poly| -> Poly {
        let mut acc = Poly::zero();
        for var in p.variables() {
            if var.family == Family::I && var.index >= 2 {
                let df = p.differentiate(var).expect("non-zeta");
                acc.add_assign_ref(
                    &df.mul_monomial(&Monomial::var(var))
                        .scale(&rat(2 * var.index as i64 + 1, 3)),
                );
            }
        }
        acc
    };
    let mut out = vec![i1_free_part(g)?];
    for m in 1..=n_max {
        let prev = &out[m as usize - 1];
        let mut next = euler_op(prev);
        next.add_assign_ref(&prev.scale(&rat_int(m as i64 - 1)));
        out.push(next.scale(&rat(1, m as i64)));
    }
    Ok(out)
}

/// `a_{g,0}`: the `I_1`-free part of `F_g` in I-coordinates. Every power of
/// `v` contributes 1 at `I_1 = 0`.
fn i1_free_part(g: u32) -> Result<Poly, EngineError> {
    let i_form = to_i_form(free_energy(g)?.as_ref());
    Ok(i_form.eval_var(VarId::v(), &rat_int(1)))
}

/// Direct `I_1`-expansion of `F_g` (the oracle for [`i1_expansion`]):
/// each `v^P` expands as `sum_n C(n+P-1, P-1) I_1^n`.
pub fn i1_expansion_direct(g: u32, n_max: u32) -> Result<Vec<Poly>, EngineError> {
    let i_form = to_i_form(free_energy(g)?.as_ref());
    let mut out = vec![Poly::zero(); n_max as usize + 1];
    for (m, c) in i_form.iter() {
        let p = m.exp(VarId::v());
        let stripped = m.without(VarId::v());
        for n in 0..=n_max {
            let binom = crate::algebra::rational::binomial(n + p as u32 - 1, n);
            out[n as usize].add_term(stripped.clone(), c * &binom);
        }
    }
    Ok(out)
}
