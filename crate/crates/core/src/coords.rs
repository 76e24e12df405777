//! Coordinate transformations between bare couplings `t_n`, renormalized
//! couplings `I_n`, and the renormalized ghost couplings `I_{-n}`.
//!
//! The base series `I_0(t)` is the critical point of the quadratic-completed
//! action, i.e. the fixed point of `x = sum_n t_n x^n / n!`. It is computed by
//! fixed-point iteration, which stabilizes one factor order per step; the
//! closed Lagrange-inversion sum serves as an independent oracle in the tests.
//! With `I_0` in hand,
//!
//! - `I_n = sum_k t_{n+k} I_0^k / k!`
//! - `t_n = sum_k I_{n+k} (-1)^k I_0^k / k!`
//! - `I_{-n} = sum_k t_k I_0^{k+n} / (k+n)!` (ghost couplings, ghost t's zero)
//! - `I_{-n} = sum_k I_k (-1)^k I_0^{k+n} / (k! (n-1)! (k+n))`

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use crate::algebra::monomial::Monomial;
use crate::algebra::rational::{factorial, rat_int, Rational};
use crate::algebra::series::{substitute_all, Policy, TruncatedSeries};
use crate::algebra::{Poly, VarId};

fn i0_cache() -> &'static Mutex<BTreeMap<Policy, TruncatedSeries>> {
    static CACHE: OnceLock<Mutex<BTreeMap<Policy, TruncatedSeries>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// `I_0` as a truncated series in `t_0..t_M`, by fixed-point iteration.
/// Memoized per policy.
pub fn i0_series(policy: &Policy) -> TruncatedSeries {
    assert!(policy.max_factors() >= 1, "policy must admit at least one factor");
    if let Some(hit) = i0_cache().lock().unwrap().get(policy) {
        return hit.clone();
    }
    let max_t = policy.family_cap(crate::algebra::Family::T).expect("t-variable policy");
    let mut x = TruncatedSeries::zero(policy.clone());
    for _ in 0..policy.max_factors() {
        let mut next = TruncatedSeries::zero(policy.clone());
        let mut x_pow = TruncatedSeries::from_poly(Poly::one(), policy.clone());
        for n in 0..=max_t {
            if n > 0 {
                x_pow = x_pow.mul(&x);
                if x_pow.is_zero() {
                    break;
                }
            }
            let term = x_pow.mul_poly(&Poly::var(VarId::t(n))).scale(&factorial(n).recip());
            next = next.add(&term);
        }
        if next == x {
            break;
        }
        x = next;
    }
    i0_cache().lock().unwrap().insert(policy.clone(), x.clone());
    x
}

/// `I_n = sum_k t_{n+k} I_0^k / k!` for `n >= 1`, truncated under `policy`.
pub fn i_from_t(n: u32, policy: &Policy) -> TruncatedSeries {
    assert!(n >= 1);
    let max_t = policy.family_cap(crate::algebra::Family::T).expect("t-variable policy");
    let i0 = i0_series(policy);
    let mut out = TruncatedSeries::zero(policy.clone());
    if n > max_t {
        return out;
    }
    let mut i0_pow = TruncatedSeries::from_poly(Poly::one(), policy.clone());
    for k in 0..=(max_t - n) {
        if k > 0 {
            i0_pow = i0_pow.mul(&i0);
            if i0_pow.is_zero() {
                break;
            }
        }
        let term = i0_pow
            .mul_poly(&Poly::var(VarId::t(n + k)))
            .scale(&factorial(k).recip());
        out = out.add(&term);
    }
    out
}

/// `t_n = sum_k I_{n+k} (-1)^k I_0^k / k!`, truncated under an I-variable
/// policy.
pub fn t_from_i(n: u32, ipolicy: &Policy) -> TruncatedSeries {
    let max_i = ipolicy.family_cap(crate::algebra::Family::I).expect("I-variable policy");
    let mut out = TruncatedSeries::zero(ipolicy.clone());
    if n > max_i {
        return out;
    }
    for k in 0..=(max_i - n) {
        let sign = if k % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        let mono = Monomial::var(VarId::i(n + k)).mul(&Monomial::var_pow(VarId::i(0), k as i64));
        let term = Poly::term(mono, sign * factorial(k).recip());
        out = out.add(&TruncatedSeries::from_poly(term, ipolicy.clone()));
    }
    out
}

/// `sum_{k<=kmax} t_k X^{k+n} / (k+n)!` with `X = I_0` kept as an explicit
/// variable: the ghost coupling `I_{-n}` before the base point is expanded.
pub fn ghost_mixed(n: u32, kmax: u32) -> Poly {
    assert!(n >= 1);
    let mut out = Poly::zero();
    for k in 0..=kmax {
        let mono =
            Monomial::var(VarId::t(k)).mul(&Monomial::var_pow(VarId::i(0), (k + n) as i64));
        out.add_term(mono, factorial(k + n).recip());
    }
    out
}

/// Ghost coupling `I_{-n}` as a truncated series in the bare couplings.
pub fn ghost_from_t(n: u32, policy: &Policy) -> TruncatedSeries {
    assert!(n >= 1);
    let max_t = policy.family_cap(crate::algebra::Family::T).expect("t-variable policy");
    let kmax = max_t.min(policy.max_factors().saturating_sub(1));
    let mixed = ghost_mixed(n, kmax);
    let mut map = BTreeMap::new();
    map.insert(VarId::i(0), i0_series(policy));
    substitute_all(&mixed, &map, policy).expect("integer exponents")
}

/// `I_{-n} = sum_{k<=kmax} I_k (-1)^k I_0^{k+n} / (k! (n-1)! (k+n))`,
/// an exact polynomial in `I_0, I_1, ...`.
pub fn ghost_in_i(n: u32, kmax: u32) -> Poly {
    assert!(n >= 1);
    let mut out = Poly::zero();
    for k in 0..=kmax {
        let sign = if k % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        let denom = factorial(k) * factorial(n - 1) * rat_int((k + n) as i64);
        let mono = Monomial::var(VarId::i(k)).mul(&Monomial::var_pow(VarId::i(0), (k + n) as i64));
        out.add_term(mono, sign / denom);
    }
    out
}

/// Result of the `t -> I -> t` composition check.
#[derive(Debug)]
pub struct RoundtripReport {
    pub policy: Policy,
    pub checked: u32,
    pub first_failure: Option<(u32, Monomial, Rational)>,
}

impl RoundtripReport {
    pub fn pass(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Verify that `t_from_i(n)` with every `I_k` replaced by its t-series
/// equals the bare monomial `t_n`, modulo the policy, for `n <= M`.
pub fn roundtrip_check(policy: &Policy) -> RoundtripReport {
    let max_t = policy.family_cap(crate::algebra::Family::T).expect("t-variable policy");
    let depth = policy.max_factors().saturating_sub(1);
    let ipolicy = Policy::i_vars(max_t + depth, policy.max_factors());
    let mut assignments = BTreeMap::new();
    assignments.insert(VarId::i(0), i0_series(policy));
    for k in 1..=(max_t + depth) {
        assignments.insert(VarId::i(k), i_from_t(k, policy));
    }
    let mut first_failure = None;
    for n in 0..=max_t {
        let t_in_i = t_from_i(n, &ipolicy);
        let recomposed =
            substitute_all(t_in_i.body(), &assignments, policy).expect("integer exponents");
        let expected =
            TruncatedSeries::from_poly(Poly::var(VarId::t(n)), policy.clone());
        let residual = recomposed.sub(&expected);
        let offender = residual.body().iter().next().map(|(m, c)| (m.clone(), c.clone()));
        if let Some((m, c)) = offender {
            first_failure = Some((n, m, c));
            break;
        }
    }
    RoundtripReport { policy: policy.clone(), checked: max_t + 1, first_failure }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    /// Closed Lagrange-inversion sum for `I_0`, the independent oracle:
    /// `I_0 = t_0 + sum_{k>=1} (1/k) sum_{p_1+..+p_k=k-1} prod t_{p_i}/p_i!`.
    fn i0_lagrange(policy: &Policy) -> TruncatedSeries {
        let max_t = policy.family_cap(crate::algebra::Family::T).unwrap();
        let mut body = Poly::var(VarId::t(0));
        for k in 2..=policy.max_factors() {
            let mut sum = Poly::zero();
            for comp in compositions(k, k - 1, max_t) {
                let mut coeff = rat_int(1);
                let mut mono = Monomial::one();
                for &p in &comp {
                    coeff /= factorial(p);
                    mono = mono.mul(&Monomial::var(VarId::t(p)));
                }
                sum.add_term(mono, coeff);
            }
            body.add_assign_ref(&sum.scale(&rat(1, k as i64)));
        }
        TruncatedSeries::from_poly(body, policy.clone())
    }

    /// All ordered tuples of `parts` non-negative integers summing to
    /// `total`, each entry at most `cap`.
    fn compositions(parts: u32, total: u32, cap: u32) -> Vec<Vec<u32>> {
        if parts == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for first in 0..=total.min(cap) {
            for mut rest in compositions(parts - 1, total - first, cap) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn i0_depth_one_is_t0() {
        let policy = Policy::t_vars(3, 1);
        assert_eq!(i0_series(&policy).body(), &Poly::var(VarId::t(0)));
    }

    #[test]
    fn i0_depth_three_expansion() {
        // t0 + t0 t1 + t0 t1^2 + (1/2) t0^2 t2
        let policy = Policy::t_vars(3, 3);
        let i0 = i0_series(&policy);
        let expect = Poly::from_terms(vec![
            (Monomial::var(VarId::t(0)), rat_int(1)),
            (
                Monomial::var(VarId::t(0)).mul(&Monomial::var(VarId::t(1))),
                rat_int(1),
            ),
            (
                Monomial::var(VarId::t(0)).mul(&Monomial::var_pow(VarId::t(1), 2)),
                rat_int(1),
            ),
            (
                Monomial::var_pow(VarId::t(0), 2).mul(&Monomial::var(VarId::t(2))),
                rat(1, 2),
            ),
        ]);
        assert_eq!(i0.body(), &expect);
    }

    #[test]
    fn i0_matches_lagrange_oracle() {
        for (m, d) in [(3, 4), (4, 5), (2, 6)] {
            let policy = Policy::t_vars(m, d);
            assert_eq!(i0_series(&policy), i0_lagrange(&policy), "policy {policy}");
        }
    }

    #[test]
    fn i0_fixed_point_residual_vanishes() {
        let policy = Policy::t_vars(4, 5);
        let i0 = i0_series(&policy);
        let mut rhs = TruncatedSeries::zero(policy.clone());
        let mut pow = TruncatedSeries::from_poly(Poly::one(), policy.clone());
        for n in 0..=4u32 {
            if n > 0 {
                pow = pow.mul(&i0);
            }
            rhs = rhs.add(&pow.mul_poly(&Poly::var(VarId::t(n))).scale(&factorial(n).recip()));
        }
        assert!(rhs.sub(&i0).is_zero());
    }

    #[test]
    fn i1_leading_terms() {
        let policy = Policy::t_vars(2, 2);
        let i1 = i_from_t(1, &policy);
        let expect = Poly::from_terms(vec![
            (Monomial::var(VarId::t(1)), rat_int(1)),
            (
                Monomial::var(VarId::t(0)).mul(&Monomial::var(VarId::t(2))),
                rat_int(1),
            ),
        ]);
        assert_eq!(i1.body(), &expect);
    }

    #[test]
    fn i_from_t_is_weighted_homogeneous() {
        let policy = Policy::t_vars(5, 4);
        for n in 1..=4 {
            let series = i_from_t(n, &policy);
            assert!(
                series.body().check_homogeneous(n as i64 - 1).is_ok(),
                "I_{n} should be homogeneous of degree {}",
                n - 1
            );
        }
    }

    #[test]
    fn t_from_i_expansion() {
        let ipolicy = Policy::i_vars(3, 3);
        let t1 = t_from_i(1, &ipolicy);
        // I1 - I0 I2 + (1/2) I0^2 I3
        let expect = Poly::from_terms(vec![
            (Monomial::var(VarId::i(1)), rat_int(1)),
            (
                Monomial::var(VarId::i(0)).mul(&Monomial::var(VarId::i(2))),
                rat_int(-1),
            ),
            (
                Monomial::var_pow(VarId::i(0), 2).mul(&Monomial::var(VarId::i(3))),
                rat(1, 2),
            ),
        ]);
        assert_eq!(t1.body(), &expect);
        // at I0 = 0 only I_n survives
        let at_zero = t1.body().eval_var(VarId::i(0), &rat_int(0));
        assert_eq!(at_zero, Poly::var(VarId::i(1)));
    }

    #[test]
    fn restriction_at_t0_zero() {
        let policy = Policy::t_vars(4, 4);
        for n in 1..=3 {
            let series = i_from_t(n, &policy);
            let restricted = series.body().eval_var(VarId::t(0), &rat_int(0));
            assert_eq!(restricted, Poly::var(VarId::t(n)), "I_{n} at t0=0");
            let ghost = ghost_from_t(n, &policy);
            let ghost_restricted = ghost.body().eval_var(VarId::t(0), &rat_int(0));
            assert!(ghost_restricted.is_zero(), "I_-{n} at t0=0");
        }
    }

    #[test]
    fn ghost_leading_term() {
        let policy = Policy::t_vars(2, 3);
        let g1 = ghost_from_t(1, &policy);
        // leading term t0^2 / 2? I_{-1} = sum t_k I0^{k+1}/(k+1)!: k=0 gives
        // t0 * I0 -> t0^2 at two factors.
        assert_eq!(
            g1.body().coefficient(&Monomial::var_pow(VarId::t(0), 2)),
            rat(1, 2) + rat(1, 2)
        );
    }

    #[test]
    fn ghost_mixed_derivative_identity() {
        // d I_{-2} / d I_0 = I_{-1} termwise at matching depth
        let kmax = 6;
        let g2 = ghost_mixed(2, kmax);
        let g1 = ghost_mixed(1, kmax);
        assert_eq!(g2.differentiate(VarId::i(0)).unwrap(), g1);
    }

    #[test]
    fn ghost_in_i_leading_terms() {
        // I_{-1} truncated at k<=1: I0^2 - (1/2) I1 I0^2
        let p = ghost_in_i(1, 1);
        let expect = Poly::from_terms(vec![
            (
                Monomial::var(VarId::i(0)).mul(&Monomial::var(VarId::i(0))),
                rat_int(1),
            ),
            (
                Monomial::var(VarId::i(1)).mul(&Monomial::var_pow(VarId::i(0), 2)),
                rat(-1, 2),
            ),
        ]);
        assert_eq!(p, expect);
        assert!(ghost_in_i(2, 4).eval_var(VarId::i(0), &rat_int(0)).is_zero());
    }

    #[test]
    fn ghost_in_i_composes_to_ghost_from_t() {
        let policy = Policy::t_vars(3, 4);
        for n in 1..=2u32 {
            let depth = policy.max_factors();
            let in_i = ghost_in_i(n, depth);
            let mut assignments = BTreeMap::new();
            assignments.insert(VarId::i(0), i0_series(&policy));
            for k in 1..=(3 + depth) {
                assignments.insert(VarId::i(k), i_from_t(k, &policy));
            }
            let composed = substitute_all(&in_i, &assignments, &policy).unwrap();
            let direct = ghost_from_t(n, &policy);
            assert!(
                composed.sub(&direct).is_zero(),
                "ghost composition mismatch for n={n}"
            );
        }
    }

    #[test]
    fn roundtrip_small_and_full() {
        let tiny = Policy::t_vars(0, 1);
        assert!(roundtrip_check(&tiny).pass());
        let policy = Policy::t_vars(4, 5);
        let report = roundtrip_check(&policy);
        assert!(report.pass(), "first failure: {:?}", report.first_failure);
    }

    #[test]
    fn roundtrip_detects_mutation() {
        // flip the sign on the k=1 term of the inverse transform
        let policy = Policy::t_vars(2, 3);
        let ipolicy = Policy::i_vars(2 + 2, 3);
        let mut assignments = BTreeMap::new();
        assignments.insert(VarId::i(0), i0_series(&policy));
        for k in 1..=4 {
            assignments.insert(VarId::i(k), i_from_t(k, &policy));
        }
        let mut mutated = t_from_i(1, &ipolicy).body().clone();
        // add 2*I0*I2: turns the -1 coefficient into +1
        mutated.add_term(
            Monomial::var(VarId::i(0)).mul(&Monomial::var(VarId::i(2))),
            rat_int(2),
        );
        let recomposed = substitute_all(&mutated, &assignments, &policy).unwrap();
        let expected = TruncatedSeries::from_poly(Poly::var(VarId::t(1)), policy.clone());
        let residual = recomposed.sub(&expected);
        assert!(!residual.is_zero());
        // the residual appears at factor count 2
        let min_count = residual.body().iter().map(|(m, _)| m.factor_count()).min().unwrap();
        assert_eq!(min_count, 2);
    }
}
