//! Truncation policies and policy-carrying series.
//!
//! A [`Policy`] is an explicit ideal: it whitelists variables (per-family
//! index caps plus a set of allowed nullary variables), caps the total count
//! of indexed-variable factors, and optionally windows the zeta order and the
//! 't Hooft power. Terms outside the policy are dropped, and every arithmetic
//! result is re-truncated, so identities are asserted "modulo dropped terms".
//!
//! The factor-count cap is an ideal because multiplication can only grow the
//! count; likewise for index whitelists. With the bare coupling `t_0` at
//! weight -1, weighted-degree truncation would admit infinitely many terms
//! per degree, which is why the cap counts factors instead.

use std::collections::BTreeMap;
use std::fmt;


use crate::algebra::monomial::Monomial;
use crate::algebra::poly::Poly;
use crate::algebra::rational::Rational;
use crate::algebra::var::{Family, VarId};
use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Policy {
    /// Allowed indexed families with their maximum index.
    max_index: Vec<(Family, u32)>,
    /// Allowed nullary families (v, w, N, tH).
    nullary: Vec<Family>,
    /// Cap on the total number of indexed-variable factors.
    max_factors: u32,
    /// Inclusive window for the doubled zeta order; zeta forbidden if absent.
    zeta_window: Option<(i64, i64)>,
    /// Cap on the 't Hooft power, if tH is allowed.
    thooft_cap: Option<u32>,
}

impl Policy {
    /// Bare couplings `t_0..t_M`, at most `max_factors` factors.
    pub fn t_vars(max_var: u32, max_factors: u32) -> Self {
        Policy {
            max_index: vec![(Family::T, max_var)],
            nullary: Vec::new(),
            max_factors,
            zeta_window: None,
            thooft_cap: None,
        }
    }

    /// Renormalized couplings `I_0..I_M`, at most `max_factors` factors.
    pub fn i_vars(max_var: u32, max_factors: u32) -> Self {
        Policy {
            max_index: vec![(Family::I, max_var)],
            nullary: Vec::new(),
            max_factors,
            zeta_window: None,
            thooft_cap: None,
        }
    }

    pub fn with_family(mut self, family: Family, max_var: u32) -> Self {
        assert!(family.is_indexed());
        self.max_index.retain(|&(f, _)| f != family);
        self.max_index.push((family, max_var));
        self.max_index.sort();
        self
    }

    pub fn with_nullary(mut self, family: Family) -> Self {
        assert!(!family.is_indexed() && family != Family::Zeta);
        if !self.nullary.contains(&family) {
            self.nullary.push(family);
            self.nullary.sort();
        }
        self
    }

    /// Allow zeta with the given inclusive doubled-order window.
    pub fn with_zeta_window(mut self, lo2: i64, hi2: i64) -> Self {
        assert!(lo2 <= hi2);
        self.zeta_window = Some((lo2, hi2));
        self
    }

    pub fn with_thooft_cap(mut self, cap: u32) -> Self {
        self = self.with_nullary(Family::THooft);
        self.thooft_cap = Some(cap);
        self
    }

    pub fn max_factors(&self) -> u32 {
        self.max_factors
    }

    pub fn family_cap(&self, family: Family) -> Option<u32> {
        self.max_index.iter().find(|&&(f, _)| f == family).map(|&(_, c)| c)
    }

    pub fn zeta_window(&self) -> Option<(i64, i64)> {
        self.zeta_window
    }

    pub fn indexed_families(&self) -> impl Iterator<Item = (Family, u32)> + '_ {
        self.max_index.iter().copied()
    }

    pub fn nullary_families(&self) -> impl Iterator<Item = Family> + '_ {
        self.nullary.iter().copied()
    }

    pub fn thooft_cap(&self) -> Option<u32> {
        self.thooft_cap
    }

    /// Whether a monomial survives under this policy.
    pub fn admits(&self, m: &Monomial) -> bool {
        if m.factor_count() > self.max_factors as i64 {
            return false;
        }
        for (v, e) in m.iter() {
            match v.family {
                Family::Zeta => match self.zeta_window {
                    Some((lo, hi)) => {
                        if e < lo || e > hi {
                            return false;
                        }
                    }
                    None => return false,
                },
                f if f.is_indexed() => match self.family_cap(f) {
                    Some(cap) => {
                        if v.index > cap {
                            return false;
                        }
                    }
                    None => return false,
                },
                f => {
                    if !self.nullary.contains(&f) {
                        return false;
                    }
                    if f == Family::THooft {
                        if let Some(cap) = self.thooft_cap {
                            if e > cap as i64 {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// True when every monomial admitted by `self` is admitted by `other`.
    pub fn subsumed_by(&self, other: &Policy) -> bool {
        if self.max_factors > other.max_factors {
            return false;
        }
        for &(f, cap) in &self.max_index {
            match other.family_cap(f) {
                Some(c) if c >= cap => {}
                _ => return false,
            }
        }
        for &f in &self.nullary {
            if !other.nullary.contains(&f) {
                return false;
            }
        }
        match (self.zeta_window, other.zeta_window) {
            (None, _) => {}
            (Some((a, b)), Some((c, d))) if c <= a && b <= d => {}
            _ => return false,
        }
        match (self.thooft_cap, other.thooft_cap) {
            (_, None) => {}
            (Some(a), Some(b)) if a <= b => {}
            _ => return false,
        }
        true
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fams: Vec<String> = self
            .max_index
            .iter()
            .map(|(fam, cap)| format!("{:?}<={cap}", fam))
            .collect();
        write!(f, "vars[{}] factors<={}", fams.join(","), self.max_factors)
    }
}

/// A polynomial truncated under a [`Policy`]. Arithmetic re-truncates, and
/// two series combine only under identical policies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    body: Poly,
    policy: Policy,
}

impl TruncatedSeries {
    pub fn zero(policy: Policy) -> Self {
        TruncatedSeries { body: Poly::zero(), policy }
    }

    pub fn from_poly(body: Poly, policy: Policy) -> Self {
        let truncated = Poly::from_terms(
            body.iter()
                .filter(|(m, _)| policy.admits(m))
                .map(|(m, c)| (m.clone(), c.clone())),
        );
        TruncatedSeries { body: truncated, policy }
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn policy(&self) -> &Policy {
        &self.policy
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    fn check_policy(&self, other: &TruncatedSeries) {
        assert_eq!(
            self.policy, other.policy,
            "series are comparable only under identical policies"
        );
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_policy(other);
        TruncatedSeries {
            body: &self.body + &other.body,
            policy: self.policy.clone(),
        }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_policy(other);
        TruncatedSeries {
            body: &self.body - &other.body,
            policy: self.policy.clone(),
        }
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries { body: -&self.body, policy: self.policy.clone() }
    }

    pub fn scale(&self, c: &Rational) -> TruncatedSeries {
        TruncatedSeries { body: self.body.scale(c), policy: self.policy.clone() }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_policy(other);
        let cap = self.policy.max_factors() as i64;
        let mut out = Poly::zero();
        for (ma, ca) in self.body.iter() {
            let fa = ma.factor_count();
            for (mb, cb) in other.body.iter() {
                if fa + mb.factor_count() > cap {
                    continue;
                }
                let m = ma.mul(mb);
                if self.policy.admits(&m) {
                    out.add_term(m, ca * cb);
                }
            }
        }
        TruncatedSeries { body: out, policy: self.policy.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> TruncatedSeries {
        let rhs = TruncatedSeries::from_poly(p.clone(), self.policy.clone());
        self.mul(&rhs)
    }

    pub fn pow(&self, e: u32) -> TruncatedSeries {
        let mut acc = TruncatedSeries::from_poly(Poly::one(), self.policy.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Re-truncate under a policy that must be at least as tight.
    pub fn restrict(&self, tighter: &Policy) -> TruncatedSeries {
        debug_assert!(
            tighter.subsumed_by(&self.policy),
            "restriction target must be contained in the source policy"
        );
        TruncatedSeries::from_poly(self.body.clone(), tighter.clone())
    }

    /// Formal derivative. The caller owns the order bookkeeping: terms at
    /// the factor-count cap differentiate to terms one factor short of the
    /// dropped tail, so results are trustworthy one order below the cap.
    pub fn differentiate(&self, x: VarId) -> Result<TruncatedSeries, AlgebraError> {
        Ok(TruncatedSeries::from_poly(
            self.body.differentiate(x)?,
            self.policy.clone(),
        ))
    }
}

/// Substitute truncated series for variables of `p`, expanding fully and
/// truncating under `policy`. Variables absent from `assignments` pass
/// through (and must then be admitted by the policy). Mapped variables must
/// occur with plain non-negative integer exponents.
pub fn substitute_all(
    p: &Poly,
    assignments: &BTreeMap<VarId, TruncatedSeries>,
    policy: &Policy,
) -> Result<TruncatedSeries, AlgebraError> {
    for s in assignments.values() {
        assert_eq!(s.policy(), policy, "substitution series must share the target policy");
    }
    let one = TruncatedSeries::from_poly(Poly::one(), policy.clone());
    let mut powers: BTreeMap<(VarId, i64), TruncatedSeries> = BTreeMap::new();
    let mut out = TruncatedSeries::zero(policy.clone());
    for (m, c) in p.iter() {
        let mut acc = one.scale(c);
        let mut passthrough = Monomial::one();
        for (v, e) in m.iter() {
            match assignments.get(&v) {
                None => passthrough = passthrough.mul(&Monomial::from_raw(vec![(v, e)])),
                Some(series) => {
                    if v.family == Family::Zeta && e % 2 != 0 {
                        return Err(AlgebraError::HalfIntegerExponent { var: v.to_string() });
                    }
                    let e_plain = if v.family == Family::Zeta { e / 2 } else { e };
                    if e_plain < 0 {
                        return Err(AlgebraError::NegativeExponent { var: v.to_string() });
                    }
                    let pow = power_of(series, v, e_plain, &mut powers, &one);
                    acc = acc.mul(&pow);
                }
            }
            if acc.is_zero() {
                break;
            }
        }
        if !passthrough.is_one() {
            acc = acc.mul_poly(&Poly::term(passthrough, num_traits::One::one()));
        }
        out = out.add(&acc);
    }
    Ok(out)
}

fn power_of(
    series: &TruncatedSeries,
    v: VarId,
    e: i64,
    cache: &mut BTreeMap<(VarId, i64), TruncatedSeries>,
    one: &TruncatedSeries,
) -> TruncatedSeries {
    if e == 0 {
        return one.clone();
    }
    if let Some(hit) = cache.get(&(v, e)) {
        return hit.clone();
    }
    let lower = power_of(series, v, e - 1, cache, one);
    let result = lower.mul(series);
    cache.insert((v, e), result.clone());
    result
}

/// Single-variable convenience wrapper over [`substitute_all`].
pub fn substitute(
    p: &Poly,
    x: VarId,
    s: &TruncatedSeries,
) -> Result<TruncatedSeries, AlgebraError> {
    let mut map = BTreeMap::new();
    map.insert(x, s.clone());
    substitute_all(p, &map, &s.policy().clone())
}

/// The truncated geometric series `1/(1-x) = sum x^j` for a variable `x`
/// whose terms each carry at least one factor.
pub fn geometric_series(x: VarId, policy: &Policy) -> TruncatedSeries {
    let mut body = Poly::zero();
    for j in 0..=policy.max_factors() as i64 {
        body.add_term(Monomial::var_pow(x, j), num_traits::One::one());
    }
    TruncatedSeries::from_poly(body, policy.clone())
}

/// Truncated geometric series with a series argument: `sum_j s^j`.
/// Valid when every term of `s` has at least one factor.
pub fn geometric_of(s: &TruncatedSeries) -> TruncatedSeries {
    let one = TruncatedSeries::from_poly(Poly::one(), s.policy().clone());
    let mut acc = one.clone();
    let mut pow = one;
    for _ in 1..=s.policy().max_factors() {
        pow = pow.mul(s);
        if pow.is_zero() {
            break;
        }
        acc = acc.add(&pow);
    }
    acc
}

/// Truncated `log(1/(1-s)) = sum_j s^j / j`, same validity condition.
pub fn log_inv_one_minus(s: &TruncatedSeries) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(s.policy().clone());
    let mut pow = TruncatedSeries::from_poly(Poly::one(), s.policy().clone());
    for j in 1..=s.policy().max_factors() as i64 {
        pow = pow.mul(s);
        if pow.is_zero() {
            break;
        }
        acc = acc.add(&pow.scale(&crate::algebra::rational::rat(1, j)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, rat_int};

    #[test]
    fn policy_admission() {
        let p = Policy::t_vars(3, 4);
        assert!(p.admits(&Monomial::var_pow(VarId::t(0), 4)));
        assert!(!p.admits(&Monomial::var_pow(VarId::t(0), 5)));
        assert!(!p.admits(&Monomial::var(VarId::t(4))));
        assert!(!p.admits(&Monomial::var(VarId::big_n())));
        let p = p.with_nullary(Family::BigN);
        assert!(p.admits(&Monomial::var_pow(VarId::big_n(), 9)));
    }

    #[test]
    fn mul_truncates() {
        let policy = Policy::t_vars(2, 2);
        let t0 = TruncatedSeries::from_poly(Poly::var(VarId::t(0)), policy.clone());
        let sq = t0.mul(&t0);
        assert_eq!(sq.body(), &Poly::var_pow(VarId::t(0), 2));
        assert!(sq.mul(&t0).is_zero());
    }

    #[test]
    fn substitute_zero_kills_product() {
        // x := 0 in x*p
        let policy = Policy::t_vars(2, 3);
        let p = &Poly::var(VarId::t(0)) * &Poly::var(VarId::t(1));
        let mut map = BTreeMap::new();
        map.insert(VarId::t(0), TruncatedSeries::zero(policy.clone()));
        let out = substitute_all(&p, &map, &policy).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn geometric_matches_division_oracle() {
        // (1 - I1) * geom(I1) = 1 modulo the policy
        let policy = Policy::i_vars(1, 5);
        let geom = geometric_series(VarId::i(1), &policy);
        let one_minus =
            TruncatedSeries::from_poly(&Poly::one() - &Poly::var(VarId::i(1)), policy.clone());
        let prod = one_minus.mul(&geom);
        assert_eq!(prod.body(), &Poly::one());
    }

    #[test]
    fn log_series_values() {
        let policy = Policy::i_vars(1, 3);
        let i1 = TruncatedSeries::from_poly(Poly::var(VarId::i(1)), policy.clone());
        let log = log_inv_one_minus(&i1);
        assert_eq!(log.body().coefficient(&Monomial::var_pow(VarId::i(1), 2)), rat(1, 2));
        assert_eq!(log.body().coefficient(&Monomial::var_pow(VarId::i(1), 3)), rat(1, 3));
    }

    #[test]
    fn half_integer_substitution_rejected() {
        let policy = Policy::t_vars(1, 2).with_zeta_window(-4, 4);
        let p = Poly::term(Monomial::zeta_pow_doubled(1), rat_int(1));
        let s = TruncatedSeries::from_poly(Poly::var(VarId::t(0)), policy.clone());
        let mut map = BTreeMap::new();
        map.insert(VarId::zeta(), s);
        assert!(matches!(
            substitute_all(&p, &map, &policy),
            Err(AlgebraError::HalfIntegerExponent { .. })
        ));
    }
}
