//! Genus-split constraint residuals, built directly from the bare-coupling
//! operator definitions.
//!
//! Nothing here goes through the engines' recursion paths: the inputs are
//! per-genus series in `t_0..t_M` and the residuals apply the constraint
//! operators termwise. An identity holds "modulo dropped terms": inputs are
//! computed at a slack-extended policy and the residual is then restricted
//! to the check policy, where every surviving term is a genuine failure.

use crate::algebra::rational::{factorial, odd_double_factorial, rat, rat_int, Rational};
use crate::algebra::{Family, Poly, TruncatedSeries, VarId};

fn dt(f: &TruncatedSeries, n: u32) -> TruncatedSeries {
    f.differentiate(VarId::t(n)).expect("t-variable")
}

/// `sum_{n} coeff(n) (t_n - [n=1]) dF/dt_{m+n}` for `m + n` within the
/// policy's variable range, with `coeff` given exactly.
fn coupling_sum(
    f: &TruncatedSeries,
    m: i64,
    coeff: impl Fn(u32) -> Rational,
) -> TruncatedSeries {
    let policy = f.policy().clone();
    let max_t = policy.family_cap(Family::T).expect("t policy");
    let mut acc = TruncatedSeries::zero(policy.clone());
    for n in 0..=max_t {
        let target = m + n as i64;
        if target < 0 || target > max_t as i64 {
            continue;
        }
        let df = dt(f, target as u32);
        if df.is_zero() {
            continue;
        }
        let mut factor = Poly::var(VarId::t(n));
        if n == 1 {
            factor = &factor - &Poly::one();
        }
        acc = acc.add(&df.mul_poly(&factor).scale(&coeff(n)));
    }
    acc
}

/// 1D residual for constraint index `m >= -1` at genus `g`.
/// `fs[g]` are the per-genus series; entries past the slice are absent.
pub fn one_dim_residual(m: i64, g: u32, fs: &[TruncatedSeries]) -> TruncatedSeries {
    let policy = fs[0].policy().clone();
    let mut res = match m {
        -1 => coupling_sum(&fs[g as usize], -1, |_| rat_int(1)),
        0 => coupling_sum(&fs[g as usize], 0, |n| rat_int(n as i64 + 1)),
        _ => {
            let mut acc = coupling_sum(&fs[g as usize], m, |n| {
                factorial(m as u32 + n + 1) / factorial(n)
            });
            if g >= 1 {
                let lower = dt(&fs[g as usize - 1], m as u32 - 1)
                    .scale(&factorial(m as u32 + 1));
                acc = acc.add(&lower);
            }
            acc
        }
    };
    if m == -1 && g == 0 {
        res = res.add(&TruncatedSeries::from_poly(Poly::var(VarId::t(0)), policy));
    } else if m == 0 && g == 1 {
        res = res.add(&TruncatedSeries::from_poly(Poly::one(), policy));
    }
    res
}

/// Matrix-model thin residual; series carry `N` as a passthrough variable.
pub fn hmm_residual(m: i64, g: u32, fs: &[TruncatedSeries]) -> TruncatedSeries {
    let policy = fs[0].policy().clone();
    let n_var = Poly::var(VarId::big_n());
    let mut res = match m {
        -1 => coupling_sum(&fs[g as usize], -1, |_| rat_int(1)),
        0 => coupling_sum(&fs[g as usize], 0, |n| rat_int(n as i64 + 1)),
        _ => {
            let mut acc = coupling_sum(&fs[g as usize], m, |n| {
                factorial(m as u32 + n + 1) / factorial(n)
            });
            if g >= 1 {
                acc = acc.add(
                    &dt(&fs[g as usize - 1], m as u32 - 1)
                        .mul_poly(&n_var)
                        .scale(&(rat_int(2) * factorial(m as u32))),
                );
            }
            for k in 1..m as u32 {
                let coeff = factorial(k) * factorial(m as u32 - k);
                // quadratic split over g1 + g2 = g - 1
                if g >= 1 {
                    for g1 in 0..=(g - 1) {
                        let g2 = g - 1 - g1;
                        let left = dt(&fs[g1 as usize], k - 1);
                        let right = dt(&fs[g2 as usize], m as u32 - k - 1);
                        acc = acc.add(&left.mul(&right).scale(&coeff));
                    }
                }
                // second derivative two genera down
                if g >= 2 {
                    let second = dt(&dt(&fs[g as usize - 2], k - 1), m as u32 - k - 1);
                    acc = acc.add(&second.scale(&coeff));
                }
            }
            acc
        }
    };
    if m == -1 && g == 0 {
        res = res.add(&TruncatedSeries::from_poly(
            &Poly::var(VarId::t(0)) * &n_var,
            policy,
        ));
    } else if m == 0 && g == 1 {
        res = res.add(&TruncatedSeries::from_poly(
            Poly::var_pow(VarId::big_n(), 2),
            policy,
        ));
    }
    res
}

/// 2D residual; the genus split is by weighted degree.
pub fn two_dim_residual(m: i64, g: u32, fs: &[TruncatedSeries]) -> TruncatedSeries {
    let policy = fs[0].policy().clone();
    let mut res = match m {
        -1 => coupling_sum(&fs[g as usize], -1, |_| rat_int(1)),
        0 => coupling_sum(&fs[g as usize], 0, |n| rat_int(2 * n as i64 + 1)),
        _ => {
            let mut acc = coupling_sum(&fs[g as usize], m, |n| {
                odd_double_factorial(2 * (n as i64 + m) + 1)
                    / odd_double_factorial(2 * n as i64 - 1)
            });
            for k in 0..=(m as u32 - 1) {
                let l = m as u32 - 1 - k;
                let coeff = odd_double_factorial(2 * k as i64 + 1)
                    * odd_double_factorial(2 * l as i64 + 1)
                    * rat(1, 2);
                if g >= 1 {
                    let second = dt(&dt(&fs[g as usize - 1], k), l);
                    acc = acc.add(&second.scale(&coeff));
                }
                for g1 in 0..=g {
                    let g2 = g - g1;
                    let left = dt(&fs[g1 as usize], k);
                    let right = dt(&fs[g2 as usize], l);
                    acc = acc.add(&left.mul(&right).scale(&coeff));
                }
            }
            acc
        }
    };
    if m == -1 && g == 0 {
        res = res.add(&TruncatedSeries::from_poly(
            Poly::var_pow(VarId::t(0), 2).scale(&rat(1, 2)),
            policy,
        ));
    } else if m == 0 && g == 1 {
        res = res.add(&TruncatedSeries::from_poly(
            Poly::constant(rat(1, 8)),
            policy,
        ));
    }
    res
}

/// Fat residual at leading 't Hooft order; `f` is the genus-zero fat free
/// energy through some 't Hooft order, carrying `tH` as a variable.
pub fn hmm_fat_residual(m: i64, f: &TruncatedSeries) -> TruncatedSeries {
    let policy = f.policy().clone();
    let th = Poly::var(VarId::t_hooft());
    match m {
        -1 => {
            let sum = coupling_sum(f, -1, |_| rat_int(1));
            sum.add(&TruncatedSeries::from_poly(
                &Poly::var(VarId::t(0)) * &th,
                policy,
            ))
        }
        0 => {
            let sum = coupling_sum(f, 0, |n| rat_int(n as i64 + 1));
            sum.add(&TruncatedSeries::from_poly(
                Poly::var_pow(VarId::t_hooft(), 2),
                policy,
            ))
        }
        _ => {
            let mut acc = coupling_sum(f, m, |n| factorial(m as u32 + n + 1) / factorial(n));
            acc = acc.add(
                &dt(f, m as u32 - 1)
                    .mul_poly(&th)
                    .scale(&(rat_int(2) * factorial(m as u32))),
            );
            for k in 1..m as u32 {
                let coeff = factorial(k) * factorial(m as u32 - k);
                let left = dt(f, k - 1);
                let right = dt(f, m as u32 - k - 1);
                acc = acc.add(&left.mul(&right).scale(&coeff));
            }
            acc
        }
    }
}
