//! Exact rational scalars and the handful of combinatorial constants the
//! recursions consume.
//!
//! Backed by `num-rational`'s arbitrary-precision `BigRational`, which keeps
//! every value reduced with a positive denominator. No floating point appears
//! anywhere in a computation path.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::AlgebraError;

/// The sole numeric scalar of the crate.
pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as an exact rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    Rational::from(acc)
}

/// Odd double factorial `m!! = m (m-2) (m-4) ... 1` for odd `m >= -1`,
/// with `(-1)!! = 1`.
pub fn odd_double_factorial(m: i64) -> Rational {
    assert!(m >= -1 && m % 2 != 0, "odd_double_factorial needs odd m >= -1, got {m}");
    let mut acc = BigInt::one();
    let mut k = m;
    while k >= 3 {
        acc *= k;
        k -= 2;
    }
    Rational::from(acc)
}

/// Binomial coefficient `C(n, k)` for `n >= 0`.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as u64 {
        num *= n as u64 - i;
        den *= i + 1;
    }
    Rational::new(num, den)
}

/// Generalized binomial coefficient `C(e, k)` where `e = e2/2` may be a
/// half-integer (or negative): `e (e-1) ... (e-k+1) / k!`.
pub fn binomial_half(e2: i64, k: u32) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as i64 {
        num *= e2 - 2 * i;
        den *= 2 * (i + 1);
    }
    Rational::new(num, den)
}

/// Canonical `"<num>/<den>"` rendering, sign on the numerator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `"<num>/<den>"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let bad = || AlgebraError::Parse(format!("bad rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() || den.is_negative() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(factorial(0), rat_int(1));
        assert_eq!(factorial(5), rat_int(120));
        assert_eq!(odd_double_factorial(-1), rat_int(1));
        assert_eq!(odd_double_factorial(1), rat_int(1));
        // (2k+1)!! for k = 1..4
        assert_eq!(odd_double_factorial(3), rat_int(3));
        assert_eq!(odd_double_factorial(5), rat_int(15));
        assert_eq!(odd_double_factorial(7), rat_int(105));
        assert_eq!(odd_double_factorial(9), rat_int(945));
        assert_eq!(binomial(6, 2), rat_int(15));
        assert_eq!(binomial(4, 7), rat_int(0));
    }

    #[test]
    fn half_binomials() {
        // C(1/2, 1) = 1/2, C(1/2, 2) = -1/8
        assert_eq!(binomial_half(1, 1), rat(1, 2));
        assert_eq!(binomial_half(1, 2), rat(-1, 8));
        // C(-1, k) = (-1)^k
        assert_eq!(binomial_half(-2, 3), rat_int(-1));
        assert_eq!(binomial_half(-2, 4), rat_int(1));
        // integer case agrees
        assert_eq!(binomial_half(8, 2), binomial(4, 2));
    }

    #[test]
    fn rational_text() {
        let r = rat(-5, 24);
        assert_eq!(format_rational(&r), "-5/24");
        assert_eq!(parse_rational("-5/24").unwrap(), r);
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
    }
}
