//! Canonical JSON form for polynomials and truncated series.
//!
//! `{"terms":[{"coeff":"<num>/<den>","monomial":{"<var>":"<exp>"}}]}` with
//! terms in canonical monomial order, monomial keys in canonical variable
//! order, and zeta exponents rendered as `"p/2"` strings when half-integral.
//! The writer is hand-rolled so identical values always produce identical
//! bytes; parsing goes through `serde_json`.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::algebra::monomial::Monomial;
use crate::algebra::poly::Poly;
use crate::algebra::rational::{format_rational, parse_rational};
use crate::algebra::series::{Policy, TruncatedSeries};
use crate::algebra::var::{Family, VarId};
use crate::algebra::AlgebraError;

fn exponent_string(v: VarId, raw: i64) -> String {
    if v.family == Family::Zeta {
        if raw % 2 == 0 {
            format!("{}", raw / 2)
        } else {
            format!("{raw}/2")
        }
    } else {
        format!("{raw}")
    }
}

fn parse_exponent(v: VarId, s: &str) -> Result<i64, AlgebraError> {
    let bad = || AlgebraError::Parse(format!("bad exponent `{s}` for {v}"));
    if let Some(num) = s.strip_suffix("/2") {
        if v.family != Family::Zeta {
            return Err(bad());
        }
        return num.parse::<i64>().map_err(|_| bad());
    }
    let plain: i64 = s.parse().map_err(|_| bad())?;
    Ok(if v.family == Family::Zeta { 2 * plain } else { plain })
}

pub fn monomial_to_json(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .iter()
        .map(|(v, e)| format!("\"{v}\":\"{}\"", exponent_string(v, e)))
        .collect();
    format!("{{{}}}", parts.join(","))
}

fn term_list(p: &Poly) -> String {
    let terms: Vec<String> = p
        .iter()
        .map(|(m, c)| {
            format!(
                "{{\"coeff\":\"{}\",\"monomial\":{}}}",
                format_rational(c),
                monomial_to_json(m)
            )
        })
        .collect();
    format!("[{}]", terms.join(","))
}

pub fn poly_to_json(p: &Poly) -> String {
    format!("{{\"terms\":{}}}", term_list(p))
}

pub fn policy_to_json(p: &Policy) -> String {
    let idx: Vec<String> = p
        .indexed_families()
        .map(|(f, cap)| format!("\"{}\":{cap}", family_name(f)))
        .collect();
    let nul: Vec<String> = p
        .nullary_families()
        .map(|f| format!("\"{}\"", family_name(f)))
        .collect();
    let zeta = match p.zeta_window() {
        Some((lo, hi)) => format!("[\"{}\",\"{}\"]", half_string(lo), half_string(hi)),
        None => "null".into(),
    };
    let th = match p.thooft_cap() {
        Some(c) => c.to_string(),
        None => "null".into(),
    };
    format!(
        "{{\"max_index\":{{{}}},\"nullary\":[{}],\"max_factors\":{},\"zeta_window\":{},\"thooft_cap\":{}}}",
        idx.join(","),
        nul.join(","),
        p.max_factors(),
        zeta,
        th
    )
}

pub fn series_to_json(s: &TruncatedSeries) -> String {
    format!(
        "{{\"policy\":{},\"terms\":{}}}",
        policy_to_json(s.policy()),
        term_list(s.body())
    )
}

pub fn half_string(doubled: i64) -> String {
    if doubled % 2 == 0 {
        format!("{}", doubled / 2)
    } else {
        format!("{doubled}/2")
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::V => "v",
        Family::W => "w",
        Family::BigN => "N",
        Family::THooft => "tH",
        Family::I => "I",
        Family::J => "J",
        Family::T => "t",
        Family::GhostI => "Im",
        Family::Zeta => "zeta",
    }
}

pub fn poly_from_json(text: &str) -> Result<Poly, AlgebraError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| AlgebraError::Parse(e.to_string()))?;
    poly_from_value(&value)
}

pub fn poly_from_value(value: &Value) -> Result<Poly, AlgebraError> {
    let terms = value
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| AlgebraError::Parse("missing `terms` array".into()))?;
    let mut poly = Poly::zero();
    for term in terms {
        let coeff = term
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| AlgebraError::Parse("missing `coeff`".into()))?;
        let coeff = parse_rational(coeff)?;
        let mono = term
            .get("monomial")
            .and_then(Value::as_object)
            .ok_or_else(|| AlgebraError::Parse("missing `monomial`".into()))?;
        let mut pairs: BTreeMap<VarId, i64> = BTreeMap::new();
        for (key, exp) in mono {
            let var: VarId = key.parse()?;
            let exp = exp
                .as_str()
                .ok_or_else(|| AlgebraError::Parse("exponent must be a string".into()))?;
            let raw = parse_exponent(var, exp)?;
            *pairs.entry(var).or_insert(0) += raw;
        }
        poly.add_term(Monomial::from_raw(pairs.into_iter().collect()), coeff);
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn canonical_poly_roundtrip() {
        let p = Poly::from_terms(vec![
            (
                Monomial::from_raw(vec![(VarId::i(2), 2), (VarId::v(), 3)]),
                rat(5, 24),
            ),
            (
                Monomial::from_raw(vec![(VarId::i(3), 1), (VarId::v(), 2)]),
                rat(1, 8),
            ),
        ]);
        let text = poly_to_json(&p);
        assert_eq!(
            text,
            "{\"terms\":[{\"coeff\":\"1/8\",\"monomial\":{\"v\":\"2\",\"I3\":\"1\"}},\
             {\"coeff\":\"5/24\",\"monomial\":{\"v\":\"3\",\"I2\":\"2\"}}]}"
        );
        assert_eq!(poly_from_json(&text).unwrap(), p);
    }

    #[test]
    fn zeta_half_exponents() {
        let p = Poly::term(Monomial::zeta_pow_doubled(-3), rat(1, 2));
        let text = poly_to_json(&p);
        assert!(text.contains("\"zeta\":\"-3/2\""));
        assert_eq!(poly_from_json(&text).unwrap(), p);
    }

    #[test]
    fn ghost_spelling() {
        let p = Poly::var(VarId::ghost(1));
        let text = poly_to_json(&p);
        assert!(text.contains("\"Im1\":\"1\""));
        assert_eq!(poly_from_json(&text).unwrap(), p);
    }
}
