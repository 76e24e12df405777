//! Text, LaTeX, and JSON emitters for free energies, series, and curves.
//!
//! JSON artifacts are written with the canonical term ordering and contain
//! no timestamps, so identical invocations produce identical bytes.

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use crate::algebra::json::{half_string, poly_to_json, series_to_json};
use crate::algebra::rational::Rational;
use crate::algebra::{Family, Poly, VarId};
use crate::engines::extract::Partition;
use crate::spectral::{CurveSeries, CurveVar};

/// Render one rational as LaTeX, sign handled by the caller.
fn latex_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn latex_var(v: VarId) -> String {
    match v.family {
        Family::V => "v".into(),
        Family::W => "w".into(),
        Family::BigN => "N".into(),
        Family::THooft => "t_H".into(),
        Family::I => format!("I_{{{}}}", v.index),
        Family::J => format!("J_{{{}}}", v.index),
        Family::T => format!("t_{{{}}}", v.index),
        Family::GhostI => format!("I_{{-{}}}", v.index),
        Family::Zeta => "\\zeta".into(),
    }
}

/// LaTeX for a closed free energy: coefficients as fractions, the
/// denominator variables rendered as powers of `(1-I_1)` or `(1-3J_1)`.
pub fn poly_to_latex(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (m, c) in p.iter() {
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        let mut numer: Vec<String> = Vec::new();
        let mut denom: Vec<String> = Vec::new();
        for (v, e) in m.iter() {
            let rendered = match v.family {
                Family::V => {
                    denom.push(pow_str("(1-I_1)", e));
                    continue;
                }
                Family::W => {
                    denom.push(pow_str("(1-3J_1)", e));
                    continue;
                }
                _ => pow_str(&latex_var(v), e),
            };
            numer.push(rendered);
        }
        // coefficient fraction in front, variables over the denominator
        let mut body = String::new();
        if !mag.is_one() || (numer.is_empty() && denom.is_empty()) {
            body.push_str(&latex_rational(&mag));
        }
        if !denom.is_empty() {
            let top = if numer.is_empty() { "1".to_string() } else { numer.join(" ") };
            body.push_str(&format!("\\frac{{{top}}}{{{}}}", denom.join(" ")));
        } else if !numer.is_empty() {
            if !body.is_empty() {
                body.push(' ');
            }
            body.push_str(&numer.join(" "));
        }
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        out.push_str(&body);
    }
    out
}

fn pow_str(base: &str, e: i64) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{{{e}}}")
    }
}

/// LaTeX for a normalized (tilde) table.
pub fn tilde_to_latex(map: &BTreeMap<Partition, Poly>, family_letter: char) -> String {
    let mut out = String::new();
    for (pattern, coeff) in map {
        let factors: Vec<String> = pattern
            .0
            .iter()
            .map(|&(j, m)| pow_str(&format!("\\tilde{{{family_letter}}}_{{{j}}}"), m as i64))
            .collect();
        let coeff_tex = if coeff.num_terms() == 1 && coeff.iter().next().unwrap().0.is_one() {
            let c = coeff.iter().next().unwrap().1;
            if c.is_negative() {
                format!("-{}", latex_rational(&c.abs()))
            } else {
                latex_rational(c)
            }
        } else {
            format!("\\left({}\\right)", poly_to_latex(coeff))
        };
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&format!("{coeff_tex}{}", factors.join("")));
    }
    out
}

/// Plain-text tilde rendering, one monomial per factor with `~` markers.
pub fn tilde_to_text(map: &BTreeMap<Partition, Poly>, family_letter: char) -> String {
    let mut parts = Vec::new();
    for (pattern, coeff) in map {
        let factors: Vec<String> = pattern
            .0
            .iter()
            .map(|&(j, m)| {
                if m == 1 {
                    format!("~{family_letter}{j}")
                } else {
                    format!("~{family_letter}{j}^{m}")
                }
            })
            .collect();
        parts.push(format!("({}) {}", coeff, factors.join("*")));
    }
    parts.join(" + ")
}

/// JSON for a normalized (tilde) table.
pub fn tilde_to_json(map: &BTreeMap<Partition, Poly>) -> String {
    let entries: Vec<String> = map
        .iter()
        .map(|(pattern, coeff)| {
            let pat: Vec<String> = pattern
                .0
                .iter()
                .map(|&(j, m)| format!("[{j},{m}]"))
                .collect();
            format!(
                "{{\"pattern\":[{}],\"coefficient\":{}}}",
                pat.join(","),
                poly_to_json(coeff)
            )
        })
        .collect();
    format!("[{}]", entries.join(","))
}

/// JSON for a spectral curve: `(exponent, coefficient-series)` pairs.
pub fn curve_to_json(curve: &CurveSeries) -> String {
    let var = match curve.var {
        CurveVar::Z => "z",
        CurveVar::Zeta => "zeta",
    };
    let terms: Vec<String> = curve
        .iter()
        .map(|(e2, s)| {
            format!(
                "{{\"exponent\":\"{}\",\"coefficient\":{}}}",
                half_string(e2),
                series_to_json(s)
            )
        })
        .collect();
    format!(
        "{{\"variable\":\"{var}\",\"sqrt2\":{},\"window\":[\"{}\",\"{}\"],\"terms\":[{}]}}",
        curve.sqrt2,
        half_string(curve.window.0),
        half_string(curve.window.1),
        terms.join(",")
    )
}

/// Plain-text curve rendering.
pub fn curve_to_text(curve: &CurveSeries) -> String {
    let var = match curve.var {
        CurveVar::Z => "z",
        CurveVar::Zeta => "(z-I0)",
    };
    let prefix = if curve.sqrt2 { "sqrt2 * [ " } else { "[ " };
    let mut parts = Vec::new();
    for (e2, s) in curve.iter() {
        parts.push(format!("{var}^({}) * ({})", half_string(e2), s.body()));
    }
    format!("{prefix}{} ]", parts.join(" + "))
}

/// Correlator table rendering.
pub fn correlators_to_text(table: &crate::engines::extract::CorrelatorTable) -> String {
    let mut lines = Vec::new();
    for (pattern, value) in &table.entries {
        lines.push(format!("{pattern} = {value}"));
    }
    lines.join("\n")
}

pub fn correlators_to_json(table: &crate::engines::extract::CorrelatorTable) -> String {
    let entries: Vec<String> = table
        .entries
        .iter()
        .map(|(pattern, value)| {
            let pat: Vec<String> = pattern
                .0
                .iter()
                .map(|&(j, m)| format!("[{j},{m}]"))
                .collect();
            format!(
                "{{\"pattern\":[{}],\"value\":{}}}",
                pat.join(","),
                poly_to_json(value)
            )
        })
        .collect();
    format!(
        "{{\"model\":\"{}\",\"genus\":{},\"correlators\":[{}]}}",
        table.model,
        table.genus,
        entries.join(",")
    )
}

/// Deterministic JSON artifact for a computed free energy.
pub fn artifact_json(
    model: &str,
    genus_or_order: u32,
    form: &str,
    revision: &str,
    payload: &str,
) -> String {
    format!(
        "{{\"model\":\"{model}\",\"genus\":{genus_or_order},\"form\":\"{form}\",\"engine_revision\":\"{revision}\",\"result\":{payload}}}"
    )
}
