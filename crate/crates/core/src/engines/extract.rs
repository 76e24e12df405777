//! Correlator extraction and the normalized ("tilde") display forms.
//!
//! A closed free energy of genus `g` is a sum of monomials
//! `c * prod X_j^{m_j} * d^P` over the model's indexed family `X` with
//! denominator variable `d` (`v` or `w`). The correlator attached to the
//! exponent pattern `{m_j}` is `c * prod m_j!` (rescaled by double
//! factorials in the 2D model, where the engine ring uses `J`). The
//! denominator exponent is fully determined by the pattern; extraction
//! verifies it and fails structurally on any mismatch.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::rational::{factorial, odd_double_factorial, rat_int, Rational};
use crate::algebra::{Family, Monomial, Poly, VarId};
use crate::engines::EngineError;

/// An exponent pattern `(index, multiplicity)`, sorted by index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Partition(pub Vec<(u32, u32)>);

impl Partition {
    pub fn selection_degree(&self) -> i64 {
        self.0.iter().map(|&(j, m)| (j as i64 - 1) * m as i64).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(j, m)| if m == 1 { format!("tau_{j}") } else { format!("tau_{j}^{m}") })
            .collect();
        write!(f, "<{}>", parts.join(" "))
    }
}

/// Correlator table: pattern to exact value (a polynomial in `N` for the
/// matrix model, a constant otherwise).
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatorTable {
    pub model: &'static str,
    pub genus: u32,
    pub entries: BTreeMap<Partition, Poly>,
}

impl CorrelatorTable {
    pub fn value(&self, pattern: &[(u32, u32)]) -> Option<&Poly> {
        self.entries.get(&Partition(pattern.to_vec()))
    }
}

/// Which normalized form a table is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TildeConvention {
    /// `I_j / (1-I_1)^{(j+1)/2}` — plain half-power normalization.
    HalfPower,
    /// `I_j / ((j+1)! (1-I_1)^{(j+1)/2})` — with the factorial rescaling.
    HalfPowerFactorial,
    /// `I_j / (1-I_1)^{(2j+1)/3}` — the 2D third-power normalization.
    ThirdPower,
}

impl TildeConvention {
    /// The engine ring this convention reads from.
    fn source_family(self) -> Family {
        match self {
            TildeConvention::ThirdPower => Family::J,
            _ => Family::I,
        }
    }

    /// Three times (half-power) or three times (third-power) the denominator
    /// exponent carried by one `X_j` factor, kept integral: returns the pair
    /// `(numerator, denominator)` of the exponent `(j+1)/2` or `(2j+1)/3`.
    fn denominator_exponent(self, j: u32) -> (i64, i64) {
        match self {
            TildeConvention::ThirdPower => (2 * j as i64 + 1, 3),
            _ => (j as i64 + 1, 2),
        }
    }

    /// Per-factor coefficient rescaling from the engine ring into the tilde
    /// basis.
    fn factor_rescale(self, j: u32) -> Rational {
        match self {
            TildeConvention::HalfPower => rat_int(1),
            TildeConvention::HalfPowerFactorial => factorial(j + 1),
            TildeConvention::ThirdPower => odd_double_factorial(2 * j as i64 + 1).recip(),
        }
    }
}

/// Decompose one engine monomial into (pattern, denominator exponent,
/// extra part such as `N` powers).
fn split_term(
    m: &Monomial,
    family: Family,
    denom: VarId,
) -> (Partition, i64, Monomial) {
    let mut pattern = Vec::new();
    let mut extra = Vec::new();
    let mut denom_exp = 0;
    for (var, e) in m.iter() {
        if var == denom {
            denom_exp = e;
        } else if var.family == family {
            pattern.push((var.index, e as u32));
        } else {
            extra.push((var, e));
        }
    }
    (Partition(pattern), denom_exp, Monomial::from_raw(extra))
}

/// Normalized form of a closed free energy: pattern -> coefficient of
/// `prod tilde(X)_j^{m_j}` (no factorial-of-multiplicity folded in).
pub fn tilde_form(
    model: &'static str,
    genus: u32,
    body: &Poly,
    conv: TildeConvention,
) -> Result<BTreeMap<Partition, Poly>, EngineError> {
    let family = conv.source_family();
    let denom = if family == Family::J { VarId::w() } else { VarId::v() };
    let mut out: BTreeMap<Partition, Poly> = BTreeMap::new();
    for (m, c) in body.iter() {
        let (pattern, denom_exp, extra) = split_term(m, family, denom);
        let (mut num, den) = (0i64, match conv {
            TildeConvention::ThirdPower => 3,
            _ => 2,
        });
        let mut coeff = c.clone();
        for &(j, mult) in &pattern.0 {
            let (n, _) = conv.denominator_exponent(j);
            num += n * mult as i64;
            let rescale = conv.factor_rescale(j);
            for _ in 0..mult {
                coeff *= rescale.clone();
            }
        }
        // the total denominator power is forced by the pattern
        if num % den != 0 || num / den != denom_exp {
            return Err(EngineError::Structure {
                model,
                genus,
                detail: format!(
                    "denominator exponent {denom_exp} does not match pattern {pattern} in {m}"
                ),
            });
        }
        out.entry(pattern).or_insert_with(Poly::zero).add_term(extra, coeff);
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

/// Correlators of a closed genus-`g` free energy: the tilde coefficient of
/// a pattern times `prod m_j!`, with the selection rule enforced.
pub fn correlators(
    model: &'static str,
    genus: u32,
    body: &Poly,
    conv: TildeConvention,
    selection_degree: i64,
) -> Result<CorrelatorTable, EngineError> {
    let tilde = tilde_form(model, genus, body, conv)?;
    let mut entries = BTreeMap::new();
    for (pattern, coeff) in tilde {
        if pattern.selection_degree() != selection_degree {
            return Err(EngineError::Structure {
                model,
                genus,
                detail: format!("pattern {pattern} violates the selection rule"),
            });
        }
        let mut value = coeff;
        for &(_, mult) in &pattern.0 {
            value = value.scale(&factorial(mult));
        }
        entries.insert(pattern, value);
    }
    Ok(CorrelatorTable { model, genus, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn one_dim_genus_two_correlators() {
        let f2 = crate::engines::one_dim::free_energy(2).unwrap();
        let table =
            correlators("1d", 2, f2.as_ref(), TildeConvention::HalfPower, 2).unwrap();
        assert_eq!(table.value(&[(3, 1)]), Some(&Poly::constant(rat(1, 8))));
        assert_eq!(table.value(&[(2, 2)]), Some(&Poly::constant(rat(5, 12))));
        assert_eq!(table.value(&[(2, 1)]), None);
        assert_eq!(table.entries.len(), 2);
    }

    #[test]
    fn two_dim_genus_two_correlators() {
        let f2 = crate::engines::two_dim::free_energy(2).unwrap();
        let table =
            correlators("2d", 2, f2.as_ref(), TildeConvention::ThirdPower, 3).unwrap();
        assert_eq!(table.value(&[(4, 1)]), Some(&Poly::constant(rat(1, 1152))));
        assert_eq!(table.value(&[(2, 3)]), Some(&Poly::constant(rat(7, 240))));
        assert_eq!(table.value(&[(2, 1), (3, 1)]), Some(&Poly::constant(rat(29, 5760))));
    }

    #[test]
    fn matrix_model_collapses_to_one_dim() {
        let f2 = crate::engines::matrix_model::free_energy(2).unwrap();
        let table =
            correlators("hmm", 2, f2.as_ref(), TildeConvention::HalfPower, 2).unwrap();
        let at_one: BTreeMap<_, _> = table
            .entries
            .iter()
            .map(|(k, p)| (k.clone(), p.eval_var(VarId::big_n(), &rat_int(1))))
            .collect();
        let one_dim = crate::engines::one_dim::free_energy(2).unwrap();
        let expect = correlators("1d", 2, one_dim.as_ref(), TildeConvention::HalfPower, 2)
            .unwrap()
            .entries;
        assert_eq!(at_one, expect);
    }

    #[test]
    fn planted_bad_denominator_fails() {
        // I3 v^5 pretends to be a genus-2 term; the exponent rule wants v^2
        let bad = Poly::term(
            Monomial::from_raw(vec![(VarId::i(3), 1), (VarId::v(), 5)]),
            rat(1, 8),
        );
        assert!(tilde_form("1d", 2, &bad, TildeConvention::HalfPower).is_err());
    }

    #[test]
    fn factorial_convention_rescales() {
        let f3 = crate::engines::matrix_model::free_energy(3).unwrap();
        let tilde =
            tilde_form("hmm", 3, f3.as_ref(), TildeConvention::HalfPowerFactorial).unwrap();
        // coefficient of the normalized I5 monomial is 5N^4 + 10N^2
        let coeff = tilde.get(&Partition(vec![(5, 1)])).unwrap();
        let expect = Poly::from_terms(vec![
            (Monomial::var_pow(VarId::big_n(), 4), rat_int(5)),
            (Monomial::var_pow(VarId::big_n(), 2), rat_int(10)),
        ]);
        assert_eq!(coeff, &expect);
    }
}
