//! Free-energy engines for the three models.
//!
//! Each engine solves the genus-`g` partial derivatives of the free energy
//! descending from the top variable, reconstructs the free energy by the
//! Euler identity for its weighted-homogeneity degree, and then rechecks
//! every solved partial against the reconstruction. Genus one is never
//! materialized as a logarithm; it enters only through its derivative table.

pub mod extract;
pub mod matrix_model;
pub mod one_dim;
pub mod two_dim;

use crate::algebra::rational::{rat, rat_int};
use crate::algebra::{Family, Monomial, Poly, VarId};

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("{model} genus {genus}: solved partial dF/d{var} disagrees with reconstruction")]
    Inconsistency { model: &'static str, genus: u32, var: String },
    #[error("{model} genus {genus}: term {term} violates weighted homogeneity of degree {degree}")]
    Homogeneity { model: &'static str, genus: u32, term: String, degree: i64 },
    #[error("{model} genus {genus}: {detail}")]
    Structure { model: &'static str, genus: u32, detail: String },
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}

/// `sum_l X_{l+1} dF/dX_l` for an `X_0`-independent polynomial, where the
/// `l = 1` channel acts through the `v`/`w` derivation. `family` selects
/// `I` (with `v`) or `J` (with `w`).
pub fn flow_field(p: &Poly, family: Family) -> Poly {
    let mut indices: Vec<u32> = vec![1];
    for var in p.variables() {
        if var.family == family && !indices.contains(&var.index) {
            indices.push(var.index);
        }
    }
    let mut out = Poly::zero();
    for l in indices {
        let x = VarId { family, index: l };
        let next = VarId { family, index: l + 1 };
        let df = p.differentiate(x).expect("non-zeta");
        out.add_assign_ref(&df.mul_monomial(&Monomial::var(next)));
    }
    out
}

/// Euler reconstruction `F = (1/degree) sum_k (k-1) X_k dF/dX_k` from a
/// solved table of partials.
pub fn euler_reconstruct(
    partials: &std::collections::BTreeMap<u32, Poly>,
    family: Family,
    degree: i64,
) -> Poly {
    assert!(degree > 0);
    let mut out = Poly::zero();
    for (&k, df) in partials {
        if k < 2 {
            continue; // weight zero
        }
        let weighted = df
            .mul_monomial(&Monomial::var(VarId { family, index: k }))
            .scale(&rat_int(k as i64 - 1));
        out.add_assign_ref(&weighted);
    }
    out.scale(&rat(1, degree))
}

/// Recompute every solved partial from the reconstructed polynomial; any
/// disagreement is a hard failure.
pub fn check_consistency(
    model: &'static str,
    genus: u32,
    f: &Poly,
    partials: &std::collections::BTreeMap<u32, Poly>,
    family: Family,
) -> Result<(), EngineError> {
    for (&k, expected) in partials {
        let var = VarId { family, index: k };
        let got = f.differentiate(var).expect("non-zeta");
        if &got != expected {
            return Err(EngineError::Inconsistency { model, genus, var: var.to_string() });
        }
    }
    Ok(())
}

pub fn check_homogeneous(
    model: &'static str,
    genus: u32,
    f: &Poly,
    degree: i64,
) -> Result<(), EngineError> {
    f.check_homogeneous(degree).map_err(|m| EngineError::Homogeneity {
        model,
        genus,
        term: m.to_string(),
        degree,
    })
}
