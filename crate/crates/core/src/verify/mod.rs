//! Independent verification harness: constraint residuals in bare
//! couplings, bit-exact table comparison, and homogeneity audits.
//!
//! The residual side re-implements the constraint operators directly from
//! their bare-coupling definitions and consumes the engines' outputs only
//! as converted series, so a bug in an engine recursion cannot cancel
//! itself here.

pub mod operators;
pub mod tables;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::{Family, Policy, TruncatedSeries};
use crate::engines::extract::{self, Partition};
use crate::engines::EngineError;
use crate::tseries::{self, Model};

/// One constraint-residual check.
#[derive(Debug)]
pub struct ResidualReport {
    pub model: Model,
    pub m: i64,
    pub genus: u32,
    pub policy: Policy,
    pub residual: TruncatedSeries,
}

impl ResidualReport {
    pub fn pass(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Per-genus series at a policy slack-extended for constraint index `m_max`:
/// variables out to `M + m_max + 1` and two extra factors of depth (second
/// derivatives consume one order of trust each).
pub fn extended_policy(policy: &Policy, m_max: i64) -> Policy {
    let max_t = policy.family_cap(Family::T).expect("t policy");
    let mut ext = Policy::t_vars(
        max_t + m_max.max(0) as u32 + 1,
        policy.max_factors() + 2,
    );
    for fam in policy.nullary_families() {
        ext = ext.with_nullary(fam);
    }
    if let Some(cap) = policy.thooft_cap() {
        ext = ext.with_thooft_cap(cap);
    }
    ext
}

/// Build the per-genus input series for residual checks.
pub fn genus_series(
    model: Model,
    g_max: u32,
    policy: &Policy,
) -> Result<Vec<TruncatedSeries>, EngineError> {
    (0..=g_max)
        .map(|g| tseries::free_energy_t_series(model, g, policy))
        .collect()
}

/// Residuals for every `m <= m_max`, `g <= g_max`, checked under `policy`
/// with inputs computed at the slack-extended policy.
pub fn virasoro_residuals(
    model: Model,
    m_max: i64,
    g_max: u32,
    policy: &Policy,
) -> Result<Vec<ResidualReport>, EngineError> {
    let mut check = policy.clone();
    if model == Model::Hmm {
        check = check.with_nullary(Family::BigN);
    }
    let ext = extended_policy(&check, m_max);
    let mut reports = Vec::new();
    match model {
        Model::HmmFat => {
            let k_max = g_max.max(1);
            let ext = {
                let base = check.clone().with_thooft_cap(k_max + 1);
                extended_policy(&base, m_max)
            };
            let check = check.with_thooft_cap(k_max + 1);
            let f = tseries::fat_f0_t_series(k_max, &ext)?;
            for m in -1..=m_max {
                let residual = operators::hmm_fat_residual(m, &f).restrict(&check);
                reports.push(ResidualReport {
                    model,
                    m,
                    genus: 0,
                    policy: check.clone(),
                    residual,
                });
            }
        }
        _ => {
            let fs = genus_series(model, g_max, &ext)?;
            for m in -1..=m_max {
                for g in 0..=g_max {
                    let residual = match model {
                        Model::OneDim => operators::one_dim_residual(m, g, &fs),
                        Model::Hmm => operators::hmm_residual(m, g, &fs),
                        Model::TwoDim => operators::two_dim_residual(m, g, &fs),
                        Model::HmmFat => unreachable!(),
                    }
                    .restrict(&check);
                    reports.push(ResidualReport {
                        model,
                        m,
                        genus: g,
                        policy: check.clone(),
                        residual,
                    });
                }
            }
        }
    }
    Ok(reports)
}

/// One table-comparison outcome.
#[derive(Debug)]
pub struct TableDiff {
    pub model: &'static str,
    pub genus: u32,
    pub detail: String,
}

/// Compare every embedded reference table against a fresh engine run.
pub fn table_check() -> Result<Vec<TableDiff>, EngineError> {
    let mut diffs = Vec::new();
    for table in tables::ALL_TABLES {
        let body = match (table.model, table.genus) {
            ("1d", g) => crate::engines::one_dim::free_energy(g)?.as_ref().clone(),
            ("hmm", g) => crate::engines::matrix_model::free_energy(g)?.as_ref().clone(),
            ("hmm-fat", k) => crate::engines::matrix_model::fat_tower(k)?.as_ref().clone(),
            ("2d", g) => crate::engines::two_dim::free_energy(g)?.as_ref().clone(),
            _ => unreachable!(),
        };
        let selection = match table.model {
            "2d" => 3 * table.genus as i64 - 3,
            _ => 2 * table.genus as i64 - 2,
        };
        let got = extract::tilde_form(table.model, table.genus, &body, table.convention)?;
        let expected = table.to_map();
        diff_maps(table.model, table.genus, &got, &expected, &mut diffs);
        // selection rule on everything extracted
        for pattern in got.keys() {
            if pattern.selection_degree() != selection {
                diffs.push(TableDiff {
                    model: table.model,
                    genus: table.genus,
                    detail: format!("pattern {pattern} violates the selection rule"),
                });
            }
        }
    }
    // raw (w, J) comparison at genus 2
    let f2 = crate::engines::two_dim::free_energy(2)?;
    if *f2.as_ref() != tables::two_dim_f2_wj() {
        diffs.push(TableDiff {
            model: "2d",
            genus: 2,
            detail: format!("raw (w,J) form differs: got {}", f2.as_ref()),
        });
    }
    Ok(diffs)
}

fn diff_maps(
    model: &'static str,
    genus: u32,
    got: &BTreeMap<Partition, crate::algebra::Poly>,
    expected: &BTreeMap<Partition, crate::algebra::Poly>,
    diffs: &mut Vec<TableDiff>,
) {
    for (pattern, want) in expected {
        match got.get(pattern) {
            None => diffs.push(TableDiff {
                model,
                genus,
                detail: format!("missing {pattern}: expected {want}, got nothing"),
            }),
            Some(have) if have != want => diffs.push(TableDiff {
                model,
                genus,
                detail: format!("{pattern}: expected {want}, got {have}"),
            }),
            _ => {}
        }
    }
    for pattern in got.keys() {
        if !expected.contains_key(pattern) {
            diffs.push(TableDiff {
                model,
                genus,
                detail: format!("unexpected pattern {pattern}: got {}", got[pattern]),
            });
        }
    }
}

/// Homogeneity audit over every computed free energy.
#[derive(Debug)]
pub struct HomogeneityReport {
    pub failures: Vec<String>,
    pub checked: u32,
}

pub fn homogeneity_audit() -> Result<HomogeneityReport, EngineError> {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut push = |name: String, body: &crate::algebra::Poly, degree: i64| {
        checked += 1;
        if let Err(term) = body.check_homogeneous(degree) {
            failures.push(format!("{name}: term {term} off degree {degree}"));
        }
    };
    for g in 2..=4u32 {
        push(
            format!("1d genus {g}"),
            crate::engines::one_dim::free_energy(g)?.as_ref(),
            2 * g as i64 - 2,
        );
        push(
            format!("hmm genus {g}"),
            crate::engines::matrix_model::free_energy(g)?.as_ref(),
            2 * g as i64 - 2,
        );
        push(
            format!("hmm-fat order {g}"),
            crate::engines::matrix_model::fat_tower(g)?.as_ref(),
            2 * g as i64 - 2,
        );
        push(
            format!("2d genus {g}"),
            crate::engines::two_dim::free_energy(g)?.as_ref(),
            3 * g as i64 - 3,
        );
    }
    Ok(HomogeneityReport { failures, checked })
}

/// Render a residual-report batch as one line per check.
pub fn format_reports(reports: &[ResidualReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.pass() { "ok" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{:8} m={:+} g={}  {}",
            r.model.name(),
            r.m,
            r.genus,
            status
        );
    }
    out
}

pub const SUITES: &[&str] = &["tables", "virasoro", "homogeneity", "curves", "all"];

/// Outcome of one named suite: a labeled pass/fail line per check.
#[derive(Debug)]
pub struct SuiteOutcome {
    pub suite: String,
    pub checks: Vec<(String, bool)>,
}

impl SuiteOutcome {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<String> = self
            .checks
            .iter()
            .map(|(line, ok)| format!("{{\"check\":{:?},\"pass\":{ok}}}", line))
            .collect();
        format!(
            "{{\"suite\":\"{}\",\"pass\":{},\"checks\":[{}]}}",
            self.suite,
            self.pass(),
            entries.join(",")
        )
    }
}

/// Run one of [`SUITES`] (unknown names select nothing and pass vacuously;
/// callers validate against [`SUITES`] for usage errors).
pub fn run_suite(suite: &str) -> Result<SuiteOutcome, EngineError> {
    let mut checks: Vec<(String, bool)> = Vec::new();
    if suite == "tables" || suite == "all" {
        let diffs = table_check()?;
        if diffs.is_empty() {
            checks.push(("tables: all reference tables reproduced bit-exactly".into(), true));
        } else {
            for d in diffs {
                checks.push((format!("tables: {} g={}: {}", d.model, d.genus, d.detail), false));
            }
        }
    }
    if suite == "virasoro" || suite == "all" {
        let policy = Policy::t_vars(5, 5);
        for (model, m_max, g_max) in [
            (Model::OneDim, 4, 3),
            (Model::Hmm, 3, 2),
            (Model::TwoDim, 3, 2),
            (Model::HmmFat, 3, 2),
        ] {
            for r in virasoro_residuals(model, m_max, g_max, &policy)? {
                let ok = r.pass();
                checks.push((
                    format!(
                        "virasoro: {} m={:+} g={} residual {}",
                        r.model.name(),
                        r.m,
                        r.genus,
                        if ok { "empty" } else { "NONEMPTY" }
                    ),
                    ok,
                ));
            }
        }
    }
    if suite == "homogeneity" || suite == "all" {
        let report = homogeneity_audit()?;
        if report.failures.is_empty() {
            checks.push((format!("homogeneity: {} free energies audited", report.checked), true));
        } else {
            for f in report.failures {
                checks.push((format!("homogeneity: {f}"), false));
            }
        }
    }
    if suite == "curves" || suite == "all" {
        for model in [Model::OneDim, Model::Hmm, Model::TwoDim] {
            let mut tp = Policy::t_vars(3, 4);
            if model == Model::Hmm {
                tp = tp.with_nullary(Family::BigN);
            }
            let cmp = crate::spectral::compare_curve_forms(model, (-12, 12), &tp)?;
            checks.push((
                format!(
                    "curves: {} i-form vs t-form over z^-6..z^6 {}",
                    model.name(),
                    if cmp.matches { "match" } else { "MISMATCH" }
                ),
                cmp.matches,
            ));
            let action = crate::spectral::action_and_base_check(model, 5)?;
            checks.push((
                format!(
                    "curves: {} action identities {}",
                    model.name(),
                    if action.pass() { "hold" } else { "FAIL" }
                ),
                action.pass(),
            ));
        }
        // fat deformation structure: the order-one tail coefficient and the
        // tH-linear collapse onto the thin pole
        let fat = crate::spectral::hmm_fat_curve_exact(3, 1)?;
        let tail_ok = fat.coefficient(-6)
            == crate::algebra::Poly::term(
                crate::algebra::Monomial::var_pow(crate::algebra::VarId::t_hooft(), 2)
                    .mul(&crate::algebra::Monomial::var(crate::algebra::VarId::v())),
                crate::algebra::rat_int(1),
            );
        checks.push((
            format!(
                "curves: hmm-fat order-one tail coefficient {}",
                if tail_ok { "matches" } else { "MISMATCH" }
            ),
            tail_ok,
        ));
        let linear_ok = fat.terms.iter().all(|(&e2, p)| {
            let linear = p.coefficient_of_power(crate::algebra::VarId::t_hooft(), 1);
            if e2 == -2 { linear == crate::algebra::Poly::one() } else { linear.is_zero() }
        });
        checks.push((
            format!(
                "curves: hmm-fat tH-linear part collapses to the thin pole {}",
                if linear_ok { "ok" } else { "FAIL" }
            ),
            linear_ok,
        ));
    }
    Ok(SuiteOutcome { suite: suite.to_string(), checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat_int;
    use crate::algebra::{Monomial, Poly, VarId};

    #[test]
    fn one_dim_residuals_vanish() {
        let policy = Policy::t_vars(4, 4);
        let reports = virasoro_residuals(Model::OneDim, 3, 2, &policy).unwrap();
        for r in &reports {
            assert!(
                r.pass(),
                "1d residual m={} g={} nonzero: {}",
                r.m,
                r.genus,
                r.residual.body()
            );
        }
    }

    #[test]
    fn hmm_residuals_vanish() {
        let policy = Policy::t_vars(3, 3);
        let reports = virasoro_residuals(Model::Hmm, 3, 2, &policy).unwrap();
        for r in &reports {
            assert!(
                r.pass(),
                "hmm residual m={} g={} nonzero: {}",
                r.m,
                r.genus,
                r.residual.body()
            );
        }
    }

    #[test]
    fn two_dim_residuals_vanish() {
        let policy = Policy::t_vars(3, 3);
        let reports = virasoro_residuals(Model::TwoDim, 2, 2, &policy).unwrap();
        for r in &reports {
            assert!(
                r.pass(),
                "2d residual m={} g={} nonzero: {}",
                r.m,
                r.genus,
                r.residual.body()
            );
        }
    }

    #[test]
    fn fat_residuals_vanish() {
        let policy = Policy::t_vars(3, 3);
        let reports = virasoro_residuals(Model::HmmFat, 2, 2, &policy).unwrap();
        for r in &reports {
            assert!(
                r.pass(),
                "fat residual m={} nonzero: {}",
                r.m,
                r.residual.body()
            );
        }
    }

    #[test]
    fn mutation_is_detected() {
        // perturb one genus-2 coefficient and expect a nonzero residual
        let policy = Policy::t_vars(3, 3);
        let ext = extended_policy(&policy, 2);
        let mut fs = genus_series(Model::OneDim, 2, &ext).unwrap();
        let bump = TruncatedSeries::from_poly(
            Poly::term(
                Monomial::var(VarId::t(3)).mul(&Monomial::one()),
                rat_int(1),
            ),
            ext.clone(),
        );
        fs[2] = fs[2].add(&bump);
        let mut any_fail = false;
        for m in -1..=2 {
            for g in 0..=2 {
                let res = operators::one_dim_residual(m, g, &fs).restrict(&policy);
                if !res.is_zero() {
                    any_fail = true;
                }
            }
        }
        assert!(any_fail, "mutated series passed every residual");
    }

    #[test]
    fn reference_tables_match_engines() {
        let diffs = table_check().unwrap();
        assert!(
            diffs.is_empty(),
            "table mismatches:\n{}",
            diffs
                .iter()
                .map(|d| format!("{} g={}: {}", d.model, d.genus, d.detail))
                .collect::<Vec<_>>()
                .join("\n")
        );
    }

    #[test]
    fn homogeneity_audit_passes() {
        let report = homogeneity_audit().unwrap();
        assert!(report.failures.is_empty(), "{:?}", report.failures);
        assert_eq!(report.checked, 12);
    }

    #[test]
    fn homogeneity_check_catches_planted_term() {
        let mut f = crate::engines::one_dim::free_energy(2).unwrap().as_ref().clone();
        f.add_term(Monomial::var(VarId::i(5)), rat_int(1)); // degree 4, not 2
        assert!(f.check_homogeneous(2).is_err());
        assert!(Poly::zero().check_homogeneous(2).is_ok(), "empty passes vacuously");
    }

    #[test]
    fn fat_mutation_is_detected() {
        let check = Policy::t_vars(2, 2).with_thooft_cap(2);
        let ext = extended_policy(&check, 2);
        let f = crate::tseries::fat_f0_t_series(1, &ext).unwrap();
        let bump = TruncatedSeries::from_poly(
            &Poly::var(VarId::t(1)) * &Poly::var(VarId::t_hooft()),
            ext.clone(),
        );
        let mutated = f.add(&bump);
        let mut any_fail = false;
        for m in -1..=2 {
            if !operators::hmm_fat_residual(m, &mutated).restrict(&check).is_zero() {
                any_fail = true;
            }
        }
        assert!(any_fail, "fat mutation went unnoticed");
    }
}
