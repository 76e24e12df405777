//! Acceptance suite: every release criterion as one test, exact values
//! pinned, zero tolerance. Run with `cargo test --test acceptance` (use
//! `-- --nocapture` for the per-criterion timing lines).

use std::collections::BTreeMap;
use std::time::Instant;

use topgrav::algebra::json::poly_to_json;
use topgrav::algebra::{rat, rat_int, Family, Monomial, Poly, Policy, TruncatedSeries, VarId};
use topgrav::engines::extract::{tilde_form, Partition, TildeConvention};
use topgrav::engines::{matrix_model, one_dim, two_dim};
use topgrav::spectral;
use topgrav::tseries::Model;
use topgrav::verify;

fn mono(pairs: &[(VarId, i64)]) -> Monomial {
    Monomial::from_raw(pairs.to_vec())
}

fn n_poly(coeffs: &[(i64, i64, u32)]) -> Poly {
    Poly::from_terms(
        coeffs
            .iter()
            .map(|&(num, den, pow)| (Monomial::var_pow(VarId::big_n(), pow as i64), rat(num, den))),
    )
}

#[test]
fn criterion_01_one_dim_tables() {
    let start = Instant::now();
    let f2 = one_dim::free_energy(2).unwrap();
    let expect_f2 = Poly::from_terms(vec![
        (mono(&[(VarId::i(2), 2), (VarId::v(), 3)]), rat(5, 24)),
        (mono(&[(VarId::i(3), 1), (VarId::v(), 2)]), rat(1, 8)),
    ]);
    assert_eq!(*f2.as_ref(), expect_f2, "F2 differs");
    let f3 = tilde_form("1d", 3, one_dim::free_energy(3).unwrap().as_ref(), TildeConvention::HalfPower)
        .unwrap();
    assert_eq!(f3, verify::tables::ONE_DIM_F3.to_map(), "F3 differs");
    let f4 = tilde_form("1d", 4, one_dim::free_energy(4).unwrap().as_ref(), TildeConvention::HalfPower)
        .unwrap();
    assert_eq!(f4.len(), 11, "F4 should have eleven terms");
    assert_eq!(f4, verify::tables::ONE_DIM_F4.to_map(), "F4 differs");
    assert_eq!(
        f4.get(&Partition(vec![(2, 6)])),
        Some(&Poly::constant(rat(1105, 1152)))
    );
    assert_eq!(
        f4.get(&Partition(vec![(4, 2)])),
        Some(&Poly::constant(rat(21, 640)))
    );
    let elapsed = start.elapsed();
    println!("criterion 01 (1d tables): pass in {elapsed:?}");
    assert!(elapsed.as_secs_f64() < 1.0, "budget exceeded: {elapsed:?}");
}

#[test]
fn criterion_02_matrix_model_tables() {
    let start = Instant::now();
    let f2 = tilde_form("hmm", 2, matrix_model::free_energy(2).unwrap().as_ref(), TildeConvention::HalfPower)
        .unwrap();
    assert_eq!(f2, verify::tables::HMM_F2.to_map(), "F2^N differs");
    let f3 = tilde_form(
        "hmm",
        3,
        matrix_model::free_energy(3).unwrap().as_ref(),
        TildeConvention::HalfPowerFactorial,
    )
    .unwrap();
    assert_eq!(f3, verify::tables::HMM_F3.to_map(), "F3^N differs");
    assert_eq!(
        f3.get(&Partition(vec![(5, 1)])),
        Some(&n_poly(&[(5, 1, 4), (10, 1, 2)])),
        "tilde-I5 coefficient"
    );
    let f4 = tilde_form(
        "hmm",
        4,
        matrix_model::free_energy(4).unwrap().as_ref(),
        TildeConvention::HalfPowerFactorial,
    )
    .unwrap();
    assert_eq!(f4, verify::tables::HMM_F4.to_map(), "F4^N differs");
    assert_eq!(
        f4.get(&Partition(vec![(7, 1)])),
        Some(&n_poly(&[(14, 1, 5), (70, 1, 3), (21, 1, 1)])),
        "tilde-I7 coefficient"
    );
    let elapsed = start.elapsed();
    println!("criterion 02 (hmm thin tables): pass in {elapsed:?}");
    assert!(elapsed.as_secs_f64() < 10.0, "budget exceeded: {elapsed:?}");
}

#[test]
fn criterion_03_n_equals_one_collapse() {
    for g in 2..=4 {
        let thin = matrix_model::free_energy(g).unwrap();
        let collapsed = matrix_model::eval_big_n(thin.as_ref(), &rat_int(1));
        assert_eq!(
            &collapsed,
            one_dim::free_energy(g).unwrap().as_ref(),
            "collapse differs at genus {g}"
        );
    }
    println!("criterion 03 (N=1 collapse): pass");
}

#[test]
fn criterion_04_fat_tower() {
    let start = Instant::now();
    for (k, table) in [
        (2, &verify::tables::FAT_F02),
        (3, &verify::tables::FAT_F03),
        (4, &verify::tables::FAT_F04),
    ] {
        let got = tilde_form(
            "hmm-fat",
            k,
            matrix_model::fat_tower(k).unwrap().as_ref(),
            TildeConvention::HalfPower,
        )
        .unwrap();
        assert_eq!(got, table.to_map(), "fat tower differs at order {k}");
    }
    // order 1 exists as the derivative table dF/dI_1 = v/2
    assert_eq!(
        matrix_model::fat_deriv(1, 1).unwrap(),
        Poly::term(Monomial::var(VarId::v()), rat(1, 2))
    );
    // a1 and a2 for k <= 6 (a3 is excluded)
    use topgrav::algebra::rational::factorial;
    for k in 2..=6u32 {
        let f = matrix_model::fat_tower(k).unwrap();
        let a1 = f.coefficient(&mono(&[(VarId::i(2 * k - 1), 1), (VarId::v(), k as i64)]));
        assert_eq!(a1, (factorial(k) * factorial(k + 1)).recip(), "a1 at k={k}");
        let a2_expected = rat_int((k * k) as i64) / (factorial(k) * factorial(k + 1));
        if k == 2 {
            // I_2 I_{2k-2} collides with I_2^2; the 1/m! of the pattern halves it
            let got = f.coefficient(&mono(&[(VarId::i(2), 2), (VarId::v(), 3)]));
            assert_eq!(got, a2_expected / rat_int(2), "a2 at k=2");
        } else {
            let got = f.coefficient(&mono(&[
                (VarId::i(2), 1),
                (VarId::i(2 * k - 2), 1),
                (VarId::v(), k as i64 + 1),
            ]));
            assert_eq!(got, a2_expected, "a2 at k={k}");
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 04 (fat tower): pass in {elapsed:?}");
    assert!(elapsed.as_secs_f64() < 10.0, "budget exceeded: {elapsed:?}");
}

#[test]
fn criterion_05_two_dim_tables() {
    let start = Instant::now();
    // raw (w, J) at genus 2
    assert_eq!(
        *two_dim::free_energy(2).unwrap().as_ref(),
        verify::tables::two_dim_f2_wj(),
        "raw (w,J) form differs"
    );
    for (g, table) in [
        (2, &verify::tables::TWO_DIM_F2),
        (3, &verify::tables::TWO_DIM_F3),
        (4, &verify::tables::TWO_DIM_F4),
    ] {
        let got = tilde_form(
            "2d",
            g,
            two_dim::free_energy(g).unwrap().as_ref(),
            TildeConvention::ThirdPower,
        )
        .unwrap();
        assert_eq!(got, table.to_map(), "2d tilde table differs at genus {g}");
    }
    let f2 = tilde_form("2d", 2, two_dim::free_energy(2).unwrap().as_ref(), TildeConvention::ThirdPower)
        .unwrap();
    assert_eq!(f2.get(&Partition(vec![(2, 3)])), Some(&Poly::constant(rat(7, 1440))));
    assert_eq!(
        f2.get(&Partition(vec![(2, 1), (3, 1)])),
        Some(&Poly::constant(rat(29, 5760)))
    );
    assert_eq!(f2.get(&Partition(vec![(4, 1)])), Some(&Poly::constant(rat(1, 1152))));
    let f4 = tilde_form("2d", 4, two_dim::free_energy(4).unwrap().as_ref(), TildeConvention::ThirdPower)
        .unwrap();
    assert_eq!(
        f4.get(&Partition(vec![(10, 1)])),
        Some(&Poly::constant(rat(1, 7962624))),
        "tilde-I10 coefficient"
    );
    let elapsed = start.elapsed();
    println!("criterion 05 (2d tables): pass in {elapsed:?}");
    assert!(elapsed.as_secs_f64() < 60.0, "budget exceeded: {elapsed:?}");
}

#[test]
fn criterion_06_intersection_numbers() {
    let table = two_dim::correlators(2).unwrap();
    assert_eq!(table.value(&[(4, 1)]), Some(&Poly::constant(rat(1, 1152))));
    assert_eq!(table.value(&[(2, 3)]), Some(&Poly::constant(rat(7, 240))));
    println!("criterion 06 (intersection numbers): pass");
}

#[test]
fn criterion_07_roundtrip_and_f0_agreement() {
    // t -> I -> t at (M=4, D=5)
    let policy = Policy::t_vars(4, 5);
    let report = topgrav::coords::roundtrip_check(&policy);
    assert!(report.pass(), "roundtrip failed: {:?}", report.first_failure);

    // four-way genus-0 agreement at (M=4, D=6); the operation itself is a
    // hard failure naming the first differing coefficient
    let tpolicy = Policy::t_vars(4, 6);
    let forms = two_dim::f0_all_forms(&tpolicy).expect("all four genus-0 forms agree");
    assert!(!forms.direct.is_zero() && !forms.bare.is_zero());
    println!("criterion 07 (roundtrip + four-way F0): pass");
}

#[test]
fn criterion_08_virasoro_residuals() {
    let policy = Policy::t_vars(5, 5);
    for (model, m_max, g_max) in [
        (Model::OneDim, 4, 3),
        (Model::Hmm, 3, 2),
        (Model::TwoDim, 3, 2),
    ] {
        let reports = verify::virasoro_residuals(model, m_max, g_max, &policy).unwrap();
        for r in &reports {
            assert!(
                r.pass(),
                "{} residual m={} g={} nonzero: {}",
                r.model.name(),
                r.m,
                r.genus,
                r.residual.body()
            );
        }
    }

    // one mutation per family must fail
    for model in [Model::OneDim, Model::Hmm, Model::TwoDim] {
        let mut check = Policy::t_vars(3, 3);
        if model == Model::Hmm {
            check = check.with_nullary(Family::BigN);
        }
        let ext = verify::extended_policy(&check, 2);
        let mut fs = verify::genus_series(model, 2, &ext).unwrap();
        let bump = TruncatedSeries::from_poly(
            Poly::term(Monomial::var(VarId::t(2)), rat_int(1)),
            ext.clone(),
        );
        fs[2] = fs[2].add(&bump);
        let mut any_fail = false;
        for m in -1..=2 {
            for g in 0..=2 {
                let residual = match model {
                    Model::OneDim => verify::operators::one_dim_residual(m, g, &fs),
                    Model::Hmm => verify::operators::hmm_residual(m, g, &fs),
                    Model::TwoDim => verify::operators::two_dim_residual(m, g, &fs),
                    Model::HmmFat => unreachable!(),
                };
                if !residual.restrict(&check).is_zero() {
                    any_fail = true;
                }
            }
        }
        assert!(any_fail, "mutation not detected for {}", model.name());
    }
    println!("criterion 08 (virasoro residuals): pass");
}

#[test]
fn criterion_09_spectral_curves() {
    let window = (-12, 12); // z^-6 .. z^6, half-integers included for 2d
    for model in [Model::OneDim, Model::Hmm, Model::TwoDim] {
        let mut tpolicy = Policy::t_vars(3, 4);
        if model == Model::Hmm {
            tpolicy = tpolicy.with_nullary(Family::BigN);
        }
        let cmp = spectral::compare_curve_forms(model, window, &tpolicy).unwrap();
        assert!(
            cmp.matches,
            "{} i-form vs t-form mismatch: {:?}",
            model.name(),
            cmp.first_mismatch
        );
        let action = spectral::action_and_base_check(model, 6).unwrap();
        assert!(action.pass(), "{:?}", action);
    }
    // base-curve restrictions at zero couplings
    let one = spectral::curve_series_i(
        &spectral::one_dim_curve_exact(6),
        window,
        &Policy::i_vars(6, 4),
        true,
    )
    .at_zero_couplings();
    let expect: BTreeMap<i64, Poly> = [
        (-2, Poly::one()),
        (2, Poly::constant(rat(-1, 2))),
    ]
    .into_iter()
    .collect();
    assert_eq!(one, expect, "1d base curve");
    let two = spectral::curve_series_i(
        &spectral::two_dim_curve_exact(6),
        window,
        &Policy::i_vars(6, 4),
        false,
    )
    .at_zero_couplings();
    let airy: BTreeMap<i64, Poly> = [(1, Poly::one())].into_iter().collect();
    assert_eq!(two, airy, "2d base curve");
    println!("criterion 09 (spectral curves): pass");
}

#[test]
fn criterion_10_property_suites() {
    // deterministic pseudo-random polynomials; 128 cases per law
    let mut seed = 0x243F6A8885A308D3u64;
    let mut next = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    let vars = [
        VarId::v(),
        VarId::w(),
        VarId::big_n(),
        VarId::i(1),
        VarId::i(2),
        VarId::i(3),
        VarId::t(0),
        VarId::t(1),
        VarId::j(1),
        VarId::j(2),
    ];
    let randpoly = |next: &mut dyn FnMut() -> u64| {
        let mut p = Poly::zero();
        for _ in 0..(next() % 5) {
            let mut pairs = Vec::new();
            for _ in 0..(next() % 4) {
                let v = vars[(next() % vars.len() as u64) as usize];
                pairs.push((v, (next() % 3 + 1) as i64));
            }
            let num = (next() % 19) as i64 - 9;
            let den = (next() % 6 + 1) as i64;
            p.add_term(Monomial::from_raw(pairs), rat(num, den));
        }
        p
    };
    for case in 0..128 {
        let a = randpoly(&mut next);
        let b = randpoly(&mut next);
        let c = randpoly(&mut next);
        assert_eq!(&a + &b, &b + &a, "case {case}");
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c), "case {case}");
        assert_eq!(&a * &b, &b * &a, "case {case}");
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c), "case {case}");
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c), "case {case}");
        for x in [VarId::i(1), VarId::j(1), VarId::t(0), VarId::i(2)] {
            let lhs = (&a * &b).differentiate(x).unwrap();
            let rhs = &(&a.differentiate(x).unwrap() * &b)
                + &(&a * &b.differentiate(x).unwrap());
            assert_eq!(lhs, rhs, "Leibniz case {case} var {x}");
        }
        let text = poly_to_json(&a);
        let reparsed = topgrav::algebra::json::poly_from_json(&text).unwrap();
        assert_eq!(reparsed, a, "serialization case {case}");
        assert_eq!(poly_to_json(&reparsed), text, "determinism case {case}");
    }

    // homogeneity audit over all computed free energies
    let audit = verify::homogeneity_audit().unwrap();
    assert!(audit.failures.is_empty(), "{:?}", audit.failures);

    // determinism of serialized artifacts: identical fresh runs byte-match
    let first = poly_to_json(two_dim::free_energy(3).unwrap().as_ref());
    let second = poly_to_json(two_dim::free_energy(3).unwrap().as_ref());
    assert_eq!(first, second);
    println!("criterion 10 (property suites): pass");
}
