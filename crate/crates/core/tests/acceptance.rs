//! Verification suite: every mathematical guarantee the crate advertises,
//! checked end to end with exact integer equality (tolerance zero).
//!
//! Each test prints one `check NN (...): PASS|FAIL` line; run with
//! `cargo test --test acceptance -- --nocapture` to see them all.

use twistpoly::hecke::{
    check_conjugation_closed_forms, check_dihedral_identity_coefficient,
    check_dihedral_support_containment, check_generator_support_containment,
    check_module_support_containment, check_paired_product_identity_coefficient,
    check_structure_constant_positivity, check_sum_stability,
};
use twistpoly::invol::{PhiTable, TwistedInvolutionSet};
use twistpoly::presets::preset;
use twistpoly::series::{poincare_star, ratio_series, verify_series_identity};
use twistpoly::xtable::{
    check_dual_recursions, check_entry_shape, check_identity_row, check_module_oracle,
    check_nonnegative_evaluations, check_row_sums, XTable,
};
use twistpoly::{ElementStore, IntPolynomial, TruncatedSeries};

fn store_for(name: &str, star: &str, bound: u32) -> ElementStore {
    let p = preset(name).expect("known preset");
    let pres = p.presentation(star).expect("known star");
    ElementStore::build(pres, bound).expect("ball fits in the default limit")
}

fn conclude(label: &str, pass: bool) {
    println!("check {label}: {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{label} failed");
}

const FINITE_PRESETS: &[(&str, &str, u32)] = &[
    // (preset, star, length of the longest element)
    ("A1", "id", 1),
    ("A2", "id", 3),
    ("A2", "flip", 3),
    ("A3", "id", 6),
    ("A3", "flip", 6),
    ("B2", "id", 4),
    ("B3", "id", 9),
    ("D4", "id", 12),
    ("D4", "leg-swap", 12),
    ("I2(5)", "id", 5),
    ("I2(7)", "id", 7),
    ("H3", "id", 15),
];

const RANK_LE_3_PRESETS: &[(&str, &str)] = &[
    ("A1", "id"),
    ("A2", "id"),
    ("A2", "flip"),
    ("A3", "id"),
    ("A3", "flip"),
    ("B2", "id"),
    ("B3", "id"),
    ("I2(5)", "id"),
    ("I2(6)", "id"),
    ("I2(7)", "id"),
    ("I2(8)", "id"),
    ("H3", "id"),
    ("affA1", "id"),
    ("affA2", "id"),
    ("affA2", "flip"),
    ("affC2", "id"),
    ("affG2", "id"),
];

const CRYSTALLOGRAPHIC_PRESETS: &[(&str, &str)] = &[
    ("A1", "id"),
    ("A2", "id"),
    ("A2", "flip"),
    ("A3", "id"),
    ("A3", "flip"),
    ("B2", "id"),
    ("B3", "id"),
    ("D4", "id"),
    ("D4", "leg-swap"),
    ("I2(6)", "id"),
    ("affA1", "id"),
    ("affA2", "id"),
    ("affA2", "flip"),
    ("affC2", "id"),
    ("affG2", "id"),
];

#[test]
fn c01_series_identity_on_finite_groups() {
    let mut pass = true;
    for &(name, star, longest) in FINITE_PRESETS {
        let st = store_for(name, star, longest + 1);
        assert!(st.is_complete_group(), "{name} should be finite");
        assert_eq!(st.max_length(), longest, "{name}");
        let order = 2 * longest as usize + 2;
        let check = verify_series_identity(&st, order).expect("complete group");
        let ok = check.pass && check.division_pass && check.cleared_pass == Some(true);
        if !ok {
            eprintln!("  identity fails on {name}({star}): residual {}", check.residual);
            pass = false;
        }
    }
    conclude("01 (series identity, finite groups, truncated and cleared)", pass);
}

#[test]
fn c02_series_identity_on_affine_groups() {
    let order = 16usize;
    let mut pass = true;
    for (name, star) in [
        ("affA1", "id"),
        ("affA2", "id"),
        ("affA2", "flip"),
        ("affC2", "id"),
        ("affG2", "id"),
    ] {
        let st = store_for(name, star, order as u32);
        assert!(!st.is_complete_group());
        let check = verify_series_identity(&st, order).expect("ball of the series order");
        if !(check.pass && check.division_pass) {
            eprintln!("  identity fails on {name}({star}): residual {}", check.residual);
            pass = false;
        }
    }
    conclude("02 (series identity, affine groups, order 16)", pass);
}

fn row_tables() -> Vec<(&'static str, &'static str, ElementStore)> {
    vec![
        ("A3", "flip", store_for("A3", "flip", 12)),
        ("B3", "id", store_for("B3", "id", 12)),
        ("affA2", "id", store_for("affA2", "id", 12)),
    ]
}

#[test]
fn c03_identity_row_of_the_table() {
    let mut pass = true;
    for (name, star, st) in row_tables() {
        let invols = TwistedInvolutionSet::enumerate(&st);
        let table = XTable::compute(&st, &invols, 6).expect("ball is twice the row bound");
        let report = check_identity_row(&st, &table);
        if !report.pass {
            eprintln!("  {name}({star}): {:?}", report.detail);
            pass = false;
        }
    }
    conclude("03 (identity row is the star-fixed delta, rows to length 6)", pass);
}

#[test]
fn c04_row_sums_of_the_table() {
    let mut pass = true;
    for (name, star, st) in row_tables() {
        let invols = TwistedInvolutionSet::enumerate(&st);
        let table = XTable::compute(&st, &invols, 6).expect("ball is twice the row bound");
        let report = check_row_sums(&st, &table);
        if !report.pass {
            eprintln!("  {name}({star}): {:?}", report.detail);
            pass = false;
        }
    }
    conclude("04 (row sums equal u^(2 l(y)), rows to length 6)", pass);
}

#[test]
fn c05_recursion_agrees_with_the_module_oracle() {
    let mut pass = true;
    for &(name, star) in RANK_LE_3_PRESETS {
        let st = store_for(name, star, 16);
        let invols = TwistedInvolutionSet::enumerate(&st);
        let table = XTable::compute(&st, &invols, 4).expect("ball covers the table");
        let report = check_module_oracle(&st, &invols, &table, 4);
        if !report.pass || report.checked == 0 {
            eprintln!("  {name}({star}): {:?}", report.detail);
            pass = false;
        }
    }
    conclude("05 (table equals the module-action oracle, rows to length 4)", pass);
}

#[test]
fn c06_identity_coefficient_of_paired_products() {
    let mut pass = true;
    for (name, star) in [("A3", "flip"), ("B2", "id")] {
        let st = store_for(name, star, 10);
        let report = check_paired_product_identity_coefficient(&st, 5);
        if !report.pass {
            eprintln!("  {name}({star}): {:?}", report.detail);
            pass = false;
        }
    }
    conclude(
        "06 (identity coefficient of T_y T_(y*)^-1 is the star-fixed delta, lengths to 5)",
        pass,
    );
}

#[test]
fn c07_phi_well_defined_with_parity_and_bounds() {
    let mut pass = true;
    for name in twistpoly::presets::PRESET_NAMES {
        let p = preset(name).unwrap();
        for star in p.star_names() {
            let st = store_for(name, star, 10);
            let invols = TwistedInvolutionSet::enumerate(&st);
            let phi = PhiTable::build(&st, &invols);
            if !phi.check_descent_independence(&st, &invols) {
                eprintln!("  {name}({star}): descent choices disagree");
                pass = false;
            }
            for z in invols.iter() {
                let l = st.length(z);
                let f = phi.phi(z);
                if f > l || f % 2 != l % 2 {
                    eprintln!("  {name}({star}): bad phi value {f} at length {l}");
                    pass = false;
                }
            }
        }
    }
    conclude("07 (phi is descent-independent with parity and bounds, lengths to 10)", pass);
}

#[test]
fn c08_closed_form_of_row_series() {
    let order = 10usize;
    let mut pass = true;
    for (name, star, bound) in [("A2", "id", 20u32), ("A2", "flip", 20), ("affA1", "id", 20)] {
        let st = store_for(name, star, bound);
        let invols = TwistedInvolutionSet::enumerate(&st);
        let phi = PhiTable::build(&st, &invols);
        let table = XTable::compute(&st, &invols, order as u32).expect("sized ball");
        let p_star = poincare_star(&st, order).unwrap();
        let ratio = ratio_series(order);
        for z in invols.iter() {
            let l = st.length(z) as usize;
            if l > 6 {
                continue;
            }
            let got = table.series_for(&st, z, order).unwrap();
            let mut expected = p_star.clone();
            for _ in 0..phi.phi(z) {
                expected = expected.mul(&ratio);
            }
            // shift by u^{l(z)}
            let mut shifted = TruncatedSeries::zero(order);
            for k in 0..=order - l {
                shifted = shifted.add(&TruncatedSeries::from_polynomial(
                    &IntPolynomial::monomial(expected.coeff(k), k + l),
                    order,
                ));
            }
            if got != shifted {
                eprintln!("  {name}({star}) z = {:?}: series mismatch", st.word(z));
                pass = false;
            }
        }
    }
    conclude(
        "08 (row series equals P_* u^l(z) ((u-1)/(u+1))^phi(z), order 10, lengths to 6)",
        pass,
    );
}

#[test]
fn c09_dual_recursions_hold_exhaustively() {
    let mut pass = true;
    for &(name, star) in RANK_LE_3_PRESETS {
        let st = store_for(name, star, 8);
        let invols = TwistedInvolutionSet::enumerate(&st);
        let table = XTable::compute(&st, &invols, 4).expect("sized ball");
        for report in [
            check_dual_recursions(&st, &invols, &table),
            check_entry_shape(&st, &table),
            twistpoly::xtable::check_descent_choice_independence(&st, &invols, &table),
        ] {
            if !report.pass {
                eprintln!("  {name}({star}) {}: {:?}", report.name, report.detail);
                pass = false;
            }
        }
    }
    conclude("09 (dual recursions, entry shape and descent independence, rows to 4)", pass);
}

#[test]
fn c10_support_containments_and_positivity() {
    let mut pass = true;
    for (name, star) in [
        ("A2", "flip"),
        ("A3", "id"),
        ("B3", "id"),
        ("affA2", "id"),
    ] {
        let st = store_for(name, star, 8);
        let invols = TwistedInvolutionSet::enumerate(&st);
        for report in [
            check_generator_support_containment(&st, &invols),
            check_module_support_containment(&st, 4),
            check_conjugation_closed_forms(&st, &invols),
            check_dihedral_support_containment(&st, &invols),
            check_dihedral_identity_coefficient(&st),
            check_sum_stability(&st, &invols),
            check_structure_constant_positivity(&st, 8),
        ] {
            if !report.pass {
                eprintln!("  {name}({star}) {}: {:?}", report.name, report.detail);
                pass = false;
            }
        }
    }
    conclude("10 (support containments, closed forms and positivity, ball 8)", pass);
}

#[test]
fn c11_nonnegative_prime_evaluations() {
    let mut pass = true;
    for &(name, star) in CRYSTALLOGRAPHIC_PRESETS {
        let st = store_for(name, star, 8);
        assert!(st.presentation().is_crystallographic(), "{name}");
        let invols = TwistedInvolutionSet::enumerate(&st);
        let table = XTable::compute(&st, &invols, 4).expect("sized ball");
        let report = check_nonnegative_evaluations(&st, &table, &[2, 3, 5]);
        if !report.pass {
            eprintln!("  {name}({star}): {:?}", report.detail);
            pass = false;
        }
    }
    conclude("11 (table values are nonnegative at u = 2, 3, 5, crystallographic presets)", pass);
}
