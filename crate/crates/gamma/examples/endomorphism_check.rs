//! Endomorphisms of Γ(S) from generator images: relator validation, the
//! forced-height equation, automorphism candidacy, and composition.
//!
//! Run with `cargo run --example endomorphism_check`.

use gamma::morphism::{forced_heights, Endomorphism};
use gamma::{GroupSpec, Localized};

fn main() {
    let spec = GroupSpec::new(vec![2, 3]).unwrap();

    // a -> a^{1/2}, t1 -> a^3 t1, t2 -> a^4 t2: the commuting relator
    // becomes q1 (1 - 1/n2) = q2 (1 - 1/n1), i.e. 3 * 2/3 = 4 * 1/2
    let mut half = Endomorphism::new(
        spec.clone(),
        spec.localize(1, 2).unwrap(),
        vec![
            (spec.localize(3, 1).unwrap(), vec![1, 0]),
            (spec.localize(4, 1).unwrap(), vec![0, 1]),
        ],
    )
    .unwrap();
    let report = half.validate();
    for check in &report.checks {
        println!("{:<24} {}", check.relator, if check.passed { "pass" } else { "FAIL" });
    }

    let candidate = half.is_automorphism_candidate().unwrap();
    println!(
        "candidate: scalar unit = {}, matrix unimodular = {}",
        candidate.scalar_is_unit, candidate.matrix_unimodular
    );
    let inverse = candidate.inverse.unwrap();
    println!("inverse endomorphism: {}", inverse.to_json());
    println!(
        "inverse verified on generators: {}",
        candidate.inverse_verified
    );

    // a broken image: t1 -> t1^-1 cannot conjugate a to a^2
    let mut bad = Endomorphism::new(
        spec.clone(),
        Localized::one(),
        vec![
            (Localized::zero(), vec![-1, 0]),
            (Localized::zero(), vec![0, 1]),
        ],
    )
    .unwrap();
    let report = bad.validate();
    for failure in report.failures() {
        println!(
            "broken image: {} fails with discrepancy {}",
            failure.relator, failure.discrepancy
        );
    }

    // the forced-height equation n^w = n_i has e_i as its only solution
    let r = spec.localize(1, 2).unwrap();
    println!("\nforced heights for w over [-2, 2]^2, first generator:");
    for w0 in -2..=2i64 {
        for w1 in -2..=2i64 {
            let result = forced_heights(&spec, &r, &[vec![w0, w1]]).unwrap();
            if result.all_unique() {
                println!("  only ({w0}, {w1}) satisfies n^w = 2");
            }
        }
    }

    // composing with the inverse gives the identity on generators
    let composite = half.compose(&inverse).unwrap();
    println!(
        "\nhalf . inverse sends a to a^{} and t1 to {}",
        composite.scalar(),
        composite.image_t(0).to_word_string().unwrap()
    );
}
