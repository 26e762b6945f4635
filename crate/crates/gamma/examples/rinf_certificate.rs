//! Certificates that automorphisms of Γ(S) have infinitely many twisted
//! conjugacy classes: explicit witness lists with pairwise distinct,
//! machine-checked class invariants.
//!
//! Run with `cargo run --example rinf_certificate`.

use gamma::morphism::Endomorphism;
use gamma::twisted::certify_r_infinite;
use gamma::GroupSpec;

fn main() {
    let spec = GroupSpec::new(vec![2, 3]).unwrap();

    let automorphisms = vec![
        ("identity", Endomorphism::identity(spec.clone())),
        (
            "inner by t1",
            Endomorphism::inner(spec.clone(), &spec.gen_t(0)),
        ),
        ("a -> a^{1/2}, t_i -> a^{q_i} t_i", {
            let mut e = Endomorphism::new(
                spec.clone(),
                spec.localize(1, 2).unwrap(),
                vec![
                    (spec.localize(3, 1).unwrap(), vec![1, 0]),
                    (spec.localize(4, 1).unwrap(), vec![0, 1]),
                ],
            )
            .unwrap();
            assert!(e.validate().all_passed());
            e
        }),
    ];

    for (name, endo) in &automorphisms {
        let cert = certify_r_infinite(endo, 1000).unwrap();
        let checks = cert.verify_with_samples(7, 32).unwrap();
        println!(
            "{name}: {} witnesses, all checks pass = {}",
            cert.witnesses().len(),
            checks.iter().all(|c| c.passed)
        );
    }

    // the full JSON artifact for a small certificate
    let cert = certify_r_infinite(&automorphisms[2].1, 5).unwrap();
    println!(
        "\n{}",
        serde_json::to_string_pretty(&cert.to_json()).unwrap()
    );

    // a non-automorphism is refused: a -> a^5 is not invertible on Z[1/6]
    let mut not_unit = Endomorphism::new(
        spec.clone(),
        spec.localize(5, 1).unwrap(),
        vec![
            (spec.localize(3, 1).unwrap(), vec![1, 0]),
            (spec.localize(4, 1).unwrap(), vec![0, 1]),
        ],
    )
    .unwrap();
    assert!(not_unit.validate().all_passed());
    println!("\na -> a^5: {:?}", certify_r_infinite(&not_unit, 3).unwrap_err());
}
