//! The twisted conjugacy action σ · α = σ α φ(σ)^{-1} and the Reidemeister
//! counts of the maps an endomorphism induces on the kernel and quotient.
//!
//! Run with `cargo run --example twisted_action`.

use gamma::morphism::Endomorphism;
use gamma::twisted::{
    fix_action_image, reidemeister_abelian, reidemeister_on_a, twisted_act,
};
use gamma::{GroupSpec, IntMatrix};

fn main() {
    let spec = GroupSpec::new(vec![2, 3]).unwrap();
    let mut endo = Endomorphism::new(
        spec.clone(),
        spec.localize(1, 2).unwrap(),
        vec![
            (spec.localize(3, 1).unwrap(), vec![1, 0]),
            (spec.localize(4, 1).unwrap(), vec![0, 1]),
        ],
    )
    .unwrap();
    assert!(endo.validate().all_passed());

    // one twisted move: t1 . a = t1 a phi(t1)^-1
    let moved = twisted_act(&endo, &spec.gen_t(0), &spec.gen_a()).unwrap();
    println!("t1 . a = {moved}");

    // heights never change along an orbit, because the induced map on Z^k
    // is the identity
    let alpha = spec.evaluate(&spec.parse_word("a^3 t1 t2^2").unwrap());
    for sigma_text in ["a", "t1", "t2^-1 a t1"] {
        let sigma = spec.evaluate(&spec.parse_word(sigma_text).unwrap());
        let beta = twisted_act(&endo, &sigma, &alpha).unwrap();
        println!(
            "[{sigma_text}] . alpha has height {:?} (alpha: {:?})",
            beta.height(),
            alpha.height()
        );
    }

    // Reidemeister numbers of abelian maps: infinite exactly when the
    // matrix fixes a nonzero vector
    for rows in [vec![vec![2]], vec![vec![0, 1], vec![1, 0]]] {
        let m = IntMatrix::from_i64_rows(&rows).unwrap();
        println!("R of {rows:?} on Z^k = {}", reidemeister_abelian(&m));
    }

    // on the kernel Z[1/N], multiplication by r has |Z[1/N]/(1-r)| classes
    for (num, den) in [(1, 1), (1, 2), (8, 1), (-5, 1)] {
        let r = spec.localize(num, den).unwrap();
        println!(
            "R of multiplication by {r} on Z[1/6] = {}",
            reidemeister_on_a(&spec, &r)
        );
    }

    // the Fix action on kernel class representatives: x -> x/n_i - q_i
    let x = spec.localize(0, 1).unwrap();
    println!(
        "Fix action of t1 on class of 0: {}",
        fix_action_image(&endo, 0, &x).unwrap()
    );
}
