//! The localized ring Z[1/N] and integer matrix normal forms: exact
//! fractions, ring membership, units, Smith normal form, and cokernel
//! cardinalities.
//!
//! Run with `cargo run --example exact_arithmetic`.

use gamma::{GroupSpec, IntMatrix};

fn main() {
    let spec = GroupSpec::new(vec![2, 3]).unwrap();
    println!(
        "Z[1/N] for S = {:?}: N = {}, primes {:?}",
        spec.exponents(),
        spec.modulus(),
        spec.prime_factors()
    );

    let x = spec.localize(4, 6).unwrap();
    let y = spec.localize(1, 2).unwrap();
    println!("4/6 normalizes to {x}");
    println!("{x} + {y} = {}", x.add(&y));
    println!("{x} * {y} = {}", x.mul(&y));

    // 3/10 needs to invert 5, which is not allowed here
    println!("3/10 in Z[1/6]? {:?}", spec.localize(3, 10).unwrap_err());

    // units are the fractions whose numerator also factors over {2, 3}
    for (num, den) in [(1, 2), (9, 4), (5, 1), (0, 1)] {
        if let Ok(value) = spec.localize(num, den) {
            println!("{value} is a unit: {}", spec.is_unit(&value));
        }
    }

    // Smith normal form and cokernel sizes
    for rows in [
        vec![vec![2, 0], vec![0, 3]],
        vec![vec![1, 1], vec![1, 1]],
        vec![vec![2, 1], vec![-1, 3]],
    ] {
        let m = IntMatrix::from_i64_rows(&rows).unwrap();
        let snf = m.smith();
        println!(
            "\nmatrix {rows:?}: invariant factors {:?}, det {}, |coker| = {}",
            snf.diagonal(),
            m.det(),
            m.coker_cardinality()
        );
    }
}
