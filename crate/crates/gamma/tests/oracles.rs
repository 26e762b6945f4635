//! Cross-validation of the exact machinery against the independent
//! oracles in `support`: the matrix representation recomputes word values,
//! minor gcds recompute invariant factors, cofactor expansion recomputes
//! determinants, and rational elimination recomputes kernels.

mod support;

use gamma::{Element, GroupSpec, IntMatrix, Localized};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use support::*;

fn spec(exponents: &[u32]) -> GroupSpec {
    GroupSpec::new(exponents.to_vec()).unwrap()
}

#[test]
fn matrix_rep_reproduces_frozen_word_values() {
    let s2 = spec(&[2]);
    let cases2 = [
        ("t1^-1 a t1", (2, 1), vec![0]),
        ("t1 a t1^-1", (1, 2), vec![0]),
    ];
    for (text, (num, den), v) in cases2 {
        let word = s2.parse_word(text).unwrap();
        let (q, heights) = matrix_rep_evaluate(&s2, &word);
        assert_eq!(q, BigRational::new(num.into(), den.into()));
        assert_eq!(heights, v);
        assert_matches_rep(&s2, &word, &s2.evaluate(&word));
    }

    let s23 = spec(&[2, 3]);
    let word = s23.parse_word("a t1 a t2").unwrap();
    let (q, heights) = matrix_rep_evaluate(&s23, &word);
    assert_eq!(q, BigRational::new(3.into(), 2.into()));
    assert_eq!(heights, vec![1, 1]);
    assert_eq!(
        s23.evaluate(&word),
        Element::new(s23.localize(3, 2).unwrap(), vec![1, 1])
    );
}

#[test]
fn matrix_rep_matches_evaluate_on_random_words() {
    let mut rng = StdRng::seed_from_u64(101);
    for exps in [vec![2], vec![2, 3], vec![2, 9], vec![5, 6, 7]] {
        let s = spec(&exps);
        for _ in 0..300 {
            let word = random_word(&s, &mut rng, 20);
            assert_matches_rep(&s, &word, &s.evaluate(&word));
        }
    }
}

#[test]
fn matrix_rep_validates_group_ops() {
    // mul, inverse, pow agree with the representation through concatenated
    // words
    let mut rng = StdRng::seed_from_u64(103);
    let s = spec(&[2, 3]);
    for _ in 0..200 {
        let w1 = random_word(&s, &mut rng, 10);
        let w2 = random_word(&s, &mut rng, 10);
        let product = s.mul(&s.evaluate(&w1), &s.evaluate(&w2));
        assert_matches_rep(&s, &w1.concat(&w2), &product);
    }
}

fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
        .collect()
}

#[test]
fn minor_gcd_oracle_reproduces_frozen_smith_forms() {
    let cases: Vec<(Vec<Vec<i64>>, Vec<i64>)> = vec![
        (vec![vec![1]], vec![1]),
        (vec![vec![2, 0], vec![0, 3]], vec![1, 6]),
        (vec![vec![1, 1], vec![1, 1]], vec![1, 0]),
        (vec![vec![6, 0], vec![0, 4]], vec![2, 12]),
    ];
    for (rows, expected) in cases {
        let expected: Vec<BigInt> = expected.into_iter().map(BigInt::from).collect();
        assert_eq!(minor_gcd_invariant_factors(&big_rows(&rows)), expected);
        let m = IntMatrix::from_i64_rows(&rows).unwrap();
        assert_eq!(m.smith().diagonal(), expected.as_slice());
    }
}

#[test]
fn minor_gcd_oracle_matches_smith_on_random_matrices() {
    let mut rng = StdRng::seed_from_u64(107);
    for _ in 0..300 {
        let k = rng.gen_range(1..=3);
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..k).map(|_| rng.gen_range(-4..=4)).collect())
            .collect();
        let m = IntMatrix::from_i64_rows(&rows).unwrap();
        assert_eq!(
            m.smith().diagonal(),
            minor_gcd_invariant_factors(&big_rows(&rows)).as_slice(),
            "smith mismatch on {rows:?}"
        );
    }
}

#[test]
fn cofactor_oracle_matches_bareiss_determinant() {
    let mut rng = StdRng::seed_from_u64(109);
    for _ in 0..300 {
        let k = rng.gen_range(1..=4);
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..k).map(|_| rng.gen_range(-5..=5)).collect())
            .collect();
        let m = IntMatrix::from_i64_rows(&rows).unwrap();
        assert_eq!(m.det(), cofactor_det(&big_rows(&rows)), "det mismatch on {rows:?}");
    }
}

#[test]
fn kernel_oracle_agrees_with_singularity() {
    let mut rng = StdRng::seed_from_u64(113);
    for _ in 0..300 {
        let k = rng.gen_range(1..=3);
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..k).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let big = big_rows(&rows);
        let kernel = integer_kernel_vector(&big);
        let det = cofactor_det(&big);
        assert_eq!(kernel.is_some(), det.is_zero(), "kernel/det mismatch on {rows:?}");
    }
}

#[test]
fn ring_membership_frozen_example() {
    // reduced denominator of 3/10 is 10; stripping the primes of N = 6
    // leaves the foreign factor 5
    let s = spec(&[2, 3]);
    let err = s.localize(3, 10).unwrap_err();
    match err {
        gamma::AlgebraError::NotInRing { factor, .. } => {
            assert_eq!(factor, BigInt::from(5));
        }
        other => panic!("expected NotInRing, got {other}"),
    }
    // while 3/10 does lie in Z[1/10]
    assert!(Localized::new(3, 10, &[2, 5]).is_ok());
}
