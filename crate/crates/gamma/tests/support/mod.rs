//! Independent oracles shared by the integration suites. Everything here
//! recomputes quantities by a route disjoint from the library's own
//! (matrix representation instead of the semidirect law, minor gcds
//! instead of pivoting, cofactor expansion instead of Bareiss, rational
//! elimination instead of Smith form), so agreement is evidence rather
//! than tautology.
#![allow(dead_code)]
// index-style loops mirror the textbook elimination steps
#![allow(clippy::needless_range_loop)]

use gamma::finite_model::{FiniteEndo, FiniteModel};
use gamma::group::{Gen, GroupSpec, Word};
use gamma::{Element, Localized};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::rngs::StdRng;
use rand::Rng;

/// Evaluates a word through the faithful matrix representation
/// a ↦ [[1, 1], [0, 1]], t_i ↦ [[1/n_i, 0], [0, 1]] over exact rationals.
/// The product of the images is [[n^{-v}, q], [0, 1]] for the normal form
/// (q, v), so the A-coordinate is read off the top-right entry; heights
/// are exponent sums. This is a complete, independent route to the normal
/// form: it never touches the semidirect-product code.
pub fn matrix_rep_evaluate(spec: &GroupSpec, word: &Word) -> (BigRational, Vec<i64>) {
    // entries (x, y) of the matrix [[x, y], [0, 1]]
    let mut x = BigRational::one();
    let mut y = BigRational::zero();
    let mut v = vec![0i64; spec.rank()];
    for letter in &word.letters {
        let (lx, ly) = match letter.gen {
            Gen::A => (BigRational::one(), BigRational::from_integer(letter.exp.into())),
            Gen::T(i) => {
                v[i] += letter.exp;
                let n = BigInt::from(spec.exponent(i));
                let pow: BigInt = Pow::pow(&n, letter.exp.unsigned_abs());
                let ratio = if letter.exp >= 0 {
                    BigRational::new(BigInt::one(), pow)
                } else {
                    BigRational::from_integer(pow)
                };
                (ratio, BigRational::zero())
            }
        };
        // [[x, y],[0,1]] * [[lx, ly],[0,1]] = [[x*lx, x*ly + y],[0,1]]
        y = &x * &ly + &y;
        x = &x * &lx;
    }
    (y, v)
}

pub fn rational_of(x: &Localized) -> BigRational {
    BigRational::new(x.numerator().clone(), x.denominator().clone())
}

pub fn assert_matches_rep(spec: &GroupSpec, word: &Word, value: &Element) {
    let (q, v) = matrix_rep_evaluate(spec, word);
    assert_eq!(rational_of(value.q()), q, "A-coordinate differs for `{word}`");
    assert_eq!(value.height(), v.as_slice(), "height differs for `{word}`");
}

/// Determinant by recursive cofactor (Laplace) expansion.
pub fn cofactor_det(rows: &[Vec<BigInt>]) -> BigInt {
    let k = rows.len();
    if k == 1 {
        return rows[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for j in 0..k {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = &rows[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == r {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, r, current, out);
            current.pop();
        }
    }
    rec(0, n, r, &mut current, &mut out);
    out
}

/// Invariant factors by the determinantal-divisor formula: D_i is the gcd
/// of all i x i minors (computed by cofactor expansion) and
/// d_i = D_i / D_{i-1}; once some D_i vanishes all later factors are zero.
pub fn minor_gcd_invariant_factors(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let k = rows.len();
    let mut out = Vec::with_capacity(k);
    let mut prev = BigInt::one();
    for size in 1..=k {
        let mut g = BigInt::zero();
        for row_set in combinations(k, size) {
            for col_set in combinations(k, size) {
                let minor: Vec<Vec<BigInt>> = row_set
                    .iter()
                    .map(|&r| col_set.iter().map(|&c| rows[r][c].clone()).collect())
                    .collect();
                g = g.gcd(&cofactor_det(&minor));
            }
        }
        if g.is_zero() {
            while out.len() < k {
                out.push(BigInt::zero());
            }
            return out;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// A nonzero integer vector in the kernel of the matrix, found by rational
/// Gaussian elimination; `None` when the matrix has full rank. The result
/// is re-verified against the matrix with integer arithmetic before being
/// returned.
pub fn integer_kernel_vector(rows: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    let k = rows.len();
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|e| BigRational::from_integer(e.clone())).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..k).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let pivot = a[row][col].clone();
        for c in col..k {
            a[row][c] = &a[row][c] / &pivot;
        }
        for r in 0..k {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..k {
                    a[r][c] = &a[r][c] - &(&f * &a[row][c]);
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if row == k {
        return None;
    }
    let free = (0..k).find(|c| !pivot_cols.contains(c)).expect("free column");
    let mut x = vec![BigRational::zero(); k];
    x[free] = BigRational::one();
    for (r, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = -a[r][free].clone();
    }
    let lcm = x
        .iter()
        .fold(BigInt::one(), |acc, xi| acc.lcm(xi.denom()));
    let v: Vec<BigInt> = x
        .iter()
        .map(|xi| xi.numer() * (&lcm / xi.denom()))
        .collect();
    assert!(v.iter().any(|c| !c.is_zero()), "kernel vector is zero");
    for r in rows {
        let s: BigInt = r.iter().zip(&v).map(|(m, vi)| m * vi).sum();
        assert!(s.is_zero(), "kernel oracle produced a non-kernel vector");
    }
    Some(v)
}

/// Quadratic-time class count: the orbit of each α is produced by applying
/// σ · α for every single σ in the model, with no generator closure and no
/// union-find.
pub fn brute_force_class_count(model: &FiniteModel, fe: &FiniteEndo) -> usize {
    let order = model.order() as usize;
    let mut seen = vec![false; order];
    let mut count = 0;
    for idx in 0..order {
        if seen[idx] {
            continue;
        }
        count += 1;
        let alpha = model.element_at(idx);
        for sigma_idx in 0..order {
            let sigma = model.element_at(sigma_idx);
            let moved = model.twisted_act(fe, &sigma, &alpha);
            seen[model.index(&moved)] = true;
        }
    }
    count
}

pub fn multiplicative_order(n: u64, m: u64) -> u64 {
    assert!(m > 1);
    let mut acc = n % m;
    let mut ord = 1;
    while acc != 1 {
        acc = (acc * (n % m)) % m;
        ord += 1;
        assert!(ord <= m, "n is not invertible mod m");
    }
    ord
}

pub fn random_localized(spec: &GroupSpec, rng: &mut StdRng) -> Localized {
    let mut num = BigInt::from(rng.gen_range(-40i64..=40));
    let mut den = BigInt::one();
    for &p in spec.prime_factors() {
        let e: i32 = rng.gen_range(-2..=2);
        let power: BigInt = Pow::pow(&BigInt::from(p), e.unsigned_abs() as u64);
        if e >= 0 {
            num *= power;
        } else {
            den *= power;
        }
    }
    Localized::new(num, den, spec.prime_factors()).unwrap()
}

pub fn random_element(spec: &GroupSpec, rng: &mut StdRng) -> Element {
    let q = random_localized(spec, rng);
    let v = (0..spec.rank()).map(|_| rng.gen_range(-3..=3)).collect();
    Element::new(q, v)
}

/// A random unit of Z[1/N]: a signed product of powers of the primes of N.
pub fn random_unit(spec: &GroupSpec, rng: &mut StdRng) -> Localized {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for &p in spec.prime_factors() {
        let e: i32 = rng.gen_range(-3..=3);
        let power: BigInt = Pow::pow(&BigInt::from(p), e.unsigned_abs() as u64);
        if e >= 0 {
            num *= power;
        } else {
            den *= power;
        }
    }
    if rng.gen_bool(0.5) {
        num = -num;
    }
    Localized::new(num, den, spec.prime_factors()).unwrap()
}

pub fn random_word(spec: &GroupSpec, rng: &mut StdRng, max_len: usize) -> Word {
    use gamma::group::Letter;
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let gen = match rng.gen_range(0..=spec.rank()) {
                0 => Gen::A,
                i => Gen::T(i - 1),
            };
            let mut exp = 0;
            while exp == 0 {
                exp = rng.gen_range(-3..=3);
            }
            Letter { gen, exp }
        })
        .collect();
    Word { letters }
}
