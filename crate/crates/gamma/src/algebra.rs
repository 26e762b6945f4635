//! Exact arithmetic in the localized ring Z[1/N] and integer matrix normal
//! forms.
//!
//! [`Localized`] is a reduced fraction num/den whose denominator is only
//! divisible by primes of a fixed modulus N; which primes are allowed is
//! decided at construction time against a prime list, after which the ring
//! operations preserve membership on their own.
//!
//! [`IntMatrix`] is a small dense square integer matrix with a
//! fraction-free determinant and a Smith normal form
//! ([`IntMatrix::smith`]): a diagonal d_1 | d_2 | ... | d_k obtained by
//! unimodular row and column operations. The product of the nonzero
//! invariant factors is the cardinality of the cokernel Z^k / M Z^k, which
//! is the quantity behind abelian Reidemeister counts.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("{value} lies outside Z[1/N]: denominator factor {factor} is coprime to N")]
    NotInRing { value: String, factor: BigInt },
    #[error("{value} is not a unit of Z[1/N]")]
    NotAUnit { value: String },
    #[error("malformed fraction `{0}`")]
    BadFraction(String),
    #[error("matrix must be square and nonempty")]
    BadShape,
}

/// An element of Z[1/N]: a fraction in lowest terms with positive
/// denominator whose prime factors all divide N.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Localized {
    num: BigInt,
    den: BigInt,
}

impl Localized {
    /// Reduces num/den and checks the denominator against the prime list
    /// of N. Fails with `NotInRing` if a factor coprime to N remains.
    pub fn new(
        num: impl Into<BigInt>,
        den: impl Into<BigInt>,
        primes: &[u64],
    ) -> Result<Self, AlgebraError> {
        let den = den.into();
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        let x = Self::reduced(num.into(), den);
        let rest = strip_prime_factors(&x.den, primes);
        if rest.is_one() {
            Ok(x)
        } else {
            Err(AlgebraError::NotInRing {
                value: x.to_string(),
                factor: rest,
            })
        }
    }

    /// Lowest-terms normal form with positive denominator. Callers must
    /// guarantee ring membership themselves; the public path is [`new`].
    ///
    /// [`new`]: Localized::new
    pub(crate) fn reduced(num: BigInt, den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self {
                num,
                den: BigInt::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num / &g;
        let mut den = den / g;
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Self { num, den }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// Parses `"num"` or `"num/den"`; the result is ring-checked.
    pub fn parse(text: &str, primes: &[u64]) -> Result<Self, AlgebraError> {
        let bad = || AlgebraError::BadFraction(text.to_string());
        let (num_text, den_text) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text, "1"),
        };
        let num: BigInt = num_text.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den_text.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Self::new(num, den, primes)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::reduced(
            &self.num * &other.den + &other.num * &self.den,
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    /// True iff the element is invertible in Z[1/N]: nonzero and the
    /// numerator factors entirely over the primes of N.
    pub fn is_unit(&self, primes: &[u64]) -> bool {
        !self.num.is_zero() && strip_prime_factors(&self.num, primes).is_one()
    }

    /// Multiplicative inverse, defined exactly for units.
    pub fn inv(&self, primes: &[u64]) -> Result<Self, AlgebraError> {
        if !self.is_unit(primes) {
            return Err(AlgebraError::NotAUnit {
                value: self.to_string(),
            });
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    /// 1 + x + x^2 + ... + x^{terms-1}, computed integer-exactly as
    /// (a^t - b^t) / ((a - b) b^{t-1}) for x = a/b, so no intermediate
    /// value leaves the ring.
    pub fn geometric_sum(x: &Self, terms: u64) -> Self {
        if terms == 0 {
            return Self::zero();
        }
        if x.num == x.den {
            return Self::from_integer(terms);
        }
        let a_t: BigInt = Pow::pow(&x.num, terms);
        let b_t: BigInt = Pow::pow(&x.den, terms);
        let b_t1: BigInt = Pow::pow(&x.den, terms - 1);
        Self::reduced(a_t - b_t, (&x.num - &x.den) * b_t1)
    }

    /// The residue of this fraction in Z/mZ, when the denominator is
    /// invertible mod m.
    pub fn residue(&self, m: u64) -> Option<u64> {
        if m == 0 {
            return None;
        }
        if m == 1 {
            return Some(0);
        }
        let modulus = BigInt::from(m);
        let num = self.num.mod_floor(&modulus).to_u64()?;
        let den = self.den.mod_floor(&modulus).to_u64()?;
        let den_inv = inv_mod_u64(den, m)?;
        Some(mul_mod_u64(num, den_inv, m))
    }
}

impl fmt::Display for Localized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Localized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Localized {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Divides out every listed prime from |x| and returns what is left.
pub(crate) fn strip_prime_factors(x: &BigInt, primes: &[u64]) -> BigInt {
    let mut rest = x.abs();
    for &p in primes {
        let p = BigInt::from(p);
        while !rest.is_zero() && (&rest % &p).is_zero() {
            rest /= &p;
        }
    }
    rest
}

pub(crate) fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some((t.rem_euclid(m as i128)) as u64)
}

pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Either a finite (exact, arbitrary-precision) cardinality or infinity.
/// Infinity is its own value, never approximated by a large integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cardinal {
    Finite(BigInt),
    Infinite,
}

impl Cardinal {
    pub fn finite(n: impl Into<BigInt>) -> Self {
        Cardinal::Finite(n.into())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Cardinal::Infinite)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Dense square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    k: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, AlgebraError> {
        let k = rows.len();
        if k == 0 || rows.iter().any(|r| r.len() != k) {
            return Err(AlgebraError::BadShape);
        }
        Ok(Self {
            k,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, AlgebraError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
                .collect(),
        )
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zero(k);
        for i in 0..k {
            m.entries[i * k + i] = BigInt::one();
        }
        m
    }

    pub fn zero(k: usize) -> Self {
        assert!(k > 0, "matrix dimension must be positive");
        Self {
            k,
            entries: vec![BigInt::zero(); k * k],
        }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.k + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.entries[i * self.k + j] = value.into();
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.k)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k);
        Self {
            k: self.k,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k);
        let k = self.k;
        let mut out = Self::zero(k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = BigInt::zero();
                for l in 0..k {
                    acc += self.entry(i, l) * other.entry(l, j);
                }
                out.entries[i * k + j] = acc;
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination; keeps the sign.
    pub fn det(&self) -> BigInt {
        let k = self.k;
        let mut a = self.entries.clone();
        let idx = |i: usize, j: usize| i * k + j;
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for t in 0..k.saturating_sub(1) {
            if a[idx(t, t)].is_zero() {
                let Some(swap) = (t + 1..k).find(|&i| !a[idx(i, t)].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..k {
                    a.swap(idx(t, j), idx(swap, j));
                }
                sign = -sign;
            }
            for i in t + 1..k {
                for j in t + 1..k {
                    let val = (&a[idx(t, t)] * &a[idx(i, j)] - &a[idx(i, t)] * &a[idx(t, j)])
                        / &prev;
                    a[idx(i, j)] = val;
                }
                a[idx(i, t)] = BigInt::zero();
            }
            prev = a[idx(t, t)].clone();
        }
        let d = a[idx(k - 1, k - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Smith normal form via exact pivoting on the smallest nonzero entry.
    /// Invariant factors are reported non-negative; the sign of the
    /// determinant is available from [`det`](IntMatrix::det).
    pub fn smith(&self) -> SmithForm {
        let k = self.k;
        let mut a = self.entries.clone();
        let idx = |i: usize, j: usize| i * k + j;
        for t in 0..k {
            loop {
                // Smallest-|entry| pivot in the trailing submatrix keeps
                // coefficient growth in check.
                let mut pivot: Option<(usize, usize)> = None;
                for i in t..k {
                    for j in t..k {
                        if a[idx(i, j)].is_zero() {
                            continue;
                        }
                        match pivot {
                            None => pivot = Some((i, j)),
                            Some((pi, pj)) => {
                                if a[idx(i, j)].abs() < a[idx(pi, pj)].abs() {
                                    pivot = Some((i, j));
                                }
                            }
                        }
                    }
                }
                let Some((pi, pj)) = pivot else { break };
                if pi != t {
                    for j in 0..k {
                        a.swap(idx(t, j), idx(pi, j));
                    }
                }
                if pj != t {
                    for i in 0..k {
                        a.swap(idx(i, t), idx(i, pj));
                    }
                }
                let mut dirty = false;
                for i in t + 1..k {
                    if a[idx(i, t)].is_zero() {
                        continue;
                    }
                    let q = &a[idx(i, t)] / &a[idx(t, t)];
                    if !q.is_zero() {
                        for j in t..k {
                            let delta = &q * &a[idx(t, j)];
                            a[idx(i, j)] -= delta;
                        }
                    }
                    if !a[idx(i, t)].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..k {
                    if a[idx(t, j)].is_zero() {
                        continue;
                    }
                    let q = &a[idx(t, j)] / &a[idx(t, t)];
                    if !q.is_zero() {
                        for i in t..k {
                            let delta = &q * &a[idx(i, t)];
                            a[idx(i, j)] -= delta;
                        }
                    }
                    if !a[idx(t, j)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // Row and column t are clear; force the pivot to divide the
                // rest of the submatrix before moving on.
                let mut fixed = false;
                'scan: for i in t + 1..k {
                    for j in t + 1..k {
                        if !(&a[idx(i, j)] % &a[idx(t, t)]).is_zero() {
                            for c in t..k {
                                let add = a[idx(i, c)].clone();
                                a[idx(t, c)] += add;
                            }
                            fixed = true;
                            break 'scan;
                        }
                    }
                }
                if !fixed {
                    break;
                }
            }
            if a[idx(t, t)].is_zero() {
                break;
            }
        }
        let diag: Vec<BigInt> = (0..k).map(|t| a[idx(t, t)].abs()).collect();
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        SmithForm { diag, rank }
    }

    /// Cardinality of Z^k / M Z^k: the product of the invariant factors
    /// when M is nonsingular, infinite otherwise.
    pub fn coker_cardinality(&self) -> Cardinal {
        let snf = self.smith();
        if snf.rank < self.k {
            return Cardinal::Infinite;
        }
        Cardinal::Finite(snf.diag.iter().product())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.k {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.k {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Invariant factors d_1 | d_2 | ... | d_k of an integer matrix,
/// non-negative, zeros trailing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    diag: Vec<BigInt>,
    rank: usize,
}

impl SmithForm {
    pub fn diagonal(&self) -> &[BigInt] {
        &self.diag
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const PRIMES_6: &[u64] = &[2, 3]; // N = 6, S = {2, 3}
    const PRIMES_2: &[u64] = &[2];

    fn loc(num: i64, den: i64) -> Localized {
        Localized::new(num, den, PRIMES_6).unwrap()
    }

    #[test]
    fn normalize_reduces() {
        let x = loc(4, 6);
        assert_eq!(x.to_string(), "2/3");
    }

    #[test]
    fn normalize_identity_case() {
        let x = Localized::new(1, 1, PRIMES_2).unwrap();
        assert!(x.is_one());
    }

    #[test]
    fn normalize_rejects_foreign_denominator() {
        let err = Localized::new(3, 10, PRIMES_6).unwrap_err();
        match err {
            AlgebraError::NotInRing { factor, .. } => assert_eq!(factor, BigInt::from(5)),
            other => panic!("expected NotInRing, got {other:?}"),
        }
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        assert_eq!(
            Localized::new(1, 0, PRIMES_6),
            Err(AlgebraError::ZeroDenominator)
        );
    }

    #[test]
    fn normalize_fixes_sign() {
        assert_eq!(Localized::new(1, -2, PRIMES_6).unwrap().to_string(), "-1/2");
    }

    #[test]
    fn add_and_mul_examples() {
        let half = loc(1, 2);
        assert!(half.add(&half).is_one());
        assert_eq!(half.mul(&loc(2, 3)).to_string(), "1/3");
        assert_eq!(loc(-6, 1).add(&half).to_string(), "-11/2");
    }

    #[test]
    fn unit_examples() {
        assert!(Localized::one().is_unit(PRIMES_6));
        assert!(loc(1, 2).is_unit(PRIMES_6));
        assert!(!loc(5, 1).is_unit(PRIMES_6));
        assert!(!Localized::zero().is_unit(PRIMES_6));
    }

    #[test]
    fn inverse_of_unit() {
        let x = loc(-4, 3);
        let y = x.inv(PRIMES_6).unwrap();
        assert!(x.mul(&y).is_one());
        assert!(loc(5, 1).inv(PRIMES_6).is_err());
    }

    #[test]
    fn geometric_sum_matches_direct_sum() {
        let x = loc(-3, 2);
        let mut acc = Localized::zero();
        let mut pow = Localized::one();
        for _ in 0..7 {
            acc = acc.add(&pow);
            pow = pow.mul(&x);
        }
        assert_eq!(Localized::geometric_sum(&x, 7), acc);
        assert_eq!(Localized::geometric_sum(&Localized::one(), 5).to_string(), "5");
        assert!(Localized::geometric_sum(&x, 0).is_zero());
    }

    #[test]
    fn residue_inverts_denominator() {
        assert_eq!(loc(1, 2).residue(5), Some(3));
        assert_eq!(loc(7, 1).residue(5), Some(2));
        assert_eq!(loc(-1, 1).residue(5), Some(4));
        // 1/2 has no residue mod 4
        assert_eq!(loc(1, 2).residue(4), None);
        assert_eq!(loc(1, 2).residue(1), Some(0));
    }

    #[test]
    fn parse_round_trips() {
        for text in ["0", "1", "-11/2", "2/3"] {
            let x = Localized::parse(text, PRIMES_6).unwrap();
            assert_eq!(x.to_string(), text);
        }
        assert!(Localized::parse("a/2", PRIMES_6).is_err());
        assert!(Localized::parse("1/0", PRIMES_6).is_err());
        assert_eq!(
            Localized::parse("2/4", PRIMES_6).unwrap().to_string(),
            "1/2"
        );
    }

    #[test]
    fn smith_examples() {
        let m = IntMatrix::from_i64_rows(&[vec![1]]).unwrap();
        assert_eq!(m.smith().diagonal(), &[BigInt::from(1)]);

        let m = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        let snf = m.smith();
        assert_eq!(snf.diagonal(), &[BigInt::from(1), BigInt::from(6)]);
        assert_eq!(snf.rank(), 2);

        let m = IntMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        let snf = m.smith();
        assert_eq!(snf.diagonal(), &[BigInt::from(1), BigInt::from(0)]);
        assert_eq!(snf.rank(), 1);
    }

    #[test]
    fn smith_divisibility_chain() {
        let m = IntMatrix::from_i64_rows(&[vec![6, 0], vec![0, 4]]).unwrap();
        assert_eq!(m.smith().diagonal(), &[BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn coker_examples() {
        let zero = IntMatrix::zero(2);
        assert_eq!(zero.coker_cardinality(), Cardinal::Infinite);

        let m = IntMatrix::from_i64_rows(&[vec![-1]]).unwrap();
        assert_eq!(m.coker_cardinality(), Cardinal::finite(1));

        let m = IntMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.coker_cardinality(), Cardinal::Infinite);
    }

    #[test]
    fn det_keeps_sign() {
        let m = IntMatrix::from_i64_rows(&[vec![-1]]).unwrap();
        assert_eq!(m.det(), BigInt::from(-1));
        let m = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.det(), BigInt::from(-1));
        let m = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(m.det(), BigInt::from(6));
        let m = IntMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(m.det().is_zero());
    }

    #[test]
    fn bad_shapes_rejected() {
        assert!(IntMatrix::from_i64_rows(&[]).is_err());
        assert!(IntMatrix::from_i64_rows(&[vec![1, 2]]).is_err());
    }

    /// Independent oracle: determinant by recursive cofactor expansion.
    fn cofactor_det(rows: &[Vec<i64>]) -> i64 {
        let k = rows.len();
        if k == 1 {
            return rows[0][0];
        }
        let mut acc = 0i64;
        for j in 0..k {
            if rows[0][j] == 0 {
                continue;
            }
            let minor: Vec<Vec<i64>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &e)| e)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            acc += sign * rows[0][j] * cofactor_det(&minor);
        }
        acc
    }

    fn unimodular_strategy(k: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        // Product of a few elementary row operations on the identity.
        proptest::collection::vec((0..k, 0..k, -2i64..=2), 0..6).prop_map(move |ops| {
            let mut m = vec![vec![0i64; k]; k];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 1;
            }
            for (i, j, c) in ops {
                if i != j {
                    let source = m[j].clone();
                    for (entry, s) in m[i].iter_mut().zip(&source) {
                        *entry += c * s;
                    }
                }
            }
            m
        })
    }

    fn matrix_strategy(k: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, k), k)
    }

    proptest! {
        #[test]
        fn add_neg_is_zero(num in -200i64..=200, a in 0u32..5, b in 0u32..5) {
            let den = 2i64.pow(a) * 3i64.pow(b);
            let x = Localized::new(num, den, PRIMES_6).unwrap();
            prop_assert!(x.add(&x.neg()).is_zero());
        }

        #[test]
        fn normalization_is_idempotent(num in -200i64..=200, a in 0u32..5, b in 0u32..5) {
            let den = 2i64.pow(a) * 3i64.pow(b);
            let x = Localized::new(num, den, PRIMES_6).unwrap();
            let y = Localized::new(x.numerator().clone(), x.denominator().clone(), PRIMES_6).unwrap();
            prop_assert_eq!(x, y);
        }

        #[test]
        fn units_closed_under_mul(a in -3i32..=3, b in -3i32..=3, c in -3i32..=3, d in -3i32..=3, s in prop::bool::ANY, t in prop::bool::ANY) {
            let mk = |e2: i32, e3: i32, neg: bool| {
                let mut num = BigInt::one();
                let mut den = BigInt::one();
                for (base, e) in [(2i64, e2), (3, e3)] {
                    let p: BigInt = Pow::pow(&BigInt::from(base), e.unsigned_abs() as u64);
                    if e >= 0 { num *= p } else { den *= p }
                }
                if neg { num = -num; }
                Localized::new(num, den, PRIMES_6).unwrap()
            };
            let x = mk(a, b, s);
            let y = mk(c, d, t);
            prop_assert!(x.is_unit(PRIMES_6));
            prop_assert!(y.is_unit(PRIMES_6));
            prop_assert!(x.mul(&y).is_unit(PRIMES_6));
        }

        #[test]
        fn coker_matches_cofactor_det(rows in matrix_strategy(3)) {
            let det = cofactor_det(&rows);
            let m = IntMatrix::from_i64_rows(&rows).unwrap();
            prop_assert_eq!(m.det(), BigInt::from(det));
            let expected = if det == 0 {
                Cardinal::Infinite
            } else {
                Cardinal::finite(det.abs())
            };
            prop_assert_eq!(m.coker_cardinality(), expected);
        }

        #[test]
        fn smith_is_unimodular_invariant(rows in matrix_strategy(3), u in unimodular_strategy(3), v in unimodular_strategy(3)) {
            let m = IntMatrix::from_i64_rows(&rows).unwrap();
            let u = IntMatrix::from_i64_rows(&u).unwrap();
            let v = IntMatrix::from_i64_rows(&v).unwrap();
            prop_assert_eq!(u.det().abs(), BigInt::one());
            prop_assert_eq!(v.det().abs(), BigInt::one());
            let conjugated = u.mul(&m).mul(&v);
            prop_assert_eq!(m.smith(), conjugated.smith());
        }
    }
}
