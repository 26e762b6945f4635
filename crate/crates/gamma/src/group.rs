//! Elements of Γ(S) = Z[1/N] ⋊ Z^k in normal form, word parsing, and the
//! group law.
//!
//! Γ(S) is presented by generators a, t_1, ..., t_k with the relations
//! t_i t_j = t_j t_i and t_i^{-1} a t_i = a^{n_i}, for a set
//! S = {n_1, ..., n_k} of pairwise coprime integers, each at least 2.
//! Every element has the unique normal form a^q t^v with q in Z[1/N]
//! (N = n_1 ... n_k) and v in Z^k, stored as the pair (q, v). In these
//! coordinates the law reads
//!
//! ```text
//! (q1, v1) (q2, v2) = (q1 + q2 * n^{-v1}, v1 + v2),   n^v = prod n_i^{v_i}
//! ```
//!
//! which is forced by the conjugation relators. The height map
//! [`Element::height`] sends (q, v) to v; it is the homomorphism onto Z^k
//! whose kernel is the copy of Z[1/N] spanned by a and its roots.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgebraError, Localized};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("the exponent set S must not be empty")]
    Empty,
    #[error("exponent n_{index} = {value} is below 2")]
    ExponentTooSmall { index: usize, value: u32 },
    #[error("exponents n_{i} and n_{j} share the factor {gcd}")]
    NotCoprime { i: usize, j: usize, gcd: u32 },
}

/// Parse failure for the textual word format, with the byte offset of the
/// offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// The defining data of Γ(S): the pairwise coprime exponents n_1, ..., n_k,
/// their product N, and the primes dividing N (cached once, since ring
/// membership checks reduce to divisibility by these primes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    exponents: Vec<u32>,
    modulus: BigInt,
    primes: Vec<u64>,
}

impl GroupSpec {
    pub fn new(exponents: Vec<u32>) -> Result<Self, SpecError> {
        if exponents.is_empty() {
            return Err(SpecError::Empty);
        }
        for (index, &value) in exponents.iter().enumerate() {
            if value < 2 {
                return Err(SpecError::ExponentTooSmall { index: index + 1, value });
            }
        }
        for i in 0..exponents.len() {
            for j in i + 1..exponents.len() {
                let g = gcd_u32(exponents[i], exponents[j]);
                if g != 1 {
                    return Err(SpecError::NotCoprime {
                        i: i + 1,
                        j: j + 1,
                        gcd: g,
                    });
                }
            }
        }
        let modulus: BigInt = exponents.iter().map(|&n| BigInt::from(n)).product();
        let mut primes: Vec<u64> = exponents
            .iter()
            .flat_map(|&n| prime_factors_u64(n as u64))
            .collect();
        primes.sort_unstable();
        primes.dedup();
        Ok(Self {
            exponents,
            modulus,
            primes,
        })
    }

    /// The rank k: the number of commuting stable letters t_i.
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exponents[i]
    }

    /// N, the product of all exponents.
    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn prime_factors(&self) -> &[u64] {
        &self.primes
    }

    /// Builds num/den as a checked element of Z[1/N].
    pub fn localize(
        &self,
        num: impl Into<BigInt>,
        den: impl Into<BigInt>,
    ) -> Result<Localized, AlgebraError> {
        Localized::new(num, den, &self.primes)
    }

    pub fn is_unit(&self, x: &Localized) -> bool {
        x.is_unit(&self.primes)
    }

    /// n^v = prod_i n_i^{v_i} as an element of Z[1/N].
    pub fn scale(&self, v: &[i64]) -> Localized {
        assert_eq!(v.len(), self.rank(), "height vector has wrong length");
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (&n, &e) in self.exponents.iter().zip(v) {
            if e == 0 {
                continue;
            }
            let p: BigInt = Pow::pow(&BigInt::from(n), e.unsigned_abs());
            if e > 0 {
                num *= p;
            } else {
                den *= p;
            }
        }
        Localized::reduced(num, den)
    }

    pub fn identity(&self) -> Element {
        Element {
            q: Localized::zero(),
            v: vec![0; self.rank()],
        }
    }

    /// The generator a = (1, 0).
    pub fn gen_a(&self) -> Element {
        Element {
            q: Localized::one(),
            v: vec![0; self.rank()],
        }
    }

    /// The generator t_{i+1} = (0, e_i); `i` is zero-based.
    pub fn gen_t(&self, i: usize) -> Element {
        assert!(i < self.rank(), "generator index out of range");
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        Element {
            q: Localized::zero(),
            v,
        }
    }

    /// The group law (q1, v1)(q2, v2) = (q1 + q2 n^{-v1}, v1 + v2).
    pub fn mul(&self, g: &Element, h: &Element) -> Element {
        assert_eq!(g.v.len(), self.rank());
        assert_eq!(h.v.len(), self.rank());
        let shift: Vec<i64> = g.v.iter().map(|&e| -e).collect();
        let q = g.q.add(&h.q.mul(&self.scale(&shift)));
        let v = g.v.iter().zip(&h.v).map(|(a, b)| a + b).collect();
        Element { q, v }
    }

    /// (q, v)^{-1} = (-q n^{v}, -v).
    pub fn inverse(&self, g: &Element) -> Element {
        let q = g.q.neg().mul(&self.scale(&g.v));
        let v = g.v.iter().map(|&e| -e).collect();
        Element { q, v }
    }

    /// g^e in closed form: the A-coordinate is a geometric sum, so powers
    /// cost O(1) ring operations rather than |e| multiplications.
    pub fn pow(&self, g: &Element, e: i64) -> Element {
        if e == 0 {
            return self.identity();
        }
        if e < 0 {
            let e = e.checked_neg().expect("exponent overflow");
            return self.inverse(&self.pow(g, e));
        }
        let shift: Vec<i64> = g.v.iter().map(|&c| -c).collect();
        let x = self.scale(&shift);
        let q = g.q.mul(&Localized::geometric_sum(&x, e as u64));
        let v = g.v.iter().map(|&c| c * e).collect();
        Element { q, v }
    }

    /// by^{-1} g by.
    pub fn conjugate(&self, g: &Element, by: &Element) -> Element {
        self.mul(&self.inverse(by), &self.mul(g, by))
    }

    /// Evaluates a word to its normal form. Concatenation of words maps to
    /// multiplication of their values.
    pub fn evaluate(&self, word: &Word) -> Element {
        let mut acc = self.identity();
        for letter in &word.letters {
            let value = match letter.gen {
                Gen::A => Element {
                    q: Localized::from_integer(letter.exp),
                    v: vec![0; self.rank()],
                },
                Gen::T(i) => {
                    let mut v = vec![0; self.rank()];
                    v[i] = letter.exp;
                    Element {
                        q: Localized::zero(),
                        v,
                    }
                }
            };
            acc = self.mul(&acc, &value);
        }
        acc
    }

    /// Tokenizes a whitespace-separated word over `a`, `t1`, ..., `tk`,
    /// each with an optional `^<integer>` exponent.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in text.split_whitespace() {
            let position = offset + text[offset..].find(token).expect("token from text");
            offset = position + token.len();
            let (base, exp) = match token.split_once('^') {
                None => (token, 1),
                Some((base, exp_text)) => {
                    let exp = exp_text.parse::<i64>().map_err(|_| ParseError {
                        position,
                        message: format!("bad exponent `{exp_text}`"),
                    })?;
                    (base, exp)
                }
            };
            let gen = if base == "a" {
                Gen::A
            } else if let Some(index_text) = base.strip_prefix('t') {
                let index: usize = index_text.parse().map_err(|_| ParseError {
                    position,
                    message: format!("unknown generator `{base}`"),
                })?;
                if index == 0 || index > self.rank() {
                    return Err(ParseError {
                        position,
                        message: format!(
                            "generator `{base}` out of range (rank is {})",
                            self.rank()
                        ),
                    });
                }
                Gen::T(index - 1)
            } else {
                return Err(ParseError {
                    position,
                    message: format!("unknown generator `{base}`"),
                });
            };
            if exp != 0 {
                letters.push(Letter { gen, exp });
            }
        }
        Ok(Word { letters })
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A group element in normal form a^q t^v. Equality is coordinate-wise,
/// which decides the word problem.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    q: Localized,
    v: Vec<i64>,
}

impl Element {
    /// Assembles an element from coordinates. The Localized value must come
    /// from the same spec's ring; the type system enforces reducedness but
    /// not which N it belongs to.
    pub fn new(q: Localized, v: Vec<i64>) -> Self {
        Self { q, v }
    }

    pub fn q(&self) -> &Localized {
        &self.q
    }

    /// The height vector π(g) = v: exponent sums of each t_i.
    pub fn height(&self) -> &[i64] {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.q.is_zero() && self.v.iter().all(|&e| e == 0)
    }

    /// True iff the element lies in the kernel A of the height map.
    pub fn in_kernel(&self) -> bool {
        self.v.iter().all(|&e| e == 0)
    }

    /// Renders the normal form back as a parseable word, when the
    /// A-coordinate is integral (a^q t1^{v1} ... tk^{vk}).
    pub fn to_word_string(&self) -> Option<String> {
        if !self.q.is_integer() {
            return None;
        }
        let mut parts = Vec::new();
        let n = self.q.numerator();
        if !n.is_zero() {
            if n.is_one() {
                parts.push("a".to_string());
            } else {
                parts.push(format!("a^{n}"));
            }
        }
        for (i, &e) in self.v.iter().enumerate() {
            if e == 1 {
                parts.push(format!("t{}", i + 1));
            } else if e != 0 {
                parts.push(format!("t{}^{e}", i + 1));
            }
        }
        Some(parts.join(" "))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.q, self.v)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q = {}, v = {:?})", self.q, self.v)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Element", 2)?;
        s.serialize_field("q", &self.q.to_string())?;
        s.serialize_field("v", &self.v)?;
        s.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    A,
    /// Stable letter t_{i+1}; the index is zero-based.
    T(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub gen: Gen,
    pub exp: i64,
}

/// A word in the generators: a sequence of letters with nonzero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().copied());
        Word { letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for letter in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            match letter.gen {
                Gen::A => write!(f, "a")?,
                Gen::T(i) => write!(f, "t{}", i + 1)?,
            }
            if letter.exp != 1 {
                write!(f, "^{}", letter.exp)?;
            }
        }
        Ok(())
    }
}
