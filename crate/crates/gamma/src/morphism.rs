//! Endomorphisms of Γ(S) given by generator images, relator-based
//! validation, and the data they induce on the kernel and the quotient.
//!
//! An endomorphism is recorded by a scalar r with φ(a) = a^r (the image of
//! a must lie in the kernel A, which is characteristic) and by images
//! φ(t_i) = a^{q_i} t^{w_i}. [`Endomorphism::validate`] evaluates every
//! defining relator on the images; nothing else is trusted until that
//! passes. For a validated map, the restriction to A is multiplication by
//! r and the induced map on Z^k is the integer matrix with rows w_i.
//!
//! The computational heart is [`forced_heights`]: for r ≠ 0 the
//! conjugation relators force n^{w_i} = n_i, and for pairwise coprime
//! exponents that equation has the single solution w_i = e_i. Every valid
//! endomorphism that does not kill A therefore induces the identity on
//! Z^k, which is what makes the twisted-class certificates of
//! [`crate::twisted`] possible.

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgebraError, IntMatrix, Localized};
use crate::group::{Element, Gen, GroupSpec, ParseError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("endomorphism has not passed relator validation")]
    Unvalidated,
    #[error("the scalar r must be nonzero for this operation")]
    ZeroScalar,
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("height vector for t{index} has wrong length")]
    WrongHeightLength { index: usize },
    #[error("the image of a must lie in the kernel of the height map, got height {0:?}")]
    ImageNotInKernel(Vec<i64>),
    #[error(transparent)]
    Ring(#[from] AlgebraError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("malformed endomorphism data: {0}")]
    Format(String),
}

/// Wire format: `{"r": "1/2", "images": [{"q": "3", "w": [1, 0]}, ...]}`.
#[derive(Serialize, Deserialize)]
struct EndoDto {
    r: String,
    images: Vec<ImageDto>,
}

#[derive(Serialize, Deserialize)]
struct ImageDto {
    q: String,
    w: Vec<i64>,
}

/// An endomorphism of Γ(S), unvalidated until [`validate`] has seen every
/// relator hold on the generator images.
///
/// [`validate`]: Endomorphism::validate
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    spec: GroupSpec,
    scalar: Localized,
    images: Vec<Element>,
    validated: bool,
}

impl Endomorphism {
    /// Records φ(a) = a^r and φ(t_i) = a^{q_i} t^{w_i} without validating.
    pub fn new(
        spec: GroupSpec,
        scalar: Localized,
        images: Vec<(Localized, Vec<i64>)>,
    ) -> Result<Self, MorphismError> {
        let k = spec.rank();
        if images.len() != k {
            return Err(MorphismError::WrongImageCount {
                expected: k,
                got: images.len(),
            });
        }
        for (i, (_, w)) in images.iter().enumerate() {
            if w.len() != k {
                return Err(MorphismError::WrongHeightLength { index: i + 1 });
            }
        }
        Ok(Self {
            spec,
            scalar,
            images: images
                .into_iter()
                .map(|(q, w)| Element::new(q, w))
                .collect(),
            validated: false,
        })
    }

    /// The identity map, already validated.
    pub fn identity(spec: GroupSpec) -> Self {
        let images = (0..spec.rank())
            .map(|i| (Localized::zero(), spec.gen_t(i).height().to_vec()))
            .collect();
        let mut endo = Self::new(spec, Localized::one(), images).expect("identity images");
        let report = endo.validate();
        debug_assert!(report.all_passed());
        endo
    }

    /// The inner automorphism x ↦ g^{-1} x g, already validated.
    pub fn inner(spec: GroupSpec, g: &Element) -> Self {
        let scalar = spec.conjugate(&spec.gen_a(), g).q().clone();
        let images = (0..spec.rank())
            .map(|i| {
                let image = spec.conjugate(&spec.gen_t(i), g);
                (image.q().clone(), image.height().to_vec())
            })
            .collect();
        let mut endo = Self::new(spec, scalar, images).expect("inner images");
        let report = endo.validate();
        debug_assert!(report.all_passed());
        endo
    }

    /// Accepts arbitrary words for the generator images and normalizes them
    /// first. The word for a must evaluate into the kernel.
    pub fn from_words(
        spec: GroupSpec,
        a_word: &str,
        t_words: &[&str],
    ) -> Result<Self, MorphismError> {
        let image_a = spec.evaluate(&spec.parse_word(a_word)?);
        if !image_a.in_kernel() {
            return Err(MorphismError::ImageNotInKernel(image_a.height().to_vec()));
        }
        let mut images = Vec::with_capacity(t_words.len());
        for word in t_words {
            let image = spec.evaluate(&spec.parse_word(word)?);
            images.push((image.q().clone(), image.height().to_vec()));
        }
        Self::new(spec, image_a.q().clone(), images)
    }

    pub fn from_json(spec: &GroupSpec, text: &str) -> Result<Self, MorphismError> {
        let dto: EndoDto =
            serde_json::from_str(text).map_err(|e| MorphismError::Format(e.to_string()))?;
        let scalar = Localized::parse(&dto.r, spec.prime_factors())?;
        let mut images = Vec::with_capacity(dto.images.len());
        for image in dto.images {
            let q = Localized::parse(&image.q, spec.prime_factors())?;
            images.push((q, image.w));
        }
        Self::new(spec.clone(), scalar, images)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// The scalar r with φ(a) = a^r.
    pub fn scalar(&self) -> &Localized {
        &self.scalar
    }

    /// The image of a, as the kernel element (r, 0).
    pub fn image_a(&self) -> Element {
        Element::new(self.scalar.clone(), vec![0; self.spec.rank()])
    }

    /// The image of t_{i+1}; `i` is zero-based.
    pub fn image_t(&self, i: usize) -> &Element {
        &self.images[i]
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Evaluates every defining relator on the generator images and marks
    /// the endomorphism validated when all of them hold.
    pub fn validate(&mut self) -> ValidationReport {
        let spec = &self.spec;
        let mut checks = Vec::new();
        for i in 0..spec.rank() {
            for j in i + 1..spec.rank() {
                let lhs = spec.mul(&self.images[i], &self.images[j]);
                let rhs = spec.mul(&self.images[j], &self.images[i]);
                checks.push(RelatorCheck::new(
                    format!("t{0} t{1} = t{1} t{0}", i + 1, j + 1),
                    spec,
                    lhs,
                    rhs,
                ));
            }
        }
        let image_a = self.image_a();
        for i in 0..spec.rank() {
            let lhs = spec.conjugate(&image_a, &self.images[i]);
            let rhs = spec.pow(&image_a, spec.exponent(i) as i64);
            checks.push(RelatorCheck::new(
                format!("t{0}^-1 a t{0} = a^{1}", i + 1, spec.exponent(i)),
                spec,
                lhs,
                rhs,
            ));
        }
        let report = ValidationReport { checks };
        self.validated = report.all_passed();
        report
    }

    fn require_validated(&self) -> Result<(), MorphismError> {
        if self.validated {
            Ok(())
        } else {
            Err(MorphismError::Unvalidated)
        }
    }

    /// The induced matrix on the quotient Z^k, with rows w_i.
    pub fn induced_matrix(&self) -> Result<IntMatrix, MorphismError> {
        self.require_validated()?;
        let rows = self
            .images
            .iter()
            .map(|img| img.height().iter().map(|&e| BigInt::from(e)).collect())
            .collect();
        Ok(IntMatrix::from_rows(rows).expect("images are k vectors of length k"))
    }

    /// The restriction of φ to the kernel A = Z[1/N]: multiplication by r.
    pub fn restrict_to_a(&self) -> Result<Localized, MorphismError> {
        self.require_validated()?;
        Ok(self.scalar.clone())
    }

    /// Applies φ to an arbitrary element: φ(a^q t^v) = a^{rq} Π φ(t_i)^{v_i}.
    /// The factors commute once the relators hold, so the product order is
    /// immaterial.
    pub fn apply(&self, g: &Element) -> Result<Element, MorphismError> {
        self.require_validated()?;
        let spec = &self.spec;
        let mut acc = Element::new(self.scalar.mul(g.q()), vec![0; spec.rank()]);
        for (i, &e) in g.height().iter().enumerate() {
            if e != 0 {
                acc = spec.mul(&acc, &spec.pow(&self.images[i], e));
            }
        }
        Ok(acc)
    }

    /// self ∘ other: `other` is applied first. The composite of validated
    /// endomorphisms is again one, and is returned validated.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism, MorphismError> {
        self.require_validated()?;
        other.require_validated()?;
        let scalar = self.scalar.mul(&other.scalar);
        let mut images = Vec::with_capacity(self.spec.rank());
        for i in 0..self.spec.rank() {
            let image = self.apply(&other.images[i])?;
            images.push((image.q().clone(), image.height().to_vec()));
        }
        let mut endo = Endomorphism::new(self.spec.clone(), scalar, images)?;
        let report = endo.validate();
        debug_assert!(report.all_passed(), "composite of valid endomorphisms");
        Ok(endo)
    }

    /// Necessary conditions for φ to be an automorphism: r a unit of
    /// Z[1/N] and the induced matrix in GL_k(Z). For this family they are
    /// also sufficient, and the report carries the explicit inverse when
    /// both hold.
    pub fn is_automorphism_candidate(&self) -> Result<CandidateReport, MorphismError> {
        self.require_validated()?;
        let spec = &self.spec;
        let scalar_is_unit = spec.is_unit(&self.scalar);
        let matrix = self.induced_matrix()?;
        let matrix_unimodular = {
            let det = matrix.det();
            det == BigInt::from(1) || det == BigInt::from(-1)
        };
        let mut inverse = None;
        let mut inverse_verified = false;
        if scalar_is_unit && matrix_unimodular {
            // scalar unit and r != 0 force w_i = e_i, so the inverse sends
            // a to a^{1/r} and t_i to a^{-q_i/r} t_i.
            let r_inv = self.scalar.inv(spec.prime_factors())?;
            let images = self
                .images
                .iter()
                .map(|img| (img.q().neg().mul(&r_inv), img.height().to_vec()))
                .collect();
            let mut candidate = Endomorphism::new(spec.clone(), r_inv, images)?;
            let report = candidate.validate();
            if report.all_passed() {
                inverse_verified = identity_on_generators(&candidate.compose(self)?)
                    && identity_on_generators(&self.compose(&candidate)?);
                inverse = Some(candidate);
            }
        }
        Ok(CandidateReport {
            scalar_is_unit,
            matrix_unimodular,
            inverse,
            inverse_verified,
        })
    }

    /// Applies φ letter-by-letter to a word: each a^e becomes φ(a)^e and
    /// each t_i^e becomes φ(t_i)^e. Used to cross-check [`apply`] against
    /// the homomorphism property.
    ///
    /// [`apply`]: Endomorphism::apply
    pub fn apply_word(&self, word: &Word) -> Result<Element, MorphismError> {
        self.require_validated()?;
        let spec = &self.spec;
        let mut acc = spec.identity();
        for letter in &word.letters {
            let image = match letter.gen {
                Gen::A => self.image_a(),
                Gen::T(i) => self.images[i].clone(),
            };
            acc = spec.mul(&acc, &spec.pow(&image, letter.exp));
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("endomorphism serializes")
    }
}

impl Serialize for Endomorphism {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let dto = EndoDto {
            r: self.scalar.to_string(),
            images: self
                .images
                .iter()
                .map(|img| ImageDto {
                    q: img.q().to_string(),
                    w: img.height().to_vec(),
                })
                .collect(),
        };
        dto.serialize(serializer)
    }
}

fn identity_on_generators(endo: &Endomorphism) -> bool {
    let spec = endo.spec();
    endo.scalar().is_one()
        && (0..spec.rank()).all(|i| *endo.image_t(i) == spec.gen_t(i))
}

/// One relator evaluated on the generator images.
#[derive(Debug, Clone, Serialize)]
pub struct RelatorCheck {
    pub relator: String,
    pub passed: bool,
    pub lhs: Element,
    pub rhs: Element,
    /// lhs * rhs^{-1}; the identity exactly when the relator holds.
    pub discrepancy: Element,
}

impl RelatorCheck {
    fn new(relator: String, spec: &GroupSpec, lhs: Element, rhs: Element) -> Self {
        let discrepancy = spec.mul(&lhs, &spec.inverse(&rhs));
        Self {
            relator,
            passed: lhs == rhs,
            lhs,
            rhs,
            discrepancy,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<RelatorCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelatorCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Outcome of checking one candidate height vector w against the equation
/// n^w = n_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeightVerdict {
    /// n^w = n_i; for pairwise coprime exponents this pins w = e_i.
    Unique,
    /// n^w missed n_i; `achieved` is the value n^w actually takes.
    Rejected { achieved: Localized },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcedResult {
    pub verdicts: Vec<HeightVerdict>,
}

impl ForcedResult {
    pub fn all_unique(&self) -> bool {
        self.verdicts.iter().all(|v| matches!(v, HeightVerdict::Unique))
    }
}

/// Checks candidate heights w_i against the relator-forced equation
/// n^{w_i} = n_i (the form the conjugation relators take when r ≠ 0).
/// Candidate `i` is compared against n_{i+1}; fewer than k candidates may
/// be passed to query a prefix of the generators.
///
/// Uniqueness is a theorem for pairwise coprime exponents: picking any
/// prime p | n_j, the p-adic valuation of n^w is w_j val_p(n_j), so
/// n^w = n_i forces w_j = 0 for j ≠ i and w_i = 1. The function asserts
/// that whenever the equation holds the candidate is e_i.
pub fn forced_heights(
    spec: &GroupSpec,
    scalar: &Localized,
    candidates: &[Vec<i64>],
) -> Result<ForcedResult, MorphismError> {
    if scalar.is_zero() {
        return Err(MorphismError::ZeroScalar);
    }
    if candidates.len() > spec.rank() {
        return Err(MorphismError::WrongImageCount {
            expected: spec.rank(),
            got: candidates.len(),
        });
    }
    let mut verdicts = Vec::with_capacity(candidates.len());
    for (i, w) in candidates.iter().enumerate() {
        if w.len() != spec.rank() {
            return Err(MorphismError::WrongHeightLength { index: i + 1 });
        }
        let achieved = spec.scale(w);
        let target = Localized::from_integer(spec.exponent(i));
        if achieved == target {
            let unit: Vec<i64> = (0..spec.rank()).map(|j| i64::from(j == i)).collect();
            assert_eq!(
                *w, unit,
                "n^w = n_i admitted a solution other than e_i; this contradicts \
                 coprimality and indicates a bug"
            );
            verdicts.push(HeightVerdict::Unique);
        } else {
            verdicts.push(HeightVerdict::Rejected { achieved });
        }
    }
    Ok(ForcedResult { verdicts })
}

/// Verdict of the automorphism-candidacy check, with the constructed
/// inverse when both conditions hold.
#[derive(Debug, Clone)]
pub struct CandidateReport {
    pub scalar_is_unit: bool,
    pub matrix_unimodular: bool,
    pub inverse: Option<Endomorphism>,
    pub inverse_verified: bool,
}

impl CandidateReport {
    pub fn passed(&self) -> bool {
        self.scalar_is_unit && self.matrix_unimodular
    }
}

impl Serialize for CandidateReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CandidateReport", 5)?;
        s.serialize_field("scalar_is_unit", &self.scalar_is_unit)?;
        s.serialize_field("matrix_unimodular", &self.matrix_unimodular)?;
        s.serialize_field("passed", &self.passed())?;
        s.serialize_field("inverse", &self.inverse)?;
        s.serialize_field("inverse_verified", &self.inverse_verified)?;
        s.end()
    }
}
