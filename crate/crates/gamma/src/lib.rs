//! Exact computation in the generalized solvable Baumslag–Solitar groups
//! Γ(S) = Z[1/N] ⋊ Z^k.
//!
//! For a set S = {n_1, ..., n_k} of pairwise coprime integers (each at
//! least 2, N their product), Γ(S) is the group presented by
//! ⟨a, t_1, ..., t_k | t_i t_j = t_j t_i, t_i^{-1} a t_i = a^{n_i}⟩; for
//! k = 1 this is the solvable Baumslag–Solitar group BS(1, n). The crate
//! provides
//!
//! - [`algebra`]: the localized ring Z[1/N] with exact fraction
//!   arithmetic, and integer matrices with Smith normal form and cokernel
//!   cardinalities;
//! - [`group`]: elements in the normal form a^q t^v, word parsing and
//!   evaluation, and the semidirect-product group law;
//! - [`morphism`]: endomorphisms from generator images, relator
//!   validation, the forced-height theorem, and automorphism candidacy
//!   with constructed inverses;
//! - [`twisted`]: the twisted conjugacy action σ · α = σ α φ(σ)^{-1},
//!   Reidemeister counts of the induced maps, and certificates that every
//!   valid automorphism has infinitely many twisted classes;
//! - [`finite_model`]: finite congruence quotients Z_m ⋊ Π Z_{d_i} with
//!   brute-force class enumeration, the independent oracle everything else
//!   is cross-checked against;
//! - [`cli`]: the `gamma` command-line tool over all of the above.
//!
//! The `examples/` directory has one runnable program per capability; start
//! with `cargo run --example word_arithmetic`.

pub mod algebra;
pub mod cli;
pub mod finite_model;
pub mod group;
pub mod morphism;
pub mod twisted;

pub use algebra::{AlgebraError, Cardinal, IntMatrix, Localized, SmithForm};
pub use finite_model::{ClassDecomposition, FElem, FiniteEndo, FiniteModel, ModelError};
pub use group::{Element, GroupSpec, ParseError, SpecError, Word};
pub use morphism::{
    forced_heights, CandidateReport, Endomorphism, ForcedResult, HeightVerdict, MorphismError,
    ValidationReport,
};
pub use twisted::{
    certify_r_infinite, fix_action_image, fix_action_preimage, reidemeister_abelian,
    reidemeister_on_a, twisted_act, RinfCertificate, TwistedClassInvariant, TwistedError,
};
