//! Finite congruence quotients of Γ(S) and brute-force twisted-class
//! enumeration: the independent oracle that the exact machinery is checked
//! against.
//!
//! For a modulus m coprime to N and periods d_i with n_i^{d_i} ≡ 1 (mod m),
//! the group law of Γ(S) descends to the finite group
//! Z_m ⋊ (Z_{d_1} × ... × Z_{d_k}) of order m · Π d_i, because n^{-v} mod m
//! only depends on v mod d. Everything here is exhaustive: classes are
//! computed by closing the twisted action under generator moves with a
//! union-find, witnesses connecting each element to its class
//! representative are stored, and the structural facts about how classes
//! sit over the kernel and the quotient ([`FiniteModel::check_exact_sequence`],
//! [`FiniteModel::check_sum_formula`]) are verified by direct orbit counting
//! rather than by formula.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{inv_mod_u64, mul_mod_u64};
use crate::group::{Element, GroupSpec, SpecError};
use crate::morphism::Endomorphism;
use crate::twisted::RinfCertificate;

/// Hard cap on the order of a model; orbit enumeration touches every
/// element, so this bounds both memory and time.
pub const MAX_ORDER: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("modulus {m} is not positive and coprime to N")]
    BadModulus { m: u64 },
    #[error("period d_{index} = {d} fails n^d = 1 mod {m}")]
    BadPeriod { index: usize, d: u64, m: u64 },
    #[error("period vector has {got} entries, expected {expected}")]
    WrongPeriodCount { expected: usize, got: usize },
    #[error("model order {order} exceeds the enumeration cap {cap}")]
    TooLarge { order: u128, cap: u64 },
    #[error("model and endomorphism use different exponent sets")]
    SpecMismatch,
    #[error("endomorphism does not reduce mod the model: {0}")]
    NotReducible(String),
    #[error("certificate count {count} exceeds the height period {period}")]
    CountExceedsPeriod { count: usize, period: u64 },
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("malformed model data: {0}")]
    Format(String),
}

/// Wire format: `{"S": [2], "m": 5, "d": [4]}`.
#[derive(Serialize, Deserialize)]
struct ModelDto {
    #[serde(rename = "S")]
    s: Vec<u32>,
    m: u64,
    d: Vec<u64>,
}

/// An element (x, v) of Z_m ⋊ Π Z_{d_i}, with 0 ≤ x < m and 0 ≤ v_i < d_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FElem {
    pub x: u64,
    pub v: Vec<u64>,
}

/// The congruence quotient Z_m ⋊ (Z_{d_1} × ... × Z_{d_k}) of Γ(S).
#[derive(Debug, Clone)]
pub struct FiniteModel {
    spec: GroupSpec,
    m: u64,
    d: Vec<u64>,
    order: u64,
    /// pow_pos[i][j] = n_i^j mod m, pow_inv[i][j] = n_i^{-j} mod m.
    pow_pos: Vec<Vec<u64>>,
    pow_inv: Vec<Vec<u64>>,
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn pow_mod_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut base = base % m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

impl FiniteModel {
    pub fn new(spec: GroupSpec, m: u64, d: Vec<u64>) -> Result<Self, ModelError> {
        let k = spec.rank();
        if d.len() != k {
            return Err(ModelError::WrongPeriodCount {
                expected: k,
                got: d.len(),
            });
        }
        if m == 0 {
            return Err(ModelError::BadModulus { m });
        }
        for &n in spec.exponents() {
            if gcd_u64(n as u64, m) != 1 {
                return Err(ModelError::BadModulus { m });
            }
        }
        for (i, &di) in d.iter().enumerate() {
            let n = spec.exponent(i) as u64;
            if di == 0 || pow_mod_u64(n, di, m) != 1 % m {
                return Err(ModelError::BadPeriod {
                    index: i + 1,
                    d: di,
                    m,
                });
            }
        }
        let order_wide = d.iter().fold(m as u128, |acc, &di| acc * di as u128);
        if order_wide > MAX_ORDER as u128 {
            return Err(ModelError::TooLarge {
                order: order_wide,
                cap: MAX_ORDER,
            });
        }
        let order = order_wide as u64;
        let mut pow_pos = Vec::with_capacity(k);
        let mut pow_inv = Vec::with_capacity(k);
        for (i, &di) in d.iter().enumerate() {
            let n = spec.exponent(i) as u64 % m;
            let n_inv = inv_mod_u64(n, m).expect("n_i invertible mod m");
            let mut pos = Vec::with_capacity(di as usize);
            let mut inv = Vec::with_capacity(di as usize);
            let (mut p, mut q) = (1 % m, 1 % m);
            for _ in 0..di {
                pos.push(p);
                inv.push(q);
                p = mul_mod_u64(p, n, m);
                q = mul_mod_u64(q, n_inv, m);
            }
            pow_pos.push(pos);
            pow_inv.push(inv);
        }
        Ok(Self {
            spec,
            m,
            d,
            order,
            pow_pos,
            pow_inv,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let dto: ModelDto =
            serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))?;
        let spec = GroupSpec::new(dto.s)?;
        Self::new(spec, dto.m, dto.d)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn periods(&self) -> &[u64] {
        &self.d
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> FElem {
        FElem {
            x: 0,
            v: vec![0; self.spec.rank()],
        }
    }

    pub fn gen_a(&self) -> FElem {
        FElem {
            x: 1 % self.m,
            v: vec![0; self.spec.rank()],
        }
    }

    pub fn gen_t(&self, i: usize) -> FElem {
        let mut v = vec![0; self.spec.rank()];
        v[i] = 1 % self.d[i];
        FElem { x: 0, v }
    }

    /// n^{-v} mod m.
    fn scale_inv(&self, v: &[u64]) -> u64 {
        v.iter()
            .enumerate()
            .fold(1 % self.m, |acc, (i, &vi)| {
                mul_mod_u64(acc, self.pow_inv[i][vi as usize], self.m)
            })
    }

    /// n^{v} mod m.
    fn scale_pos(&self, v: &[u64]) -> u64 {
        v.iter()
            .enumerate()
            .fold(1 % self.m, |acc, (i, &vi)| {
                mul_mod_u64(acc, self.pow_pos[i][vi as usize], self.m)
            })
    }

    /// (x1, v1)(x2, v2) = (x1 + x2 n^{-v1}, v1 + v2), everything reduced.
    pub fn mul(&self, a: &FElem, b: &FElem) -> FElem {
        let x = (a.x + mul_mod_u64(b.x, self.scale_inv(&a.v), self.m)) % self.m;
        let v = a
            .v
            .iter()
            .zip(&b.v)
            .zip(&self.d)
            .map(|((&p, &q), &di)| (p + q) % di)
            .collect();
        FElem { x, v }
    }

    pub fn inverse(&self, a: &FElem) -> FElem {
        let x = (self.m - mul_mod_u64(a.x, self.scale_pos(&a.v), self.m)) % self.m;
        let v = a
            .v
            .iter()
            .zip(&self.d)
            .map(|(&p, &di)| (di - p) % di)
            .collect();
        FElem { x, v }
    }

    pub fn pow(&self, a: &FElem, mut e: u64) -> FElem {
        let mut base = a.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Mixed-radix index of an element; the inverse of [`element_at`].
    ///
    /// [`element_at`]: FiniteModel::element_at
    pub fn index(&self, a: &FElem) -> usize {
        let mut idx = 0u64;
        for (vi, di) in a.v.iter().zip(&self.d).rev() {
            idx = idx * di + vi;
        }
        (idx * self.m + a.x) as usize
    }

    pub fn element_at(&self, idx: usize) -> FElem {
        let mut idx = idx as u64;
        let x = idx % self.m;
        idx /= self.m;
        let mut v = Vec::with_capacity(self.d.len());
        for &di in &self.d {
            v.push(idx % di);
            idx /= di;
        }
        FElem { x, v }
    }

    /// Reduction Γ(S) → model: a homomorphism because gcd(m, N) = 1 makes
    /// every denominator invertible and heights only matter mod d.
    pub fn reduce_element(&self, g: &Element) -> Result<FElem, ModelError> {
        let x = g.q().residue(self.m).ok_or_else(|| {
            ModelError::NotReducible(format!("{} has no residue mod {}", g.q(), self.m))
        })?;
        let v = g
            .height()
            .iter()
            .zip(&self.d)
            .map(|(&h, &di)| h.rem_euclid(di as i64) as u64)
            .collect();
        Ok(FElem { x, v })
    }

    /// Reduces a validated endomorphism of Γ(S) to the model, checking
    /// that the images define an endomorphism of the finite presentation
    /// (relators plus the finite orders ā^m and t̄_i^{d_i}).
    pub fn reduce_endo(&self, e: &Endomorphism) -> Result<FiniteEndo, ModelError> {
        if e.spec() != &self.spec {
            return Err(ModelError::SpecMismatch);
        }
        if !e.is_validated() {
            return Err(ModelError::NotReducible(
                "endomorphism has not passed relator validation".into(),
            ));
        }
        let r = e.scalar().residue(self.m).ok_or_else(|| {
            ModelError::NotReducible("scalar has no residue mod m".into())
        })?;
        let mut images = Vec::with_capacity(self.spec.rank());
        for i in 0..self.spec.rank() {
            images.push(self.reduce_element(e.image_t(i))?);
        }
        self.finite_endo(r, images)
    }

    /// Builds a finite endomorphism directly from reduced data, verifying
    /// the relators of the finite presentation.
    pub fn finite_endo(&self, r: u64, images: Vec<FElem>) -> Result<FiniteEndo, ModelError> {
        let k = self.spec.rank();
        if images.len() != k {
            return Err(ModelError::NotReducible(format!(
                "expected {k} generator images, got {}",
                images.len()
            )));
        }
        let fe = FiniteEndo { r: r % self.m, images };
        let image_a = FElem {
            x: fe.r,
            v: vec![0; k],
        };
        for i in 0..k {
            // t_i-images must have the order forced by t̄_i^{d_i} = 1
            if self.pow(&fe.images[i], self.d[i]) != self.identity() {
                return Err(ModelError::NotReducible(format!(
                    "image of t{} does not satisfy t^d = 1 in the model",
                    i + 1
                )));
            }
            // conjugation relator mod m
            let lhs = self.mul(
                &self.inverse(&fe.images[i]),
                &self.mul(&image_a, &fe.images[i]),
            );
            let rhs = self.pow(&image_a, self.spec.exponent(i) as u64);
            if lhs != rhs {
                return Err(ModelError::NotReducible(format!(
                    "conjugation relator for t{} fails in the model",
                    i + 1
                )));
            }
            for j in i + 1..k {
                if self.mul(&fe.images[i], &fe.images[j])
                    != self.mul(&fe.images[j], &fe.images[i])
                {
                    return Err(ModelError::NotReducible(format!(
                        "images of t{} and t{} do not commute in the model",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(fe)
    }

    /// φ(x, v) = (r x, 0) · Π images[i]^{v_i}.
    pub fn apply_endo(&self, fe: &FiniteEndo, a: &FElem) -> FElem {
        let mut acc = FElem {
            x: mul_mod_u64(fe.r, a.x, self.m),
            v: vec![0; self.spec.rank()],
        };
        for (i, &vi) in a.v.iter().enumerate() {
            if vi != 0 {
                acc = self.mul(&acc, &self.pow(&fe.images[i], vi));
            }
        }
        acc
    }

    /// σ · α = σ α φ(σ)^{-1} inside the model.
    pub fn twisted_act(&self, fe: &FiniteEndo, sigma: &FElem, alpha: &FElem) -> FElem {
        let image = self.apply_endo(fe, sigma);
        self.mul(sigma, &self.mul(alpha, &self.inverse(&image)))
    }

    /// Exhaustive partition of the model into twisted conjugacy classes:
    /// union-find closed under the moves α ↦ g α φ(g)^{-1} for the
    /// generators g, which generate the whole action. A second sweep
    /// records, for every element, a twisting witness σ with
    /// σ · rep = element.
    pub fn enumerate_twisted_classes(&self, fe: &FiniteEndo) -> ClassDecomposition {
        let order = self.order as usize;
        let mut gens = vec![self.gen_a()];
        for i in 0..self.spec.rank() {
            gens.push(self.gen_t(i));
        }
        let moves: Vec<(FElem, FElem)> = gens
            .into_iter()
            .map(|g| {
                let image_inv = self.inverse(&self.apply_endo(fe, &g));
                (g, image_inv)
            })
            .collect();

        let mut uf = UnionFind::new(order);
        for idx in 0..order {
            let alpha = self.element_at(idx);
            for (g, image_inv) in &moves {
                let beta = self.mul(&self.mul(g, &alpha), image_inv);
                uf.union(idx, self.index(&beta));
            }
        }

        let mut class_of_root = vec![usize::MAX; order];
        let mut representatives = Vec::new();
        let mut sizes = Vec::new();
        let mut assignment = vec![0u32; order];
        for (idx, slot) in assignment.iter_mut().enumerate() {
            let root = uf.find(idx);
            if class_of_root[root] == usize::MAX {
                class_of_root[root] = representatives.len();
                representatives.push(self.element_at(idx));
                sizes.push(0u64);
            }
            let class = class_of_root[root];
            *slot = class as u32;
            sizes[class] += 1;
        }

        // Witness sweep: BFS the move graph from each representative,
        // composing the generator that produced each new element onto the
        // witness of its parent.
        let identity_idx = self.index(&self.identity());
        let mut witnesses = vec![usize::MAX; order];
        let mut queue = std::collections::VecDeque::new();
        for rep in &representatives {
            let rep_idx = self.index(rep);
            witnesses[rep_idx] = identity_idx;
            queue.push_back(rep_idx);
        }
        while let Some(idx) = queue.pop_front() {
            let alpha = self.element_at(idx);
            let sigma = self.element_at(witnesses[idx]);
            for (g, image_inv) in &moves {
                let beta = self.mul(&self.mul(g, &alpha), image_inv);
                let beta_idx = self.index(&beta);
                if witnesses[beta_idx] == usize::MAX {
                    witnesses[beta_idx] = self.index(&self.mul(g, &sigma));
                    queue.push_back(beta_idx);
                }
            }
        }
        debug_assert!(witnesses.iter().all(|&w| w != usize::MAX));

        ClassDecomposition {
            count: representatives.len(),
            representatives,
            sizes,
            assignment,
            witnesses,
        }
    }

    fn kernel_classes(&self, fe: &FiniteEndo) -> Partition {
        // classes of x ↦ x + s(1 - r) on Z_m, generated by s = 1
        let m = self.m as usize;
        let delta = (1 + self.m - fe.r % self.m) % self.m;
        let mut uf = UnionFind::new(m);
        for x in 0..m {
            uf.union(x, (x + delta as usize) % m);
        }
        Partition::from_union_find(&mut uf)
    }

    fn quotient_size(&self) -> usize {
        self.d.iter().product::<u64>() as usize
    }

    fn quotient_index(&self, v: &[u64]) -> usize {
        let mut idx = 0u64;
        for (vi, di) in v.iter().zip(&self.d).rev() {
            idx = idx * di + vi;
        }
        idx as usize
    }

    fn quotient_at(&self, idx: usize) -> Vec<u64> {
        let mut idx = idx as u64;
        let mut v = Vec::with_capacity(self.d.len());
        for &di in &self.d {
            v.push(idx % di);
            idx /= di;
        }
        v
    }

    /// The induced map on the height quotient: v ↦ Σ v_j w_j mod d.
    fn quotient_map(&self, fe: &FiniteEndo, v: &[u64]) -> Vec<u64> {
        let k = self.spec.rank();
        let mut out = vec![0u64; k];
        for (j, &vj) in v.iter().enumerate() {
            for (l, slot) in out.iter_mut().enumerate() {
                *slot = (*slot + vj * fe.images[j].v[l]) % self.d[l];
            }
        }
        out
    }

    fn quotient_classes(&self, fe: &FiniteEndo) -> Partition {
        // classes of v ↦ v + (e_j - φ̄(e_j)) on Π Z_{d_i}
        let size = self.quotient_size();
        let mut uf = UnionFind::new(size);
        let k = self.spec.rank();
        for j in 0..k {
            let mut unit = vec![0u64; k];
            unit[j] = 1 % self.d[j];
            let image = self.quotient_map(fe, &unit);
            for idx in 0..size {
                let v = self.quotient_at(idx);
                let moved: Vec<u64> = v
                    .iter()
                    .zip(unit.iter().zip(&image))
                    .zip(&self.d)
                    .map(|((&vi, (&ui, &wi)), &di)| (vi + ui + di - wi) % di)
                    .collect();
                uf.union(idx, self.quotient_index(&moved));
            }
        }
        Partition::from_union_find(&mut uf)
    }

    /// Computes the class sets of the restriction (on Z_m), the whole
    /// model, and the quotient (on Π Z_{d_i}), together with the induced
    /// maps between them, and checks the two structural facts: the
    /// quotient map on classes is onto, and the classes meeting the kernel
    /// are exactly those sitting over the class of the identity.
    pub fn check_exact_sequence(&self, fe: &FiniteEndo) -> SequenceReport {
        let kernel = self.kernel_classes(fe);
        let middle = self.enumerate_twisted_classes(fe);
        let quotient = self.quotient_classes(fe);

        // p̂: middle class → quotient class of its height
        let p_hat: Vec<usize> = middle
            .representatives
            .iter()
            .map(|rep| quotient.class_of(self.quotient_index(&rep.v)))
            .collect();
        // î: kernel class → middle class of (x, 0)
        let i_hat: Vec<usize> = kernel
            .representatives
            .iter()
            .map(|&x| {
                let elem = FElem {
                    x: x as u64,
                    v: vec![0; self.spec.rank()],
                };
                middle.class_of_index(self.index(&elem))
            })
            .collect();

        let mut hit = vec![false; quotient.count];
        for &q in &p_hat {
            hit[q] = true;
        }
        let p_hat_onto = hit.iter().all(|&h| h);

        let zero_class = quotient.class_of(self.quotient_index(&vec![0; self.spec.rank()]));
        let over_identity: std::collections::BTreeSet<usize> = p_hat
            .iter()
            .enumerate()
            .filter(|&(_, &q)| q == zero_class)
            .map(|(c, _)| c)
            .collect();
        let i_hat_image: std::collections::BTreeSet<usize> = i_hat.iter().copied().collect();
        let exact_at_middle = i_hat_image == over_identity;

        SequenceReport {
            kernel_classes: kernel.count,
            middle_classes: middle.count,
            quotient_classes: quotient.count,
            p_hat,
            i_hat,
            p_hat_onto,
            exact_at_middle,
        }
    }

    /// Compares the total class count against the fiber-by-fiber sum: for
    /// one representative α per quotient class, the classes of the fiber
    /// over it under kernel moves alone (the raw count), and under kernel
    /// moves plus the moves lifted from Fix φ̄ (the corrected count). The
    /// raw sum is the naive fiber formula; it needs no correction exactly
    /// when Fix φ̄ is trivial.
    pub fn check_sum_formula(&self, fe: &FiniteEndo) -> FormulaReport {
        let middle = self.enumerate_twisted_classes(fe);
        let quotient = self.quotient_classes(fe);
        let m = self.m as usize;

        // Fix φ̄ and the lifted moves, shared across fibers.
        let fixed: Vec<Vec<u64>> = (0..self.quotient_size())
            .map(|idx| self.quotient_at(idx))
            .filter(|v| &self.quotient_map(fe, v) == v)
            .collect();
        let fix_moves: Vec<(FElem, FElem)> = fixed
            .iter()
            .map(|c| {
                let sigma = FElem {
                    x: 0,
                    v: c.clone(),
                };
                let image_inv = self.inverse(&self.apply_endo(fe, &sigma));
                (sigma, image_inv)
            })
            .collect();
        let fix_trivial = fixed.len() == 1;

        let a_gen = self.gen_a();
        let a_image_inv = self.inverse(&self.apply_endo(fe, &a_gen));

        let mut fibers = Vec::new();
        let mut rhs_raw = 0usize;
        let mut rhs_corrected = 0usize;
        for &rep_idx in &quotient.representatives {
            let v_bar = self.quotient_at(rep_idx);
            // kernel moves on the fiber {(x, v_bar)}
            let mut uf = UnionFind::new(m);
            for x in 0..m {
                let alpha = FElem {
                    x: x as u64,
                    v: v_bar.clone(),
                };
                let beta = self.mul(&self.mul(&a_gen, &alpha), &a_image_inv);
                debug_assert_eq!(beta.v, v_bar);
                uf.union(x, beta.x as usize);
            }
            let raw = Partition::from_union_find(&mut uf.clone()).count;
            // moves lifted from Fix φ̄ stay in the fiber and may merge
            // kernel classes
            for (sigma, image_inv) in &fix_moves {
                for x in 0..m {
                    let alpha = FElem {
                        x: x as u64,
                        v: v_bar.clone(),
                    };
                    let beta = self.mul(&self.mul(sigma, &alpha), image_inv);
                    debug_assert_eq!(beta.v, v_bar);
                    uf.union(x, beta.x as usize);
                }
            }
            let corrected = Partition::from_union_find(&mut uf).count;
            rhs_raw += raw;
            rhs_corrected += corrected;
            fibers.push(FiberReport {
                height_class_rep: v_bar,
                raw,
                corrected,
                fix_correction_applied: !fix_trivial,
            });
        }

        FormulaReport {
            lhs: middle.count,
            rhs_raw,
            rhs_corrected,
            fix_trivial,
            agrees: middle.count == rhs_corrected,
            fibers,
        }
    }

    /// Consistency check of a certificate against this model: witnesses
    /// whose reduced heights differ mod d must land in distinct twisted
    /// classes of the model. A `true` answer is evidence, not a proof; the
    /// certificate's own invariants carry the argument.
    pub fn cross_check_certificate(
        &self,
        cert: &RinfCertificate,
    ) -> Result<bool, ModelError> {
        let fe = self.reduce_endo(cert.endomorphism())?;
        let period: u64 = self.d.iter().product();
        let count = cert.witnesses().len();
        if count as u64 > period {
            return Err(ModelError::CountExceedsPeriod { count, period });
        }
        let classes = self.enumerate_twisted_classes(&fe);
        let reduced: Vec<FElem> = cert
            .witnesses()
            .iter()
            .map(|w| self.reduce_element(w))
            .collect::<Result<_, _>>()?;
        for i in 0..reduced.len() {
            for j in i + 1..reduced.len() {
                if reduced[i].v != reduced[j].v {
                    let ci = classes.class_of_index(self.index(&reduced[i]));
                    let cj = classes.class_of_index(self.index(&reduced[j]));
                    if ci == cj {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// A finite endomorphism of the model, valid by construction: the scalar
/// r mod m plus images (q_i, w_i) of the t_i, all relators checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteEndo {
    r: u64,
    images: Vec<FElem>,
}

impl FiniteEndo {
    pub fn scalar(&self) -> u64 {
        self.r
    }

    pub fn image_t(&self, i: usize) -> &FElem {
        &self.images[i]
    }
}

/// The orbit partition of the model under the twisted action, with one
/// stored twisting witness per element.
#[derive(Debug, Clone)]
pub struct ClassDecomposition {
    count: usize,
    representatives: Vec<FElem>,
    sizes: Vec<u64>,
    assignment: Vec<u32>,
    witnesses: Vec<usize>,
}

impl ClassDecomposition {
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn representatives(&self) -> &[FElem] {
        &self.representatives
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn class_of_index(&self, idx: usize) -> usize {
        self.assignment[idx] as usize
    }

    /// Re-verifies every stored witness: σ · rep = element under the
    /// twisted action.
    pub fn verify_witnesses(&self, model: &FiniteModel, fe: &FiniteEndo) -> bool {
        (0..self.assignment.len()).all(|idx| {
            let alpha = model.element_at(idx);
            let sigma = model.element_at(self.witnesses[idx]);
            let rep = &self.representatives[self.assignment[idx] as usize];
            model.twisted_act(fe, &sigma, rep) == alpha
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "count": self.count,
            "classes": self
                .representatives
                .iter()
                .zip(&self.sizes)
                .map(|(rep, size)| serde_json::json!({"representative": rep, "size": size}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Exactness data: class counts of the restriction, the model, and the
/// quotient, the induced maps between the class sets, and the two checks.
#[derive(Debug, Clone, Serialize)]
pub struct SequenceReport {
    pub kernel_classes: usize,
    pub middle_classes: usize,
    pub quotient_classes: usize,
    /// quotient class under each middle class
    pub p_hat: Vec<usize>,
    /// middle class under each kernel class
    pub i_hat: Vec<usize>,
    pub p_hat_onto: bool,
    pub exact_at_middle: bool,
}

impl SequenceReport {
    pub fn passed(&self) -> bool {
        self.p_hat_onto && self.exact_at_middle
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberReport {
    pub height_class_rep: Vec<u64>,
    pub raw: usize,
    pub corrected: usize,
    pub fix_correction_applied: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulaReport {
    pub lhs: usize,
    pub rhs_raw: usize,
    pub rhs_corrected: usize,
    pub fix_trivial: bool,
    pub agrees: bool,
    pub fibers: Vec<FiberReport>,
}

impl FormulaReport {
    pub fn passed(&self) -> bool {
        self.agrees
    }
}

#[derive(Debug, Clone)]
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] == x {
            x
        } else {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
            root
        }
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            self.parent[a] = b;
            self.size[b] += self.size[a];
        } else {
            self.parent[b] = a;
            self.size[a] += self.size[b];
        }
    }
}

/// Plain partition summary of a union-find: class count, representatives
/// (smallest member), and per-element class assignment.
struct Partition {
    count: usize,
    representatives: Vec<usize>,
    assignment: Vec<usize>,
}

impl Partition {
    fn from_union_find(uf: &mut UnionFind) -> Self {
        let n = uf.parent.len();
        let mut class_of_root = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        let mut assignment = vec![0usize; n];
        for (x, slot) in assignment.iter_mut().enumerate() {
            let root = uf.find(x);
            if class_of_root[root] == usize::MAX {
                class_of_root[root] = representatives.len();
                representatives.push(x);
            }
            *slot = class_of_root[root];
        }
        Self {
            count: representatives.len(),
            representatives,
            assignment,
        }
    }

    fn class_of(&self, x: usize) -> usize {
        self.assignment[x]
    }
}
