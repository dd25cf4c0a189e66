//! The Burau representation `ρ`, its specializations `ρ₋` (t = -1) and
//! `ρ₊` (t = 1), the virtual integral Burau representation `ρ_v`, and the
//! permutation representation `φ`.
//!
//! Word evaluation is a left-to-right fold: each letter right-multiplies the
//! running product by its generator image, which touches only two columns.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, LaurentMatrix, LaurentPoly, ModMatrix};
use crate::perm::Permutation;
use crate::word::{Alphabet, BraidWord, GenKind, Generator, WordEnumerator, DEFAULT_ENUMERATION_BUDGET};

/// `ρ₋(σ_i)` block.
pub const SIGMA_BLOCK: [[i64; 2]; 2] = [[2, -1], [1, 0]];
/// `ρ₋(σ_i⁻¹)` block, the exact inverse of [`SIGMA_BLOCK`].
pub const SIGMA_INV_BLOCK: [[i64; 2]; 2] = [[0, 1], [-1, 2]];
/// `ρ₊(σ_i^{±1}) = ρ_v(τ_i)` block.
pub const SWAP_BLOCK: [[i64; 2]; 2] = [[0, 1], [1, 0]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepName {
    /// Unspecialized Burau over `Z[t, t⁻¹]`, classical words only.
    Burau,
    /// `ρ₋`: Burau at `t = -1`, classical words only.
    BurauMinus,
    /// `ρ₊`: Burau at `t = 1`, classical words only.
    BurauPlus,
    /// `ρ_v` on the full virtual alphabet.
    VirtualBurau,
    /// `φ ∘ π_v`.
    PermRep,
}

impl RepName {
    pub const ALL: [RepName; 5] =
        [RepName::Burau, RepName::BurauMinus, RepName::BurauPlus, RepName::VirtualBurau, RepName::PermRep];

    pub fn cli_name(self) -> &'static str {
        match self {
            RepName::Burau => "burau",
            RepName::BurauMinus => "minus",
            RepName::BurauPlus => "plus",
            RepName::VirtualBurau => "vburau",
            RepName::PermRep => "perm",
        }
    }
}

impl fmt::Display for RepName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for RepName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RepName::ALL
            .into_iter()
            .find(|r| r.cli_name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown representation {s:?}")))
    }
}

fn virtual_block(g: Generator) -> [[i64; 2]; 2] {
    match g.kind {
        GenKind::Sigma => SIGMA_BLOCK,
        GenKind::SigmaInv => SIGMA_INV_BLOCK,
        GenKind::Tau => SWAP_BLOCK,
    }
}

fn require_classical(w: &BraidWord) -> Result<()> {
    match w.letters().iter().find(|g| !g.is_classical()) {
        Some(g) => Err(Error::VirtualCrossing { index: g.index }),
        None => Ok(()),
    }
}

/// Full-matrix generator images for `ρ_v` on `n` strands.
#[derive(Debug)]
pub struct GeneratorImages {
    pub strands: usize,
    /// `ρ_v(σ_i)`, indexed by `i - 1`.
    pub sigma: Vec<IntMatrix>,
    pub sigma_inv: Vec<IntMatrix>,
    pub tau: Vec<IntMatrix>,
}

impl GeneratorImages {
    fn build(n: usize) -> Self {
        let sigma = (1..n).map(|i| IntMatrix::with_block(n, i, SIGMA_BLOCK)).collect::<Vec<_>>();
        let sigma_inv = (1..n).map(|i| IntMatrix::with_block(n, i, SIGMA_INV_BLOCK)).collect::<Vec<_>>();
        let tau = (1..n).map(|i| IntMatrix::with_block(n, i, SWAP_BLOCK)).collect::<Vec<_>>();
        for i in 0..n.saturating_sub(1) {
            debug_assert!(sigma[i].mul(&sigma_inv[i]).expect("same n").is_identity());
            debug_assert!(tau[i].mul(&tau[i]).expect("same n").is_identity());
        }
        GeneratorImages { strands: n, sigma, sigma_inv, tau }
    }

    pub fn image(&self, g: Generator) -> &IntMatrix {
        let k = g.index - 1;
        match g.kind {
            GenKind::Sigma => &self.sigma[k],
            GenKind::SigmaInv => &self.sigma_inv[k],
            GenKind::Tau => &self.tau[k],
        }
    }
}

/// Cached generator images, built once per strand count.
pub fn generator_images(n: usize) -> Arc<GeneratorImages> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GeneratorImages>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().expect("generator cache poisoned");
    guard.entry(n).or_insert_with(|| Arc::new(GeneratorImages::build(n))).clone()
}

/// Unspecialized Burau matrix. `τ_i` has no image here.
pub fn burau(w: &BraidWord) -> Result<LaurentMatrix> {
    require_classical(w)?;
    let n = w.strands();
    let one = LaurentPoly::one();
    let t = LaurentPoly::monomial(1, 1);
    let t_inv = LaurentPoly::monomial(1, -1);
    let mut acc = LaurentMatrix::identity(n);
    for g in w.letters() {
        let block = match g.kind {
            GenKind::Sigma => [[&one - &t, t.clone()], [one.clone(), LaurentPoly::zero()]],
            _ => [[LaurentPoly::zero(), one.clone()], [t_inv.clone(), &one - &t_inv]],
        };
        acc = acc.mul(&LaurentMatrix::with_block(n, g.index, block))?;
    }
    Ok(acc)
}

/// `ρ₋(w)` computed with integer blocks.
pub fn rho_minus(w: &BraidWord) -> Result<IntMatrix> {
    require_classical(w)?;
    Ok(rho_v(w))
}

/// `ρ₊(w)`: every classical letter acts as the swap block.
pub fn rho_plus(w: &BraidWord) -> Result<IntMatrix> {
    require_classical(w)?;
    let mut acc = IntMatrix::identity(w.strands());
    for g in w.letters() {
        acc.mul_block_right(g.index, SWAP_BLOCK);
    }
    Ok(acc)
}

/// `ρ_v(w)` over `Z`.
pub fn rho_v(w: &BraidWord) -> IntMatrix {
    let mut acc = IntMatrix::identity(w.strands());
    for &g in w.letters() {
        acc.mul_block_right(g.index, virtual_block(g));
    }
    acc
}

/// `r_m ∘ ρ_v`, evaluated directly in `Z/mZ`.
pub fn rho_v_mod(w: &BraidWord, m: u64) -> Result<ModMatrix> {
    if m == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let mut acc = ModMatrix::identity(w.strands(), m);
    for &g in w.letters() {
        acc.mul_block_right(g.index, virtual_block(g));
    }
    Ok(acc)
}

/// `r_m ∘ ρ₋`, evaluated directly in `Z/mZ`.
pub fn rho_minus_mod(w: &BraidWord, m: u64) -> Result<ModMatrix> {
    require_classical(w)?;
    rho_v_mod(w, m)
}

/// 0/1 matrix with `P[i][p(i)] = 1`, so `perm_rep(p.then(q)) = perm_rep(p)·perm_rep(q)`.
pub fn perm_rep(p: &Permutation) -> IntMatrix {
    let n = p.len();
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[p.image(i)] = 1;
    }
    IntMatrix::from_rows(&rows).expect("square")
}

/// A matrix produced by [`evaluate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evaluated {
    Laurent(LaurentMatrix),
    Int(IntMatrix),
}

/// Dispatches on the representation name.
pub fn evaluate(rep: RepName, w: &BraidWord) -> Result<Evaluated> {
    Ok(match rep {
        RepName::Burau => Evaluated::Laurent(burau(w)?),
        RepName::BurauMinus => Evaluated::Int(rho_minus(w)?),
        RepName::BurauPlus => Evaluated::Int(rho_plus(w)?),
        RepName::VirtualBurau => Evaluated::Int(rho_v(w)),
        RepName::PermRep => Evaluated::Int(perm_rep(&w.underlying_permutation())),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationFamily {
    Classical,
    Virtual,
    Mixed,
}

/// One instance `lhs = rhs` of a defining relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub family: RelationFamily,
    pub name: &'static str,
    pub lhs: BraidWord,
    pub rhs: BraidWord,
}

/// Every instance of the defining relations of `vB_n` over all admissible indices.
pub fn relation_instances(n: usize) -> Vec<RelationInstance> {
    let s = Generator::sigma;
    let t = Generator::tau;
    let word = |letters: Vec<Generator>| BraidWord::new(n, letters).expect("indices in range");
    let mut out = Vec::new();
    let mut push = |family, name, lhs: Vec<Generator>, rhs: Vec<Generator>| {
        out.push(RelationInstance { family, name, lhs: word(lhs), rhs: word(rhs) });
    };
    for i in 1..n.saturating_sub(1) {
        push(RelationFamily::Classical, "braid", vec![s(i), s(i + 1), s(i)], vec![s(i + 1), s(i), s(i + 1)]);
        push(RelationFamily::Virtual, "braid", vec![t(i), t(i + 1), t(i)], vec![t(i + 1), t(i), t(i + 1)]);
        push(RelationFamily::Mixed, "mixed braid", vec![t(i), s(i + 1), t(i)], vec![t(i + 1), s(i), t(i + 1)]);
    }
    for i in 1..n {
        push(RelationFamily::Virtual, "involution", vec![t(i), t(i)], vec![]);
        for j in 1..n {
            if i.abs_diff(j) > 1 {
                if i < j {
                    push(RelationFamily::Classical, "far commutativity", vec![s(i), s(j)], vec![s(j), s(i)]);
                    push(RelationFamily::Virtual, "far commutativity", vec![t(i), t(j)], vec![t(j), t(i)]);
                }
                push(RelationFamily::Mixed, "far commutativity", vec![s(i), t(j)], vec![t(j), s(i)]);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyResult {
    pub family: RelationFamily,
    pub instances: usize,
    /// Failing instances as `"lhs = rhs (map)"`.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub families: Vec<FamilyResult>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.failures.is_empty())
    }

    pub fn instances(&self) -> usize {
        self.families.iter().map(|f| f.instances).sum()
    }
}

/// Checks every relation instance under `ρ_v`, `π_v` and `π_K`.
pub fn verify_relations(n: usize) -> RelationReport {
    let mut families: Vec<FamilyResult> = [RelationFamily::Classical, RelationFamily::Virtual, RelationFamily::Mixed]
        .into_iter()
        .map(|family| FamilyResult { family, instances: 0, failures: Vec::new() })
        .collect();
    for rel in relation_instances(n) {
        let slot = families.iter_mut().find(|f| f.family == rel.family).expect("all families present");
        slot.instances += 1;
        let checks: [(&str, bool); 3] = [
            ("rho_v", rho_v(&rel.lhs) == rho_v(&rel.rhs)),
            ("pi_v", rel.lhs.underlying_permutation() == rel.rhs.underlying_permutation()),
            ("pi_K", rel.lhs.kure_projection() == rel.rhs.kure_projection()),
        ];
        for (map, ok) in checks {
            if !ok {
                slot.failures.push(format!("{} = {} ({map})", rel.lhs, rel.rhs));
            }
        }
    }
    RelationReport { n, families }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeldedReport {
    pub n: usize,
    /// `τ_i σ_{i+1} σ_i = σ_{i+1} σ_i τ_{i+1}` instances checked.
    pub instances: usize,
    pub failures: Vec<String>,
    /// `σ_i τ_{i+1} τ_i = τ_{i+1} τ_i σ_{i+1}` instances checked.
    pub companion_instances: usize,
    pub companion_failures: Vec<String>,
}

impl WeldedReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.companion_failures.is_empty()
    }
}

/// The welded relation under `ρ_v` for every `i` in `1..=n-2`, using full
/// generator matrices from the cache rather than the block fold.
pub fn welded_relation_check(n: usize) -> Result<WeldedReport> {
    if n < 3 {
        return Err(Error::TooFewStrands { min: 3, found: n });
    }
    let images = generator_images(n);
    let product = |letters: &[Generator]| -> IntMatrix {
        letters.iter().fold(IntMatrix::identity(n), |acc, &g| acc.mul(images.image(g)).expect("same n"))
    };
    let (s, t) = (Generator::sigma, Generator::tau);
    let mut report =
        WeldedReport { n, instances: 0, failures: Vec::new(), companion_instances: 0, companion_failures: Vec::new() };
    for i in 1..n - 1 {
        let lhs = [t(i), s(i + 1), s(i)];
        let rhs = [s(i + 1), s(i), t(i + 1)];
        report.instances += 1;
        if product(&lhs) != product(&rhs) {
            report.failures.push(format!("i = {i}"));
        }
        let lhs = [s(i), t(i + 1), t(i)];
        let rhs = [t(i + 1), t(i), s(i + 1)];
        report.companion_instances += 1;
        if product(&lhs) != product(&rhs) {
            report.companion_failures.push(format!("i = {i}"));
        }
    }
    Ok(report)
}

/// Shortest classical word (length-then-lexicographic search up to `max_len`)
/// where `r_m ∘ ρ₋` and `r_m ∘ φ ∘ π` disagree, or `None`.
pub fn fig2_commutativity_witness(n: usize, m: u64, max_len: usize) -> Result<Option<BraidWord>> {
    if n < 2 {
        return Err(Error::TooFewStrands { min: 2, found: n });
    }
    if m == 0 {
        return Err(Error::InvalidModulus(0));
    }
    for w in WordEnumerator::new(n, max_len, Alphabet::Classical, DEFAULT_ENUMERATION_BUDGET)? {
        let minus = rho_minus_mod(&w, m)?;
        let perm = perm_rep(&w.underlying_permutation()).reduce_mod(m as i64)?;
        if minus != perm {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `det ρ_v(w)`, always `±1`.
pub fn rho_v_determinant(w: &BraidWord) -> BigInt {
    rho_v(w).determinant()
}

/// `sgn(π_K(w))` as an integer.
pub fn kure_sign(w: &BraidWord) -> BigInt {
    let s = w.kure_projection().sign();
    if s > 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// True when [`SIGMA_INV_BLOCK`] is the two-sided inverse of [`SIGMA_BLOCK`].
pub fn blocks_are_inverse() -> bool {
    let a = IntMatrix::with_block(2, 1, SIGMA_BLOCK);
    let b = IntMatrix::with_block(2, 1, SIGMA_INV_BLOCK);
    a.mul(&b).expect("2x2").is_identity() && b.mul(&a).expect("2x2").is_identity()
}
