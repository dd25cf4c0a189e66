//! Membership in the congruence subgroups `vB_n[m] = ker(r_m ∘ ρ_v)` and
//! `B_n[m]`, and harnesses for the identities relating them.

use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, ModMatrix};
use crate::perm::Permutation;
use crate::rep::{rho_v, rho_v_mod};
use crate::word::{random_word_with, tau_section, Alphabet, BraidWord, GenKind, Generator, WordEnumerator};

/// Outcome of a membership test, with the reduced matrix as evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub word: BraidWord,
    pub modulus: u64,
    pub in_subgroup: bool,
    pub matrix: ModMatrix,
}

/// `w ∈ vB_n[m]`. For classical words this is also `w ∈ B_n[m]`.
pub fn in_congruence(w: &BraidWord, m: u64) -> Result<MembershipVerdict> {
    let matrix = rho_v_mod(w, m)?;
    Ok(MembershipVerdict { word: w.clone(), modulus: m, in_subgroup: matrix.is_identity(), matrix })
}

/// `w ∈ vP_n` (kernel of `π_v`).
pub fn is_pure(w: &BraidWord) -> bool {
    w.underlying_permutation().is_identity()
}

/// `w ∈ KB_n` (kernel of `π_K`).
pub fn is_kure(w: &BraidWord) -> bool {
    w.kure_projection().is_identity()
}

/// Deterministic per-sample seed, so parallel harnesses do not depend on
/// scheduling.
pub fn sample_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x6A09_E667_F3BC_C909);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `ι` with `σ_j` in place of `τ_j`: a classical word with the given permutation.
pub fn sigma_section(p: &Permutation) -> BraidWord {
    let letters = tau_section(p).letters().iter().map(|g| Generator::sigma(g.index)).collect();
    BraidWord::new(p.len(), letters).expect("indices come from a section")
}

/// Random pure word over `alphabet`: a random word followed by the inverse of
/// a section of its permutation (τ-section for the full alphabet, σ-section
/// for the classical one).
pub fn random_pure_word_with<R: Rng + ?Sized>(
    strands: usize,
    length: usize,
    alphabet: Alphabet,
    rng: &mut R,
) -> Result<BraidWord> {
    let w = random_word_with(strands, length, alphabet, rng)?;
    let p = w.underlying_permutation();
    let section = match alphabet {
        Alphabet::Full => tau_section(&p),
        Alphabet::Classical => sigma_section(&p),
    };
    w.concat(&section.inverse())
}

/// Parameters for [`level2_equals_pure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Level2Config {
    pub n: usize,
    pub exhaustive_len: usize,
    pub samples: usize,
    pub sample_len: usize,
    pub seed: u64,
    #[serde(serialize_with = "serialize_alphabet")]
    pub alphabet: Alphabet,
    pub budget: u64,
}

fn serialize_alphabet<S: serde::Serializer>(a: &Alphabet, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(match a {
        Alphabet::Full => "full",
        Alphabet::Classical => "classical",
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Level2Report {
    pub config: Level2Config,
    pub exhaustive_checked: usize,
    pub random_checked: usize,
    pub pure_checked: usize,
    /// Words found in the level-2 subgroup, over all three phases.
    pub members: usize,
    #[serde(serialize_with = "serialize_words")]
    pub counterexamples: Vec<BraidWord>,
}

impl Level2Report {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub(crate) fn serialize_words<S: serde::Serializer>(words: &[BraidWord], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(words.iter().map(ToString::to_string))
}

/// Checks `w ∈ vB_n[2] ⟺ w ∈ vP_n` (or `B_n[2] = P_n` with the classical
/// alphabet) on every reduced word up to `exhaustive_len`, on `samples`
/// random words and on `samples` random pure words.
pub fn level2_equals_pure(config: Level2Config) -> Result<Level2Report> {
    let Level2Config { n, exhaustive_len, samples, sample_len, seed, alphabet, budget } = config;
    let check = |w: &BraidWord| -> Result<(bool, bool)> {
        let member = in_congruence(w, 2)?.in_subgroup;
        Ok((member, member == is_pure(w)))
    };
    let mut counterexamples = Vec::new();
    let mut members = 0;

    let exhaustive: Vec<BraidWord> = WordEnumerator::new(n, exhaustive_len, alphabet, budget)?.collect();
    let results = exhaustive.par_iter().map(check).collect::<Result<Vec<_>>>()?;
    for (w, (member, ok)) in exhaustive.iter().zip(&results) {
        members += usize::from(*member);
        if !ok {
            counterexamples.push(w.clone());
        }
    }

    for (phase, pure) in [(1u64, false), (2, true)] {
        let results = (0..samples as u64)
            .into_par_iter()
            .map(|k| -> Result<(BraidWord, bool, bool)> {
                let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(seed ^ phase, k));
                let w = if pure {
                    random_pure_word_with(n, sample_len, alphabet, &mut rng)?
                } else {
                    random_word_with(n, sample_len, alphabet, &mut rng)?
                };
                let (member, ok) = check(&w)?;
                Ok((w, member, ok))
            })
            .collect::<Result<Vec<_>>>()?;
        for (w, member, ok) in results {
            members += usize::from(member);
            if !ok {
                counterexamples.push(w);
            }
        }
    }

    Ok(Level2Report {
        config,
        exhaustive_checked: exhaustive.len(),
        random_checked: samples,
        pure_checked: samples,
        members,
        counterexamples,
    })
}

/// Builds a word in `vB_n[m]`: a product of `factors` conjugates `g b^{±1} g⁻¹`
/// of basic members `b` (powers `σ_i^m`, the witness `σ_i τ_i σ_i τ_i`, and
/// for `m = 2` the pure words `σ_i τ_i`) with random conjugators of length
/// `conj_len`.
pub fn random_member<R: Rng + ?Sized>(
    n: usize,
    m: u64,
    factors: usize,
    conj_len: usize,
    rng: &mut R,
) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::TooFewStrands { min: 2, found: n });
    }
    if m == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let mut acc = BraidWord::identity(n);
    for _ in 0..factors {
        let i = rng.gen_range(1..n);
        let basic = match rng.gen_range(0..3) {
            0 => BraidWord::sigma_power(n, i, m as i64)?,
            1 => {
                BraidWord::new(n, vec![Generator::sigma(i), Generator::tau(i), Generator::sigma(i), Generator::tau(i)])?
            }
            _ if m == 2 => BraidWord::new(n, vec![Generator::sigma(i), Generator::tau(i)])?,
            _ => BraidWord::sigma_power(n, i, -(m as i64))?,
        };
        let basic = if rng.gen_bool(0.5) { basic.inverse() } else { basic };
        let g = random_word_with(n, conj_len, Alphabet::Full, rng)?;
        acc = acc.concat(&g)?.concat(&basic)?.concat(&g.inverse())?;
    }
    Ok(acc)
}

/// The three verdicts behind `vB_n[m] ∩ vB_n[ℓ] = vB_n[lcm(m, ℓ)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntersectionVerdict {
    pub m: u64,
    pub l: u64,
    pub in_m: bool,
    pub in_l: bool,
    pub in_lcm: bool,
}

impl IntersectionVerdict {
    pub fn consistent(&self) -> bool {
        (self.in_m && self.in_l) == self.in_lcm
    }
}

pub fn intersection_check(w: &BraidWord, m: u64, l: u64) -> Result<IntersectionVerdict> {
    intersection_check_matrix(&rho_v(w), m, l)
}

/// As [`intersection_check`] from a precomputed `ρ_v(w)`.
pub fn intersection_check_matrix(image: &IntMatrix, m: u64, l: u64) -> Result<IntersectionVerdict> {
    if m == 0 || l == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let in_level = |k: u64| -> Result<bool> { Ok(image.reduce_mod(k as i64)?.is_identity()) };
    Ok(IntersectionVerdict { m, l, in_m: in_level(m)?, in_l: in_level(l)?, in_lcm: in_level(m.lcm(&l))? })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BezoutTarget {
    SigmaAt(usize),
    TauAt(usize),
}

impl BezoutTarget {
    pub fn index(self) -> usize {
        match self {
            BezoutTarget::SigmaAt(i) | BezoutTarget::TauAt(i) => i,
        }
    }

    pub fn generator(self) -> Generator {
        match self {
            BezoutTarget::SigmaAt(i) => Generator::sigma(i),
            BezoutTarget::TauAt(i) => Generator::tau(i),
        }
    }
}

/// `target = u · v` with `u ∈ vB_n[2]` and `v ∈ vB_n[ℓ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutDecomposition {
    pub target: BezoutTarget,
    pub l: u64,
    /// Coefficients with `2a + ℓb = 1`.
    pub a: i64,
    pub b: i64,
    pub u: BraidWord,
    pub v: BraidWord,
}

impl BezoutDecomposition {
    /// Checks all three postconditions.
    pub fn verify(&self) -> Result<bool> {
        let target = BraidWord::new(self.u.strands(), vec![self.target.generator()])?;
        Ok(in_congruence(&self.u, 2)?.in_subgroup
            && in_congruence(&self.v, self.l)?.in_subgroup
            && self.u.concat(&self.v)?.free_reduce() == target
            && 2 * self.a + self.l as i64 * self.b == 1)
    }
}

/// `2a + ℓb = 1` with `|a|` minimal (`a ∈ (-ℓ/2, ℓ/2)`), ℓ odd.
pub fn bezout_coefficients(l: u64) -> Result<(i64, i64)> {
    if l == 0 || l.is_multiple_of(2) {
        return Err(Error::EvenLevel(l));
    }
    let l = l as i64;
    let g = 2i64.extended_gcd(&l);
    debug_assert_eq!(g.gcd, 1);
    // General solution a = a0 + kℓ, b = b0 - 2k.
    let mut a = g.x.rem_euclid(l);
    let mut b = (1 - 2 * a) / l;
    if 2 * a > l {
        a -= l;
        b += 2;
    }
    debug_assert_eq!(2 * a + l * b, 1);
    Ok((a, b))
}

/// For `σ_i`: `u = (σ_i²)^a`, `v = (σ_i^ℓ)^b`.
/// For `τ_i`: `u = τ_i σ_i σ_i^{-2a}`, `v = σ_i^{-ℓb}`, so that
/// `u·v = τ_i σ_i^{1 - 2a - ℓb} = τ_i`.
pub fn bezout_decompose(target: BezoutTarget, l: u64, n: usize) -> Result<BezoutDecomposition> {
    let (a, b) = bezout_coefficients(l)?;
    let i = target.index();
    let li = l as i64;
    let (u, v) = match target {
        BezoutTarget::SigmaAt(_) => (BraidWord::sigma_power(n, i, 2 * a)?, BraidWord::sigma_power(n, i, li * b)?),
        BezoutTarget::TauAt(_) => {
            let head = BraidWord::new(n, vec![Generator::tau(i), Generator::sigma(i)])?;
            (head.concat(&BraidWord::sigma_power(n, i, -2 * a)?)?, BraidWord::sigma_power(n, i, -li * b)?)
        }
    };
    Ok(BezoutDecomposition { target, l, a, b, u, v })
}

/// `det ρ_v(w) = 1`. Every element of `vB_n[m] · vB_n[ℓ]` passes when
/// `m, ℓ ∉ {1, 2}`, so a `false` certifies `w` is outside that product.
pub fn product_obstruction(w: &BraidWord, m: u64, l: u64) -> Result<bool> {
    for level in [m, l] {
        if level <= 2 {
            return Err(Error::InvalidArgument(format!(
                "the determinant obstruction needs levels outside {{1, 2}}, got {level}"
            )));
        }
    }
    Ok(rho_v(w).determinant().is_one())
}

/// Number of `τ` letters modulo 2, as a sign, for cross-checking determinants.
pub fn tau_parity_sign(w: &BraidWord) -> i8 {
    if w.letters().iter().filter(|g| g.kind == GenKind::Tau).count() % 2 == 0 {
        1
    } else {
        -1
    }
}
