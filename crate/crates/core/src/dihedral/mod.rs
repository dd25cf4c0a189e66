//! Two strands: `vB_2 ≅ Z ∗ Z/2Z`, the dihedral quotients `q_m`, the
//! embedding `f: D_∞ → GL_2(Z)`, relator certificates for
//! `ker q_m = ⟨⟨στστ, σ^m⟩⟩`, and free-product normal forms.
//!
//! Throughout, `m = 0` stands for the infinite case (`D_∞`, `Z ∗ Z/2Z`).

mod certificate;
mod free_product;
mod verify;

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

pub use certificate::{
    derive_certificate, random_kernel_word, CertificateJson, CertificateStep, Relator, RelatorCertificate, StepJson,
};
pub use free_product::{
    free_product_normal_form, growth_evidence, torsion_classify, FreeProductElement, GrowthEvidence, Syllable, Torsion,
};
pub use verify::{verify_certificate, verify_certificate_json};

use crate::congruence::in_congruence;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::word::{Alphabet, BraidWord, GenKind, WordEnumerator};

/// `s^a t^b`. For `m ≥ 1` the exponent lies in `[0, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DihedralElement {
    pub a: i64,
    pub b: bool,
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement { a: 0, b: false };
    pub const S: DihedralElement = DihedralElement { a: 1, b: false };
    pub const T: DihedralElement = DihedralElement { a: 0, b: true };

    /// `s^a t^b` normalized for modulus `m`.
    pub fn new(a: i64, b: bool, m: u64) -> Self {
        DihedralElement { a: reduce_exponent(a, m), b }
    }

    pub fn is_identity(self) -> bool {
        self.a == 0 && !self.b
    }

    pub fn inverse(self, m: u64) -> Self {
        if self.b {
            self
        } else {
            DihedralElement::new(-self.a, false, m)
        }
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, false) => f.write_str("e"),
            (0, true) => f.write_str("t"),
            (1, b) => write!(f, "s{}", if b { " t" } else { "" }),
            (a, b) => write!(f, "s^{a}{}", if b { " t" } else { "" }),
        }
    }
}

fn reduce_exponent(a: i64, m: u64) -> i64 {
    if m == 0 {
        a
    } else {
        a.rem_euclid(m as i64)
    }
}

/// `(s^{a1} t^{b1})(s^{a2} t^{b2}) = s^{a1 ± a2} t^{b1 + b2}` using `t s^a = s^{-a} t`.
pub fn dihedral_mul(x: DihedralElement, y: DihedralElement, m: u64) -> DihedralElement {
    let a = if x.b { x.a - y.a } else { x.a + y.a };
    DihedralElement::new(a, x.b ^ y.b, m)
}

fn require_two_strands(w: &BraidWord) -> Result<()> {
    if w.strands() != 2 {
        return Err(Error::WrongStrandCount { expected: 2, found: w.strands() });
    }
    Ok(())
}

/// `q_m`: `σ ↦ s`, `τ ↦ t` into `D_{2m}` (`D_∞` for `m = 0`).
pub fn q_m(w: &BraidWord, m: u64) -> Result<DihedralElement> {
    require_two_strands(w)?;
    Ok(w.letters().iter().fold(DihedralElement::IDENTITY, |acc, g| {
        let letter = match g.kind {
            GenKind::Sigma => DihedralElement::S,
            GenKind::SigmaInv => DihedralElement::new(-1, false, m),
            GenKind::Tau => DihedralElement::T,
        };
        dihedral_mul(acc, letter, m)
    }))
}

/// `f(s^a) = [[1+a, -a], [a, 1-a]]`, `f(s^a t) = [[-a, 1+a], [1-a, a]]`.
pub fn f_embed(d: DihedralElement) -> IntMatrix {
    let a = BigInt::from(d.a);
    let one = BigInt::from(1);
    let entries = if d.b { vec![-&a, &one + &a, &one - &a, a] } else { vec![&one + &a, -&a, a.clone(), &one - &a] };
    IntMatrix::from_flat(2, entries)
}

/// `q_m(w) = e`, which for `m ≥ 3` is membership in `vB_2[m]`.
pub fn membership_via_qm(w: &BraidWord, m: u64) -> Result<bool> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "q_{m} does not detect vB_2[{m}]; the kernel criterion needs m >= 3"
        )));
    }
    Ok(q_m(w, m)?.is_identity())
}

/// Shortest word (length-lexicographic, up to `max_len`) in `vB_2[2]` that
/// is not in `ker q_2`.
pub fn level2_kernel_gap_witness(max_len: usize, budget: u64) -> Result<Option<BraidWord>> {
    for w in WordEnumerator::new(2, max_len, Alphabet::Full, budget)? {
        if in_congruence(&w, 2)?.in_subgroup && !q_m(&w, 2)?.is_identity() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
