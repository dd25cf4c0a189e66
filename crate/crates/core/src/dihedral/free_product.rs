use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::require_two_strands;
use crate::error::{Error, Result};
use crate::word::{BraidWord, GenKind};

/// One syllable of `Z/mZ ∗ Z/2Z`: a nonzero power of `s` or the involution `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Syllable {
    S(i64),
    T,
}

/// Reduced alternating word in `Z/mZ ∗ Z/2Z` (`Z ∗ Z/2Z` for `m = 0`).
/// For `m ≥ 1` powers of `s` lie in `[1, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FreeProductElement {
    pub m: u64,
    pub syllables: Vec<Syllable>,
}

impl FreeProductElement {
    pub fn identity(m: u64) -> Self {
        FreeProductElement { m, syllables: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Appends one syllable and re-normalizes the tail.
    pub fn push(&mut self, syllable: Syllable) {
        match syllable {
            Syllable::T => {
                if self.syllables.last() == Some(&Syllable::T) {
                    self.syllables.pop();
                } else {
                    self.syllables.push(Syllable::T);
                }
            }
            Syllable::S(k) => {
                let k = match self.syllables.last() {
                    Some(&Syllable::S(j)) => {
                        self.syllables.pop();
                        j + k
                    }
                    _ => k,
                };
                let k = if self.m == 0 { k } else { k.rem_euclid(self.m as i64) };
                if k != 0 {
                    self.syllables.push(Syllable::S(k));
                }
            }
        }
    }

    pub fn mul(&self, other: &FreeProductElement) -> FreeProductElement {
        let mut out = self.clone();
        for &s in &other.syllables {
            out.push(s);
        }
        out
    }

    pub fn inverse(&self) -> FreeProductElement {
        let mut out = FreeProductElement::identity(self.m);
        for &s in self.syllables.iter().rev() {
            out.push(invert(s));
        }
        out
    }

    pub fn pow(&self, k: u32) -> FreeProductElement {
        (0..k).fold(FreeProductElement::identity(self.m), |acc, _| acc.mul(self))
    }
}

fn invert(s: Syllable) -> Syllable {
    match s {
        Syllable::S(k) => Syllable::S(-k),
        Syllable::T => Syllable::T,
    }
}

impl fmt::Display for FreeProductElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("e");
        }
        for (k, s) in self.syllables.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match s {
                Syllable::S(1) => f.write_str("s")?,
                Syllable::S(e) => write!(f, "s^{e}")?,
                Syllable::T => f.write_str("t")?,
            }
        }
        Ok(())
    }
}

/// Normal form of `w` in `⟨σ, τ | τ², σ^m⟩` (no `σ^m` relation for `m = 0`).
pub fn free_product_normal_form(w: &BraidWord, m: u64) -> Result<FreeProductElement> {
    require_two_strands(w)?;
    let mut out = FreeProductElement::identity(m);
    for g in w.letters() {
        out.push(match g.kind {
            GenKind::Sigma => Syllable::S(1),
            GenKind::SigmaInv => Syllable::S(-1),
            GenKind::Tau => Syllable::T,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Torsion {
    #[serde(rename = "order_1")]
    Order1,
    #[serde(rename = "order_2")]
    Order2,
    #[serde(rename = "infinite_order")]
    Infinite,
}

impl fmt::Display for Torsion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Torsion::Order1 => "order_1",
            Torsion::Order2 => "order_2",
            Torsion::Infinite => "infinite_order",
        })
    }
}

/// Order of `w` in `vB_2 ≅ Z ∗ Z/2Z`, read off the normal form: trivial,
/// a conjugate `g t g⁻¹` of `t`, or infinite.
pub fn torsion_classify(w: &BraidWord) -> Result<Torsion> {
    let nf = free_product_normal_form(w, 0)?;
    let s = &nf.syllables;
    if s.is_empty() {
        return Ok(Torsion::Order1);
    }
    let mid = s.len() / 2;
    let conjugate_of_t =
        s.len() % 2 == 1 && s[mid] == Syllable::T && (0..mid).all(|k| s[k] == invert(s[s.len() - 1 - k]));
    Ok(if conjugate_of_t { Torsion::Order2 } else { Torsion::Infinite })
}

/// Normal forms of `Z/mZ ∗ Z/2Z` by syllable length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthEvidence {
    pub m: u64,
    pub max_len: usize,
    /// `per_length[k]`: elements with exactly `k` syllables.
    pub per_length: Vec<u64>,
    /// `cumulative[k]`: elements with at most `k` syllables.
    pub cumulative: Vec<u64>,
}

impl GrowthEvidence {
    pub fn strictly_increasing(&self) -> bool {
        self.per_length.windows(2).all(|w| w[0] < w[1]) && self.cumulative.windows(2).all(|w| w[0] < w[1])
    }

    /// Smallest `L` with more than `bound` elements of length `≤ L`.
    pub fn first_exceeding(&self, bound: u64) -> Option<usize> {
        self.cumulative.iter().position(|&c| c > bound)
    }
}

/// Breadth-first search over normal forms of syllable length `≤ max_len`,
/// stepping by right multiplication with `s`, `s⁻¹` and `t`.
pub fn growth_evidence(m: u64, max_len: usize) -> Result<GrowthEvidence> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("growth evidence needs m >= 3, got {m}")));
    }
    let start = FreeProductElement::identity(m);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut per_length = vec![0u64; max_len + 1];
    while let Some(x) = queue.pop_front() {
        per_length[x.len()] += 1;
        for step in [Syllable::S(1), Syllable::S(-1), Syllable::T] {
            let mut y = x.clone();
            y.push(step);
            if y.len() <= max_len && !seen.contains(&y) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let cumulative = per_length
        .iter()
        .scan(0u64, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    Ok(GrowthEvidence { m, max_len, per_length, cumulative })
}
