use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{q_m, require_two_strands};
use crate::error::{Error, Result};
use crate::word::{random_word_with, Alphabet, BraidWord, GenKind, Generator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relator {
    /// `στστ`
    Stst,
    /// `σ^m`
    SigmaPower,
}

impl Relator {
    pub fn word(self, m: u64) -> BraidWord {
        let letters = match self {
            Relator::Stst => vec![Generator::sigma(1), Generator::tau(1), Generator::sigma(1), Generator::tau(1)],
            Relator::SigmaPower => vec![Generator::sigma(1); m as usize],
        };
        BraidWord::new(2, letters).expect("two strands")
    }
}

impl fmt::Display for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relator::Stst => "stst",
            Relator::SigmaPower => "s^m",
        })
    }
}

impl FromStr for Relator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stst" => Ok(Relator::Stst),
            "s^m" => Ok(Relator::SigmaPower),
            other => Err(Error::InvalidArgument(format!("unknown relator {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateStep {
    pub conjugator: BraidWord,
    pub relator: Relator,
    pub sign: i8,
}

/// `word · ∏_j g_j r_j^{-sign_j} g_j⁻¹` is trivial in `Z ∗ Z/2Z`, so `word`
/// lies in the normal closure of the relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorCertificate {
    pub word: BraidWord,
    pub m: u64,
    pub steps: Vec<CertificateStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub conjugator: String,
    pub relator: String,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub word: String,
    pub m: u64,
    pub steps: Vec<StepJson>,
}

impl RelatorCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            word: self.word.to_string(),
            m: self.m,
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    conjugator: s.conjugator.to_string(),
                    relator: s.relator.to_string(),
                    sign: s.sign,
                })
                .collect(),
        }
    }

    pub fn from_json(json: &CertificateJson) -> Result<Self> {
        let steps = json
            .steps
            .iter()
            .map(|s| {
                if s.sign != 1 && s.sign != -1 {
                    return Err(Error::InvalidArgument(format!("certificate sign must be +1 or -1, got {}", s.sign)));
                }
                Ok(CertificateStep {
                    conjugator: BraidWord::parse(&s.conjugator, 2)?,
                    relator: s.relator.parse()?,
                    sign: s.sign,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RelatorCertificate { word: BraidWord::parse(&json.word, 2)?, m: json.m, steps })
    }
}

fn reduced(letters: Vec<Generator>) -> Vec<Generator> {
    BraidWord::new(2, letters).expect("two strands").free_reduce().letters().to_vec()
}

/// Rewrites `w` to the empty word, moving every `τ` rightwards with
/// `τσ → σ⁻¹τ` (one `στστ`-conjugate by the prefix `P σ⁻¹`) and
/// `τσ⁻¹ → στ` (one `στστ`-conjugate by `P`), cancelling freely, then
/// removing the leftover `σ^{km}` one `σ^m` at a time.
pub fn derive_certificate(w: &BraidWord, m: u64) -> Result<RelatorCertificate> {
    require_two_strands(w)?;
    if !q_m(w, m)?.is_identity() {
        return Err(Error::NotInKernel { m });
    }
    let sigma = Generator::sigma(1);
    let sigma_inv = Generator::sigma_inv(1);
    let tau = Generator::tau(1);

    // (conjugator, relator, exponent) in derivation order.
    let mut derivation: Vec<(Vec<Generator>, Relator, i8)> = Vec::new();
    let mut cur = reduced(w.letters().to_vec());
    while let Some(p) = cur.windows(2).position(|x| x[0].kind == GenKind::Tau && x[1].kind != GenKind::Tau) {
        let prefix = &cur[..p];
        if cur[p + 1].kind == GenKind::Sigma {
            let mut g = prefix.to_vec();
            g.push(sigma_inv);
            derivation.push((reduced(g), Relator::Stst, -1));
            cur.splice(p..p + 2, [sigma_inv, tau]);
        } else {
            derivation.push((prefix.to_vec(), Relator::Stst, 1));
            cur.splice(p..p + 2, [sigma, tau]);
        }
        cur = reduced(cur);
    }

    let exponent: i64 = cur.iter().map(|g| g.exponent()).sum();
    let leftover_tau = cur.iter().any(|g| g.kind == GenKind::Tau);
    if leftover_tau || (m == 0 && exponent != 0) || (m > 0 && exponent % m as i64 != 0) {
        return Err(Error::NotInKernel { m });
    }
    if let Some(count) = exponent.unsigned_abs().checked_div(m) {
        let eps = if exponent > 0 { -1 } else { 1 };
        for _ in 0..count {
            derivation.push((Vec::new(), Relator::SigmaPower, eps));
        }
    }

    let steps = derivation
        .into_iter()
        .rev()
        .map(|(g, relator, eps)| CertificateStep {
            conjugator: BraidWord::new(2, g).expect("two strands"),
            relator,
            sign: -eps,
        })
        .collect();
    Ok(RelatorCertificate { word: w.clone(), m, steps })
}

/// A product of `factors` conjugates `g r^{±1} g⁻¹` of the relators, with
/// random conjugators of length `conj_len`.
pub fn random_kernel_word<R: Rng + ?Sized>(m: u64, factors: usize, conj_len: usize, rng: &mut R) -> Result<BraidWord> {
    let mut acc = BraidWord::identity(2);
    for _ in 0..factors {
        let relator = if m == 0 || rng.gen_bool(0.5) { Relator::Stst } else { Relator::SigmaPower };
        let r = relator.word(m);
        let r = if rng.gen_bool(0.5) { r.inverse() } else { r };
        let g = random_word_with(2, conj_len, Alphabet::Full, rng)?;
        acc = acc.concat(&g)?.concat(&r)?.concat(&g.inverse())?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::super::verify_certificate;
    use super::*;
    use crate::word::WordEnumerator;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(text: &str) -> BraidWord {
        BraidWord::parse(text, 2).unwrap()
    }

    #[test]
    fn single_step_certificates() {
        let c = derive_certificate(&w("s1 t1 s1 t1"), 5).unwrap();
        assert_eq!(
            c.steps,
            vec![CertificateStep { conjugator: BraidWord::identity(2), relator: Relator::Stst, sign: 1 }]
        );
        assert!(verify_certificate(&c).unwrap());

        let c = derive_certificate(&w("s1^5"), 5).unwrap();
        assert_eq!(
            c.steps,
            vec![CertificateStep { conjugator: BraidWord::identity(2), relator: Relator::SigmaPower, sign: 1 }]
        );
        assert!(verify_certificate(&c).unwrap());

        let c = derive_certificate(&w("s1^-10"), 5).unwrap();
        assert_eq!(c.steps.len(), 2);
        assert!(c.steps.iter().all(|s| s.sign == -1));
        assert!(verify_certificate(&c).unwrap());

        assert!(derive_certificate(&BraidWord::identity(2), 3).unwrap().steps.is_empty());
        assert!(matches!(derive_certificate(&w("t1"), 5), Err(Error::NotInKernel { m: 5 })));
        assert!(derive_certificate(&BraidWord::identity(3), 5).is_err());
    }

    #[test]
    fn conjugated_relators_certify() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for m in [0u64, 1, 2, 3, 4, 7] {
            for _ in 0..50 {
                let g = random_word_with(2, rng.gen_range(0..=10), Alphabet::Full, &mut rng).unwrap();
                let word = g.concat(&w("s1 t1 s1 t1")).unwrap().concat(&g.inverse()).unwrap();
                assert!(verify_certificate(&derive_certificate(&word, m).unwrap()).unwrap());
                let word = random_kernel_word(m, 4, 5, &mut rng).unwrap();
                assert!(verify_certificate(&derive_certificate(&word, m).unwrap()).unwrap(), "{word}");
            }
        }
    }

    #[test]
    fn exhaustive_kernel_words_certify() {
        for word in WordEnumerator::new(2, 7, Alphabet::Full, 1_000_000).unwrap() {
            for m in 3..=5 {
                if q_m(&word, m).unwrap().is_identity() {
                    assert!(verify_certificate(&derive_certificate(&word, m).unwrap()).unwrap(), "{word} m={m}");
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let c = derive_certificate(&w("t1 s1 t1 s1"), 3).unwrap();
        let text = serde_json::to_string(&c.to_json()).unwrap();
        assert_eq!(text, r#"{"word":"t1 s1 t1 s1","m":3,"steps":[{"conjugator":"s1^-1","relator":"stst","sign":1}]}"#);
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(RelatorCertificate::from_json(&back).unwrap(), c);
        let mut bad = back.clone();
        bad.steps[0].sign = 2;
        assert!(RelatorCertificate::from_json(&bad).is_err());
        bad.steps[0].sign = 1;
        bad.steps[0].relator = "tsts".into();
        assert!(RelatorCertificate::from_json(&bad).is_err());
    }
}
