//! Certificate checking by syllable reduction in `Z ∗ Z/2Z` alone. Nothing
//! here calls into the rewriting code of the deriver.

use super::certificate::{CertificateJson, Relator, RelatorCertificate};
use crate::error::{Error, Result};
use crate::word::{BraidWord, GenKind};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tok {
    Sig(i64),
    Tau,
}

#[derive(Default)]
struct Reducer {
    stack: Vec<Tok>,
}

impl Reducer {
    fn feed(&mut self, tok: Tok) {
        match (self.stack.last().copied(), tok) {
            (Some(Tok::Tau), Tok::Tau) => {
                self.stack.pop();
            }
            (Some(Tok::Sig(a)), Tok::Sig(b)) => {
                self.stack.pop();
                if a + b != 0 {
                    self.stack.push(Tok::Sig(a + b));
                }
            }
            (_, t) => self.stack.push(t),
        }
    }

    fn feed_letters(&mut self, w: &BraidWord, inverted: bool) {
        let toks = w.letters().iter().map(|g| match g.kind {
            GenKind::Sigma => Tok::Sig(1),
            GenKind::SigmaInv => Tok::Sig(-1),
            GenKind::Tau => Tok::Tau,
        });
        if inverted {
            for t in toks.rev() {
                self.feed(match t {
                    Tok::Sig(e) => Tok::Sig(-e),
                    Tok::Tau => Tok::Tau,
                });
            }
        } else {
            for t in toks {
                self.feed(t);
            }
        }
    }
}

/// Checks that `word · ∏_j g_j r_j^{-sign_j} g_j⁻¹` reduces to nothing.
pub fn verify_certificate(cert: &RelatorCertificate) -> Result<bool> {
    if cert.word.strands() != 2 {
        return Err(Error::WrongStrandCount { expected: 2, found: cert.word.strands() });
    }
    let mut r = Reducer::default();
    r.feed_letters(&cert.word, false);
    for step in &cert.steps {
        if step.conjugator.strands() != 2 {
            return Err(Error::WrongStrandCount { expected: 2, found: step.conjugator.strands() });
        }
        if step.sign != 1 && step.sign != -1 {
            return Ok(false);
        }
        let e = -i64::from(step.sign);
        r.feed_letters(&step.conjugator, false);
        match step.relator {
            Relator::Stst if e > 0 => {
                [Tok::Sig(1), Tok::Tau, Tok::Sig(1), Tok::Tau].into_iter().for_each(|t| r.feed(t))
            }
            Relator::Stst => [Tok::Tau, Tok::Sig(-1), Tok::Tau, Tok::Sig(-1)].into_iter().for_each(|t| r.feed(t)),
            Relator::SigmaPower if cert.m == 0 => return Ok(false),
            Relator::SigmaPower => r.feed(Tok::Sig(e * cert.m as i64)),
        }
        r.feed_letters(&step.conjugator, true);
    }
    Ok(r.stack.is_empty())
}

/// Parses the JSON certificate format and verifies it.
pub fn verify_certificate_json(text: &str) -> Result<bool> {
    let json: CertificateJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("certificate JSON: {e}")))?;
    verify_certificate(&RelatorCertificate::from_json(&json)?)
}
