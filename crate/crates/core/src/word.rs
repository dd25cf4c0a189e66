//! Words in the generators of the virtual braid group.
//!
//! A [`BraidWord`] carries its strand count `n` and a list of letters
//! `σ_i`, `σ_i⁻¹`, `τ_i` with `1 <= i <= n - 1`. Letters are read left to
//! right; the leftmost letter is applied first. No relation other than
//! `σ_i σ_i⁻¹ = e` and `τ_i² = e` is ever applied to a word: equality in
//! the group for `n >= 3` is not decided here.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on the number of words an enumeration may produce.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    Sigma,
    SigmaInv,
    Tau,
}

/// One letter of a braid word. `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GenKind,
    pub index: usize,
}

impl Generator {
    pub const fn sigma(index: usize) -> Self {
        Generator { kind: GenKind::Sigma, index }
    }

    pub const fn sigma_inv(index: usize) -> Self {
        Generator { kind: GenKind::SigmaInv, index }
    }

    pub const fn tau(index: usize) -> Self {
        Generator { kind: GenKind::Tau, index }
    }

    /// `τ_i` is its own inverse.
    pub const fn inverse(self) -> Self {
        let kind = match self.kind {
            GenKind::Sigma => GenKind::SigmaInv,
            GenKind::SigmaInv => GenKind::Sigma,
            GenKind::Tau => GenKind::Tau,
        };
        Generator { kind, index: self.index }
    }

    pub const fn is_classical(self) -> bool {
        !matches!(self.kind, GenKind::Tau)
    }

    /// Sign of the exponent: +1 for `σ_i` and `τ_i`, -1 for `σ_i⁻¹`.
    pub const fn exponent(self) -> i64 {
        match self.kind {
            GenKind::SigmaInv => -1,
            _ => 1,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::Sigma => write!(f, "s{}", self.index),
            GenKind::SigmaInv => write!(f, "s{}^-1", self.index),
            GenKind::Tau => write!(f, "t{}", self.index),
        }
    }
}

/// Which letters an enumeration or sampler may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `σ_i`, `σ_i⁻¹`, `τ_i` for every index.
    Full,
    /// `σ_i`, `σ_i⁻¹` only (words in the classical braid group).
    Classical,
}

impl Alphabet {
    /// Letters in canonical order: for each index `i` ascending,
    /// `σ_i`, `σ_i⁻¹`, then `τ_i`.
    pub fn letters(self, strands: usize) -> Vec<Generator> {
        let mut out = Vec::new();
        for i in 1..strands {
            out.push(Generator::sigma(i));
            out.push(Generator::sigma_inv(i));
            if self == Alphabet::Full {
                out.push(Generator::tau(i));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Generator>,
}

impl BraidWord {
    /// The empty word (identity) on `strands` strands.
    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn new(strands: usize, letters: Vec<Generator>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::TooFewStrands { min: 1, found: 0 });
        }
        for g in &letters {
            check_index(g.index, strands)?;
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_classical(&self) -> bool {
        self.letters.iter().all(|g| g.is_classical())
    }

    pub fn tau_count(&self) -> usize {
        self.letters.iter().filter(|g| !g.is_classical()).count()
    }

    /// Reversed word with every letter inverted.
    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|g| g.inverse()).collect() }
    }

    /// Concatenation without any reduction.
    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// The word repeated `k` times; negative `k` repeats the inverse.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let reps = k.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(base.len() * reps);
        for _ in 0..reps {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// `σ_i^k` as a word of `|k|` letters.
    pub fn sigma_power(strands: usize, index: usize, k: i64) -> Result<Self> {
        check_index(index, strands)?;
        let letter = if k >= 0 { Generator::sigma(index) } else { Generator::sigma_inv(index) };
        Ok(BraidWord { strands, letters: vec![letter; k.unsigned_abs() as usize] })
    }

    /// Cancels adjacent `σ_i σ_i⁻¹`, `σ_i⁻¹ σ_i` and `τ_i τ_i` until none
    /// remain. The stack pass yields the unique reduced form.
    pub fn free_reduce(&self) -> Self {
        let mut stack: Vec<Generator> = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            if stack.last() == Some(&g.inverse()) {
                stack.pop();
            } else {
                stack.push(g);
            }
        }
        BraidWord { strands: self.strands, letters: stack }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[1] != w[0].inverse())
    }

    /// `π_v`: every letter with index `i` maps to the transposition `(i i+1)`.
    pub fn underlying_permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for g in &self.letters {
            p.apply_adjacent_transposition(g.index);
        }
        p
    }

    /// `π_K`: `σ_i^{±1}` maps to the identity, `τ_i` to `(i i+1)`.
    pub fn kure_projection(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for g in self.letters.iter().filter(|g| !g.is_classical()) {
            p.apply_adjacent_transposition(g.index);
        }
        p
    }

    /// Writes `w = pure · ι(π_v(w))` with `pure = w · ι(π_v(w))⁻¹`.
    pub fn semidirect_factor(&self) -> (BraidWord, Permutation) {
        let perm = self.underlying_permutation();
        let section = tau_section(&perm);
        let pure = self.concat(&section.inverse()).expect("section has the same strand count");
        (pure, perm)
    }

    /// Parses the word grammar; exponents are expanded into repeated letters.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        parse_word(text, strands)
    }
}

impl fmt::Display for BraidWord {
    /// Single-space separated letters, one term per letter.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

fn check_index(index: usize, strands: usize) -> Result<()> {
    if index == 0 || index >= strands {
        Err(Error::IndexOutOfRange { index, strands })
    } else {
        Ok(())
    }
}

/// `ι`: the permutation written as adjacent transpositions `τ_i` by
/// selection sort. `underlying_permutation(tau_section(p)) == p` and the
/// result has at most `n(n-1)/2` letters.
pub fn tau_section(p: &Permutation) -> BraidWord {
    let n = p.len();
    let mut arrangement: Vec<usize> = p.images().to_vec();
    let mut letters = Vec::new();
    for target in 0..n {
        let mut j = arrangement.iter().position(|&v| v == target).expect("permutation contains every value");
        while j > target {
            arrangement.swap(j - 1, j);
            letters.push(Generator::tau(j));
            j -= 1;
        }
    }
    BraidWord { strands: n, letters }
}

/// Parser for
/// `word := ws* (term ws+)* term?`, `term := ("s"|"t") index ("^" signed_int)?`.
pub fn parse_word(text: &str, strands: usize) -> Result<BraidWord> {
    if strands == 0 {
        return Err(Error::TooFewStrands { min: 1, found: 0 });
    }
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut letters = Vec::new();
    let syntax = |position: usize, message: &str| Error::Syntax { position, message: message.to_string() };

    while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
        pos += 1;
    }
    while pos < bytes.len() {
        let kind_byte = bytes[pos];
        if kind_byte != b's' && kind_byte != b't' {
            return Err(syntax(pos, "expected 's' or 't'"));
        }
        pos += 1;
        let index_start = pos;
        let index = read_positive(bytes, &mut pos).ok_or_else(|| syntax(index_start, "expected a positive index"))?;
        let mut exponent: i64 = 1;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let negative = pos < bytes.len() && bytes[pos] == b'-';
            if negative {
                pos += 1;
            }
            let exp_start = pos;
            let magnitude =
                read_positive(bytes, &mut pos).ok_or_else(|| syntax(exp_start, "expected a positive exponent"))?;
            let magnitude = i64::try_from(magnitude).map_err(|_| syntax(exp_start, "exponent too large"))?;
            exponent = if negative { -magnitude } else { magnitude };
        }
        let index = usize::try_from(index).map_err(|_| syntax(index_start, "index too large"))?;
        check_index(index, strands)?;
        let letter = match (kind_byte, exponent < 0) {
            (b's', false) => Generator::sigma(index),
            (b's', true) => Generator::sigma_inv(index),
            _ => Generator::tau(index),
        };
        letters.extend(std::iter::repeat_n(letter, exponent.unsigned_abs() as usize));

        if pos < bytes.len() {
            if !bytes[pos].is_ascii_whitespace() {
                return Err(syntax(pos, "expected whitespace between terms"));
            }
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
        }
    }
    Ok(BraidWord { strands, letters })
}

/// Parses with the strand count inferred as one more than the largest
/// index, and at least 2.
pub fn parse_word_infer(text: &str) -> Result<BraidWord> {
    let wide = parse_word(text, usize::MAX)?;
    let strands = wide.letters.iter().map(|g| g.index + 1).max().unwrap_or(2).max(2);
    Ok(BraidWord { strands, letters: wide.letters })
}

fn read_positive(bytes: &[u8], pos: &mut usize) -> Option<u64> {
    let start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == start {
        return None;
    }
    let digits = std::str::from_utf8(&bytes[start..*pos]).ok()?;
    let value: u64 = digits.parse().ok()?;
    (value > 0).then_some(value)
}

/// Uniform i.i.d. letters over the `3(n-1)` letter alphabet, deterministic
/// in `seed`.
pub fn random_word(strands: usize, length: usize, seed: u64) -> Result<BraidWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_word_with(strands, length, Alphabet::Full, &mut rng)
}

pub fn random_word_with<R: Rng + ?Sized>(
    strands: usize,
    length: usize,
    alphabet: Alphabet,
    rng: &mut R,
) -> Result<BraidWord> {
    if strands < 2 {
        return Err(Error::TooFewStrands { min: 2, found: strands });
    }
    let letters = alphabet.letters(strands);
    let word = (0..length).map(|_| letters[rng.gen_range(0..letters.len())]).collect();
    Ok(BraidWord { strands, letters: word })
}

/// `w · ι(π_v(w))⁻¹` for `w = random_word(n, length, seed)`.
pub fn random_pure_word(strands: usize, length: usize, seed: u64) -> Result<BraidWord> {
    Ok(random_word(strands, length, seed)?.semidirect_factor().0)
}

/// Number of freely reduced words of length `<= max_len` over an alphabet of
/// `a` letters in which every letter has exactly one cancelling partner.
pub fn count_reduced_words(alphabet_size: u64, max_len: usize) -> u128 {
    let a = alphabet_size as u128;
    let mut total: u128 = 1;
    let mut layer: u128 = 1;
    for k in 1..=max_len {
        layer = if k == 1 { a } else { layer.saturating_mul(a.saturating_sub(1)) };
        if layer == 0 {
            break;
        }
        total = total.saturating_add(layer);
    }
    total
}

/// All freely reduced words of length `<= max_len`, in length-then-lexicographic
/// order over [`Alphabet::letters`].
pub fn enumerate_words(strands: usize, max_len: usize) -> Result<WordEnumerator> {
    WordEnumerator::new(strands, max_len, Alphabet::Full, DEFAULT_ENUMERATION_BUDGET)
}

/// Stream of freely reduced words. Single consumer.
#[derive(Debug, Clone)]
pub struct WordEnumerator {
    strands: usize,
    alphabet: Vec<Generator>,
    partner: Vec<usize>,
    max_len: usize,
    digits: Option<Vec<usize>>,
    started: bool,
}

impl WordEnumerator {
    pub fn new(strands: usize, max_len: usize, alphabet: Alphabet, budget: u64) -> Result<Self> {
        if strands == 0 {
            return Err(Error::TooFewStrands { min: 1, found: 0 });
        }
        let letters = alphabet.letters(strands);
        let total = count_reduced_words(letters.len() as u64, max_len);
        if total > budget as u128 {
            return Err(Error::BudgetExceeded { explored: u64::try_from(total).unwrap_or(u64::MAX), budget });
        }
        let partner = letters
            .iter()
            .map(|g| letters.iter().position(|h| *h == g.inverse()).expect("alphabet closed under inverse"))
            .collect();
        Ok(WordEnumerator { strands, alphabet: letters, partner, max_len, digits: None, started: false })
    }

    /// Exact number of words the stream yields.
    pub fn total(&self) -> u128 {
        count_reduced_words(self.alphabet.len() as u64, self.max_len)
    }

    fn smallest_after(&self, prev: Option<usize>, from: usize) -> Option<usize> {
        (from..self.alphabet.len()).find(|&v| prev.is_none_or(|p| self.partner[p] != v))
    }

    fn first_of_length(&self, len: usize) -> Option<Vec<usize>> {
        let mut digits = Vec::with_capacity(len);
        for j in 0..len {
            let prev = if j == 0 { None } else { Some(digits[j - 1]) };
            digits.push(self.smallest_after(prev, 0)?);
        }
        Some(digits)
    }

    fn advance_same_length(&self, digits: &mut [usize]) -> bool {
        let len = digits.len();
        for pos in (0..len).rev() {
            let prev = if pos == 0 { None } else { Some(digits[pos - 1]) };
            if let Some(v) = self.smallest_after(prev, digits[pos] + 1) {
                digits[pos] = v;
                let mut ok = true;
                for j in pos + 1..len {
                    match self.smallest_after(Some(digits[j - 1]), 0) {
                        Some(w) => digits[j] = w,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    return true;
                }
            }
        }
        false
    }

    fn to_word(&self, digits: &[usize]) -> BraidWord {
        BraidWord { strands: self.strands, letters: digits.iter().map(|&d| self.alphabet[d]).collect() }
    }
}

impl Iterator for WordEnumerator {
    type Item = BraidWord;

    fn next(&mut self) -> Option<BraidWord> {
        if !self.started {
            self.started = true;
            self.digits = Some(Vec::new());
            return Some(BraidWord::identity(self.strands));
        }
        let mut digits = self.digits.take()?;
        if !digits.is_empty() && self.advance_same_length(&mut digits) {
            let word = self.to_word(&digits);
            self.digits = Some(digits);
            return Some(word);
        }
        let mut len = digits.len() + 1;
        while len <= self.max_len {
            if let Some(first) = self.first_of_length(len) {
                let word = self.to_word(&first);
                self.digits = Some(first);
                return Some(word);
            }
            len += 1;
        }
        None
    }
}
