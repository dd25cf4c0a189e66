//! Permutations of `{1, …, n}`.
//!
//! Composition follows word order: `p.then(q)` applies `p` first, then `q`.
//! With permutation matrices `P[i][p(i)] = 1` this makes
//! `matrix(p.then(q)) = matrix(p) · matrix(q)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images: images[i] = p(i).
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// The transposition `(i i+1)` on `n` points, `i` 1-based.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.apply_adjacent_transposition(i);
        p
    }

    /// Builds from 0-based images, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from 1-based images as written in cycle-free notation.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let zero: Option<Vec<usize>> = images.iter().map(|&v| v.checked_sub(1)).collect();
        match zero {
            Some(v) => Permutation::from_images(v),
            None => Err(Error::InvalidArgument("images must be >= 1".into())),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 0-based images.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "permutation size mismatch");
        Permutation { images: self.images.iter().map(|&v| other.images[v]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// Replaces `self` by `self.then((i i+1))`, `i` 1-based.
    pub fn apply_adjacent_transposition(&mut self, i: usize) {
        let (a, b) = (i - 1, i);
        for v in &mut self.images {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i8 {
        let mut visited = vec![false; self.len()];
        let mut transpositions = 0usize;
        for start in 0..self.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                x = self.images[x];
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Every permutation of `n` points in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation { images: current.clone() });
            // Next lexicographic permutation.
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("pivot exists");
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut visited = vec![false; self.len()];
        let mut wrote = false;
        for start in 0..self.len() {
            if visited[start] || self.images[start] == start {
                continue;
            }
            f.write_str("(")?;
            let mut x = start;
            let mut first = true;
            while !visited[x] {
                visited[x] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.images[x];
            }
            f.write_str(")")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_word_order() {
        // (1 2) then (2 3): 1 -> 2 -> 3.
        let p = Permutation::transposition(3, 1).then(&Permutation::transposition(3, 2));
        assert_eq!(p.image(0), 2);
        assert_eq!(p.to_string(), "(1 3 2)");
    }

    #[test]
    fn inverse_and_sign() {
        for p in Permutation::all(4) {
            assert!(p.then(&p.inverse()).is_identity());
            assert_eq!(p.sign(), p.inverse().sign());
        }
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::transposition(4, 2).sign(), -1);
        let q = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(q.sign(), 1);
        assert!(Permutation::from_one_based(&[1, 1]).is_err());
    }

    #[test]
    fn sign_is_multiplicative() {
        let all = Permutation::all(4);
        for p in &all {
            for q in &all {
                assert_eq!(p.then(q).sign(), p.sign() * q.sign());
            }
        }
    }
}
