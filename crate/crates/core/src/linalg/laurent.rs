//! Laurent polynomials in `t` with big-integer coefficients, and square
//! matrices over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Sparse map exponent -> coefficient. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    /// `c · t^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Exact value at `t = t0`. Fails when negative powers make the value
    /// non-integral (or `t0 = 0`).
    pub fn eval(&self, t0: i64) -> Result<BigInt> {
        let min_exp = self.terms.keys().next().copied().unwrap_or(0);
        let t = BigInt::from(t0);
        if min_exp >= 0 || t0 == 1 || t0 == -1 {
            let mut acc = BigInt::zero();
            for (&e, c) in &self.terms {
                let power = if t0.abs() == 1 {
                    if t0 == -1 && e.rem_euclid(2) == 1 {
                        -BigInt::one()
                    } else {
                        BigInt::one()
                    }
                } else {
                    num_traits::pow(t.clone(), e as usize)
                };
                acc += c * power;
            }
            return Ok(acc);
        }
        if t0 == 0 {
            return Err(Error::NonIntegralEvaluation { t0 });
        }
        let mut numerator = BigInt::zero();
        for (&e, c) in &self.terms {
            numerator += c * num_traits::pow(t.clone(), (e - min_exp) as usize);
        }
        let denominator = num_traits::pow(t, min_exp.unsigned_abs() as usize);
        let (q, r) = numerator.div_rem(&denominator);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonIntegralEvaluation { t0 })
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents, e.g. `-t + 1` or `t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("t")?,
                1 => write!(f, "{mag}*t")?,
                _ if unit => write!(f, "t^{e}")?,
                _ => write!(f, "{mag}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Square matrix over `Z[t, t⁻¹]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![LaurentPoly::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = LaurentPoly::one();
        }
        LaurentMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be >= 1".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: row.len() });
            }
            entries.extend(row);
        }
        Ok(LaurentMatrix { n, entries })
    }

    /// Identity with the 2×2 `block` placed at rows/columns `(i, i+1)`, `i` 1-based.
    pub fn with_block(n: usize, i: usize, block: [[LaurentPoly; 2]; 2]) -> Self {
        let mut m = LaurentMatrix::identity(n);
        let [[a, b], [c, d]] = block;
        let (r, s) = (i - 1, i);
        m.entries[r * n + r] = a;
        m.entries[r * n + s] = b;
        m.entries[s * n + r] = c;
        m.entries[s * n + s] = d;
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[LaurentPoly]> {
        self.entries.chunks(self.n)
    }

    pub fn mul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let n = self.n;
        let mut entries = vec![LaurentPoly::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] = &entries[i * n + j] + &(a * b);
                    }
                }
            }
        }
        Ok(LaurentMatrix { n, entries })
    }

    pub fn is_identity(&self) -> bool {
        *self == LaurentMatrix::identity(self.n)
    }

    /// Entrywise evaluation at `t = t0`.
    pub fn specialize(&self, t0: i64) -> Result<IntMatrix> {
        let values = self.entries.iter().map(|p| p.eval(t0)).collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_flat(self.n, values))
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        super::write_aligned(f, self.n, &cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t() -> LaurentPoly {
        LaurentPoly::monomial(1, 1)
    }

    fn burau_block() -> LaurentMatrix {
        let one = LaurentPoly::one();
        LaurentMatrix::with_block(2, 1, [[&one - &t(), t()], [one, LaurentPoly::zero()]])
    }

    #[test]
    fn specialize_burau_block() {
        let a = IntMatrix::from_rows(&[vec![2, -1], vec![1, 0]]).unwrap();
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(burau_block().specialize(-1).unwrap(), a);
        assert_eq!(burau_block().specialize(1).unwrap(), b);
        for t0 in [-3, -1, 0, 1, 5] {
            assert!(LaurentMatrix::identity(3).specialize(t0).unwrap().is_identity());
        }
    }

    #[test]
    fn eval_negative_powers() {
        let p = LaurentPoly::from_terms([(-1, 2), (1, 1)]);
        assert_eq!(p.eval(-1).unwrap(), BigInt::from(-3));
        assert_eq!(p.eval(2).unwrap(), BigInt::from(3));
        assert!(matches!(p.eval(3), Err(Error::NonIntegralEvaluation { t0: 3 })));
        assert!(p.eval(0).is_err());
    }

    #[test]
    fn display() {
        assert_eq!((&LaurentPoly::one() - &t()).to_string(), "-t + 1");
        assert_eq!(LaurentPoly::from_terms([(-1, 1), (2, -3)]).to_string(), "-3*t^2 + t^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = &t() - &t();
        assert!(p.is_zero());
        assert_eq!(p, LaurentPoly::zero());
    }

    fn poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..=4, -5i64..=5), 0..5).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn evaluation_is_multiplicative(p in poly(), q in poly(), t0 in prop::sample::select(vec![-1i64, 1])) {
            prop_assert_eq!((&p * &q).eval(t0).unwrap(), p.eval(t0).unwrap() * q.eval(t0).unwrap());
            prop_assert_eq!((&p + &q).eval(t0).unwrap(), p.eval(t0).unwrap() + q.eval(t0).unwrap());
        }

        #[test]
        fn specialize_is_a_homomorphism(
            a in prop::collection::vec(poly(), 4),
            b in prop::collection::vec(poly(), 4),
            c in prop::collection::vec(poly(), 4),
            t0 in prop::sample::select(vec![-1i64, 1]),
        ) {
            let m = |v: Vec<LaurentPoly>| LaurentMatrix::from_rows(vec![v[..2].to_vec(), v[2..].to_vec()]).unwrap();
            let (a, b, c) = (m(a), m(b), m(c));
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                ab.specialize(t0).unwrap(),
                a.specialize(t0).unwrap().mul(&b.specialize(t0).unwrap()).unwrap()
            );
        }
    }
}
