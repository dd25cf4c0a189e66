use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{MatrixJson, ModMatrix};
use crate::error::{Error, Result};

/// Square matrix over `Z` with arbitrary-precision entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix { n, entries }
    }

    pub(crate) fn from_flat(n: usize, entries: Vec<BigInt>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        IntMatrix { n, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be >= 1".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: row.len() });
            }
            entries.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        Ok(IntMatrix { n, entries })
    }

    /// Identity with a 2×2 integer block at rows/columns `(i, i+1)`, `i` 1-based.
    pub fn with_block(n: usize, i: usize, block: [[i64; 2]; 2]) -> Self {
        let mut m = IntMatrix::identity(n);
        let (r, s) = (i - 1, i);
        m.entries[r * n + r] = block[0][0].into();
        m.entries[r * n + s] = block[0][1].into();
        m.entries[s * n + r] = block[1][0].into();
        m.entries[s * n + s] = block[1][1].into();
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.n)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(IntMatrix { n, entries })
    }

    /// In-place `self ← self · G` where `G` is the identity with `block` at
    /// columns `(i, i+1)`. Only those two columns change.
    pub fn mul_block_right(&mut self, i: usize, block: [[i64; 2]; 2]) {
        let n = self.n;
        let (c0, c1) = (i - 1, i);
        for r in 0..n {
            let x = std::mem::take(&mut self.entries[r * n + c0]);
            let y = std::mem::take(&mut self.entries[r * n + c1]);
            self.entries[r * n + c0] = &x * block[0][0] + &y * block[1][0];
            self.entries[r * n + c1] = &x * block[0][1] + &y * block[1][1];
        }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        self.entries.iter().enumerate().all(|(k, v)| if k / n == k % n { v.is_one() } else { v.is_zero() })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[(n - 1) * n + (n - 1)]
    }

    /// Adjugate (transpose of the cofactor matrix): `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> IntMatrix {
        let n = self.n;
        if n == 1 {
            return IntMatrix::identity(1);
        }
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<BigInt> = (0..n)
                    .filter(|&r| r != i)
                    .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
                    .map(|(r, c)| self.entries[r * n + c].clone())
                    .collect();
                let cofactor = IntMatrix { n: n - 1, entries: minor }.determinant();
                entries[j * n + i] = if (i + j) % 2 == 0 { cofactor } else { -cofactor };
            }
        }
        IntMatrix { n, entries }
    }

    /// Entrywise reduction into `[0, m)`.
    pub fn reduce_mod(&self, m: i64) -> Result<ModMatrix> {
        if m < 1 {
            return Err(Error::InvalidModulus(m));
        }
        let modulus = BigInt::from(m);
        let entries =
            self.entries.iter().map(|v| v.mod_floor(&modulus).to_u64().expect("residue fits in u64")).collect();
        Ok(ModMatrix::from_reduced(self.n, m as u64, entries))
    }

    /// Largest absolute entry, a measure of coefficient growth.
    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.iter().map(|v| v.abs()).max().unwrap_or_default()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.n,
            modulus: None,
            rows: self.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let entries = json.parse_entries()?;
        Ok(IntMatrix { n: json.n, entries })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        super::write_aligned(f, self.n, &cells)
    }
}
