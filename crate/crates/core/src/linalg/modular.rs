use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{IntMatrix, MatrixJson};
use crate::error::{Error, Result};

/// Square matrix over `Z/mZ` with entries in `[0, m)`, row-major.
///
/// For `m = 1` every entry is 0 and every matrix equals the identity of the
/// trivial ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMatrix {
    n: usize,
    modulus: u64,
    entries: Vec<u64>,
}

impl ModMatrix {
    pub fn identity(n: usize, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be >= 1");
        let one = 1 % modulus;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = one;
        }
        ModMatrix { n, modulus, entries }
    }

    pub(crate) fn from_reduced(n: usize, modulus: u64, entries: Vec<u64>) -> Self {
        debug_assert!(entries.iter().all(|&v| v < modulus));
        ModMatrix { n, modulus, entries }
    }

    /// Reduces arbitrary integer rows into `[0, m)`.
    pub fn from_rows(rows: &[Vec<i64>], modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(0));
        }
        IntMatrix::from_rows(rows)?.reduce_mod(modulus as i64)
    }

    /// Identity with a 2×2 block at `(i, i+1)`, `i` 1-based, entries reduced.
    pub fn with_block(n: usize, modulus: u64, i: usize, block: [[i64; 2]; 2]) -> Self {
        let mut m = ModMatrix::identity(n, modulus);
        let (r, s) = (i - 1, i);
        m.entries[r * n + r] = reduce_i64(block[0][0], modulus);
        m.entries[r * n + s] = reduce_i64(block[0][1], modulus);
        m.entries[s * n + r] = reduce_i64(block[1][0], modulus);
        m.entries[s * n + s] = reduce_i64(block[1][1], modulus);
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.n + col]
    }

    pub fn mul(&self, other: &ModMatrix) -> Result<ModMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: other.modulus });
        }
        let n = self.n;
        let m = self.modulus as u128;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: u128 = 0;
                for k in 0..n {
                    acc = (acc + self.entries[i * n + k] as u128 * other.entries[k * n + j] as u128) % m;
                }
                entries[i * n + j] = acc as u64;
            }
        }
        Ok(ModMatrix { n, modulus: self.modulus, entries })
    }

    /// In-place `self ← self · G` for the block generator `G` at `(i, i+1)`.
    pub fn mul_block_right(&mut self, i: usize, block: [[i64; 2]; 2]) {
        let n = self.n;
        let m = self.modulus as u128;
        let b: [[u128; 2]; 2] = [
            [reduce_i64(block[0][0], self.modulus) as u128, reduce_i64(block[0][1], self.modulus) as u128],
            [reduce_i64(block[1][0], self.modulus) as u128, reduce_i64(block[1][1], self.modulus) as u128],
        ];
        let (c0, c1) = (i - 1, i);
        for r in 0..n {
            let x = self.entries[r * n + c0] as u128;
            let y = self.entries[r * n + c1] as u128;
            self.entries[r * n + c0] = ((x * b[0][0] + y * b[1][0]) % m) as u64;
            self.entries[r * n + c1] = ((x * b[0][1] + y * b[1][1]) % m) as u64;
        }
    }

    pub fn pow(&self, mut k: u64) -> ModMatrix {
        let mut base = self.clone();
        let mut acc = ModMatrix::identity(self.n, self.modulus);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            base = base.mul(&base).expect("same shape");
            k >>= 1;
        }
        acc
    }

    /// Always true for `m = 1`.
    pub fn is_identity(&self) -> bool {
        *self == ModMatrix::identity(self.n, self.modulus)
    }

    /// Entries lifted to their representatives in `[0, m)`.
    pub fn lift(&self) -> IntMatrix {
        IntMatrix::from_flat(self.n, self.entries.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Determinant in `[0, m)`, via the exact integer determinant of the lift.
    pub fn determinant(&self) -> u64 {
        let det = self.lift().determinant();
        det.mod_floor(&BigInt::from(self.modulus)).to_u64().expect("residue fits")
    }

    /// `adj(M) · det(M)⁻¹ mod m`; fails when `det(M)` is not a unit.
    pub fn inverse(&self) -> Result<ModMatrix> {
        let det = self.determinant();
        let det_inv = mod_inverse(det, self.modulus).ok_or(Error::NotInvertible { modulus: self.modulus })?;
        let adj = self.lift().adjugate().reduce_mod(self.modulus as i64)?;
        let m = self.modulus as u128;
        let entries = adj.entries.iter().map(|&v| ((v as u128 * det_inv as u128) % m) as u64).collect();
        Ok(ModMatrix { n: self.n, modulus: self.modulus, entries })
    }

    /// Bytes per entry in [`canonical_bytes`](Self::canonical_bytes): the
    /// fewest bytes holding `m - 1`, at least one.
    pub fn entry_width(modulus: u64) -> usize {
        let bits = 64 - (modulus.saturating_sub(1)).leading_zeros() as usize;
        bits.div_ceil(8).max(1)
    }

    /// Injective encoding: `n` as u32 LE, `m` as u64 LE, then entries
    /// row-major, each in [`entry_width`](Self::entry_width) little-endian bytes.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let width = ModMatrix::entry_width(self.modulus);
        let mut out = Vec::with_capacity(12 + width * self.entries.len());
        out.extend_from_slice(&(self.n as u32).to_le_bytes());
        out.extend_from_slice(&self.modulus.to_le_bytes());
        for &v in &self.entries {
            out.extend_from_slice(&v.to_le_bytes()[..width]);
        }
        out
    }

    pub fn from_canonical_bytes(bytes: &[u8]) -> Result<ModMatrix> {
        let bad = |msg: &str| Error::InvalidArgument(format!("canonical bytes: {msg}"));
        if bytes.len() < 12 {
            return Err(bad("truncated header"));
        }
        let n = u32::from_le_bytes(bytes[0..4].try_into().expect("4 bytes")) as usize;
        let modulus = u64::from_le_bytes(bytes[4..12].try_into().expect("8 bytes"));
        if modulus == 0 {
            return Err(Error::InvalidModulus(0));
        }
        let width = ModMatrix::entry_width(modulus);
        let body = &bytes[12..];
        if body.len() != width * n * n {
            return Err(bad("wrong length"));
        }
        let mut entries = Vec::with_capacity(n * n);
        for chunk in body.chunks(width) {
            let mut buf = [0u8; 8];
            buf[..width].copy_from_slice(chunk);
            let v = u64::from_le_bytes(buf);
            if v >= modulus {
                return Err(bad("entry out of range"));
            }
            entries.push(v);
        }
        Ok(ModMatrix { n, modulus, entries })
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.n,
            modulus: Some(self.modulus),
            rows: self.entries.chunks(self.n).map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let modulus = json.modulus.ok_or_else(|| Error::InvalidArgument("missing modulus".into()))?;
        let entries = json.parse_entries()?;
        IntMatrix::from_flat(json.n, entries).reduce_mod(modulus as i64)
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        super::write_aligned(f, self.n, &cells)
    }
}

pub(crate) fn reduce_i64(v: i64, modulus: u64) -> u64 {
    (v as i128).rem_euclid(modulus as i128) as u64
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`. Every value is a unit mod 1.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let g = (a as i128).extended_gcd(&(m as i128));
    (g.gcd == 1).then(|| g.x.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn transposition_squared_mod_2() {
        let b = ModMatrix::from_rows(&[vec![0, 1], vec![1, 0]], 2).unwrap();
        assert!(b.mul(&b).unwrap().is_identity());
        assert!(!b.is_identity());
    }

    #[test]
    fn mismatches() {
        let a = ModMatrix::identity(2, 3);
        assert!(matches!(a.mul(&ModMatrix::identity(2, 5)), Err(Error::ModulusMismatch { left: 3, right: 5 })));
        assert!(matches!(a.mul(&ModMatrix::identity(3, 3)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn trivial_ring() {
        let m = ModMatrix::from_rows(&[vec![5, 7], vec![-3, 2]], 1).unwrap();
        assert!(m.is_identity());
        assert_eq!(m, ModMatrix::identity(2, 1));
        assert_eq!(m.determinant(), 0);
        assert!(m.inverse().unwrap().is_identity());
    }

    #[test]
    fn inverse_by_adjugate() {
        let a = ModMatrix::from_rows(&[vec![2, -1], vec![1, 0]], 7).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(inv, ModMatrix::from_rows(&[vec![0, 1], vec![-1, 2]], 7).unwrap());
        assert!(a.mul(&inv).unwrap().is_identity());
        let singular = ModMatrix::from_rows(&[vec![2, 0], vec![0, 1]], 4).unwrap();
        assert!(matches!(singular.inverse(), Err(Error::NotInvertible { modulus: 4 })));
    }

    #[test]
    fn canonical_bytes_examples() {
        let id = ModMatrix::identity(2, 3);
        let b = ModMatrix::from_rows(&[vec![0, 1], vec![1, 0]], 3).unwrap();
        assert_eq!(id.canonical_bytes(), ModMatrix::identity(2, 3).canonical_bytes());
        assert_ne!(id.canonical_bytes(), b.canonical_bytes());
        assert_eq!(id.canonical_bytes().len(), 12 + 4);
        assert_eq!(ModMatrix::entry_width(1), 1);
        assert_eq!(ModMatrix::entry_width(256), 1);
        assert_eq!(ModMatrix::entry_width(257), 2);
        // Same entries, different modulus.
        assert_ne!(ModMatrix::identity(2, 3).canonical_bytes(), ModMatrix::identity(2, 5).canonical_bytes());
    }

    #[test]
    fn json_shape() {
        let b = ModMatrix::from_rows(&[vec![2, -1], vec![1, 0]], 3).unwrap();
        let text = serde_json::to_string(&b.to_json()).unwrap();
        assert_eq!(text, r#"{"n":2,"mod":3,"rows":[["2","2"],["1","0"]]}"#);
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ModMatrix::from_json(&back).unwrap(), b);
    }

    fn matrix(n: usize, modulus: u64) -> impl Strategy<Value = ModMatrix> {
        prop::collection::vec(0..modulus, n * n).prop_map(move |e| ModMatrix { n, modulus, entries: e })
    }

    proptest! {
        #[test]
        fn canonical_bytes_round_trip(m in (1u64..400).prop_flat_map(|m| matrix(3, m))) {
            let bytes = m.canonical_bytes();
            prop_assert_eq!(ModMatrix::from_canonical_bytes(&bytes).unwrap(), m);
        }

        #[test]
        fn ring_laws((a, b, c) in (1u64..40).prop_flat_map(|m| (matrix(3, m), matrix(3, m), matrix(3, m)))) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            let m = a.modulus() as u128;
            prop_assert_eq!(ab.determinant() as u128, (a.determinant() as u128 * b.determinant() as u128) % m);
        }
    }
}
