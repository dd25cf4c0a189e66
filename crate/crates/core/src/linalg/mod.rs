//! Exact square-matrix arithmetic over `Z[t, t⁻¹]`, `Z`, and `Z/mZ`.
//! No floating point anywhere.

mod int;
mod laurent;
mod modular;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use int::IntMatrix;
pub use laurent::{LaurentMatrix, LaurentPoly};
pub use modular::{mod_inverse, ModMatrix};

use crate::error::{Error, Result};

/// Wire form of a matrix: integers as decimal strings, `mod` null over `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    #[serde(rename = "mod")]
    pub modulus: Option<u64>,
    pub rows: Vec<Vec<String>>,
}

impl MatrixJson {
    fn parse_entries(&self) -> Result<Vec<BigInt>> {
        if self.n == 0 || self.rows.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: self.rows.len() });
        }
        let mut out = Vec::with_capacity(self.n * self.n);
        for row in &self.rows {
            if row.len() != self.n {
                return Err(Error::DimensionMismatch { left: self.n, right: row.len() });
            }
            for cell in row {
                let v: BigInt = cell
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("matrix entry {cell:?} is not an integer")))?;
                out.push(v);
            }
        }
        Ok(out)
    }
}

fn write_aligned(f: &mut fmt::Formatter<'_>, n: usize, cells: &[String]) -> fmt::Result {
    let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
    for (r, row) in cells.chunks(n).enumerate() {
        if r > 0 {
            writeln!(f)?;
        }
        f.write_str("[")?;
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{cell:>width$}")?;
        }
        f.write_str("]")?;
    }
    Ok(())
}
