//! Exact computations in the virtual braid group `vB_n`: the virtual integral
//! Burau representation, the congruence subgroups `vB_n[m]`, and the `n = 2`
//! dihedral picture.

pub mod congruence;
pub mod dihedral;
pub mod error;
pub mod image;
pub mod linalg;
pub mod perm;
pub mod rep;
pub mod report;
pub mod suites;
pub mod word;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use word::{parse_word, parse_word_infer, BraidWord, GenKind, Generator};
