//! Hofstadter's nested recursions `F_k(n) = n - F_k^k(n-1)`.
//!
//! The crate covers the functions themselves and their right adjoints, the
//! numeration systems built on `A_{k,p} = A_{k,p-1} + A_{k,p-k}`, the
//! associated morphic words, the algebraic numbers `alpha_k` / `beta_k` with
//! the complex roots of `X^k - X^{k-1} - 1`, and an exact certifier for the
//! discrepancy `F_k(n) - alpha_k n`.

pub mod algebraic;
pub mod discrepancy;
pub mod error;
pub mod numeration;
pub mod sequences;
pub mod words;

pub use error::{Error, Result};
pub use numeration::{Decomp, Numeration, Rank};
pub use sequences::{a_combinatorial_oracle, ASeq, FContext};
pub use words::{MorphicWord, SeedImages, Substitution};
