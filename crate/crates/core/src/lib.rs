//! Exact arithmetic for the free Lie ring on two generators `a`, `b`.
//!
//! The crate builds the Lyndon–Shirshov basis of each bigraded piece
//! `L_{k,l}`, normalizes bracket expressions into that basis, computes the
//! integer kernel lattices of `Θ(A, B) = [A, a] + [B, b]`, and produces
//! checkable certificates for closed-form identity families in those kernels.

pub mod algebra;
pub mod cli;
pub mod dims;
mod error;
pub mod families;
pub mod oracle;
pub mod theta;
pub mod words;
pub mod zlinalg;

pub use algebra::{assoc_expand, bracket, engel, left_normed, normalize, AssocPoly, Bidegree, BracketExpr, LieElement};
pub use error::{Error, Result};
pub use theta::{KernelCertificate, Source, ThetaMatrix};
pub use words::{BracketTree, Letter, LyndonWord, Word};
pub use zlinalg::{IntMatrix, KernelLattice};
