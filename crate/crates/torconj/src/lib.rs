//! Exact conjugacy and block-conjugacy decisions for integer toral
//! automorphisms, with independently verifiable certificates.
//!
//! The library works over a number field K = Q[t]/(f) attached to the common
//! characteristic polynomial f of the matrices under study. Conjugacy classes
//! of matrices with charpoly f correspond to ideal classes of the module
//! lattice attached to an eigenvector, and block-conjugacy corresponds to the
//! coarser weak-equivalence relation on those lattices. Every positive answer
//! is returned together with a certificate (a unimodular conjugator, or a
//! pair of block conjugators) that can be rechecked by plain matrix
//! arithmetic, and every negative answer is backed by an exhaustive search
//! bound or an invariant mismatch.

pub mod error;
pub mod linalg;
pub mod poly;

pub mod field;
pub mod ideal;
pub mod lmt;
pub mod block;
pub mod galois;
pub mod semiconj;
pub mod fixtures;
pub mod wire;

pub use error::{Error, Result};
