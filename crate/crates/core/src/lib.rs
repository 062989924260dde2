//! Exact-arithmetic computations around coincidence site lattices.
//!
//! The crate covers the square lattice and its shifted copies (through the
//! arithmetic of the Gaussian integers), the three cubic lattices (through
//! quaternion parametrization of `SO(3, Q)`), general rational lattices and
//! multilattices in dimensions up to four, and the diamond packing.  Every
//! result is computed over arbitrary-precision integers and rationals;
//! floating point never enters a decision path.
//!
//! Closed-form constructions (canonical numerators, span-set bases, index
//! tables) are backed by an independent lattice-intersection oracle built on
//! Hermite and Smith normal forms, so each identity can be replayed against
//! brute-force lattice algebra.  See the `oracle::verify` suites.

pub mod arith;
pub mod error;
pub mod par;

pub mod mat;

pub mod gaussian;
pub mod lattice;
pub mod quat;

pub mod cubic;
pub mod diamond;
pub mod oracle;
pub mod series;
pub mod shifted;
pub mod square;

pub use error::{Error, Result};
