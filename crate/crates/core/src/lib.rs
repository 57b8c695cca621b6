//! mldforge-core: exact minimal log discrepancies of finite linear quotient
//! and hyperquotient singularities.
//!
//! Two independent computational paths are provided: a lattice / integer
//! programming path for abelian monomial data, and a jet-scheme truncation
//! path with a Groebner dimension oracle over large prime fields. The two
//! paths cross-validate each other.

pub mod error;
pub mod scalar;
pub mod exactnum;
pub mod linalg;
pub mod fp;
pub mod group;
pub mod poly;
pub mod twist;
pub mod groebner;
pub mod arcs;

pub use error::{Error, Result};
pub use exactnum::Cyclo;
pub use fp::Fp;
pub use scalar::{rat, rat_i, FieldScalar, Rat};
