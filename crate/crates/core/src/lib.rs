//! Exact computations for polyhedral products of simplicial complexes: homology, total
//! (co)homology of local complexes, homology decompositions, product tables on total
//! cohomology, Tor of monomial ideals, and Alexander duality certificates.

pub mod bits;
pub mod chain;
pub mod complex;
pub mod decomposition;
pub mod duality;
pub mod error;
pub mod field;
pub mod hbasis;
pub mod ideals;
pub mod io;
pub mod polyhedral;
pub mod random;
pub mod ring;
pub mod snf;
pub mod total;
pub mod verify;

pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use field::{Coefficients, FieldKind};
pub use polyhedral::PairSequence;
